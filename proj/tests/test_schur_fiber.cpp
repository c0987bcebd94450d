#include <gtest/gtest.h>

#include <random>

#include "kq/moduli.hpp"
#include "kq/schur_fiber.hpp"
#include "kq/verify.hpp"

using namespace kq;

namespace {

Rational small_rational(std::mt19937& rng) {
  return rat(static_cast<long>(rng() % 19) - 9, static_cast<long>(1 + rng() % 5));
}

RatMatrix random_2xn(std::mt19937& rng, int n) {
  for (;;) {
    RatMatrix m(2, static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = small_rational(rng);
    if (rank(m) == 2) return m;
  }
}

// Composite along the staircase evaluated through section_apply only.
RatMatrix theta_symbolic(const Partition& lambda, const Partition& mu, const std::vector<int>& word,
                         const GrPoint& y) {
  auto tau = staircase(lambda, mu);
  RatMatrix out(static_cast<std::size_t>(fiber_dim(mu)), static_cast<std::size_t>(fiber_dim(lambda)));
  for (int j = 0; j < fiber_dim(lambda); ++j) {
    FiberTensor t = FiberTensor::basis(lambda, j);
    for (std::size_t s = 0; s < word.size(); ++s) {
      MapKind kind = tau[s + 1][0] == tau[s][0] + 1 ? MapKind::F : MapKind::G;
      t = section_apply(kind, word[s], y, t);
    }
    for (const auto& [i, c] : t.terms.terms()) out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = c;
  }
  return out;
}

}  // namespace

TEST(ReducePoint, Examples) {
  RatMatrix y = RatMatrix::from_rows({{1, 0, 3, rat(1, 2)}, {0, 1, -2, 7}});
  EXPECT_EQ(reduce_point(y).matrix, y);
  EXPECT_EQ(reduce_point(RatMatrix::from_rows({{2, 0, 4}, {0, 3, 3}})).matrix,
            RatMatrix::from_rows({{1, 0, 2}, {0, 1, 1}}));
  GrPoint p = reduce_point(RatMatrix::from_rows({{0, 0, 1, 0}, {0, 0, 0, 1}}));
  EXPECT_EQ(p.pivot_cols, (std::pair<std::size_t, std::size_t>{2, 3}));
  EXPECT_EQ(p.matrix(0, 2), 1);
  EXPECT_EQ(p.matrix(1, 3), 1);
  try {
    reduce_point(RatMatrix::from_rows({{1, 2, 3, 4}, {2, 4, 6, 8}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::RankDeficient);
  }
}

TEST(ReducePoint, IdempotentAndGl2Invariant) {
  std::mt19937 rng(21);
  for (int t = 0; t < 100; ++t) {
    int n = 4 + static_cast<int>(rng() % 4);
    RatMatrix m = random_2xn(rng, n);
    if (t % 5 == 0)
      for (std::size_t i = 0; i < 2; ++i) m(i, 0) = 0;  // force a later pivot
    if (rank(m) < 2) continue;
    GrPoint y = reduce_point(m);
    EXPECT_EQ(reduce_point(y.matrix), y);
    EXPECT_EQ(y.matrix.select_columns(std::vector<std::size_t>{y.pivot_cols.first, y.pivot_cols.second}),
              RatMatrix::identity(2));
    RatMatrix g(2, 2);
    do {
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) g(i, j) = small_rational(rng);
    } while (rank(g) < 2);
    EXPECT_EQ(reduce_point(g * m), y);
  }
}

TEST(FMatrix, Examples) {
  Rational x1 = rat(3, 2), x2 = -5;
  EXPECT_EQ(f_matrix(2, {x1, x2}), RatMatrix::from_rows({{x1, 0}, {x2, x1}, {0, x2}}));
  EXPECT_EQ(f_matrix(1, {1, 0}), RatMatrix::from_rows({{1}, {0}}));
  EXPECT_EQ(f_matrix(3, {0, 1}), RatMatrix::from_rows({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_THROW(f_matrix(0, {1, 0}), Error);
}

TEST(GMatrix, Examples) {
  Rational x1 = 7, x2 = rat(-1, 3);
  EXPECT_EQ(g_matrix(3, {x1, x2}), RatMatrix::from_rows({{-2 * x2, x1, 0}, {0, -x2, 2 * x1}}));
  EXPECT_EQ(g_matrix(2, {1, 0}), RatMatrix::from_rows({{0, 1}}));
  EXPECT_EQ(g_matrix(2, {0, 1}), RatMatrix::from_rows({{-1, 0}}));
  try {
    g_matrix(1, {1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidRank);
  }
}

TEST(SectionApply, AppendingB1RaisesIndexOnly) {
  GrPoint y = reduce_point(RatMatrix::from_rows({{1, 0, 2, 3, 1, 1}, {0, 1, 5, 7, 1, 2}}));
  for (const auto& lambda : {pair(0, 0), pair(2, 0), pair(3, 1), pair(2, 2)})
    for (int j = 0; j < fiber_dim(lambda); ++j) {
      FiberTensor out = section_apply(MapKind::F, 1, y, FiberTensor::basis(lambda, j));
      EXPECT_EQ(out, FiberTensor::basis(pair(lambda[0] + 1, lambda[1]), j));
    }
}

TEST(SectionApply, GOnEqualPartsIsRejected) {
  GrPoint y = random_point(6, 3);
  try {
    section_apply(MapKind::G, 1, y, FiberTensor::basis(pair(1, 1), 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::OutOfYoung);
  }
  try {
    section_apply(MapKind::F, 1, random_point(4, 3), FiberTensor::basis(pair(2, 0), 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::OutOfYoung);
  }
}

// The symbolic evaluator is the oracle for the closed-form matrices.
TEST(SectionApply, MatchesClosedFormMatrices) {
  for (int n : {4, 5, 6}) {
    std::mt19937 rng(100 + static_cast<unsigned>(n));
    for (int t = 0; t < 20; ++t) {
      GrPoint y = reduce_point(random_2xn(rng, n));
      for (int a = 0; a <= n - 2; ++a)
        for (int b = 0; b <= a; ++b) {
          Partition lambda = pair(a, b);
          if (a - b > 4) continue;
          for (int rho = 1; rho <= n; ++rho) {
            if (a + 1 <= n - 2) {
              EXPECT_EQ(section_matrix(MapKind::F, lambda, rho, y), f_matrix(fiber_dim(lambda), y.column(rho)));
            }
            if (b + 1 <= a) {
              EXPECT_EQ(section_matrix(MapKind::G, lambda, rho, y), g_matrix(fiber_dim(lambda), y.column(rho)));
            }
          }
        }
    }
  }
}

// Vertices of equal rank give identical matrices.
TEST(SectionApply, DependsOnlyOnRank) {
  GrPoint y = random_point(8, 5);
  for (int rho = 1; rho <= 8; ++rho) {
    EXPECT_EQ(section_matrix(MapKind::F, pair(2, 0), rho, y), section_matrix(MapKind::F, pair(4, 2), rho, y));
    EXPECT_EQ(section_matrix(MapKind::G, pair(3, 1), rho, y), section_matrix(MapKind::G, pair(5, 3), rho, y));
    EXPECT_EQ(section_matrix(MapKind::F, pair(1, 1), rho, y), section_matrix(MapKind::F, pair(0, 0), rho, y));
  }
}

TEST(Staircase, HorizontalThenVertical) {
  EXPECT_EQ(staircase(pair(1, 0), pair(3, 2)),
            (std::vector<Partition>{pair(1, 0), pair(2, 0), pair(3, 0), pair(3, 1), pair(3, 2)}));
  EXPECT_EQ(staircase(pair(1, 1), pair(1, 1)), (std::vector<Partition>{pair(1, 1)}));
}

TEST(ThetaCompose, Examples) {
  GrPoint y = random_point(5, 17);
  EXPECT_EQ(theta_compose(pair(1, 0), pair(2, 0), {3}, y), f_matrix(2, y.column(3)));
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) {
      RatMatrix a = theta_compose(pair(0, 0), pair(1, 1), {i, j}, y);
      RatMatrix b = theta_compose(pair(0, 0), pair(1, 1), {j, i}, y);
      EXPECT_EQ(a.rows(), 1u);
      EXPECT_EQ(a.cols(), 1u);
      EXPECT_TRUE((a + b).is_zero());
      EXPECT_EQ(theta_compose(pair(0, 0), pair(2, 0), {i, j}, y), theta_compose(pair(0, 0), pair(2, 0), {j, i}, y));
    }
}

TEST(ThetaCompose, Errors) {
  GrPoint y = random_point(5, 1);
  try {
    theta_compose(pair(2, 0), pair(1, 1), {1}, y);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotContained);
  }
  try {
    theta_compose(pair(0, 0), pair(2, 0), {1}, y);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BadWordLength);
  }
}

TEST(ThetaCompose, MatchesSymbolicComposition) {
  GrPoint y = random_point(5, 23);
  const TiltingQuiver q = build_quiver(5);
  for (const auto& [l, m] : vertex_pairs(q, 1, 3)) {
    std::vector<int> word;
    for (int k = 0; k < degree(m) - degree(l); ++k) word.push_back(1 + (k * 2 + degree(l)) % 5);
    EXPECT_EQ(theta_compose(l, m, word, y), theta_symbolic(l, m, word, y)) << l.str(2) << " " << m.str(2);
  }
}

// Evaluation rank of the staircase compositions, built here from the
// symbolic evaluator, equals the Hom dimension.
TEST(ThetaCompose, EvaluationRankEqualsHomDimension) {
  for (int n : {4, 5}) {
    const TiltingQuiver q = build_quiver(n);
    for (const auto& [l, m] : vertex_pairs(q, 0, 2)) {
      std::vector<std::vector<int>> words{{}};
      for (int k = 0; k < degree(m) - degree(l); ++k) {
        std::vector<std::vector<int>> next;
        for (const auto& w : words)
          for (int r = 1; r <= n; ++r) {
            next.push_back(w);
            next.back().push_back(r);
          }
        words = next;
      }
      RowSpace span(words.size());
      for (std::uint64_t s = 0; s < 12; ++s) {
        GrPoint y = random_point(n, 500 + s);
        std::vector<RatMatrix> images;
        for (const auto& w : words) images.push_back(theta_symbolic(l, m, w, y));
        for (std::size_t i = 0; i < images[0].rows(); ++i)
          for (std::size_t j = 0; j < images[0].cols(); ++j) {
            std::vector<Rational> v;
            for (const auto& im : images) v.push_back(im(i, j));
            span.insert(v);
          }
      }
      EXPECT_EQ(span.dim(), hom_dim(l, m, n)) << "n=" << n << " " << l.str(2) << " -> " << m.str(2);
      EXPECT_EQ(theta_rank(n, l, m, 12, 500).rank, span.dim());
    }
  }
}
