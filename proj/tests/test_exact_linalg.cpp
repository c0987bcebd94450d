#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "kq/exact_linalg.hpp"

using namespace kq;

namespace {

RatMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo = -9, int hi = 9) {
  RatMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
  return m;
}

// Low-rank matrix as a product of thin factors.
RatMatrix random_low_rank(std::mt19937& rng, std::size_t r, std::size_t c, std::size_t k) {
  return random_matrix(rng, r, k, -3, 3) * random_matrix(rng, k, c, -3, 3);
}

// Leibniz expansion of the determinant.
Rational det_leibniz(const RatMatrix& m) {
  std::vector<std::size_t> perm(m.rows());
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inversions;
    Rational term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < perm.size(); ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) s.push_back(i);
    out.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

// Rank as the size of the largest non-vanishing minor.
std::size_t rank_by_minors(const RatMatrix& m) {
  for (std::size_t k = std::min(m.rows(), m.cols()); k > 0; --k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    subsets(m.rows(), k, rs);
    subsets(m.cols(), k, cs);
    for (const auto& r : rs)
      for (const auto& c : cs) {
        RatMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(r[i], c[j]);
        if (det_leibniz(sub) != 0) return k;
      }
  }
  return 0;
}

}  // namespace

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(rat(2, 4), rat(1, 2));
  EXPECT_EQ(rat(-3, -6), rat(1, 2));
  EXPECT_EQ(rat(3, -6), rat(-1, 2));
  Rational x = rat(6, -4);
  EXPECT_EQ(x.get_num(), -3);
  EXPECT_EQ(x.get_den(), 2);
  for (long k : {-7L, -1L, 2L, 13L}) EXPECT_EQ(rat(5 * k, 9 * k), rat(5, 9));
}

TEST(Rational, ExactArithmetic) {
  EXPECT_EQ(rat(1, 3) + rat(1, 6), rat(1, 2));
  EXPECT_EQ(rat(2, 3) * rat(9, 4), rat(3, 2));
  Rational s = 0;
  for (int i = 0; i < 10; ++i) s += rat(1, 10);
  EXPECT_EQ(s, Rational(1));
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("-3/4"), rat(-3, 4));
  EXPECT_EQ(parse_rational("6/8"), rat(3, 4));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(to_string(rat(-3, 4)), "-3/4");
  EXPECT_EQ(to_string(rat(8, 4)), "2");
  for (const char* bad : {"", "1/0", "a", "1/2/3", "1.5"}) {
    try {
      parse_rational(bad);
      ADD_FAILURE() << "accepted " << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::MalformedInput) << bad;
    }
  }
}

TEST(Rank, SpecExamples) {
  EXPECT_EQ(rank(RatMatrix::identity(3)), 3u);
  EXPECT_EQ(rank(RatMatrix(2, 2)), 0u);
  EXPECT_EQ(rank(RatMatrix::from_rows({{1, 2}, {2, 4}})), 1u);
  EXPECT_EQ(rank(RatMatrix(0, 5)), 0u);
}

TEST(Rank, MatchesLargestNonzeroMinor) {
  std::mt19937 rng(11);
  for (int t = 0; t < 60; ++t) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    RatMatrix m = t % 2 ? random_matrix(rng, r, c) : random_low_rank(rng, r, c, 1 + rng() % 3);
    EXPECT_EQ(rank(m), rank_by_minors(m)) << "trial " << t;
  }
}

TEST(Rank, TransposeInvariant) {
  std::mt19937 rng(12);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
    RatMatrix m = t % 3 ? random_matrix(rng, r, c) : random_low_rank(rng, r, c, 1 + rng() % 4);
    EXPECT_EQ(rank(m), rank(m.transpose()));
  }
}

TEST(Rank, ProductBound) {
  std::mt19937 rng(13);
  for (int t = 0; t < 200; ++t) {
    std::size_t a = 1 + rng() % 8, b = 1 + rng() % 8, c = 1 + rng() % 8;
    RatMatrix x = random_low_rank(rng, a, b, 1 + rng() % 4), y = random_low_rank(rng, b, c, 1 + rng() % 4);
    EXPECT_LE(rank(x * y), std::min(rank(x), rank(y)));
  }
}

TEST(Rref, PivotsAndReducedForm) {
  Echelon e = rref(RatMatrix::from_rows({{0, 2, 4, 2}, {0, 1, 2, 3}, {0, 0, 0, 1}}));
  EXPECT_EQ(e.pivots, (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(e.reduced, RatMatrix::from_rows({{0, 1, 2, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}}));
}

TEST(Kernel, SpecExamples) {
  EXPECT_TRUE(kernel_basis(RatMatrix::identity(2)).empty());
  auto k = kernel_basis(RatMatrix::from_rows({{1, -1}}));
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0][0], k[0][1]);
  EXPECT_NE(k[0][0], 0);
  RatMatrix m = RatMatrix::from_rows({{1, 2}, {2, 4}});
  auto k2 = kernel_basis(m);
  ASSERT_EQ(k2.size(), 1u);
  EXPECT_TRUE((m * RatMatrix::column(k2[0])).is_zero());
}

TEST(Kernel, RandomVectorsAnnihilatedAndIndependent) {
  std::mt19937 rng(14);
  for (int t = 0; t < 100; ++t) {
    std::size_t r = 1 + rng() % 7, c = 1 + rng() % 8;
    RatMatrix m = random_low_rank(rng, r, c, 1 + rng() % 4);
    auto basis = kernel_basis(m);
    EXPECT_EQ(basis.size(), c - rank(m));
    for (const auto& v : basis) EXPECT_TRUE((m * RatMatrix::column(v)).is_zero());
    if (!basis.empty()) {
      EXPECT_EQ(rank(RatMatrix::from_rows(basis)), basis.size());
    }
  }
}

TEST(Invert, SpecExamples) {
  EXPECT_EQ(invert(RatMatrix::identity(3)), RatMatrix::identity(3));
  EXPECT_EQ(invert(RatMatrix::from_rows({{2, 0}, {0, 3}})), RatMatrix::from_rows({{rat(1, 2), 0}, {0, rat(1, 3)}}));
  std::mt19937 rng(15);
  int done = 0;
  while (done < 50) {
    RatMatrix m = random_matrix(rng, 3, 3);
    if (rank(m) < 3) continue;
    EXPECT_EQ(m * invert(m), RatMatrix::identity(3));
    EXPECT_EQ(invert(m) * m, RatMatrix::identity(3));
    ++done;
  }
}

TEST(Invert, SingularAndNonSquare) {
  try {
    invert(RatMatrix::from_rows({{1, 2}, {2, 4}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SingularMatrix);
  }
  EXPECT_THROW(invert(RatMatrix(2, 3)), Error);
}

TEST(SolveRight, SpecExamples) {
  RatMatrix b = RatMatrix::from_rows({{1, 2, 3}, {4, 5, 6}});
  EXPECT_EQ(solve_right(RatMatrix::identity(2), b), b);
  EXPECT_EQ(solve_right(RatMatrix::from_rows({{2}}), RatMatrix::from_rows({{1}})), RatMatrix::from_rows({{rat(1, 2)}}));
  try {
    solve_right(RatMatrix::from_rows({{1}, {1}}), RatMatrix::from_rows({{1}, {2}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Inconsistent);
  }
}

TEST(SolveRight, RandomConsistentSystems) {
  std::mt19937 rng(16);
  for (int t = 0; t < 60; ++t) {
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6, k = 1 + rng() % 3;
    RatMatrix a = random_low_rank(rng, r, c, 1 + rng() % 4);
    RatMatrix b = a * random_matrix(rng, c, k);
    EXPECT_EQ(a * solve_right(a, b), b);
  }
}

TEST(RowSpace, DimensionEqualsRankOfStackedRows) {
  std::mt19937 rng(17);
  for (int t = 0; t < 60; ++t) {
    std::size_t r = 1 + rng() % 10, c = 1 + rng() % 8;
    RatMatrix m = random_low_rank(rng, r, c, 1 + rng() % 5);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (rng() % 3 == 0) m(i, j) /= static_cast<long>(1 + rng() % 7);
    RowSpace s(c);
    std::size_t accepted = 0;
    for (std::size_t i = 0; i < r; ++i) accepted += s.insert(m.row(i));
    EXPECT_EQ(s.dim(), rank(m));
    EXPECT_EQ(accepted, rank(m));
    if (s.dim() > 0) {
      std::vector<std::vector<Rational>> rows;
      for (const auto& b : s.basis()) rows.emplace_back(b.begin(), b.end());
      EXPECT_EQ(rank(RatMatrix::from_rows(rows)), s.dim());
    }
  }
}

TEST(LinComb, DropsZerosAndObeysVectorSpaceLaws) {
  LinComb<int> a, b, c;
  a.add(1, 2);
  a.add(1, -2);
  EXPECT_TRUE(a.empty());
  std::mt19937 rng(18);
  for (int t = 0; t < 50; ++t) {
    LinComb<int> x, y, z;
    for (int k = 0; k < 5; ++k) {
      x.add(static_cast<int>(rng() % 6), rat(static_cast<long>(rng() % 7) - 3, 1 + rng() % 4));
      y.add(static_cast<int>(rng() % 6), rat(static_cast<long>(rng() % 7) - 3, 1 + rng() % 4));
      z.add(static_cast<int>(rng() % 6), rat(static_cast<long>(rng() % 7) - 3, 1 + rng() % 4));
    }
    EXPECT_EQ(x + y, y + x);
    EXPECT_EQ((x + y) + z, x + (y + z));
    Rational s = rat(static_cast<long>(rng() % 9) - 4, 3);
    EXPECT_EQ(s * (x + y), s * x + s * y);
    EXPECT_TRUE((x - x).empty());
    const LinComb<int> sum = x + y;
    for (const auto& [k, v] : sum.terms()) EXPECT_NE(v, 0);
  }
}
