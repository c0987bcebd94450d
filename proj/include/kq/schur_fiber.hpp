#pragma once

// Fibres of the bundles S^lambda W over a point of Gr(n,2), the explicit
// matrices of the f-type and g-type maps in the basis
//   p^lambda_j = (b2 ^ b1)^{lambda_2} (x) b1^{lambda_1 - lambda_2 - j} b2^j,
// and a symbolic evaluator for the maps used as an independent check.

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "kq/error.hpp"
#include "kq/exact_linalg.hpp"
#include "kq/partitions.hpp"

namespace kq {

/// A point of Gr(n,2): full-rank 2 x n matrix in reduced row echelon form,
/// so its leftmost independent column pair is the identity.
struct GrPoint {
  int n = 0;
  RatMatrix matrix;
  std::pair<std::size_t, std::size_t> pivot_cols{0, 1};  // 0-based

  /// Column rho (1-based) as (x1, x2).
  std::array<Rational, 2> column(int rho) const {
    auto j = static_cast<std::size_t>(rho - 1);
    return {matrix(0, j), matrix(1, j)};
  }

  friend bool operator==(const GrPoint& a, const GrPoint& b) {
    return a.n == b.n && a.matrix == b.matrix;
  }
};

inline GrPoint reduce_point(const RatMatrix& m) {
  if (m.rows() != 2) throw Error(Errc::DimensionMismatch, "a point of Gr(n,2) has two rows");
  Echelon e = rref(m);
  if (e.pivots.size() < 2) throw Error(Errc::RankDeficient, "point matrix must have rank 2");
  return GrPoint{static_cast<int>(m.cols()), std::move(e.reduced), {e.pivots[0], e.pivots[1]}};
}

/// Rank of S^lambda W for a two-part partition.
inline int fiber_dim(const Partition& lambda) { return lambda[0] - lambda[1] + 1; }

inline bool in_young(const Partition& lambda, int n) {
  return lambda.length() <= 2 && lambda[0] <= n - 2;
}

/// Matrix of f^lambda_v on a rank-k fibre: (k+1) x k, x1 on the diagonal and
/// x2 just below it.
inline RatMatrix f_matrix(int k, const std::array<Rational, 2>& x) {
  if (k < 1) throw Error(Errc::InvalidRank, "f_matrix needs k >= 1");
  auto kk = static_cast<std::size_t>(k);
  RatMatrix m(kk + 1, kk);
  for (std::size_t j = 0; j < kk; ++j) {
    m(j, j) = x[0];
    m(j + 1, j) = x[1];
  }
  return m;
}

/// Matrix of g^lambda_v on a rank-k fibre: (k-1) x k with (1-based)
/// entry (u,u) = -(k-u) x2 and (u,u+1) = u x1.
inline RatMatrix g_matrix(int k, const std::array<Rational, 2>& x) {
  if (k < 2) throw Error(Errc::InvalidRank, "g_matrix needs k >= 2");
  auto kk = static_cast<std::size_t>(k);
  RatMatrix m(kk - 1, kk);
  for (std::size_t u = 1; u < kk; ++u) {
    m(u - 1, u - 1) = -Rational(static_cast<long>(kk - u)) * x[1];
    m(u - 1, u) = Rational(static_cast<long>(u)) * x[0];
  }
  return m;
}

enum class MapKind { F, G };

/// Element of the fibre S^lambda W_y in the basis p^lambda_j.
struct FiberTensor {
  Partition lambda;
  LinComb<int> terms;

  static FiberTensor basis(const Partition& lambda, int j) { return {lambda, LinComb<int>(j)}; }

  friend bool operator==(const FiberTensor&, const FiberTensor&) = default;
};

namespace detail {

using Vec2 = std::array<Rational, 2>;

// (wedge factors, symmetric factors) with a scalar, before straightening.
struct PureFiberTensor {
  Rational coeff;
  std::vector<std::pair<Vec2, Vec2>> wedges;
  std::vector<Vec2> sym;
};

// Expands a pure tensor multilinearly into the p_j basis:
// a ^ b = (a2 b1 - a1 b2) (b2 ^ b1), and the symmetric part is expanded into
// monomials b1^{d-j} b2^j.
inline void straighten_into(const PureFiberTensor& t, LinComb<int>& out) {
  Rational c = t.coeff;
  for (const auto& [a, b] : t.wedges) c *= a[1] * b[0] - a[0] * b[1];
  if (sgn(c) == 0) return;
  std::vector<Rational> poly{c};  // poly[j] = coefficient of b1^{deg-j} b2^j
  for (const auto& v : t.sym) {
    std::vector<Rational> next(poly.size() + 1);
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j] += poly[j] * v[0];
      next[j + 1] += poly[j] * v[1];
    }
    poly = std::move(next);
  }
  for (std::size_t j = 0; j < poly.size(); ++j) out.add(static_cast<int>(j), poly[j]);
}

}  // namespace detail

/// Applies f^lambda_v (append z_v to the symmetric part) or g^lambda_v (sum
/// over pairing each symmetric factor with z_v in a new wedge) to t, where
/// z_v is column rho of y written in the (b1, b2) basis.
inline FiberTensor section_apply(MapKind kind, int rho, const GrPoint& y, const FiberTensor& t) {
  const Partition& lambda = t.lambda;
  if (kind == MapKind::G && lambda[1] + 1 > lambda[0])
    throw Error(Errc::OutOfYoung, "g-map leaves the set of partitions");
  const Partition target =
      kind == MapKind::F ? pair(lambda[0] + 1, lambda[1]) : pair(lambda[0], lambda[1] + 1);
  if (!in_young(lambda, y.n) || !in_young(target, y.n))
    throw Error(Errc::OutOfYoung, "target partition leaves Young(n-2,2)");
  if (rho < 1 || rho > y.n) throw Error(Errc::InvalidArgument, "rho out of range");

  const detail::Vec2 b1{1, 0}, b2{0, 1};
  const detail::Vec2 z = y.column(rho);
  const int d = lambda[0] - lambda[1];
  FiberTensor out{target, {}};
  for (const auto& [j, c] : t.terms.terms()) {
    detail::PureFiberTensor base{c, {}, {}};
    base.wedges.assign(static_cast<std::size_t>(lambda[1]), {b2, b1});
    base.sym.assign(static_cast<std::size_t>(d - j), b1);
    base.sym.insert(base.sym.end(), static_cast<std::size_t>(j), b2);
    if (kind == MapKind::F) {
      base.sym.push_back(z);
      detail::straighten_into(base, out.terms);
    } else {
      for (std::size_t k = 0; k < base.sym.size(); ++k) {
        detail::PureFiberTensor term{base.coeff, base.wedges, {}};
        term.wedges.push_back({base.sym[k], z});
        for (std::size_t l = 0; l < base.sym.size(); ++l)
          if (l != k) term.sym.push_back(base.sym[l]);
        detail::straighten_into(term, out.terms);
      }
    }
  }
  return out;
}

/// Matrix of a map assembled column by column from section_apply.
inline RatMatrix section_matrix(MapKind kind, const Partition& lambda, int rho, const GrPoint& y) {
  const int k = fiber_dim(lambda);
  const int rows = kind == MapKind::F ? k + 1 : k - 1;
  RatMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    FiberTensor img = section_apply(kind, rho, y, FiberTensor::basis(lambda, j));
    for (const auto& [i, c] : img.terms.terms()) m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = c;
  }
  return m;
}

/// Staircase lambda = tau_0 < ... < tau_{m1+m2} = mu: horizontal steps to
/// (mu_1, lambda_2), then vertical steps.
inline std::vector<Partition> staircase(const Partition& lambda, const Partition& mu) {
  if (!contains(lambda, mu)) throw Error(Errc::NotContained, "lambda not contained in mu");
  std::vector<Partition> tau{lambda};
  for (int a = lambda[0] + 1; a <= mu[0]; ++a) tau.push_back(pair(a, lambda[1]));
  for (int b = lambda[1] + 1; b <= mu[1]; ++b) tau.push_back(pair(mu[0], b));
  return tau;
}

/// Composite g...g f...f along the staircase; word[k] is the column used by
/// the (k+1)-th map applied. Result is (dim mu) x (dim lambda).
inline RatMatrix theta_compose(const Partition& lambda, const Partition& mu, const std::vector<int>& word,
                               const GrPoint& y) {
  if (!in_young(lambda, y.n) || !in_young(mu, y.n))
    throw Error(Errc::OutOfYoung, "vertex outside Young(n-2,2)");
  const auto tau = staircase(lambda, mu);
  if (word.size() + 1 != tau.size())
    throw Error(Errc::BadWordLength, "word length must equal |mu| - |lambda|");
  RatMatrix acc = RatMatrix::identity(static_cast<std::size_t>(fiber_dim(lambda)));
  for (std::size_t s = 0; s < word.size(); ++s) {
    int rho = word[s];
    if (rho < 1 || rho > y.n) throw Error(Errc::InvalidArgument, "word letter out of range");
    const int k = fiber_dim(tau[s]);
    bool horizontal = tau[s + 1][0] == tau[s][0] + 1;
    acc = (horizontal ? f_matrix(k, y.column(rho)) : g_matrix(k, y.column(rho))) * acc;
  }
  return acc;
}

}  // namespace kq
