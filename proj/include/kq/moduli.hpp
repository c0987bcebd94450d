#pragma once

// Representations of the tilting quiver with the canonical dimension vector:
// embedding a point of Gr(n,2), stability and relation checks, the gauge
// action, and reconstruction of the point from a stable representation.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "kq/error.hpp"
#include "kq/exact_linalg.hpp"
#include "kq/partitions.hpp"
#include "kq/schur_fiber.hpp"
#include "kq/tilting_quiver.hpp"

namespace kq {

struct QuiverRep {
  TiltingQuiver quiver;
  std::vector<RatMatrix> matrices;  // aligned with quiver.arrows

  int n() const noexcept { return quiver.n; }

  const RatMatrix& at(const Partition& tail, int direction, int rho) const {
    return matrices[quiver.arrow_index(tail, direction, rho)];
  }
  RatMatrix& at(const Partition& tail, int direction, int rho) {
    return matrices[quiver.arrow_index(tail, direction, rho)];
  }

  /// Throws DimensionMismatch unless every matrix is sized head x tail.
  void validate() const {
    if (matrices.size() != quiver.arrows.size())
      throw Error(Errc::DimensionMismatch, "representation needs one matrix per arrow");
    for (std::size_t a = 0; a < matrices.size(); ++a) {
      const Arrow& ar = quiver.arrows[a];
      auto rows = static_cast<std::size_t>(fiber_dim(ar.head));
      auto cols = static_cast<std::size_t>(fiber_dim(ar.tail));
      if (matrices[a].rows() != rows || matrices[a].cols() != cols)
        throw Error(Errc::DimensionMismatch, "matrix for arrow at (" + ar.tail.str(2) + ") rho " +
                                                 std::to_string(ar.rho) + " must be " + std::to_string(rows) +
                                                 "x" + std::to_string(cols));
    }
  }

  friend bool operator==(const QuiverRep& a, const QuiverRep& b) {
    return a.quiver.n == b.quiver.n && a.matrices == b.matrices;
  }
};

/// One invertible block per vertex, aligned with quiver.vertices.
struct GaugeElement {
  std::vector<RatMatrix> blocks;

  static GaugeElement identity(const TiltingQuiver& q) {
    GaugeElement g;
    for (const auto& v : q.vertices) g.blocks.push_back(RatMatrix::identity(static_cast<std::size_t>(fiber_dim(v))));
    return g;
  }

  GaugeElement inverse() const {
    GaugeElement g;
    for (const auto& b : blocks) g.blocks.push_back(invert(b));
    return g;
  }

  /// (g h)_v = g_v h_v
  friend GaugeElement operator*(const GaugeElement& g, const GaugeElement& h) {
    if (g.blocks.size() != h.blocks.size()) throw Error(Errc::DimensionMismatch, "gauge sizes differ");
    GaugeElement out;
    for (std::size_t v = 0; v < g.blocks.size(); ++v) out.blocks.push_back(g.blocks[v] * h.blocks[v]);
    return out;
  }

  friend bool operator==(const GaugeElement&, const GaugeElement&) = default;
};

struct StabilityReport {
  struct Vertex {
    Partition vertex;
    int expected_dim = 0;
    std::size_t rows = 0, cols = 0;
    std::size_t rank = 0;
    bool ok = false;
  };
  std::vector<Vertex> vertices;
  bool ok = false;
};

struct RelationViolation {
  RelationElement relation;
  RatMatrix residual;
};

inline QuiverRep embed(const GrPoint& y) {
  QuiverRep rep{build_quiver(y.n), {}};
  for (const auto& a : rep.quiver.arrows) {
    int k = fiber_dim(a.tail);
    rep.matrices.push_back(a.direction == 1 ? f_matrix(k, y.column(a.rho)) : g_matrix(k, y.column(a.rho)));
  }
  return rep;
}

/// Incoming matrices at lambda side by side: horizontal arrows by rho, then
/// vertical arrows by rho.
inline RatMatrix assemble_W(const QuiverRep& rep, const Partition& lambda) {
  if (lambda == pair(0, 0)) throw Error(Errc::SourceVertex, "(0,0) has no incoming arrows");
  std::vector<RatMatrix> blocks;
  for (std::size_t a : rep.quiver.incoming(lambda)) blocks.push_back(rep.matrices[a]);
  return hconcat(blocks);
}

inline StabilityReport check_stability(const QuiverRep& rep) {
  StabilityReport report;
  report.ok = true;
  for (const auto& v : rep.quiver.vertices) {
    if (v == pair(0, 0)) continue;
    RatMatrix w = assemble_W(rep, v);
    StabilityReport::Vertex e{v, fiber_dim(v), w.rows(), w.cols(), rank(w), false};
    e.ok = e.rank == static_cast<std::size_t>(e.expected_dim);
    report.ok = report.ok && e.ok;
    report.vertices.push_back(std::move(e));
  }
  return report;
}

/// Matrix of a path in the representation (later arrows multiply on the left).
inline RatMatrix evaluate_path(const QuiverRep& rep, const Path& p) {
  RatMatrix acc = RatMatrix::identity(static_cast<std::size_t>(fiber_dim(p.tail())));
  for (const auto& a : p.arrows) acc = rep.at(a.tail, a.direction, a.rho) * acc;
  return acc;
}

inline RatMatrix evaluate_relation(const QuiverRep& rep, const RelationElement& r) {
  RatMatrix sum(static_cast<std::size_t>(fiber_dim(r.rhs_vertex)), static_cast<std::size_t>(fiber_dim(r.lhs_vertex)));
  for (const auto& [p, c] : r.terms.terms()) sum = sum + c * evaluate_path(rep, p);
  return sum;
}

inline std::vector<RelationViolation> check_relations(const QuiverRep& rep) {
  std::vector<RelationViolation> out;
  for (auto& r : relation_sets(rep.quiver)) {
    RatMatrix residual = evaluate_relation(rep, r);
    if (!residual.is_zero()) out.push_back({std::move(r), std::move(residual)});
  }
  return out;
}

/// M -> g_head M g_tail^{-1} on every arrow.
inline QuiverRep scramble(const QuiverRep& rep, const GaugeElement& g) {
  const auto& q = rep.quiver;
  if (g.blocks.size() != q.vertices.size()) throw Error(Errc::DimensionMismatch, "one gauge block per vertex");
  std::vector<RatMatrix> inv;
  for (std::size_t v = 0; v < q.vertices.size(); ++v) {
    auto d = static_cast<std::size_t>(fiber_dim(q.vertices[v]));
    if (g.blocks[v].rows() != d || g.blocks[v].cols() != d)
      throw Error(Errc::DimensionMismatch, "gauge block at (" + q.vertices[v].str(2) + ") must be square of size " +
                                               std::to_string(d));
    try {
      inv.push_back(invert(g.blocks[v]));
    } catch (const Error&) {
      throw Error(Errc::SingularGauge, "gauge block at (" + q.vertices[v].str(2) + ") is singular");
    }
  }
  QuiverRep out{q, {}};
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    std::size_t t = q.vertex_index(q.arrows[a].tail), h = q.vertex_index(q.arrows[a].head);
    out.matrices.push_back(g.blocks[h] * rep.matrices[a] * inv[t]);
  }
  return out;
}

struct Reconstruction {
  GrPoint point;
  GaugeElement gauge;
};

/// Finds y and g with scramble(embed(y), g) == rep. The overall scalar
/// ambiguity is fixed by g at (0,0) = 1.
inline Reconstruction reconstruct(const QuiverRep& rep) {
  rep.validate();
  const auto& q = rep.quiver;
  if (auto v = check_relations(rep); !v.empty())
    throw Error(Errc::RelationsViolated, std::to_string(v.size()) + " relations fail, first: " + v.front().relation.label());
  if (auto s = check_stability(rep); !s.ok) {
    for (const auto& e : s.vertices)
      if (!e.ok)
        throw Error(Errc::NotStable, "W at (" + e.vertex.str(2) + ") has rank " + std::to_string(e.rank) + " < " +
                                         std::to_string(e.expected_dim));
  }

  GaugeElement g;
  g.blocks.resize(q.vertices.size());
  g.blocks[q.vertex_index(pair(0, 0))] = RatMatrix::identity(1);
  GrPoint y = reduce_point(assemble_W(rep, pair(1, 0)));
  const QuiverRep canon = embed(y);

  for (const auto& mu : q.vertices) {
    if (mu == pair(0, 0)) continue;
    std::vector<RatMatrix> actual, expected;
    for (std::size_t a : q.incoming(mu)) {
      std::size_t t = q.vertex_index(q.arrows[a].tail);
      actual.push_back(rep.matrices[a] * g.blocks[t]);
      expected.push_back(canon.matrices[a]);
    }
    RatMatrix n_act = hconcat(actual), c_can = hconcat(expected);
    const auto piv = rref(c_can).pivots;
    RatMatrix b_act = n_act.select_columns(piv), b_can = c_can.select_columns(piv);
    RatMatrix g_mu = b_act * invert(b_can);
    if (g_mu * c_can != n_act)
      throw Error(Errc::NotInImage, "normalized W at (" + mu.str(2) + ") differs from the canonical form");
    if (rank(g_mu) != g_mu.rows())
      throw Error(Errc::NotInImage, "gauge at (" + mu.str(2) + ") is singular");
    g.blocks[q.vertex_index(mu)] = std::move(g_mu);
  }
  return {std::move(y), std::move(g)};
}

namespace detail {

// Byte-stable across standard libraries: raw mt19937_64 output reduced by
// modulo (the distributions in <random> are implementation-defined).
inline long draw(std::mt19937_64& rng, long lo, long hi) {
  auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(rng() % span);
}

inline Rational draw_rational(std::mt19937_64& rng) {
  long num = draw(rng, -99, 99);
  long den = draw(rng, 1, 99);
  return rat(num, den);
}

}  // namespace detail

/// Reduced point with entries p/q, |p| <= 99, 1 <= q <= 99. The pivot pair
/// is (1,2) three times in four, otherwise a random pair.
inline GrPoint random_point(int n, std::uint64_t seed) {
  if (n < 4) throw Error(Errc::BadN, "n must be at least 4");
  std::mt19937_64 rng(seed);
  long p = 0, q = 1;
  if (detail::draw(rng, 0, 3) == 0) {
    p = detail::draw(rng, 0, n - 2);
    q = detail::draw(rng, p + 1, n - 1);
  }
  RatMatrix m(2, static_cast<std::size_t>(n));
  for (long c = 0; c < n; ++c) {
    auto cc = static_cast<std::size_t>(c);
    if (c == p) {
      m(0, cc) = 1;
    } else if (c == q) {
      m(1, cc) = 1;
    } else {
      if (c > p) m(0, cc) = detail::draw_rational(rng);
      if (c > q) m(1, cc) = detail::draw_rational(rng);
    }
  }
  return GrPoint{n, std::move(m), {static_cast<std::size_t>(p), static_cast<std::size_t>(q)}};
}

/// Invertible blocks with entries drawn like random_point; singular draws
/// are discarded.
inline GaugeElement random_gauge(int n, std::uint64_t seed) {
  const TiltingQuiver q = build_quiver(n);
  std::mt19937_64 rng(seed);
  GaugeElement g;
  for (const auto& v : q.vertices) {
    auto d = static_cast<std::size_t>(fiber_dim(v));
    for (;;) {
      RatMatrix b(d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) b(i, j) = detail::draw_rational(rng);
      if (rank(b) == d) {
        g.blocks.push_back(std::move(b));
        break;
      }
    }
  }
  return g;
}

}  // namespace kq
