#pragma once

// The tilting quiver of Gr(n,2), its relations, and graded dimensions of the
// path algebra modulo the relation ideal.
//
// Paths are stored tail first: arrows[0] is traversed first. In algebra
// notation the same path is written right to left, e.g. g_j f^lambda_i is
// stored as {f_i at lambda, g_j at lambda + e1}.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kq/error.hpp"
#include "kq/exact_linalg.hpp"
#include "kq/partitions.hpp"
#include "kq/schur_fiber.hpp"

namespace kq {

struct Arrow {
  Partition tail;
  Partition head;
  int direction = 1;  // 1: f-type (lambda -> lambda + e1), 2: g-type (lambda -> lambda + e2)
  int rho = 1;        // basis vector u_rho, 1-based

  friend bool operator==(const Arrow&, const Arrow&) = default;
  friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

struct Path {
  Partition start;            // tail vertex, needed for the empty path
  std::vector<Arrow> arrows;  // tail first

  std::size_t length() const noexcept { return arrows.size(); }
  const Partition& tail() const { return start; }
  const Partition& head() const { return arrows.empty() ? start : arrows.back().head; }

  /// Right-to-left label such as "g_3 f^(2,0)_1".
  std::string label() const {
    if (arrows.empty()) return "e_(" + start.str(2) + ")";
    std::string s;
    for (std::size_t k = arrows.size(); k-- > 0;) {
      const Arrow& a = arrows[k];
      if (!s.empty()) s += ' ';
      s += a.direction == 1 ? 'f' : 'g';
      if (k == 0) s += "^(" + a.tail.str(2) + ")";
      s += "_" + std::to_string(a.rho);
    }
    return s;
  }

  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;
};

inline int degree(const Partition& lambda) { return lambda.size(); }

/// Vertex order: by |lambda|, then lambda_2.
inline bool vertex_less(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a[1] < b[1];
}

class TiltingQuiver {
 public:
  int n = 0;
  std::vector<Partition> vertices;
  std::vector<Arrow> arrows;  // ordered by (tail, direction, rho)

  std::size_t vertex_index(const Partition& v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v, vertex_less);
    if (it == vertices.end() || *it != v)
      throw Error(Errc::OutOfYoung, "(" + v.str(2) + ") is not a vertex of the quiver");
    return static_cast<std::size_t>(it - vertices.begin());
  }

  bool has_vertex(const Partition& v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v, vertex_less);
    return it != vertices.end() && *it == v;
  }

  std::size_t arrow_index(const Partition& tail, int direction, int rho) const {
    std::size_t first = arrow_begin_.at(vertex_index(tail));
    std::size_t last = arrow_begin_.at(vertex_index(tail) + 1);
    for (std::size_t a = first; a < last; ++a)
      if (arrows[a].direction == direction && arrows[a].rho == rho) return a;
    throw Error(Errc::OutOfYoung, "no such arrow");
  }

  /// Indices of arrows with the given tail, in arrow order.
  std::vector<std::size_t> outgoing(const Partition& v) const {
    std::size_t vi = vertex_index(v);
    std::vector<std::size_t> out;
    for (std::size_t a = arrow_begin_[vi]; a < arrow_begin_[vi + 1]; ++a) out.push_back(a);
    return out;
  }

  /// Indices of arrows with the given head: horizontal first, then
  /// vertical, each by rho ascending.
  std::vector<std::size_t> incoming(const Partition& v) const {
    std::vector<std::size_t> out;
    for (int dir : {1, 2})
      for (std::size_t a = 0; a < arrows.size(); ++a)
        if (arrows[a].head == v && arrows[a].direction == dir) out.push_back(a);
    return out;
  }

  int dim(const Partition& v) const { return fiber_dim(v); }

 private:
  friend TiltingQuiver build_quiver(int n);
  std::vector<std::size_t> arrow_begin_;  // arrows of vertex i: [begin[i], begin[i+1])
};

inline TiltingQuiver build_quiver(int n) {
  if (n < 4) throw Error(Errc::BadN, "n must be at least 4");
  TiltingQuiver q;
  q.n = n;
  for (int a = 0; a <= n - 2; ++a)
    for (int b = 0; b <= a; ++b) q.vertices.push_back(pair(a, b));
  std::sort(q.vertices.begin(), q.vertices.end(), vertex_less);
  for (const auto& v : q.vertices) {
    q.arrow_begin_.push_back(q.arrows.size());
    for (int dir : {1, 2}) {
      if (dir == 1 ? v[0] + 1 > n - 2 : v[1] + 1 > v[0]) continue;
      Partition head = dir == 1 ? pair(v[0] + 1, v[1]) : pair(v[0], v[1] + 1);
      for (int rho = 1; rho <= n; ++rho) q.arrows.push_back({v, head, dir, rho});
    }
  }
  q.arrow_begin_.push_back(q.arrows.size());
  return q;
}

struct RelationElement {
  int family = 0;  // 1: f f, 2: g g, 3: diagonal g f, 4: square
  Partition lhs_vertex;  // tail
  Partition rhs_vertex;  // head
  int i = 0, j = 0;
  LinComb<Path> terms;

  /// Terms listed with horizontal-first paths before vertical-first ones.
  std::string label() const {
    std::vector<std::pair<Path, Rational>> sorted(terms.terms().begin(), terms.terms().end());
    auto key = [](const Path& p) {
      std::vector<std::pair<int, int>> k;
      for (const auto& a : p.arrows) k.emplace_back(a.direction, a.rho);
      return k;
    };
    std::stable_sort(sorted.begin(), sorted.end(), [&](const auto& a, const auto& b) { return key(a.first) < key(b.first); });
    std::string s;
    for (const auto& [p, c] : sorted) {
      std::string cs = to_string(c);
      if (s.empty()) {
        s = cs + " " + p.label();
      } else if (sgn(c) < 0) {
        s += " - " + to_string(Rational(-c)) + " " + p.label();
      } else {
        s += " + " + cs + " " + p.label();
      }
    }
    return s;
  }
};

namespace detail {

inline Path two_step(const TiltingQuiver& q, const Partition& lambda, int dir1, int rho1, int dir2, int rho2) {
  const Arrow& a1 = q.arrows[q.arrow_index(lambda, dir1, rho1)];
  const Arrow& a2 = q.arrows[q.arrow_index(a1.head, dir2, rho2)];
  return Path{lambda, {a1, a2}};
}

}  // namespace detail

/// Generators of the relation ideal, one family per pair of vertices joined
/// by paths of length two. Antisymmetric families emit each pair i < j once;
/// the diagonal family emits i <= j; the square family emits all (i, j).
inline std::vector<RelationElement> relation_sets(const TiltingQuiver& q) {
  using detail::two_step;
  std::vector<RelationElement> out;
  const int n = q.n;
  for (const auto& lam : q.vertices) {
    const int a = lam[0], b = lam[1];
    // (1) f_j f_i - f_i f_j
    if (a + 2 <= n - 2) {
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
          RelationElement r{1, lam, pair(a + 2, b), i, j, {}};
          r.terms.add(two_step(q, lam, 1, i, 1, j), 1);
          r.terms.add(two_step(q, lam, 1, j, 1, i), -1);
          out.push_back(std::move(r));
        }
    }
    // (2) g_j g_i - g_i g_j
    if (b + 2 <= a) {
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
          RelationElement r{2, lam, pair(a, b + 2), i, j, {}};
          r.terms.add(two_step(q, lam, 2, i, 2, j), 1);
          r.terms.add(two_step(q, lam, 2, j, 2, i), -1);
          out.push_back(std::move(r));
        }
    }
    if (a + 1 <= n - 2) {
      if (a == b) {
        // (3) g_j f_i + g_i f_j
        for (int i = 1; i <= n; ++i)
          for (int j = i; j <= n; ++j) {
            RelationElement r{3, lam, pair(a + 1, b + 1), i, j, {}};
            r.terms.add(two_step(q, lam, 1, i, 2, j), 1);
            r.terms.add(two_step(q, lam, 1, j, 2, i), 1);
            out.push_back(std::move(r));
          }
      } else {
        // (4) d g_j f_i - (d+1) f_i g_j + f_j g_i, d = lambda_1 - lambda_2
        const long d = a - b;
        for (int i = 1; i <= n; ++i)
          for (int j = 1; j <= n; ++j) {
            RelationElement r{4, lam, pair(a + 1, b + 1), i, j, {}};
            r.terms.add(two_step(q, lam, 1, i, 2, j), Rational(d));
            r.terms.add(two_step(q, lam, 2, j, 1, i), Rational(-(d + 1)));
            r.terms.add(two_step(q, lam, 2, i, 1, j), 1);
            out.push_back(std::move(r));
          }
      }
    }
  }
  return out;
}

inline std::vector<RelationElement> relation_sets(int n) { return relation_sets(build_quiver(n)); }

/// Number of monotone routes from lambda to mu inside the quiver.
inline std::uint64_t route_count(const TiltingQuiver& q, const Partition& lambda, const Partition& mu) {
  if (!q.has_vertex(lambda) || !q.has_vertex(mu) || !contains(lambda, mu)) return 0;
  if (lambda == mu) return 1;
  std::uint64_t total = 0;
  if (q.has_vertex(pair(lambda[0] + 1, lambda[1]))) total += route_count(q, pair(lambda[0] + 1, lambda[1]), mu);
  if (lambda[1] < lambda[0]) total += route_count(q, pair(lambda[0], lambda[1] + 1), mu);
  return total;
}

/// Maximum path-space size accepted by the graded computations; KQ_MAX_PATHS
/// overrides the default of one million.
inline std::uint64_t max_paths() {
  if (const char* env = std::getenv("KQ_MAX_PATHS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 1'000'000;
}

inline std::uint64_t path_count(const TiltingQuiver& q, const Partition& lambda, const Partition& mu) {
  std::uint64_t routes = route_count(q, lambda, mu);
  std::uint64_t p = routes;
  for (int k = 0; k < degree(mu) - degree(lambda); ++k) p *= static_cast<std::uint64_t>(q.n);
  return p;
}

namespace detail {

using PathCode = std::vector<std::uint16_t>;  // arrow indices, tail first

inline void check_path_budget(const TiltingQuiver& q, const Partition& lambda, const Partition& mu) {
  std::uint64_t count = path_count(q, lambda, mu);
  if (count > max_paths())
    throw Error(Errc::PathSpaceTooLarge, std::to_string(count) + " paths from (" + lambda.str(2) +
                                             ") to (" + mu.str(2) + ") exceed the limit of " +
                                             std::to_string(max_paths()));
}

inline std::vector<PathCode> path_codes(const TiltingQuiver& q, const Partition& lambda, const Partition& mu) {
  std::vector<PathCode> out;
  if (!contains(lambda, mu)) return out;
  PathCode cur;
  auto rec = [&](auto&& self, const Partition& at) -> void {
    if (at == mu) {
      out.push_back(cur);
      return;
    }
    for (std::size_t a : q.outgoing(at)) {
      if (!contains(q.arrows[a].head, mu)) continue;
      cur.push_back(static_cast<std::uint16_t>(a));
      self(self, q.arrows[a].head);
      cur.pop_back();
    }
  };
  rec(rec, lambda);
  return out;
}

inline Path decode(const TiltingQuiver& q, const Partition& start, const PathCode& code) {
  Path p{start, {}};
  for (auto a : code) p.arrows.push_back(q.arrows[a]);
  return p;
}

inline PathCode encode(const TiltingQuiver& q, const Path& p) {
  PathCode code;
  for (const auto& a : p.arrows) code.push_back(static_cast<std::uint16_t>(q.arrow_index(a.tail, a.direction, a.rho)));
  return code;
}

// Multiset of arrow labels. Every relation is homogeneous for it, so the
// path space and the ideal split into blocks indexed by content.
inline std::vector<std::uint8_t> content(const TiltingQuiver& q, const PathCode& code) {
  std::vector<std::uint8_t> c;
  for (auto a : code) c.push_back(static_cast<std::uint8_t>(q.arrows[a].rho));
  std::sort(c.begin(), c.end());
  return c;
}

using SparseVec = std::vector<std::pair<PathCode, Rational>>;

struct CodedRelation {
  std::size_t tail, head;  // vertex indices
  SparseVec terms;
};

inline std::vector<CodedRelation> coded_relations(const TiltingQuiver& q) {
  std::vector<CodedRelation> out;
  for (const auto& r : relation_sets(q)) {
    CodedRelation c{q.vertex_index(r.lhs_vertex), q.vertex_index(r.rhs_vertex), {}};
    for (const auto& [p, coeff] : r.terms.terms()) c.terms.emplace_back(encode(q, p), coeff);
    out.push_back(std::move(c));
  }
  return out;
}

// Row spaces of one graded piece e_mu kTQ e_lambda, one per content block.
class BlockedSpan {
 public:
  BlockedSpan(const TiltingQuiver& q, const Partition& lambda, const Partition& mu) : q_(q) {
    for (auto& code : path_codes(q, lambda, mu)) {
      auto& block = blocks_[content(q, code)];
      index_[code] = {&block, block.paths.size()};
      block.paths.push_back(std::move(code));
    }
    for (auto& [c, block] : blocks_) block.space.emplace(block.paths.size());
  }

  std::size_t path_count() const { return index_.size(); }

  void insert(const SparseVec& v) {
    if (v.empty()) return;
    Block* block = index_.at(v.front().first).first;
    std::vector<Rational> dense(block->paths.size());
    for (const auto& [code, c] : v) {
      auto [b, col] = index_.at(code);
      if (b != block) throw Error(Errc::InvalidArgument, "generator is not weight-homogeneous");
      dense[col] += c;
    }
    block->space->insert(dense);
  }

  /// Marks a single path (used to test spanning sets of the quotient).
  void insert_path(const PathCode& code) { insert({{code, Rational(1)}}); }

  std::size_t dim() const {
    std::size_t d = 0;
    for (const auto& [c, block] : blocks_) d += block.space->dim();
    return d;
  }

  std::vector<SparseVec> basis() const {
    std::vector<SparseVec> out;
    for (const auto& [c, block] : blocks_)
      for (const auto& row : block.space->basis()) {
        SparseVec v;
        for (std::size_t k = 0; k < row.size(); ++k)
          if (sgn(row[k]) != 0) v.emplace_back(block.paths[k], Rational(row[k]));
        out.push_back(std::move(v));
      }
    return out;
  }

 private:
  struct Block {
    std::vector<PathCode> paths;
    std::optional<RowSpace> space;
  };

  const TiltingQuiver& q_;
  std::map<std::vector<std::uint8_t>, Block> blocks_;
  std::map<PathCode, std::pair<Block*, std::size_t>> index_;
};

inline SparseVec concat(const PathCode& before, const SparseVec& v, const PathCode& after) {
  SparseVec out;
  out.reserve(v.size());
  for (const auto& [code, c] : v) {
    PathCode p = before;
    p.insert(p.end(), code.begin(), code.end());
    p.insert(p.end(), after.begin(), after.end());
    out.emplace_back(std::move(p), c);
  }
  return out;
}

// Basis of e_mu I e_lambda, built degree by degree:
//   e_mu I e_lambda = sum_a a . (e_mu' I e_lambda) + sum_r r . (paths lambda -> tl(r)).
class IdealBuilder {
 public:
  explicit IdealBuilder(const TiltingQuiver& q) : q_(q), relations_(coded_relations(q)) {}

  const std::vector<SparseVec>& piece(const Partition& lambda, const Partition& mu) {
    auto key = std::make_pair(q_.vertex_index(lambda), q_.vertex_index(mu));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<SparseVec> basis;
    if (contains(lambda, mu) && degree(mu) - degree(lambda) >= 2) {
      check_path_budget(q_, lambda, mu);
      BlockedSpan span(q_, lambda, mu);
      for (std::size_t a : q_.incoming(mu)) {
        const Partition& prev = q_.arrows[a].tail;
        if (!contains(lambda, prev) || degree(prev) - degree(lambda) < 2) continue;
        PathCode suffix{static_cast<std::uint16_t>(a)};
        for (const auto& x : piece(lambda, prev)) span.insert(concat({}, x, suffix));
      }
      for (const auto& r : relations_) {
        if (r.head != key.second) continue;
        const Partition& mid = q_.vertices[r.tail];
        if (!contains(lambda, mid)) continue;
        for (const auto& s : path_codes(q_, lambda, mid)) span.insert(concat(s, r.terms, {}));
      }
      basis = span.basis();
    }
    return memo_.emplace(key, std::move(basis)).first->second;
  }

  const std::vector<CodedRelation>& relations() const { return relations_; }

 private:
  const TiltingQuiver& q_;
  std::vector<CodedRelation> relations_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<SparseVec>> memo_;
};

}  // namespace detail

/// All monomial paths from lambda to mu, in lexicographic order of arrow
/// indices.
inline std::vector<Path> enumerate_paths(const TiltingQuiver& q, const Partition& lambda, const Partition& mu) {
  q.vertex_index(lambda);
  q.vertex_index(mu);
  detail::check_path_budget(q, lambda, mu);
  std::vector<Path> out;
  for (const auto& code : detail::path_codes(q, lambda, mu)) out.push_back(detail::decode(q, lambda, code));
  return out;
}

/// dim e_mu I e_lambda for the ideal I generated by relation_sets.
inline std::size_t graded_ideal_dim(const TiltingQuiver& q, const Partition& lambda, const Partition& mu) {
  q.vertex_index(lambda);
  q.vertex_index(mu);
  detail::IdealBuilder builder(q);
  return builder.piece(lambda, mu).size();
}

/// Same dimension from the span of every product p . r . s directly.
inline std::size_t graded_ideal_dim_direct(const TiltingQuiver& q, const Partition& lambda, const Partition& mu) {
  q.vertex_index(lambda);
  q.vertex_index(mu);
  if (!contains(lambda, mu) || degree(mu) - degree(lambda) < 2) return 0;
  detail::check_path_budget(q, lambda, mu);
  detail::BlockedSpan span(q, lambda, mu);
  for (const auto& r : detail::coded_relations(q)) {
    const Partition& mid1 = q.vertices[r.tail];
    const Partition& mid2 = q.vertices[r.head];
    if (!contains(lambda, mid1) || !contains(mid2, mu)) continue;
    auto prefixes = detail::path_codes(q, lambda, mid1);
    auto suffixes = detail::path_codes(q, mid2, mu);
    for (const auto& s : prefixes)
      for (const auto& p : suffixes) span.insert(detail::concat(s, r.terms, p));
  }
  return span.dim();
}

inline std::size_t quotient_dim(const TiltingQuiver& q, const Partition& lambda, const Partition& mu) {
  return path_count(q, lambda, mu) - graded_ideal_dim(q, lambda, mu);
}

/// True when paths along the staircase route (all horizontal arrows before
/// any vertical one) together with the ideal span the whole path space.
inline bool staircase_paths_span_quotient(const TiltingQuiver& q, const Partition& lambda, const Partition& mu) {
  detail::check_path_budget(q, lambda, mu);
  detail::IdealBuilder builder(q);
  detail::BlockedSpan span(q, lambda, mu);
  for (const auto& v : builder.piece(lambda, mu)) span.insert(v);
  for (const auto& code : detail::path_codes(q, lambda, mu)) {
    bool seen_vertical = false, normal = true;
    for (auto a : code) {
      if (q.arrows[a].direction == 2) seen_vertical = true;
      else if (seen_vertical) normal = false;
    }
    if (normal) span.insert_path(code);
  }
  return span.dim() == span.path_count();
}

}  // namespace kq
