#pragma once

// JSON encodings:
//   Rational   "p/q" or "p"
//   RatMatrix  {"rows": r, "cols": c, "entries": [[...], ...]}
//   Partition  [l1, l2, ...], two-row vertices padded to [a, b]
//   GrPoint    {"n": n, "matrix": [[...], [...]]}
//   QuiverRep  {"n": n, "arrows": [{"tail", "head", "rho", "matrix"}, ...]}

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "kq/error.hpp"
#include "kq/exact_linalg.hpp"
#include "kq/moduli.hpp"
#include "kq/partitions.hpp"
#include "kq/schur_fiber.hpp"
#include "kq/tilting_quiver.hpp"

namespace kq::json {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& x) { return to_string(x); }

inline Json to_json(const RatMatrix& m) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    entries.push_back(std::move(row));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline Json to_json(const Partition& p) { return p.padded(std::max<std::size_t>(2, p.length())); }

inline Json to_json(const GrPoint& y) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < 2; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < y.matrix.cols(); ++j) row.push_back(to_string(y.matrix(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"n", y.n}, {"matrix", std::move(rows)}};
}

inline Json to_json(const Arrow& a) {
  return Json{{"tail", to_json(a.tail)}, {"head", to_json(a.head)}, {"kind", a.direction == 1 ? "f" : "g"},
              {"rho", a.rho}};
}

inline Json to_json(const Path& p) {
  Json arrows = Json::array();
  for (const auto& a : p.arrows) arrows.push_back(to_json(a));
  return Json{{"order", "right_to_left"}, {"label", p.label()}, {"tail", to_json(p.tail())},
              {"arrows", std::move(arrows)}};
}

inline Json to_json(const RelationElement& r) {
  Json terms = Json::array();
  for (const auto& [p, c] : r.terms.terms()) terms.push_back(Json{{"coeff", to_string(c)}, {"path", to_json(p)}});
  return Json{{"family", r.family}, {"tail", to_json(r.lhs_vertex)}, {"head", to_json(r.rhs_vertex)},
              {"i", r.i},         {"j", r.j},                     {"label", r.label()},
              {"terms", std::move(terms)}};
}

inline Json to_json(const QuiverRep& rep) {
  Json arrows = Json::array();
  for (std::size_t a = 0; a < rep.quiver.arrows.size(); ++a) {
    const Arrow& ar = rep.quiver.arrows[a];
    arrows.push_back(Json{{"tail", to_json(ar.tail)}, {"head", to_json(ar.head)}, {"rho", ar.rho},
                          {"matrix", to_json(rep.matrices[a])}});
  }
  return Json{{"n", rep.n()}, {"arrows", std::move(arrows)}};
}

inline Json to_json(const GaugeElement& g, const TiltingQuiver& q) {
  Json blocks = Json::array();
  for (std::size_t v = 0; v < q.vertices.size(); ++v)
    blocks.push_back(Json{{"vertex", to_json(q.vertices[v])}, {"matrix", to_json(g.blocks[v])}});
  return blocks;
}

inline Json to_json(const StabilityReport& s) {
  Json vertices = Json::array();
  for (const auto& v : s.vertices)
    vertices.push_back(Json{{"vertex", to_json(v.vertex)},
                            {"dim", v.expected_dim},
                            {"shape", Json::array({v.rows, v.cols})},
                            {"rank", v.rank},
                            {"ok", v.ok}});
  return Json{{"vertices", std::move(vertices)}, {"ok", s.ok}};
}

inline Json to_json(const RelationViolation& v) {
  return Json{{"relation", v.relation.label()},
              {"family", v.relation.family},
              {"tail", to_json(v.relation.lhs_vertex)},
              {"i", v.relation.i},
              {"j", v.relation.j},
              {"residual", to_json(v.residual)}};
}

// ---- parsing -------------------------------------------------------------

[[noreturn]] inline void malformed(const std::string& what) { throw Error(Errc::MalformedInput, what); }

inline Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
}

inline Rational rational_from(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  malformed("expected a rational as \"p/q\" or an integer");
}

inline int int_from(const Json& j, const char* what) {
  if (!j.is_number_integer()) malformed(std::string(what) + " must be an integer");
  return j.get<int>();
}

inline Partition partition_from(const Json& j) {
  if (!j.is_array()) malformed("partition must be an array of integers");
  std::vector<int> parts;
  for (const auto& x : j) parts.push_back(int_from(x, "partition part"));
  try {
    return Partition(std::move(parts));
  } catch (const Error& e) {
    malformed(e.what());
  }
}

inline RatMatrix rows_from(const Json& rows) {
  if (!rows.is_array()) malformed("matrix entries must be an array of rows");
  std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
  RatMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!rows[i].is_array() || rows[i].size() != c) malformed("matrix rows must have equal length");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = rational_from(rows[i][k]);
  }
  return m;
}

inline RatMatrix matrix_from(const Json& j) {
  if (j.is_array()) return rows_from(j);
  if (!j.is_object() || !j.contains("entries")) malformed("matrix must be {\"rows\", \"cols\", \"entries\"}");
  RatMatrix m = rows_from(j.at("entries"));
  if (j.contains("rows") && static_cast<std::size_t>(int_from(j.at("rows"), "rows")) != m.rows())
    malformed("matrix row count disagrees with entries");
  if (j.contains("cols") && static_cast<std::size_t>(int_from(j.at("cols"), "cols")) != m.cols()) {
    if (m.rows() != 0) malformed("matrix column count disagrees with entries");
    m = RatMatrix(0, static_cast<std::size_t>(j.at("cols").get<int>()));
  }
  return m;
}

/// Reads a point and brings it to reduced form.
inline GrPoint point_from(const Json& j) {
  if (!j.is_object() || !j.contains("matrix")) malformed("point must be {\"n\", \"matrix\"}");
  RatMatrix m = matrix_from(j.at("matrix"));
  if (m.rows() != 2) malformed("point matrix must have two rows");
  if (j.contains("n") && static_cast<std::size_t>(int_from(j.at("n"), "n")) != m.cols())
    malformed("point n disagrees with the matrix width");
  if (m.cols() < 4) throw Error(Errc::BadN, "n must be at least 4");
  try {
    return reduce_point(m);
  } catch (const Error& e) {
    malformed(e.what());
  }
}

inline QuiverRep rep_from(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("arrows")) malformed("representation must be {\"n\", \"arrows\"}");
  int n = int_from(j.at("n"), "n");
  if (n < 4) throw Error(Errc::BadN, "n must be at least 4");
  QuiverRep rep{build_quiver(n), {}};
  rep.matrices.resize(rep.quiver.arrows.size());
  std::vector<bool> seen(rep.quiver.arrows.size(), false);
  if (!j.at("arrows").is_array()) malformed("arrows must be an array");
  for (const auto& a : j.at("arrows")) {
    if (!a.is_object() || !a.contains("tail") || !a.contains("head") || !a.contains("rho") || !a.contains("matrix"))
      malformed("each arrow needs tail, head, rho and matrix");
    Partition tail = partition_from(a.at("tail")), head = partition_from(a.at("head"));
    int rho = int_from(a.at("rho"), "rho");
    int dir = 0;
    if (head[0] == tail[0] + 1 && head[1] == tail[1]) dir = 1;
    if (head[0] == tail[0] && head[1] == tail[1] + 1) dir = 2;
    if (dir == 0) malformed("no arrow from (" + tail.str(2) + ") to (" + head.str(2) + ")");
    std::size_t idx = 0;
    try {
      idx = rep.quiver.arrow_index(tail, dir, rho);
    } catch (const Error&) {
      malformed("no arrow from (" + tail.str(2) + ") to (" + head.str(2) + ") with rho " + std::to_string(rho));
    }
    if (seen[idx]) malformed("arrow listed twice");
    seen[idx] = true;
    rep.matrices[idx] = matrix_from(a.at("matrix"));
  }
  for (bool s : seen)
    if (!s) malformed("every arrow of the quiver needs a matrix");
  try {
    rep.validate();
  } catch (const Error& e) {
    malformed(e.what());
  }
  return rep;
}

}  // namespace kq::json
