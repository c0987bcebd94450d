#pragma once

// Command-line front end. `run` is kept in a header so tests can drive it
// with an ostream instead of spawning a process.
//
// Exit codes: 0 success, 1 a verification failed, 2 malformed input.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kq/error.hpp"
#include "kq/exact_linalg.hpp"
#include "kq/json_io.hpp"
#include "kq/moduli.hpp"
#include "kq/partitions.hpp"
#include "kq/schur_fiber.hpp"
#include "kq/tilting_quiver.hpp"
#include "kq/verify.hpp"

namespace kq::cli {

using json::Json;
using json::to_json;

struct Options {
  int n = 0;
  std::string lam, mu, gamma;
  std::string point, rep;
  std::string kind = "f";
  int k = 0;
  std::string x;
  std::size_t trials = 100;
  std::size_t samples = 40;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  int max_degree = -1;
  bool json = false;
  bool timing = false;
};

inline Partition partition_arg(const std::string& s, const char* flag) {
  std::vector<int> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size())
      throw Error(Errc::MalformedInput, std::string(flag) + " expects comma separated integers, got \"" + s + "\"");
    parts.push_back(v);
  }
  return Partition(std::move(parts));
}

inline Partition required_partition(const std::string& s, const char* flag) {
  if (s.empty()) throw Error(Errc::MalformedInput, std::string(flag) + " is required");
  return partition_arg(s, flag);
}

inline int grassmannian_n(int n) {
  if (n < 4) throw Error(Errc::BadN, "--n must be at least 4");
  return n;
}

inline Json read_json_file(const std::string& path, const char* flag) {
  if (path.empty()) throw Error(Errc::MalformedInput, std::string(flag) + " is required");
  std::ifstream in(path);
  if (!in) throw Error(Errc::MalformedInput, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return json::parse(buf.str());
}

// A file may hold the object itself or a report whose results carry it.
inline const Json& unwrap(const Json& j, const char* key) {
  if (j.is_object() && j.contains("results") && j.at("results").is_object() && j.at("results").contains(key))
    return j.at("results").at(key);
  return j;
}

inline Json two_row(const Partition& p) { return to_json(p); }

inline Json kernel_json(const KernelCheck& c) {
  return Json{{"lambda", two_row(c.lambda)}, {"mu", two_row(c.mu)},       {"paths", c.paths},
              {"ideal_dim", c.ideal_dim},    {"quotient_dim", c.quotient_dim}, {"hom_dim", c.hom_dim},
              {"ok", c.ok}};
}

inline Json surjectivity_json(const SurjectivityCheck& c) {
  return Json{{"lambda", two_row(c.lambda)}, {"mu", two_row(c.mu)}, {"words", c.words}, {"samples", c.samples},
              {"rank", c.rank},              {"hom_dim", c.hom_dim}, {"ok", c.ok}};
}

struct Outcome {
  Json inputs = Json::object();
  Json results = Json::object();
  bool ok = true;
};

// ---- subcommands ---------------------------------------------------------

inline Outcome cmd_lr(const Options& o) {
  Partition lam = partition_arg(o.lam, "--lam"), gam = partition_arg(o.gamma, "--gamma");
  Partition mu = required_partition(o.mu, "--mu");
  Outcome r;
  r.inputs = {{"lam", lam.parts()}, {"gamma", gam.parts()}, {"mu", mu.parts()}};
  r.results = {{"c", lr_number(lam, gam, mu)}};
  return r;
}

inline Outcome cmd_ssyt_count(const Options& o) {
  Partition outer = required_partition(o.mu, "--mu"), inner = partition_arg(o.lam, "--lam");
  if (o.n < 1) throw Error(Errc::MalformedInput, "--n (largest entry) must be positive");
  SkewShape shape(inner, outer);
  Outcome r;
  r.inputs = {{"shape", {{"inner", inner.parts()}, {"outer", outer.parts()}}}, {"n", o.n}};
  r.results = {{"count", count_ssyt(shape, o.n)}};
  return r;
}

inline Outcome cmd_gamma(const Options& o) {
  Partition lam = required_partition(o.lam, "--lam"), mu = required_partition(o.mu, "--mu");
  Outcome r;
  r.inputs = {{"lam", two_row(lam)}, {"mu", two_row(mu)}};
  Json gs = Json::array();
  for (const auto& g : gamma_set(lam, mu)) gs.push_back(two_row(g));
  r.results = {{"gamma", std::move(gs)}};
  return r;
}

inline Outcome cmd_gl_dim(const Options& o) {
  Partition gam = partition_arg(o.gamma, "--gamma");
  if (o.n < 1) throw Error(Errc::MalformedInput, "--n must be positive");
  Outcome r;
  r.inputs = {{"gamma", gam.parts()}, {"n", o.n}};
  r.results = {{"dim", gl_dimension(gam, o.n)}};
  return r;
}

inline Outcome cmd_hom_dim(const Options& o) {
  int n = grassmannian_n(o.n);
  Partition lam = required_partition(o.lam, "--lam"), mu = required_partition(o.mu, "--mu");
  Outcome r;
  r.inputs = {{"n", n}, {"lam", two_row(lam)}, {"mu", two_row(mu)}};
  Json gs = Json::array(), dims = Json::array();
  std::uint64_t total = 0;
  for (const auto& g : gamma_set(lam, mu)) {
    gs.push_back(two_row(g));
    dims.push_back(gl_dimension(g, n));
    total += gl_dimension(g, n);
  }
  r.results = {{"gamma", std::move(gs)}, {"dims", std::move(dims)}, {"total", total}};
  return r;
}

inline Outcome cmd_quiver(const Options& o) {
  const TiltingQuiver q = build_quiver(grassmannian_n(o.n));
  Outcome r;
  r.inputs = {{"n", q.n}};
  Json vs = Json::array(), as = Json::array();
  for (const auto& v : q.vertices) vs.push_back(Json{{"vertex", two_row(v)}, {"dim", fiber_dim(v)}});
  for (const auto& a : q.arrows) as.push_back(to_json(a));
  r.results = {{"vertex_count", q.vertices.size()},
               {"arrow_count", q.arrows.size()},
               {"vertices", std::move(vs)},
               {"arrows", std::move(as)}};
  return r;
}

inline Outcome cmd_relations(const Options& o) {
  const TiltingQuiver q = build_quiver(grassmannian_n(o.n));
  std::optional<Partition> lam, mu;
  Outcome r;
  r.inputs = {{"n", q.n}};
  if (!o.lam.empty()) r.inputs["lam"] = two_row(*(lam = partition_arg(o.lam, "--lam")));
  if (!o.mu.empty()) r.inputs["mu"] = two_row(*(mu = partition_arg(o.mu, "--mu")));
  Json rels = Json::array();
  for (const auto& rel : relation_sets(q)) {
    if (lam && rel.lhs_vertex != *lam) continue;
    if (mu && rel.rhs_vertex != *mu) continue;
    rels.push_back(to_json(rel));
  }
  r.results = {{"count", rels.size()}, {"relations", std::move(rels)}};
  return r;
}

inline Outcome cmd_fg_matrix(const Options& o) {
  if (o.kind != "f" && o.kind != "g") throw Error(Errc::MalformedInput, "--kind must be f or g");
  std::vector<Rational> xs;
  std::stringstream in(o.x);
  std::string item;
  while (std::getline(in, item, ',')) xs.push_back(parse_rational(item));
  if (xs.size() != 2) throw Error(Errc::MalformedInput, "--x expects two rationals \"p/q,p/q\"");
  RatMatrix m = o.kind == "f" ? f_matrix(o.k, {xs[0], xs[1]}) : g_matrix(o.k, {xs[0], xs[1]});
  Outcome r;
  r.inputs = {{"kind", o.kind}, {"k", o.k}, {"x", {to_string(xs[0]), to_string(xs[1])}}};
  r.results = {{"matrix", to_json(m)}};
  return r;
}

inline GrPoint point_input(const Options& o, Outcome& r) {
  if (!o.point.empty()) {
    GrPoint y = json::point_from(unwrap(read_json_file(o.point, "--point"), "point"));
    if (o.n != 0 && o.n != y.n) throw Error(Errc::MalformedInput, "--n disagrees with the point file");
    r.inputs["point"] = o.point;
    return y;
  }
  int n = grassmannian_n(o.n);
  r.inputs["n"] = n;
  r.inputs["seed"] = o.seed;
  return random_point(n, o.seed);
}

inline Outcome cmd_embed(const Options& o) {
  Outcome r;
  GrPoint y = point_input(o, r);
  r.results = {{"point", to_json(y)}, {"rep", to_json(embed(y))}};
  return r;
}

inline Json violations_json(const std::vector<RelationViolation>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

inline Outcome cmd_check(const Options& o) {
  QuiverRep rep = json::rep_from(unwrap(read_json_file(o.rep, "--rep"), "rep"));
  Outcome r;
  r.inputs = {{"rep", o.rep}};
  StabilityReport s = check_stability(rep);
  auto vs = check_relations(rep);
  r.ok = s.ok && vs.empty();
  r.results = {{"stability", to_json(s)}, {"violations", violations_json(vs)}, {"ok", r.ok}};
  return r;
}

inline Outcome cmd_reconstruct(const Options& o) {
  QuiverRep rep = json::rep_from(unwrap(read_json_file(o.rep, "--rep"), "rep"));
  Outcome r;
  r.inputs = {{"rep", o.rep}};
  try {
    Reconstruction rec = reconstruct(rep);
    r.results = {{"point", to_json(rec.point)}, {"gauge", to_json(rec.gauge, rep.quiver)}};
  } catch (const Error& e) {
    if (e.code() != Errc::NotStable && e.code() != Errc::RelationsViolated && e.code() != Errc::NotInImage) throw;
    r.ok = false;
    r.results = {{"error", errc_name(e.code())}, {"message", e.what()}};
  }
  return r;
}

inline std::vector<std::pair<Partition, Partition>> pairs_input(const TiltingQuiver& q, const Options& o,
                                                               int default_max, Outcome& r) {
  if (!o.lam.empty() || !o.mu.empty()) {
    Partition lam = required_partition(o.lam, "--lam"), mu = required_partition(o.mu, "--mu");
    q.vertex_index(lam);
    q.vertex_index(mu);
    if (!contains(lam, mu)) throw Error(Errc::NotContained, "--lam must be contained in --mu");
    r.inputs["lam"] = two_row(lam);
    r.inputs["mu"] = two_row(mu);
    return {{lam, mu}};
  }
  int max_degree = o.max_degree >= 0 ? o.max_degree : default_max;
  r.inputs["max_degree"] = max_degree;
  return vertex_pairs(q, 0, max_degree);
}

inline Outcome cmd_verify_kernel(const Options& o) {
  const TiltingQuiver q = build_quiver(grassmannian_n(o.n));
  Outcome r;
  r.inputs["n"] = q.n;
  auto pairs = pairs_input(q, o, 4, r);
  auto checks = verify_kernel(q, pairs, o.threads);
  if (checks.size() == 1 && r.inputs.contains("lam")) {
    const auto& c = checks.front();
    r.ok = c.ok;
    r.results = {{"paths", c.paths}, {"ideal_dim", c.ideal_dim}, {"quotient_dim", c.quotient_dim},
                 {"hom_dim", c.hom_dim}, {"ok", c.ok}};
    return r;
  }
  Json list = Json::array();
  std::size_t mismatches = 0;
  for (const auto& c : checks) {
    list.push_back(kernel_json(c));
    if (!c.ok) ++mismatches;
  }
  r.ok = mismatches == 0;
  r.results = {{"pairs", checks.size()}, {"mismatches", mismatches}, {"checks", std::move(list)}};
  return r;
}

inline Outcome cmd_verify_surjectivity(const Options& o) {
  const TiltingQuiver q = build_quiver(grassmannian_n(o.n));
  Outcome r;
  r.inputs["n"] = q.n;
  r.inputs["samples"] = o.samples;
  r.inputs["seed"] = o.seed;
  auto pairs = pairs_input(q, o, 3, r);
  for (const auto& [l, m] : pairs) detail::check_path_budget(q, l, m);
  auto checks = verify_surjectivity(q.n, pairs, o.samples, o.seed, o.threads);
  if (checks.size() == 1 && r.inputs.contains("lam")) {
    r.ok = checks.front().ok;
    r.results = surjectivity_json(checks.front());
    return r;
  }
  Json list = Json::array();
  std::size_t mismatches = 0;
  for (const auto& c : checks) {
    list.push_back(surjectivity_json(c));
    if (!c.ok) ++mismatches;
  }
  r.ok = mismatches == 0;
  r.results = {{"pairs", checks.size()}, {"mismatches", mismatches}, {"checks", std::move(list)}};
  return r;
}

inline Outcome cmd_verify_relations(const Options& o) {
  int n = grassmannian_n(o.n);
  Outcome r;
  r.inputs = {{"n", n}, {"samples", o.samples}, {"seed", o.seed}};
  SoundnessCheck c = verify_relations(n, o.samples, o.seed, o.threads);
  r.ok = c.ok;
  r.results = {{"points", c.points}, {"relations", c.relations}, {"failures", c.failures}, {"ok", c.ok}};
  return r;
}

inline Outcome cmd_roundtrip(const Options& o) {
  int n = grassmannian_n(o.n);
  Outcome r;
  r.inputs = {{"n", n}, {"trials", o.trials}, {"seed", o.seed}};
  RoundTripCheck c = roundtrip(n, o.trials, o.seed, o.threads);
  Json fails = Json::array();
  for (const auto& f : c.failures)
    fails.push_back(Json{{"trial", f.trial}, {"point_seed", f.point_seed}, {"gauge_seed", f.gauge_seed},
                         {"reason", f.reason}});
  r.ok = c.ok;
  r.results = {{"trials", c.trials}, {"passed", c.passed}, {"failures", std::move(fails)}, {"ok", c.ok}};
  return r;
}

// ---- output --------------------------------------------------------------

inline void render_text(std::ostream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar_array = [](const Json& a) {
    for (const auto& x : a)
      if (x.is_structured()) return false;
    return true;
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    out << pad << (j.is_object() ? it.key() : "-");
    if (v.is_primitive()) {
      out << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    } else if (v.is_array() && scalar_array(v)) {
      out << ": " << v.dump() << "\n";
    } else {
      out << (j.is_object() ? ":" : "") << "\n";
      render_text(out, v, indent + 2);
    }
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  Options o;
  CLI::App app{"Tilting quiver of Gr(n,2): relations, graded dimensions, moduli checks", "kq"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  struct Command {
    const char* name;
    const char* help;
    Outcome (*fn)(const Options&);
    std::vector<std::string> flags;
  };
  const std::vector<Command> commands{
      {"lr", "Littlewood-Richardson number c^mu_{lam,gamma}", cmd_lr, {"lam", "gamma", "mu"}},
      {"ssyt-count", "Semistandard tableaux of shape mu/lam with entries <= n", cmd_ssyt_count, {"n", "lam", "mu"}},
      {"gamma", "Two-row partitions gamma with S^gamma V in Hom(S^lam W, S^mu W)", cmd_gamma, {"lam", "mu"}},
      {"gl-dim", "Dimension of the GL(n) module S^gamma", cmd_gl_dim, {"gamma", "n"}},
      {"hom-dim", "Dimension of Hom(S^lam W, S^mu W) on Gr(n,2)", cmd_hom_dim, {"n", "lam", "mu"}},
      {"quiver", "Vertices and arrows of the tilting quiver", cmd_quiver, {"n"}},
      {"relations", "Generators of the relation ideal", cmd_relations, {"n", "lam", "mu"}},
      {"fg-matrix", "Matrix of an f- or g-type map on a rank-k fibre", cmd_fg_matrix, {"kind", "k", "x"}},
      {"embed", "Quiver representation of a point (from --point or --seed)", cmd_embed, {"n", "point", "seed"}},
      {"check", "Stability and relation check of a representation", cmd_check, {"rep"}},
      {"reconstruct", "Recover the point and gauge of a representation", cmd_reconstruct, {"rep"}},
      {"verify-kernel", "Compare path algebra quotient and Hom dimensions", cmd_verify_kernel,
       {"n", "lam", "mu", "max-degree", "threads"}},
      {"verify-surjectivity", "Evaluation rank of staircase compositions", cmd_verify_surjectivity,
       {"n", "lam", "mu", "max-degree", "samples", "seed", "threads"}},
      {"verify-relations", "Relations vanish on embedded random points", cmd_verify_relations,
       {"n", "samples", "seed", "threads"}},
      {"roundtrip", "reconstruct(scramble(embed(y), g)) on random trials", cmd_roundtrip,
       {"n", "trials", "seed", "threads"}},
  };

  const Command* chosen = nullptr;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->callback([&chosen, &c] { chosen = &c; });
    for (const auto& f : c.flags) {
      if (f == "n") sub->add_option("--n", o.n, "Grassmannian Gr(n,2), or GL(n) rank");
      if (f == "lam") sub->add_option("--lam", o.lam, "Partition a,b");
      if (f == "mu") sub->add_option("--mu", o.mu, "Partition c,d");
      if (f == "gamma") sub->add_option("--gamma", o.gamma, "Partition");
      if (f == "point") sub->add_option("--point", o.point, "Point JSON file");
      if (f == "rep") sub->add_option("--rep", o.rep, "Representation JSON file")->required();
      if (f == "kind") sub->add_option("--kind", o.kind, "f or g")->capture_default_str();
      if (f == "k") sub->add_option("--k", o.k, "Fibre rank")->required();
      if (f == "x") sub->add_option("--x", o.x, "Column as \"p/q,p/q\"")->required();
      if (f == "trials") sub->add_option("--trials", o.trials, "Number of trials")->capture_default_str();
      if (f == "samples") sub->add_option("--samples", o.samples, "Number of random points")->capture_default_str();
      if (f == "seed") sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
      if (f == "threads")
        sub->add_option("--threads", o.threads, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
      if (f == "max-degree") sub->add_option("--max-degree", o.max_degree, "Largest |mu| - |lam| in a sweep");
    }
    sub->add_flag("--json", o.json, "Machine-readable output");
    sub->add_flag("--timing", o.timing, "Include elapsed_ms in the report");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (chosen == nullptr) {
    err << "error: no subcommand\n";
    return 2;
  }

  Outcome result;
  const auto start = std::chrono::steady_clock::now();
  try {
    result = chosen->fn(o);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

  Json report{{"command", chosen->name}, {"inputs", result.inputs}, {"results", result.results}, {"ok", result.ok}};
  if (o.timing) report["elapsed_ms"] = elapsed;
  if (o.json) {
    out << report.dump(2) << "\n";
  } else {
    out << chosen->name << "\n";
    render_text(out, Json{{"inputs", report["inputs"]}, {"results", report["results"]}}, 0);
    out << "ok: " << (result.ok ? "true" : "false") << "\n";
    if (o.timing) out << "elapsed_ms: " << elapsed << "\n";
  }
  return result.ok ? 0 : 1;
}

}  // namespace kq::cli
