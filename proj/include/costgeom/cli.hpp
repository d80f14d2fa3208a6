#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "costgeom/betweenness.hpp"
#include "costgeom/chains.hpp"
#include "costgeom/core.hpp"
#include "costgeom/dress.hpp"
#include "costgeom/geometry.hpp"
#include "costgeom/io.hpp"
#include "costgeom/pretop.hpp"
#include "costgeom/tightspan.hpp"

namespace costgeom::cli {

using io::json;

enum ExitCode : int { kOk = 0, kInputError = 1, kViolated = 2, kInternalError = 3 };

/// Environment variable holding the default float tolerance.
inline constexpr const char* kToleranceEnv = "COSTGEOM_TOLERANCE";

struct RunConfig {
  std::string command;
  std::string subcommand;
  std::string input;
  std::string second;  // second cost space (products)
  std::string output;  // empty: the out stream
  std::optional<NumericMode> mode;
  double tolerance = kDefaultTolerance;
  std::string format;  // "json", "csv" or empty for the command default
  std::uint64_t seed = 1;

  bool check_axioms = false;
  bool all_triples = false;
  bool oracle = false;
  bool symmetrized = false;
  bool limit = false;
  double grid_step = 1e-3;
  std::vector<std::string> triple;
  std::vector<std::string> chain;
  std::vector<std::string> set;
  std::vector<std::string> labels;
  std::string from;
  std::string to;
  std::string point;
  std::size_t max_edges = 8;
  std::size_t max_iter = 20;
  std::string word;
  std::string word2;
  std::string structure;
  std::string vector;
  std::string query;
  std::string preclosure;
  std::string pairs;
  std::string pair;
  std::string f;
  std::string g;
  std::string radius = "1";
  std::string epsilon = "0";
  std::string scheme = "max";
  double p = 2.0;
};

/// Output text plus exit code of one command.
struct Report {
  std::string text;
  int code = kOk;
};

inline double default_tolerance() {
  if (const char* env = std::getenv(kToleranceEnv)) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0) return v;
  }
  return kDefaultTolerance;
}

namespace detail {

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline bool want_csv(const RunConfig& cfg, bool csv_default) {
  if (cfg.format.empty()) return csv_default;
  if (cfg.format == "csv") return true;
  if (cfg.format == "json") return false;
  throw ParameterError("unknown output format '" + cfg.format + "'");
}

inline void no_csv(const RunConfig& cfg) {
  if (want_csv(cfg, false)) throw ParameterError("'" + cfg.command + "' has no CSV output");
}

template <class T>
CostSpace<T> load(const std::string& path, const RunConfig& cfg) {
  if (path.empty()) throw InputError("--input is required for '" + cfg.command + "'");
  return io::to_space<T>(io::read_raw(path), cfg.tolerance);
}

template <class T>
T scalar(const std::string& text, const std::string& what) {
  auto v = parse_extended<T>(text);
  if (v.is_inf()) throw ParameterError(what + " must be finite");
  return v.value();
}

template <class T>
Index label_index(const CostSpace<T>& space, const std::string& label) {
  if (auto i = space.find(label)) return *i;
  throw InputError("unknown label '" + label + "'");
}

template <class T>
Report validate(const RunConfig& cfg) {
  no_csv(cfg);
  auto space = load<T>(cfg.input, cfg);
  auto report = validate_cost(space);
  const auto& L = space.labels();
  json ids = json::array();
  for (const auto& v : report.identity_violations) {
    ids.push_back({{"p", L[v.row]}, {"q", L[v.col]}, {"value", io::value_json(v.value)}});
  }
  json tris = json::array();
  for (const auto& v : report.triangle_violations) {
    tris.push_back({{"p", L[v.p]}, {"q", L[v.q]}, {"r", L[v.r]}, {"slack", io::value_json(v.slack)}});
  }
  auto consts = asymptotic_constants(space);
  json out = {{"valid", report.ok()},
              {"identity_violations", ids},
              {"triangle_violations", tris},
              {"asymptotic_constants",
               {{"identity", io::value_json(consts.identity)},
                {"triangle", io::value_json(consts.triangle)}}}};
  return {dump(out), report.ok() ? kOk : kViolated};
}

template <class T>
Report betweenness(const RunConfig& cfg) {
  auto space = load<T>(cfg.input, cfg);
  auto rel = derive_betweenness(space);
  if (want_csv(cfg, false)) {
    if (cfg.check_axioms) throw ParameterError("--check-axioms has no CSV output");
    auto triples = io::relation_json(rel);
    std::string text = "p,q,r\n";
    for (const auto& t : triples) {
      text += io::csv_cell(t[0]) + "," + io::csv_cell(t[1]) + "," + io::csv_cell(t[2]) + "\n";
    }
    return {text, kOk};
  }
  if (!cfg.check_axioms) return {dump(io::relation_json(rel)), kOk};
  auto report = check_axioms(rel);
  json violations = json::array();
  for (const auto& v : report.violations) {
    json premises = json::array();
    for (const auto& t : v.premises) premises.push_back(io::triple_json(rel.ground(), t));
    violations.push_back({{"axiom", to_string(v.axiom)},
                          {"premises", premises},
                          {"conclusion", io::triple_json(rel.ground(), v.conclusion)}});
  }
  json out = {{"triples", io::relation_json(rel)}, {"axioms_ok", report.ok()}, {"violations", violations}};
  return {dump(out), report.ok() ? kOk : kViolated};
}

template <class T>
Report chains(const RunConfig& cfg) {
  no_csv(cfg);
  auto space = load<T>(cfg.input, cfg);
  const auto& L = space.labels();
  if (cfg.subcommand == "classify") {
    if (cfg.chain.empty()) throw ParameterError("classify needs --chain");
    Chain chain;
    for (const auto& l : cfg.chain) chain.points.push_back(label_index(space, l));
    json out;
    try {
      out["length"] = io::value_json(chain_length(space, chain));
      out["tachistic"] = is_tachistic(space, chain);
    } catch (const DomainError&) {
      out["length"] = "inf";
      out["tachistic"] = false;
    }
    out["chronodesic_tight"] = is_chronodesic_tight(space, chain);
    return {dump(out), kOk};
  }
  // enumerate
  auto found = enumerate_tachistic_chains(space, label_index(space, cfg.from),
                                          label_index(space, cfg.to), cfg.max_edges);
  json out = json::array();
  for (const auto& c : found) {
    out.push_back({{"chain", io::chain_json(c.chain, L)},
                   {"length", io::value_json(chain_length(space, c.chain))},
                   {"maximal", c.maximal}});
  }
  return {dump(out), kOk};
}

template <class T>
Report dress(const RunConfig& cfg) {
  no_csv(cfg);
  std::optional<RewriteStructure> structure;
  if (!cfg.structure.empty()) structure = io::structure_from_json(io::json_argument(cfg.structure, "structure"));
  std::optional<CostSpace<T>> space;
  if (!cfg.input.empty()) space = load<T>(cfg.input, cfg);
  std::vector<std::string> ground;
  if (structure) {
    ground = structure->ground();
  } else if (space) {
    ground = space->labels();
  } else {
    ground = cfg.labels;
  }
  if (ground.empty()) throw ParameterError("dress needs --structure, --input or --labels for the ground");
  auto word = [&](const std::string& arg, const char* name) {
    if (arg.empty()) throw ParameterError(std::string("missing ") + name);
    return io::word_from_json(io::json_argument(arg, name), ground);
  };
  const std::string& sub = cfg.subcommand;
  if (sub == "psi") {
    auto v = psi(word(cfg.word, "--word"), ground.size());
    json out = json::object();
    for (Index i = 0; i < ground.size(); ++i) out[ground[i]] = v[i];
    return {dump(out), kOk};
  }
  if (sub == "preimage") {
    if (cfg.vector.empty()) throw ParameterError("preimage needs --vector");
    json doc = io::json_argument(cfg.vector, "--vector");
    std::vector<long long> coeffs(ground.size(), 0);
    for (const auto& [key, value] : doc.items()) coeffs[io::lookup(ground, key)] = value.template get<long long>();
    auto g = IntVectorG0::from_coefficients(std::move(coeffs));
    return {dump(io::word_json(psi_preimage(g), ground)), kOk};
  }
  if (sub == "costhom") {
    if (!space) throw InputError("costhom needs --input");
    return {dump({{"value", io::value_json(cost_hom(word(cfg.word, "--word"), *space))}}), kOk};
  }
  if (!structure) throw ParameterError(sub + " needs --structure");
  if (sub == "rewrite") {
    return {dump(io::word_json(rewrite_to_base(word(cfg.word, "--word"), *structure), ground)), kOk};
  }
  // equal
  bool same = words_equal(word(cfg.word, "--word"), word(cfg.word2, "--word2"), *structure);
  return {dump({{"equal", same}}), same ? kOk : kViolated};
}

inline json report_json(const PreclosureReport& r) {
  return {{"empty_closed", r.empty_closed}, {"extensive", r.extensive}, {"additive", r.additive},
          {"idempotent", r.idempotent},     {"monotone", r.monotone},   {"sampled", r.sampled},
          {"preclosure", r.is_preclosure()}, {"topology", r.is_topology()}};
}

template <class T>
AdditivePreclosure cost_preclosure(const CostSpace<T>& space, const RunConfig& cfg, std::ostream& err) {
  if (cfg.limit) {
    err << "warning: the radius -> 0 limit keeps only zero-cost steps; on a cost space it is the "
           "discrete preclosure\n";
    return preclosure_from_cost_limit(space);
  }
  return preclosure_from_cost(space, scalar<T>(cfg.radius, "--radius"));
}

template <class T>
Report pretop(const RunConfig& cfg, std::ostream& err) {
  no_csv(cfg);
  const std::string& sub = cfg.subcommand;
  if (sub == "closure") {
    AdditivePreclosure pre = cfg.preclosure.empty()
                                 ? cost_preclosure(load<T>(cfg.input, cfg), cfg, err)
                                 : io::preclosure_from_json<T>(io::json_argument(cfg.preclosure, "--preclosure"),
                                                               cfg.tolerance);
    json out = {{"preclosure", io::preclosure_json(pre)}, {"axioms", report_json(check_axioms(pre))}};
    if (!cfg.set.empty()) {
      out["set"] = cfg.set;
      out["closure"] = io::subset_json(pre.ground(), pre.closure(io::subset_from_labels(pre.ground(), cfg.set)));
    }
    return {dump(out), kOk};
  }
  if (sub == "product") {
    auto first = load<T>(cfg.input, cfg);
    auto second = load<T>(cfg.second, cfg);
    auto pre = product_additive(cost_preclosure(first, cfg, err), cost_preclosure(second, cfg, err));
    json out = {{"preclosure", io::preclosure_json(pre)}};
    if (!cfg.limit) {
      auto direct = preclosure_from_cost(product(first, second, ProductScheme::max_scheme()),
                                         scalar<T>(cfg.radius, "--radius"));
      out["equals_max_product_cost"] = direct.rows() == pre.rows();
    }
    return {dump(out), kOk};
  }
  if (cfg.query.empty()) throw ParameterError(sub + " needs --query");
  json q = io::json_argument(cfg.query, "--query");
  if (sub == "continuity") {
    auto px = io::preclosure_from_json<T>(q.at("preX"), cfg.tolerance);
    auto pz = io::preclosure_from_json<T>(q.at("preZ"), cfg.tolerance);
    std::vector<Index> map(px.size(), 0);
    std::vector<char> seen(px.size(), 0);
    for (const auto& [key, value] : q.at("map").items()) {
      Index i = io::lookup(px.ground(), key);
      map[i] = io::lookup(pz.ground(), value.template get<std::string>());
      seen[i] = 1;
    }
    for (Index i = 0; i < px.size(); ++i) {
      if (!seen[i]) throw InputError("map is undefined at '" + px.ground()[i] + "'");
    }
    bool ok = is_continuous(map, px, pz);
    return {dump({{"continuous", ok}}), ok ? kOk : kViolated};
  }
  // compare
  auto a = io::preclosure_from_json<T>(q.at("first"), cfg.tolerance);
  auto b = io::preclosure_from_json<T>(q.at("second"), cfg.tolerance);
  return {dump({{"relation", to_string(compare(a, b))}}), kOk};
}

template <class T>
Report curvature(const RunConfig& cfg, std::ostream& err) {
  auto space = load<T>(cfg.input, cfg);
  const auto& L = space.labels();
  const Index n = space.size();
  std::vector<std::array<Index, 3>> triples;
  if (cfg.all_triples) {
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b)
        for (Index c = 0; c < n; ++c)
          if (a != b && b != c && a != c) triples.push_back({a, b, c});
  } else {
    if (cfg.triple.size() != 3) throw ParameterError("curvature needs --triple a b c or --all-triples");
    triples.push_back({label_index(space, cfg.triple[0]), label_index(space, cfg.triple[1]),
                       label_index(space, cfg.triple[2])});
  }
  const CostSpace<T> target = cfg.symmetrized ? symmetrize(space) : space;
  const bool csv = want_csv(cfg, true);
  std::string text = "x1,x2,x3,r1,r2,r3,rho,witness,method,boundary_flag\n";
  json rows = json::array();
  for (const auto& t : triples) {
    CurvatureResult<T> r;
    try {
      r = cfg.oracle ? grid_oracle_curvature(target, t[0], t[1], t[2], cfg.grid_step)
                     : directed_curvature(target, t[0], t[1], t[2], cfg.grid_step);
    } catch (const DomainError& e) {
      if (!cfg.all_triples) throw;
      err << "skipped (" << L[t[0]] << "," << L[t[1]] << "," << L[t[2]] << "): " << e.what() << "\n";
      continue;
    }
    if (csv) {
      text += io::csv_cell(L[t[0]]) + "," + io::csv_cell(L[t[1]]) + "," + io::csv_cell(L[t[2]]) + "," +
              format(r.radii.r1) + "," + format(r.radii.r2) + "," + format(r.radii.r3) + "," +
              format(r.rho) + "," + io::csv_cell(L[r.witness]) + "," + to_string(r.method) + "," +
              (r.boundary_flag ? "true" : "false") + "\n";
    } else {
      rows.push_back({{"x1", L[t[0]]},
                      {"x2", L[t[1]]},
                      {"x3", L[t[2]]},
                      {"r1", io::value_json(r.radii.r1)},
                      {"r2", io::value_json(r.radii.r2)},
                      {"r3", io::value_json(r.radii.r3)},
                      {"rho", io::value_json(r.rho)},
                      {"witness", L[r.witness]},
                      {"method", to_string(r.method)},
                      {"boundary_flag", r.boundary_flag}});
    }
  }
  return {csv ? text : dump(rows), kOk};
}

template <class T>
Report median(const RunConfig& cfg) {
  no_csv(cfg);
  auto space = load<T>(cfg.input, cfg);
  if (cfg.triple.size() != 3) throw ParameterError("median needs --triple a b c");
  auto m = find_medians(space, label_index(space, cfg.triple[0]), label_index(space, cfg.triple[1]),
                        label_index(space, cfg.triple[2]));
  json labels = json::array();
  for (Index i : m) labels.push_back(space.label(i));
  return {dump({{"triple", cfg.triple}, {"medians", labels}}), kOk};
}

template <class T>
Report deviation(const RunConfig& cfg) {
  no_csv(cfg);
  auto space = load<T>(cfg.input, cfg);
  if (cfg.pairs.empty()) throw ParameterError("deviation needs --pairs");
  json doc = io::json_argument(cfg.pairs, "--pairs");
  if (!doc.is_array()) throw InputError("--pairs must be a JSON array");
  std::vector<PairRadii<T>> pairs;
  for (const auto& e : doc) {
    pairs.push_back({label_index(space, e.at("p").get<std::string>()),
                     label_index(space, e.at("q").get<std::string>()),
                     parse_extended<T>(io::entry_text(e.at("r"))),
                     parse_extended<T>(io::entry_text(e.at("r_prime")))});
  }
  auto r = hyperconvexity_deviation(space, pairs);
  return {dump({{"lambda", io::value_json(r.lambda)}, {"witness", space.label(r.witness)}}), kOk};
}

template <class T>
Report convexity(const RunConfig& cfg) {
  no_csv(cfg);
  auto space = load<T>(cfg.input, cfg);
  auto r = convexity_checks(space, scalar<T>(cfg.epsilon, "--epsilon"));
  json failures = json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"p", space.label(f.p)}, {"r", space.label(f.r)}, {"t1", io::value_json(f.split)}});
  }
  json out = {{"epsilon", io::value_json(r.epsilon)},
              {"almost_chronodesic", r.almost_chronodesic()},
              {"totally_convex", r.totally_convex()},
              {"failures", failures}};
  return {dump(out), r.almost_chronodesic() ? kOk : kViolated};
}

template <class T>
Report tightspan(const RunConfig& cfg) {
  no_csv(cfg);
  auto space = load<T>(cfg.input, cfg);
  const auto& L = space.labels();
  const std::string& sub = cfg.subcommand;
  if (sub == "check") {
    if (cfg.pair.empty()) throw ParameterError("check needs --pair");
    auto pair = io::pair_from_json<T>(io::json_argument(cfg.pair, "--pair"), L);
    auto r = is_admissible_pair(space, pair);
    json out = {{"admissible", r.admissible},
                {"defect", io::value_json(r.defect)},
                {"bitight", is_bitight(space, pair)}};
    return {dump(out), r.admissible ? kOk : kViolated};
  }
  if (sub == "kuratowski") {
    return {dump(io::pair_json(kuratowski_pair(space, label_index(space, cfg.point)), L)), kOk};
  }
  if (sub == "tighten") {
    if (cfg.f.empty() == cfg.g.empty()) throw ParameterError("tighten needs exactly one of --f, --g");
    json out;
    Tightened<T> t;
    if (!cfg.g.empty()) {
      auto g = io::function_from_json<T>(io::json_argument(cfg.g, "--g"), L);
      t = tighten_f(space, g);
      out = io::pair_json(FunctionPair<T>{t.values, g}, L);
    } else {
      auto f = io::function_from_json<T>(io::json_argument(cfg.f, "--f"), L);
      t = tighten_g(space, f);
      out = io::pair_json(FunctionPair<T>{f, t.values}, L);
    }
    out["warnings"] = json::array();
    for (const auto& w : t.warnings) out["warnings"].push_back("no finite term at " + w);
    return {dump(out), kOk};
  }
  // iterate
  if (cfg.g.empty()) throw ParameterError("iterate needs --g");
  auto trace = iterate_tight_pairs(space, io::function_from_json<T>(io::json_argument(cfg.g, "--g"), L),
                                   cfg.max_iter);
  json pairs = json::array();
  for (const auto& p : trace.pairs) pairs.push_back(io::pair_json(p, L));
  return {dump({{"converged", trace.converged}, {"trace", pairs}, {"warnings", trace.warnings}}), kOk};
}

template <class T>
Report transform(const RunConfig& cfg) {
  auto space = load<T>(cfg.input, cfg);
  const std::string& sub = cfg.subcommand;
  CostSpace<T> out;
  if (sub == "symmetrize") {
    out = symmetrize(space);
  } else if (sub == "reverse") {
    out = reverse(space);
  } else if (sub == "closure") {
    out = path_cost_closure(space);
  } else {
    auto second = load<T>(cfg.second, cfg);
    ProductScheme scheme;
    if (cfg.scheme == "max") {
      scheme = ProductScheme::max_scheme();
    } else if (cfg.scheme == "lp") {
      scheme = ProductScheme::lp(cfg.p);
    } else {
      throw ParameterError("unknown product scheme '" + cfg.scheme + "'");
    }
    out = product(space, second, scheme);
  }
  if (want_csv(cfg, false)) return {io::space_csv(out), kOk};
  return {dump(io::space_json(out)), kOk};
}

template <class T>
Report dispatch(const RunConfig& cfg, std::ostream& err) {
  const std::string& c = cfg.command;
  if (c == "validate") return validate<T>(cfg);
  if (c == "betweenness") return betweenness<T>(cfg);
  if (c == "chains") return chains<T>(cfg);
  if (c == "dress") return dress<T>(cfg);
  if (c == "pretop") return pretop<T>(cfg, err);
  if (c == "curvature") return curvature<T>(cfg, err);
  if (c == "median") return median<T>(cfg);
  if (c == "deviation") return deviation<T>(cfg);
  if (c == "convexity") return convexity<T>(cfg);
  if (c == "tightspan") return tightspan<T>(cfg);
  if (c == "transform") return transform<T>(cfg);
  throw ParameterError("unknown command '" + c + "'");
}

/// Mode from --mode, else the input file's "mode", else float.
inline NumericMode resolve_mode(const RunConfig& cfg) {
  if (cfg.mode) return *cfg.mode;
  if (!cfg.input.empty()) {
    std::string text = io::read_file(cfg.input);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
      auto doc = io::parse_json(text, cfg.input);
      if (doc.is_object() && doc.contains("mode")) return *io::parse_mode(doc["mode"].get<std::string>());
    }
  }
  return NumericMode::kFloat;
}

}  // namespace detail

/// Runs one command. The report goes to cfg.output or `out`; diagnostics to
/// `err`. Returns the exit code.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (!(cfg.tolerance > 0.0)) throw ParameterError("tolerance must be positive");
    Report report = detail::resolve_mode(cfg) == NumericMode::kRational
                        ? detail::dispatch<Rational>(cfg, err)
                        : detail::dispatch<double>(cfg, err);
    if (cfg.output.empty()) {
      out << report.text;
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!file) throw InputError("cannot write '" + cfg.output + "'");
      file << report.text;
    }
    return report.code;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << "\n";
  } catch (const StructureError& e) {
    err << "structure error: " << e.what() << "\n";
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
  } catch (const SizeError& e) {
    err << "size error: " << e.what() << "\n";
  } catch (const io::json::exception& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInputError;
}

/// Parses the command line into cfg and runs it.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.tolerance = default_tolerance();
  CLI::App app{"Analysis of finite non-symmetric cost spaces"};
  app.require_subcommand(1);
  std::string mode;
  app.add_option("-i,--input", cfg.input, "cost space (JSON or CSV)");
  app.add_option("--mode", mode, "rational or float")->check(CLI::IsMember({"rational", "float"}));
  app.add_option("--tolerance", cfg.tolerance, std::string("float tolerance (default $") + kToleranceEnv + " or 1e-9)");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("-o,--output", cfg.output, "output file");
  app.add_option("--seed", cfg.seed, "seed for randomized helpers");

  auto command = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    return sub;
  };
  auto nested = [&](CLI::App* parent, std::initializer_list<const char*> names) {
    parent->require_subcommand(1);
    std::vector<CLI::App*> subs;
    for (const char* n : names) {
      auto* s = parent->add_subcommand(n);
      s->fallthrough();
      subs.push_back(s);
    }
    return subs;
  };

  command("validate", "check the cost axioms");
  command("betweenness", "derive the betweenness relation")
      ->add_flag("--check-axioms", cfg.check_axioms, "also check the betweenness axioms");

  auto* chains = command("chains", "classify or enumerate chains");
  auto chain_subs = nested(chains, {"classify", "enumerate"});
  chain_subs[0]->add_option("--chain", cfg.chain, "chain labels")->expected(1, -1);
  chain_subs[1]->add_option("--from", cfg.from)->required();
  chain_subs[1]->add_option("--to", cfg.to)->required();
  chain_subs[1]->add_option("--max-edges", cfg.max_edges);

  auto* dress = command("dress", "Dress group words");
  dress->add_option("--structure", cfg.structure, "rewrite structure (JSON or file)");
  dress->add_option("--labels", cfg.labels, "ground labels")->expected(1, -1);
  dress->add_option("--word", cfg.word, "word (JSON or file)");
  auto dress_subs = nested(dress, {"psi", "preimage", "rewrite", "costhom", "equal"});
  dress_subs[1]->add_option("--vector", cfg.vector, "zero-sum vector {label: n}");
  dress_subs[4]->add_option("--word2", cfg.word2, "second word");

  auto* pretop = command("pretop", "preclosure operators");
  pretop->add_option("--radius", cfg.radius, "step radius");
  pretop->add_flag("--limit", cfg.limit, "use the radius -> 0 limit");
  auto pre_subs = nested(pretop, {"closure", "continuity", "product", "compare"});
  pre_subs[0]->add_option("--preclosure", cfg.preclosure, "preclosure (JSON or file)");
  pre_subs[0]->add_option("--set", cfg.set, "subset to close")->expected(1, -1);
  pre_subs[1]->add_option("--query", cfg.query, "{map, preX, preZ}");
  pre_subs[2]->add_option("--second", cfg.second, "second cost space")->required();
  pre_subs[3]->add_option("--query", cfg.query, "{first, second}");

  auto* curv = command("curvature", "directed curvature of triples");
  curv->add_flag("--all-triples", cfg.all_triples);
  curv->add_option("--triple", cfg.triple)->expected(3);
  curv->add_flag("--oracle", cfg.oracle, "always use the grid oracle");
  curv->add_flag("--symmetrized", cfg.symmetrized, "use (c + c^T) / 2");
  curv->add_option("--grid-step", cfg.grid_step, "relative oracle grid step");

  command("median", "medians of an ordered triple")->add_option("--triple", cfg.triple)->expected(3)->required();
  command("deviation", "hyperconvexity deviation")->add_option("--pairs", cfg.pairs, "[{p,q,r,r_prime}]")->required();
  command("convexity", "total convexity checks")->add_option("--epsilon", cfg.epsilon);

  auto* ts = command("tightspan", "tight-span function pairs");
  auto ts_subs = nested(ts, {"check", "tighten", "kuratowski", "iterate"});
  ts_subs[0]->add_option("--pair", cfg.pair, "{f, g}");
  ts_subs[1]->add_option("--f", cfg.f);
  ts_subs[1]->add_option("--g", cfg.g);
  ts_subs[2]->add_option("--point", cfg.point)->required();
  ts_subs[3]->add_option("--g", cfg.g)->required();
  ts_subs[3]->add_option("--max-iter", cfg.max_iter);

  auto* tr = command("transform", "derived cost spaces");
  auto tr_subs = nested(tr, {"symmetrize", "reverse", "product", "closure"});
  tr_subs[2]->add_option("--second", cfg.second)->required();
  tr_subs[2]->add_option("--scheme", cfg.scheme)->check(CLI::IsMember({"max", "lp"}));
  tr_subs[2]->add_option("--p", cfg.p);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kOk : kInputError;
  }
  for (auto* sub : app.get_subcommands()) {
    cfg.command = sub->get_name();
    for (auto* inner : sub->get_subcommands()) cfg.subcommand = inner->get_name();
  }
  if (!mode.empty()) cfg.mode = io::parse_mode(mode);
  return run(cfg, out, err);
}

}  // namespace costgeom::cli
