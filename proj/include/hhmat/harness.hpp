#pragma once

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hhmat/error.hpp"
#include "hhmat/io.hpp"
#include "hhmat/majorize.hpp"
#include "hhmat/norms.hpp"
#include "hhmat/quad_rule.hpp"
#include "hhmat/random.hpp"
#include "hhmat/scalarfn.hpp"
#include "hhmat/theorems.hpp"

namespace hhmat {

inline const std::vector<std::string>& checker_names() {
  static const std::vector<std::string> names = {
      "trace_hh",     "concave_split_eigen",   "convex_mono_eigen",  "schatten_split",
      "mccarthy",     "eigen_integral",        "hansen_pedersen_trace", "orbit_majorization",
      "fn_orbit",     "det_fisher",            "norm_antinorm_split", "moslehian",
      "operator_convex_split"};
  return names;
}

/// Accepts "trace_hh" or "check_trace_hh".
inline std::string canonical_checker(const std::string& name) {
  const std::string bare = name.rfind("check_", 0) == 0 ? name.substr(6) : name;
  const auto& all = checker_names();
  if (std::find(all.begin(), all.end(), bare) == all.end()) throw InvalidArgument("unknown checker '" + name + "'");
  return bare;
}

inline bool quadrature_backed(const std::string& checker) {
  return checker == "trace_hh" || checker == "eigen_integral" || checker == "moslehian";
}

inline double default_tolerance(const std::string& checker) {
  return quadrature_backed(checker) ? kQuadratureTol : kExactTol;
}

/**
 * Campaign settings. `trials` counts trials per (checker, dim); each trial
 * draws one set of inputs and runs every admissible (fn, weights, norm)
 * combination on it.
 *
 * Text form, one `key = value` per line, `#` starts a comment:
 *
 *     dims = 2,3,4,8
 *     trials = 250
 *     seed = 7
 *     checkers = trace_hh, mccarthy      # empty or "all" selects every checker
 *     fns = sqrt, square                 # empty or "all" keeps the whole catalog
 *     weights = scalar, bi_isometric
 *     quad_nodes = 32
 *     tol.trace_hh = 1e-6
 *     out = results.jsonl
 */
struct CampaignConfig {
  std::vector<std::size_t> dims{2, 3, 4, 8};
  std::size_t trials = 250;
  std::uint64_t seed = 1;
  std::vector<std::string> checkers;   // empty: all
  std::vector<std::string> fn_filter;  // empty: whole catalog
  std::vector<WeightKind> weight_kinds{WeightKind::scalar, WeightKind::commuting_normal, WeightKind::bi_isometric};
  std::size_t quad_nodes = 32;
  std::map<std::string, double> tolerances;
  std::string output_path;

  void validate() const {
    if (trials < 1) throw InvalidArgument("config: trials must be >= 1");
    if (dims.empty()) throw InvalidArgument("config: dims is empty");
    for (auto d : dims)
      if (d < 1) throw InvalidArgument("config: dims must be >= 1");
    if (quad_nodes < 1) throw InvalidArgument("config: quad_nodes must be >= 1");
    for (const auto& c : checkers) (void)canonical_checker(c);
    for (const auto& f : fn_filter) (void)lookup(f);
    for (const auto& [name, tol] : tolerances) {
      (void)canonical_checker(name);
      if (!(tol > 0.0)) throw InvalidArgument("config: tolerance for " + name + " must be > 0");
    }
  }

  std::vector<std::string> selected_checkers() const {
    if (checkers.empty()) return checker_names();
    std::vector<std::string> out;
    for (const auto& c : checkers) out.push_back(canonical_checker(c));
    return out;
  }

  double tolerance_for(const std::string& checker) const {
    const auto it = tolerances.find(checker);
    return it == tolerances.end() ? default_tolerance(checker) : it->second;
  }

  bool fn_selected(const std::string& name) const {
    return fn_filter.empty() || std::find(fn_filter.begin(), fn_filter.end(), name) != fn_filter.end();
  }

  bool weight_selected(WeightKind k) const {
    return std::find(weight_kinds.begin(), weight_kinds.end(), k) != weight_kinds.end();
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  std::istringstream in(v);
  T out{};
  in >> out;
  if (in.fail() || !in.eof()) throw InvalidArgument("config: bad value '" + v + "' for " + key);
  return out;
}

}  // namespace detail

inline std::vector<std::size_t> parse_dims(const std::string& v) {
  std::vector<std::size_t> dims;
  for (const auto& d : detail::split_list(v)) {
    if (d.front() == '-') throw InvalidArgument("config: dims must be >= 1");
    dims.push_back(detail::parse_number<std::size_t>("dims", d));
  }
  return dims;
}

inline std::vector<WeightKind> parse_weight_kinds(const std::string& v) {
  std::vector<WeightKind> out;
  for (const auto& w : detail::split_list(v)) out.push_back(parse_weight_kind(w));
  return out;
}

/// Applies one `key = value` setting; throws InvalidArgument on unknown keys.
inline void apply_config_setting(CampaignConfig& c, const std::string& key, const std::string& value) {
  auto is_all = [&] { return value.empty() || value == "all"; };
  if (key == "dims") {
    c.dims = parse_dims(value);
  } else if (key == "trials") {
    if (!value.empty() && value.front() == '-') throw InvalidArgument("config: trials must be >= 1");
    c.trials = detail::parse_number<std::size_t>(key, value);
  } else if (key == "seed") {
    c.seed = detail::parse_number<std::uint64_t>(key, value);
  } else if (key == "checkers") {
    c.checkers.clear();
    if (!is_all())
      for (const auto& n : detail::split_list(value)) c.checkers.push_back(canonical_checker(n));
  } else if (key == "fns" || key == "fn_filter") {
    c.fn_filter = is_all() ? std::vector<std::string>{} : detail::split_list(value);
  } else if (key == "weights" || key == "weight_kinds") {
    c.weight_kinds = is_all() ? CampaignConfig{}.weight_kinds : parse_weight_kinds(value);
  } else if (key == "quad_nodes") {
    c.quad_nodes = detail::parse_number<std::size_t>(key, value);
  } else if (key.rfind("tol.", 0) == 0) {
    c.tolerances[canonical_checker(key.substr(4))] = detail::parse_number<double>(key, value);
  } else if (key == "out" || key == "output_path") {
    c.output_path = value;
  } else {
    throw InvalidArgument("config: unknown key '" + key + "'");
  }
}

inline CampaignConfig parse_config(const std::string& text) {
  CampaignConfig c;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key = value");
    apply_config_setting(c, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
  }
  c.validate();
  return c;
}

inline CampaignConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

inline std::string to_config_text(const CampaignConfig& c) {
  auto join = [](const auto& items, auto fmt) {
    std::string s;
    for (const auto& x : items) s += (s.empty() ? "" : ",") + fmt(x);
    return s;
  };
  auto same = [](const std::string& s) { return s; };
  std::ostringstream out;
  out << "dims = " << join(c.dims, [](std::size_t d) { return std::to_string(d); }) << "\n";
  out << "trials = " << c.trials << "\n";
  out << "seed = " << c.seed << "\n";
  out << "checkers = " << (c.checkers.empty() ? "all" : join(c.checkers, same)) << "\n";
  out << "fns = " << (c.fn_filter.empty() ? "all" : join(c.fn_filter, same)) << "\n";
  out << "weights = " << join(c.weight_kinds, [](WeightKind k) { return to_string(k); }) << "\n";
  out << "quad_nodes = " << c.quad_nodes << "\n";
  for (const auto& [k, v] : c.tolerances) out << "tol." << k << " = " << std::setprecision(17) << v << "\n";
  if (!c.output_path.empty()) out << "out = " << c.output_path << "\n";
  return out.str();
}

// -- single cases -----------------------------------------------------------------

/**
 * One fully specified checker invocation; serializable, so any campaign case
 * can be replayed in isolation.
 *
 * `param` is the exponent for schatten_split / mccarthy and the weight x for
 * operator_convex_split, whose `fn` is "identity" or "square".
 */
struct CheckCase {
  std::string checker;
  HermitianMatrix a, b;
  std::string fn;
  std::optional<WeightPair> weights;
  std::string norm;
  double param = 0.0;
  std::size_t quad_nodes = 32;
  double tol = 0.0;
  std::uint64_t seed = 0;
  std::size_t dim = 0;
  std::size_t trial = 0;
};

inline CheckVerdict run_case(const CheckCase& c) {
  const std::string& k = c.checker;
  const double tol = c.tol > 0.0 ? c.tol : default_tolerance(k);
  auto f = [&]() -> const ScalarFn& { return lookup(c.fn); };
  auto w = [&]() -> const WeightPair& {
    if (!c.weights) throw InvalidArgument(k + ": case has no weights");
    return *c.weights;
  };
  if (k == "trace_hh") return check_trace_hh(c.a, c.b, f(), gauss_legendre(c.quad_nodes), tol);
  if (k == "concave_split_eigen") return check_concave_split_eigen(c.a, c.b, w(), f(), tol);
  if (k == "convex_mono_eigen") return check_convex_mono_eigen(c.a, c.b, w(), f(), tol);
  if (k == "schatten_split") return check_schatten_split(c.a, c.b, w(), f(), c.param, tol);
  if (k == "mccarthy") return check_mccarthy(c.a, c.b, c.param, tol);
  if (k == "eigen_integral") return check_eigen_integral(c.a, c.b, f(), gauss_legendre(c.quad_nodes), tol);
  if (k == "hansen_pedersen_trace") return check_hansen_pedersen_trace(c.a, c.b, w(), f(), tol);
  if (k == "orbit_majorization") return check_orbit_majorization(c.a, c.b, w(), tol).verdict;
  if (k == "fn_orbit") return check_fn_orbit(c.a, c.b, w(), f(), tol);
  if (k == "det_fisher") return check_det_fisher(c.a, c.b, w(), tol);
  if (k == "norm_antinorm_split") return check_norm_antinorm_split(c.a, c.b, w(), f(), NormSpec::parse(c.norm), tol);
  if (k == "moslehian") return check_moslehian(c.a, c.b, f(), NormSpec::parse(c.norm), gauss_legendre(c.quad_nodes), tol);
  if (k == "operator_convex_split") {
    if (c.fn != "identity" && c.fn != "square")
      throw InvalidArgument("operator_convex_split: h must be identity or square");
    return check_operator_convex_split(c.a, c.b, c.param,
                                       c.fn == "square" ? OperatorConvexFn::square : OperatorConvexFn::identity, tol);
  }
  throw InvalidArgument("unknown checker '" + k + "'");
}

inline json to_json(const CheckCase& c) {
  json j;
  j["checker"] = c.checker;
  j["A"] = to_json(c.a);
  j["B"] = to_json(c.b);
  if (!c.fn.empty()) j["fn"] = c.fn;
  if (c.weights) j["weights"] = to_json(*c.weights);
  if (!c.norm.empty()) j["norm"] = c.norm;
  j["param"] = c.param;
  j["quad_nodes"] = c.quad_nodes;
  j["tol"] = c.tol;
  j["seed"] = c.seed;
  j["dim"] = c.dim;
  j["trial"] = c.trial;
  return j;
}

inline CheckCase check_case_from_json(const json& j) {
  try {
    CheckCase c;
    c.checker = canonical_checker(j.at("checker").get<std::string>());
    c.a = hermitian_from_json(j.at("A"));
    c.b = hermitian_from_json(j.at("B"));
    c.fn = j.value("fn", std::string{});
    if (j.contains("weights")) c.weights = weight_pair_from_json(j.at("weights"));
    c.norm = j.value("norm", std::string{});
    c.param = j.value("param", 0.0);
    c.quad_nodes = j.value("quad_nodes", std::size_t{32});
    c.tol = j.value("tol", 0.0);
    c.seed = j.value("seed", std::uint64_t{0});
    c.dim = j.value("dim", c.a.dim());
    c.trial = j.value("trial", std::size_t{0});
    return c;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("case json: ") + e.what());
  }
}

/// Reruns a witness file written by a failing campaign case.
inline CheckVerdict replay(const std::string& witness_path) {
  const json j = read_json_file(witness_path);
  return run_case(check_case_from_json(j.contains("case") ? j.at("case") : j));
}

// -- case generation ----------------------------------------------------------------

namespace detail {

struct TrialInputs {
  HermitianMatrix psd_a, psd_b;    // G G*/n
  HermitianMatrix herm_a, herm_b;  // spectra in [−2, 2]
  std::map<WeightKind, WeightPair> weights;
  double x = 0.5;
};

// Draw order is fixed and independent of the config filters.
inline TrialInputs draw_inputs(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  TrialInputs in;
  in.psd_a = gen_psd(dim, rng);
  in.psd_b = gen_psd(dim, rng);
  in.herm_a = gen_hermitian(dim, rng, {-2.0, 2.0});
  in.herm_b = gen_hermitian(dim, rng, {-2.0, 2.0});
  for (WeightKind k : {WeightKind::scalar, WeightKind::commuting_normal, WeightKind::bi_isometric})
    in.weights.emplace(k, gen_weight_pair(k, dim, rng));
  in.x = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
  return in;
}

inline bool on_halfline(const ScalarFn& f) { return f.domain().lo >= 0.0; }

inline bool concave_nonneg(const ScalarFn& f) {
  return f.is_concave() && covers_halfline(f) && f.zero_value_nonneg();
}

inline bool convex_monotone(const ScalarFn& f) {
  return f.is_convex() && f.is_monotone() && covers_halfline(f) && f.zero_value_nonpos();
}

}  // namespace detail

/// Every admissible case of one checker for one trial.
inline std::vector<CheckCase> enumerate_cases(const std::string& checker_name, std::size_t dim, std::size_t trial,
                                              const CampaignConfig& cfg) {
  const std::string checker = canonical_checker(checker_name);
  const std::uint64_t seed = derive_seed(cfg.seed, checker, dim, trial);
  const detail::TrialInputs in = detail::draw_inputs(dim, seed);
  std::vector<CheckCase> out;

  auto base = [&](const HermitianMatrix& a, const HermitianMatrix& b) {
    CheckCase c;
    c.checker = checker;
    c.a = a;
    c.b = b;
    c.quad_nodes = cfg.quad_nodes;
    c.tol = cfg.tolerance_for(checker);
    c.seed = seed;
    c.dim = dim;
    c.trial = trial;
    return c;
  };
  auto psd_case = [&] { return base(in.psd_a, in.psd_b); };
  // [0,∞) functions get PSD inputs, real-line functions Hermitian ones
  auto case_for = [&](const ScalarFn& f) {
    return detail::on_halfline(f) ? base(in.psd_a, in.psd_b) : base(in.herm_a, in.herm_b);
  };
  auto fns = [&](auto pred) {
    std::vector<const ScalarFn*> v;
    for (const auto& f : catalog())
      if (cfg.fn_selected(f.name()) && pred(f)) v.push_back(&f);
    return v;
  };
  auto kinds = [&](bool commuting_only) {
    std::vector<WeightKind> v;
    for (WeightKind k : {WeightKind::scalar, WeightKind::commuting_normal, WeightKind::bi_isometric})
      if (cfg.weight_selected(k) && !(commuting_only && k == WeightKind::bi_isometric)) v.push_back(k);
    return v;
  };
  auto hull_of = [](const CheckCase& c) { return detail::spectral_hull(eigenvalues(c.a), eigenvalues(c.b)); };
  const auto convex = [](const ScalarFn& f) { return f.is_convex(); };

  if (checker == "trace_hh") {
    for (auto* f : fns(convex)) {
      auto c = case_for(*f);
      c.fn = f->name();
      out.push_back(std::move(c));
    }
  } else if (checker == "concave_split_eigen" || checker == "eigen_integral") {
    for (auto* f : fns(detail::concave_nonneg)) {
      if (checker == "eigen_integral") {
        auto c = psd_case();
        c.fn = f->name();
        out.push_back(std::move(c));
        continue;
      }
      for (WeightKind k : kinds(true)) {
        auto c = psd_case();
        c.fn = f->name();
        c.weights = in.weights.at(k);
        out.push_back(std::move(c));
      }
    }
  } else if (checker == "convex_mono_eigen") {
    for (auto* f : fns([](const ScalarFn& g) { return detail::concave_nonneg(g) || detail::convex_monotone(g); }))
      for (WeightKind k : kinds(true)) {
        if (!detail::convex_monotone(*f) && k != WeightKind::scalar) continue;
        auto c = psd_case();
        c.fn = f->name();
        c.weights = in.weights.at(k);
        out.push_back(std::move(c));
      }
  } else if (checker == "schatten_split") {
    for (WeightKind k : kinds(true)) {
      for (double p : {1.0, 2.0, 3.0})
        for (auto* f : fns(detail::concave_nonneg)) {
          auto c = psd_case();
          c.fn = f->name();
          c.weights = in.weights.at(k);
          c.param = p;
          out.push_back(std::move(c));
        }
      for (double q : {0.25, 0.5, 0.75})
        for (auto* f : fns(detail::convex_nonneg_vanishing)) {
          auto c = psd_case();
          c.fn = f->name();
          c.weights = in.weights.at(k);
          c.param = q;
          out.push_back(std::move(c));
        }
    }
  } else if (checker == "mccarthy") {
    for (double p : {1.5, 2.0, 3.0}) {
      auto c = psd_case();
      c.param = p;
      out.push_back(std::move(c));
    }
  } else if (checker == "hansen_pedersen_trace" || checker == "fn_orbit") {
    for (auto* f : fns(convex))
      for (WeightKind k : kinds(false)) {
        auto c = case_for(*f);
        c.fn = f->name();
        c.weights = in.weights.at(k);
        out.push_back(std::move(c));
      }
  } else if (checker == "orbit_majorization") {
    for (WeightKind k : kinds(false)) {
      auto c = base(in.herm_a, in.herm_b);
      c.weights = in.weights.at(k);
      out.push_back(std::move(c));
    }
  } else if (checker == "det_fisher") {
    for (WeightKind k : kinds(false)) {
      auto c = psd_case();
      c.weights = in.weights.at(k);
      out.push_back(std::move(c));
    }
  } else if (checker == "norm_antinorm_split" || checker == "moslehian") {
    const bool split = checker == "norm_antinorm_split";
    const std::size_t full = split ? 2 * dim : dim;
    const std::vector<std::string> norms = {"schatten:1", "schatten:2", "schatten:inf", "kyfan:1",
                                            "kyfan:" + std::to_string(full)};
    const std::vector<std::string> antinorms = {"quasi:0.5", "minkowski"};
    const std::vector<WeightKind> ks = split ? kinds(false) : std::vector<WeightKind>{WeightKind::scalar};
    for (WeightKind k : ks)
      for (const auto& f : catalog()) {
        if (!cfg.fn_selected(f.name())) continue;
        auto c = case_for(f);
        c.fn = f.name();
        if (split) c.weights = in.weights.at(k);
        if (!f.nonnegative_on(hull_of(c))) continue;
        if (f.is_convex())
          for (const auto& n : norms) {
            c.norm = n;
            out.push_back(c);
          }
        if (f.is_concave())
          for (const auto& n : antinorms) {
            c.norm = n;
            out.push_back(c);
          }
      }
  } else if (checker == "operator_convex_split") {
    for (const char* h : {"identity", "square"}) {
      auto c = base(in.herm_a, in.herm_b);
      c.fn = h;
      c.param = in.x;
      out.push_back(std::move(c));
    }
  }
  return out;
}

// -- campaigns -------------------------------------------------------------------

struct CheckerSummary {
  std::string checker;
  std::size_t trials = 0;  // verdicts produced
  std::size_t failures = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
};

struct CaseRecord {
  std::string checker, fn, weights, norm;
  double param = 0.0;
  std::size_t dim = 0, trial = 0;
  std::uint64_t seed = 0;
  CheckVerdict verdict;
  std::string error;  // exception text when the checker threw
};

struct CampaignResult {
  std::vector<CheckerSummary> summary;
  std::vector<CaseRecord> records;         // filled when requested
  std::vector<std::string> failure_files;  // replayable witnesses
  std::size_t failures = 0;

  int exit_code() const { return failures == 0 ? 0 : 1; }
};

inline json to_json(const CaseRecord& r) {
  json j;
  j["name"] = r.checker;
  j["holds"] = r.verdict.holds && r.error.empty();
  j["min_slack"] = detail::finite_or_null(r.verdict.min_slack);
  j["seed"] = r.seed;
  j["dims"] = r.dim;
  j["trial"] = r.trial;
  if (!r.fn.empty()) j["fn"] = r.fn;
  if (!r.weights.empty()) j["weights"] = r.weights;
  if (!r.norm.empty()) j["norm"] = r.norm;
  if (r.param != 0.0) j["param"] = r.param;
  j["tol"] = r.verdict.tol;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

inline std::string summary_csv(const std::vector<CheckerSummary>& rows) {
  std::ostringstream out;
  out << "checker,trials,failures,worst_slack\n";
  out << std::setprecision(17);
  for (const auto& r : rows) out << r.checker << "," << r.trials << "," << r.failures << "," << r.worst_slack << "\n";
  return out.str();
}

/**
 * Runs every selected checker over dims × trials × admissible cases, in
 * (checker, dim, trial, case) order. With an output path, writes the verdicts
 * as JSON lines to it, a summary to `<out>.summary.csv`, and one replayable
 * `<out>.fail-<checker>-d<dim>-t<trial>-<k>.json` per failing case.
 */
inline CampaignResult run_campaign(const CampaignConfig& cfg, bool keep_records = false) {
  cfg.validate();
  const bool write = !cfg.output_path.empty();
  std::ofstream jsonl;
  if (write) {
    jsonl.open(cfg.output_path, std::ios::binary);
    if (!jsonl) throw IoError("cannot write '" + cfg.output_path + "'");
  }
  CampaignResult res;
  for (const auto& checker : cfg.selected_checkers()) {
    CheckerSummary sum;
    sum.checker = checker;
    for (std::size_t dim : cfg.dims)
      for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        const auto cases = enumerate_cases(checker, dim, trial, cfg);
        for (std::size_t k = 0; k < cases.size(); ++k) {
          const CheckCase& c = cases[k];
          CaseRecord rec{checker, c.fn, c.weights ? to_string(c.weights->kind()) : "", c.norm, c.param, dim, trial,
                         c.seed, {},      {}};
          try {
            rec.verdict = run_case(c);
          } catch (const std::exception& e) {
            rec.verdict.name = checker;
            rec.verdict.holds = false;
            rec.error = e.what();
          }
          const bool ok = rec.verdict.holds && rec.error.empty();
          ++sum.trials;
          sum.worst_slack = std::min(sum.worst_slack, rec.verdict.min_slack);
          if (!ok) {
            ++sum.failures;
            ++res.failures;
            if (write) {
              const std::string path = cfg.output_path + ".fail-" + checker + "-d" + std::to_string(dim) + "-t" +
                                       std::to_string(trial) + "-" + std::to_string(k) + ".json";
              json witness = {{"case", to_json(c)}, {"verdict", to_json(rec.verdict)}};
              if (!rec.error.empty()) witness["error"] = rec.error;
              write_text_file(path, witness.dump(2) + "\n");
              res.failure_files.push_back(path);
            }
          }
          if (write) jsonl << to_json(rec).dump() << "\n";
          if (keep_records) {
            rec.verdict.details.clear();
            rec.verdict.notes.clear();
            res.records.push_back(std::move(rec));
          }
        }
      }
    res.summary.push_back(sum);
  }
  if (write) {
    jsonl.close();
    if (!jsonl) throw IoError("write failed for '" + cfg.output_path + "'");
    write_text_file(cfg.output_path + ".summary.csv", summary_csv(res.summary));
  }
  return res;
}

}  // namespace hhmat
