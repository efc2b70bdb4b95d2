// hhmat command line: run single checks, campaigns, certificates and the
// four-point counterexample search.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "hhmat/hhmat.hpp"

namespace {

using namespace hhmat;

void emit(const json& j, const std::string& out) {
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_text_file(out, j.dump(2) + "\n");
}

// "scalar", "scalar:0.3", "commuting_normal", "bi_isometric" or a JSON file.
WeightPair resolve_weights(const std::string& spec, std::size_t dim, std::uint64_t seed) {
  if (spec.rfind("scalar:", 0) == 0) return WeightPair::scalar(std::stod(spec.substr(7)), dim);
  if (spec == "scalar" || spec == "commuting_normal" || spec == "bi_isometric")
    return gen_weight_pair(parse_weight_kind(spec), dim, seed);
  return weight_pair_from_json(read_json_file(spec));
}

struct CheckArgs {
  std::string checker, a_path, b_path, fn, weights, norm, out;
  double param = 0.0, tol = 0.0;
  std::size_t quad_nodes = 32;
  std::uint64_t seed = 1;
};

int run_check(const CheckArgs& args) {
  CheckCase c;
  c.checker = canonical_checker(args.checker);
  c.a = load_hermitian(args.a_path);
  c.b = load_hermitian(args.b_path);
  c.fn = args.fn;
  if (!args.weights.empty()) c.weights = resolve_weights(args.weights, c.a.dim(), args.seed);
  c.norm = args.norm;
  c.param = args.param;
  c.quad_nodes = args.quad_nodes;
  c.tol = args.tol;
  c.seed = args.seed;
  c.dim = c.a.dim();
  if (c.checker == "orbit_majorization") {
    if (!c.weights) throw InvalidArgument("orbit_majorization needs --weights");
    const auto r = check_orbit_majorization(c.a, c.b, *c.weights, c.tol);
    json j = to_json(r.verdict);
    if (r.verdict.holds) j["certificate"] = to_json(r.cert);
    emit(j, args.out);
    return r.verdict.holds ? 0 : 1;
  }
  const CheckVerdict v = run_case(c);
  emit(to_json(v), args.out);
  return v.holds ? 0 : 1;
}

struct CampaignArgs {
  std::string config, replay, out, fns, weights, checkers, dims;
  std::size_t trials = 0, quad_nodes = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

int run_campaign_cmd(const CampaignArgs& args) {
  if (!args.replay.empty()) {
    const CheckVerdict v = replay(args.replay);
    std::cout << to_json(v).dump(2) << "\n";
    return v.holds ? 0 : 1;
  }
  CampaignConfig cfg = args.config.empty() ? CampaignConfig{} : load_config(args.config);
  if (!args.dims.empty()) apply_config_setting(cfg, "dims", args.dims);
  if (args.trials) cfg.trials = args.trials;
  if (args.seed_set) cfg.seed = args.seed;
  if (args.quad_nodes) cfg.quad_nodes = args.quad_nodes;
  if (!args.fns.empty()) apply_config_setting(cfg, "fns", args.fns);
  if (!args.weights.empty()) apply_config_setting(cfg, "weights", args.weights);
  if (!args.checkers.empty()) apply_config_setting(cfg, "checkers", args.checkers);
  if (!args.out.empty()) cfg.output_path = args.out;
  const CampaignResult r = run_campaign(cfg);
  std::cout << summary_csv(r.summary);
  for (const auto& f : r.failure_files) std::cerr << "failure witness: " << f << "\n";
  return r.exit_code();
}

int run_certify(const std::string& s_path, const std::string& t_path, const std::string& out) {
  const MajorizationCert cert = uhlmann_mixture(load_hermitian(s_path), load_hermitian(t_path));
  json j = to_json(cert);
  j["source"] = cert.source;
  j["target"] = cert.target;
  j["t_transforms"] = cert.t_transforms;
  emit(j, out);
  return 0;
}

struct SearchArgs {
  std::size_t budget = 100000;
  std::uint64_t seed = 1;
  std::string fns, dims, out;
  bool diagonal = false;
};

int run_search(const SearchArgs& args) {
  FourPointSearchOptions opt;
  opt.diagonal = args.diagonal;
  for (const auto& f : detail::split_list(args.fns)) opt.fns.push_back(f);
  if (!args.dims.empty()) {
    const auto d = parse_dims(args.dims);
    opt.min_dim = *std::min_element(d.begin(), d.end());
    opt.max_dim = *std::max_element(d.begin(), d.end());
  }
  const auto r = search_four_point_counterexample(args.budget, args.seed, opt);
  json j = {{"samples", r.samples}, {"largest_gap", detail::finite_or_null(r.largest_gap)}, {"rejected", r.rejected}};
  if (r.witness) {
    j["found"] = true;
    j["witness"] = to_json(*r.witness);
  } else {
    j["found"] = false;
  }
  emit(j, args.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermite-Hadamard type matrix inequality checker"};
  app.require_subcommand(1);

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "run one checker on matrix files");
  check->add_option("checker", ca.checker, "checker name")->required();
  check->add_option("-a,--a", ca.a_path, "matrix A (JSON)")->required()->check(CLI::ExistingFile);
  check->add_option("-b,--b", ca.b_path, "matrix B (JSON)")->required()->check(CLI::ExistingFile);
  check->add_option("--fn", ca.fn, "catalog function");
  check->add_option("--weights", ca.weights, "scalar[:x] | commuting_normal | bi_isometric | weights.json");
  check->add_option("--norm", ca.norm, "schatten:p | schatten:inf | kyfan:k | quasi:q | minkowski");
  check->add_option("--param", ca.param, "exponent p/q, or x for operator_convex_split");
  check->add_option("--quad-nodes", ca.quad_nodes, "Gauss-Legendre nodes");
  check->add_option("--tol", ca.tol, "relative tolerance");
  check->add_option("--seed", ca.seed, "seed for generated weights");
  check->add_option("--out", ca.out, "write verdict JSON here");

  CampaignArgs cp;
  auto* campaign = app.add_subcommand("campaign", "run a randomized campaign");
  campaign->add_option("--config", cp.config, "key = value config file")->check(CLI::ExistingFile);
  campaign->add_option("--replay", cp.replay, "rerun one failure witness")->check(CLI::ExistingFile);
  campaign->add_option("--dims", cp.dims, "comma-separated dimensions");
  campaign->add_option("--trials", cp.trials, "trials per checker and dim");
  campaign->add_option("--seed", cp.seed, "master seed")->each([&](const std::string&) { cp.seed_set = true; });
  campaign->add_option("--quad-nodes", cp.quad_nodes, "Gauss-Legendre nodes");
  campaign->add_option("--fn", cp.fns, "comma-separated function filter");
  campaign->add_option("--weights", cp.weights, "comma-separated weight kinds");
  campaign->add_option("--checkers", cp.checkers, "comma-separated checkers");
  campaign->add_option("--out", cp.out, "JSON-lines output path");

  std::string s_path, t_path, cert_out;
  auto* certify = app.add_subcommand("certify", "mixture-of-unitaries certificate for S majorized by T");
  certify->add_option("-s,--s", s_path, "matrix S (JSON)")->required()->check(CLI::ExistingFile);
  certify->add_option("-t,--t", t_path, "matrix T (JSON)")->required()->check(CLI::ExistingFile);
  certify->add_option("--out", cert_out, "write certificate JSON here");

  SearchArgs sa;
  auto* search = app.add_subcommand("search-cx", "search for four-point trace counterexamples");
  search->add_option("--trials", sa.budget, "sample budget");
  search->add_option("--seed", sa.seed, "seed");
  search->add_option("--fn", sa.fns, "comma-separated convex functions");
  search->add_option("--dims", sa.dims, "dimension range, e.g. 2,3");
  search->add_flag("--diagonal", sa.diagonal, "commuting diagonal inputs only");
  search->add_option("--out", sa.out, "write result JSON here");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*check) return run_check(ca);
    if (*campaign) return run_campaign_cmd(cp);
    if (*certify) return run_certify(s_path, t_path, cert_out);
    if (*search) return run_search(sa);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
