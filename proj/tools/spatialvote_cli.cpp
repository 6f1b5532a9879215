// spatialvote: multiwinner rules on 2D Euclidean elections.
//
//   spatialvote run    --rule stv,sntv --dist square -m 200 -n 200 -k 20 --elections 1000 --out results
//   spatialvote solve  --points election.csv --rule cc -k 3
//   spatialvote render --grid results/square_stv_k20_hist.csv --out stv.pgm
//   spatialvote oracle -m 8 -n 8 -k 2 --dist disc --seed 7
//
// Exit codes: 0 ok, 1 oracle disagreement or internal error, 2 config/input
// error, 3 infeasible exact instance or exhausted search budget, 4 I/O failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "spatialvote/approximation.hpp"
#include "spatialvote/errors.hpp"
#include "spatialvote/exact.hpp"
#include "spatialvote/experiment.hpp"
#include "spatialvote/render.hpp"

namespace sv = spatialvote;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kConfigError = 2, kInfeasible = 3, kIoError = 4 };

std::vector<sv::Rule> parse_rules(const std::vector<std::string>& names) {
  std::vector<sv::Rule> rules;
  for (const auto& name : names) {
    if (name == "all") return sv::all_rules();
    const auto rule = sv::parse_rule(name);
    if (!rule) throw sv::InputError("unknown rule '" + name + "'");
    rules.push_back(*rule);
  }
  return rules;
}

std::vector<sv::Distribution> parse_distributions(const std::vector<std::string>& names) {
  std::vector<sv::Distribution> dists;
  for (const auto& name : names) {
    const auto dist = sv::parse_distribution(name);
    if (!dist) throw sv::InputError("unknown distribution '" + name + "'");
    dists.push_back(*dist);
  }
  return dists;
}

std::string join(const std::vector<sv::CandidateId>& ids) {
  std::ostringstream out;
  for (std::size_t i = 0; i < ids.size(); ++i) out << (i ? " " : "") << ids[i];
  return out.str();
}

struct RunOptions {
  std::string config_path;
  std::vector<std::string> rules;
  std::vector<std::string> dists;
  std::optional<int> m, n;
  std::vector<int> k;
  std::optional<int> elections;
  std::optional<std::uint64_t> seed;
  std::optional<double> epsilon;
  std::optional<int> threads;
  std::optional<std::string> out;
  std::optional<int> max_exact_m;
  std::optional<std::uint64_t> node_budget;
  bool no_samples = false;
};

int run_command(const RunOptions& opt) {
  sv::ExperimentConfig config;
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path);
    if (!in) throw sv::IoError("cannot open config " + opt.config_path);
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw sv::InputError(opt.config_path + ": " + e.what());
    }
    config = sv::config_from_json(doc);
  }
  if (!opt.rules.empty()) config.rules = parse_rules(opt.rules);
  if (!opt.dists.empty()) config.distributions = parse_distributions(opt.dists);
  if (opt.m) config.m = *opt.m;
  if (opt.n) config.n = *opt.n;
  if (!opt.k.empty()) config.committee_sizes = opt.k;
  if (opt.elections) config.num_elections = *opt.elections;
  if (opt.seed) config.seed = *opt.seed;
  if (opt.epsilon) config.epsilon = *opt.epsilon;
  if (opt.threads) config.threads = *opt.threads;
  if (opt.out) config.output_dir = *opt.out;
  if (opt.max_exact_m) config.optimizer.max_exact_m = *opt.max_exact_m;
  if (opt.node_budget) config.optimizer.node_budget = *opt.node_budget;
  if (opt.no_samples) config.sample_images = false;

  const auto manifest = sv::run_experiment(config);
  for (const auto& cell : manifest.cells) {
    std::fprintf(stderr, "%s %s k=%d: mean quadrant variance %.4f over %zu elections, %llu tie-breaks, %.2f s\n",
                 cell["distribution"].get<std::string>().c_str(), cell["rule"].get<std::string>().c_str(),
                 cell["k"].get<int>(), cell["mean_variance"].get<double>(), cell["elections"].get<std::size_t>(),
                 static_cast<unsigned long long>(cell["tie_events"].get<std::uint64_t>()),
                 cell["wall_seconds"].get<double>());
  }
  for (const auto& warning : manifest.warnings) std::cerr << "warning: " << warning << '\n';
  std::cerr << "wrote " << manifest.file_hashes.size() + 1 << " files to " << config.output_dir << '\n';
  return kOk;
}

int solve_command(const std::string& points_path, const std::string& rule_name, int k, std::uint64_t seed,
                  const std::string& image_path, const sv::OptimizerConfig& optimizer) {
  const auto rule = sv::parse_rule(rule_name);
  if (!rule) throw sv::InputError("unknown rule '" + rule_name + "'");
  auto points = sv::read_points_csv(points_path);
  sv::RngStream tie_rng(seed, 0, 0);
  const auto election = sv::build_election(std::move(points.candidates), std::move(points.voters), tie_rng);
  sv::RngStream rule_rng(seed, 1, 0);
  const auto outcome = sv::apply_rule(*rule, election, k, rule_rng, optimizer);

  std::vector<sv::Point> winners;
  for (sv::CandidateId c : outcome.committee.members()) winners.push_back(election.candidate_points()[c]);
  std::cout << "rule: " << sv::rule_name(*rule) << "\n"
            << "committee: " << join(outcome.committee.members()) << "\n"
            << "cc_score: " << sv::cc_score(election, outcome.committee) << "\n"
            << "hb_score: " << sv::hb_score(election, outcome.committee) << "\n";
  if (k <= election.num_voters()) {
    std::cout << "monroe_score: " << sv::monroe_assignment(election, outcome.committee).score << "\n";
  }
  std::cout << "quadrant_variance: " << sv::quadrant_variance(winners) << "\n"
            << "tie_events: " << outcome.tie_events << "\n";
  if (!image_path.empty()) sv::render_sample_run(election, outcome.committee, image_path);
  return kOk;
}

int render_command(const std::string& grid_path, const std::string& out_path, double epsilon) {
  const auto grid = sv::read_grid_csv(grid_path, {}, epsilon);
  sv::render_histogram(grid, out_path);
  std::cerr << "rendered " << grid.cells() << "x" << grid.cells() << " grid (T=" << grid.total() << ") to "
            << out_path << '\n';
  return kOk;
}

int oracle_command(int m, int n, int k, const std::string& dist_name, std::uint64_t seed) {
  const auto dist = sv::parse_distribution(dist_name);
  if (!dist) throw sv::InputError("unknown distribution '" + dist_name + "'");
  sv::RngStream sample_rng(seed, sv::sampling_stream_key(*dist), 0);
  const auto election = sv::sample_election(*dist, m, n, sample_rng);

  struct Objective {
    const char* name;
    sv::CommitteeScoreFn score;
    sv::Rule rule;
  };
  std::vector<Objective> objectives{
      {"cc", [&](const sv::Committee& w) { return static_cast<double>(sv::cc_score(election, w)); }, sv::Rule::CC},
      {"hb", [&](const sv::Committee& w) { return sv::hb_score(election, w); }, sv::Rule::HB},
  };
  if (k <= n) {
    objectives.push_back(
        {"monroe",
         [&](const sv::Committee& w) { return static_cast<double>(sv::monroe_assignment(election, w).score); },
         sv::Rule::Monroe});
  }
  bool agree = true;
  for (const auto& objective : objectives) {
    const auto brute = sv::brute_force_best(election, k, objective.score);
    sv::RngStream rng(seed, 1, 0);
    const auto exact = sv::apply_rule(objective.rule, election, k, rng);
    const double brute_score = objective.score(brute);
    const double exact_score = objective.score(exact.committee);
    const bool same = std::abs(brute_score - exact_score) <= sv::kScoreTolerance;
    agree = agree && same;
    std::cout << objective.name << ": brute-force {" << join(brute.members()) << "} " << brute_score
              << ", exact {" << join(exact.committee.members()) << "} " << exact_score
              << (same ? "  agree" : "  MISMATCH") << '\n';
  }
  return agree ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiwinner voting rules on two-dimensional Euclidean elections"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "Run a full experiment and write histograms, statistics and a manifest");
  run->add_option("--config", run_opt.config_path, "JSON config file (flags override its values)");
  run->add_option("--rule", run_opt.rules, "Rules (comma separated, or 'all')")->delimiter(',');
  run->add_option("--dist", run_opt.dists, "Distributions: gauss, square, disc, gauss4, overlapping")->delimiter(',');
  run->add_option("-m", run_opt.m, "Number of candidates");
  run->add_option("-n", run_opt.n, "Number of voters");
  run->add_option("-k", run_opt.k, "Committee size(s), comma separated")->delimiter(',');
  run->add_option("--elections", run_opt.elections, "Elections per (rule, distribution, k)");
  run->add_option("--seed", run_opt.seed, "Master seed");
  run->add_option("--epsilon", run_opt.epsilon, "Intensity transform parameter");
  run->add_option("--threads", run_opt.threads, "Worker threads");
  run->add_option("--out", run_opt.out, "Output directory");
  run->add_option("--max-exact-m", run_opt.max_exact_m, "Largest m accepted by exact rules");
  run->add_option("--node-budget", run_opt.node_budget, "Abort exact search after this many nodes");
  run->add_flag("--no-samples", run_opt.no_samples, "Skip sample-run images");

  std::string points_path, solve_rule = "stv", image_path;
  int solve_k = 1;
  std::uint64_t solve_seed = 1;
  sv::OptimizerConfig solve_optimizer;
  auto* solve = app.add_subcommand("solve", "Compute one committee for an election given as a points CSV");
  solve->add_option("--points", points_path, "CSV with columns role,x,y")->required();
  solve->add_option("--rule", solve_rule, "Rule name");
  solve->add_option("-k", solve_k, "Committee size")->required();
  solve->add_option("--seed", solve_seed, "Seed for tie-breaking");
  solve->add_option("--image", image_path, "Write a sample-run PPM image");
  solve->add_option("--max-exact-m", solve_optimizer.max_exact_m, "Largest m accepted by exact rules");

  std::string grid_path, render_out;
  double render_epsilon = sv::kDefaultEpsilon;
  auto* render = app.add_subcommand("render", "Render a histogram grid CSV as a PGM image");
  render->add_option("--grid", grid_path, "120x120 grid CSV")->required();
  render->add_option("--out", render_out, "Output PGM path")->required();
  render->add_option("--epsilon", render_epsilon, "Intensity transform parameter");

  int oracle_m = 8, oracle_n = 8, oracle_k = 2;
  std::string oracle_dist = "square";
  std::uint64_t oracle_seed = 1;
  auto* oracle = app.add_subcommand("oracle", "Check exact rules against brute force on a small random instance");
  oracle->add_option("-m", oracle_m, "Number of candidates");
  oracle->add_option("-n", oracle_n, "Number of voters");
  oracle->add_option("-k", oracle_k, "Committee size");
  oracle->add_option("--dist", oracle_dist, "Distribution");
  oracle->add_option("--seed", oracle_seed, "Seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_command(run_opt);
    if (*solve) return solve_command(points_path, solve_rule, solve_k, solve_seed, image_path, solve_optimizer);
    if (*render) return render_command(grid_path, render_out, render_epsilon);
    if (*oracle) return oracle_command(oracle_m, oracle_n, oracle_k, oracle_dist, oracle_seed);
  } catch (const sv::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const sv::InfeasibleScale& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kInfeasible;
  } catch (const sv::BudgetExceeded& e) {
    std::cerr << "aborted: " << e.what() << '\n';
    return kInfeasible;
  } catch (const sv::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
