#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "spatialvote/exact.hpp"
#include "spatialvote/metrics.hpp"
#include "spatialvote/rule_outcome.hpp"
#include "spatialvote/spatial.hpp"

namespace spatialvote {

enum class Rule {
  SNTV,
  STV,
  Bloc,
  KBorda,
  CC,
  Monroe,
  HB,
  GreedyCC,
  AlgorithmP,
  RangingCC,
  GreedyMonroe,
};

std::string_view rule_name(Rule rule);
std::optional<Rule> parse_rule(std::string_view name);
const std::vector<Rule>& all_rules();
// Rules solved by exact committee search (refused above OptimizerConfig::max_exact_m).
bool is_exact(Rule rule);

RuleOutcome apply_rule(Rule rule, const Election& election, int k, RngStream& rng,
                       const OptimizerConfig& optimizer = {});

struct ExperimentConfig {
  std::vector<Rule> rules{Rule::SNTV, Rule::STV, Rule::Bloc, Rule::KBorda};
  std::vector<Distribution> distributions{Distribution::Gaussian, Distribution::UniformDisc,
                                          Distribution::UniformSquare, Distribution::FourGaussian};
  int m = 200;
  int n = 200;
  std::vector<int> committee_sizes{20};
  int num_elections = 10000;
  std::uint64_t seed = 1;
  double epsilon = kDefaultEpsilon;
  GridGeometry geometry;
  int threads = 1;
  std::filesystem::path output_dir = "out";
  OptimizerConfig optimizer;
  bool sample_images = true;
};

// Throws InputError on inconsistent settings and InfeasibleScale when an exact
// rule is requested beyond the optimizer limits.
void validate(const ExperimentConfig& config);

nlohmann::json config_to_json(const ExperimentConfig& config);
// Fields present in `doc` override those of `base`.
ExperimentConfig config_from_json(const nlohmann::json& doc, ExperimentConfig base = {});

// Random stream keys; elections depend only on (seed, distribution, index) so
// every rule and committee size sees the same elections.
std::uint64_t sampling_stream_key(Distribution dist);
std::uint64_t rule_stream_key(Rule rule, Distribution dist, int k);

struct CellResult {
  Rule rule;
  Distribution distribution;
  int k = 0;
  HistogramGrid grid;
  QuadrantStats quadrant;
  std::uint64_t tie_events = 0;
  // load_histogram[s] = number of committee members representing s voters.
  std::vector<std::uint64_t> load_histogram;
  double wall_seconds = 0.0;
  // First election of the cell and its committee, for sample-run images.
  std::optional<Election> sample_election;
  Committee sample_committee;
};

// Runs every (distribution, k, rule) cell in memory. Results are independent of
// config.threads.
std::vector<CellResult> simulate(const ExperimentConfig& config);

struct RunManifest {
  nlohmann::json config;
  nlohmann::json cells = nlohmann::json::array();
  std::vector<std::string> warnings;
  std::map<std::string, std::string> file_hashes;  // file name -> SHA-256 hex

  nlohmann::json to_json() const;
};

// simulate + write histogram CSV/PGM, load CSV, sample images, stats.csv and manifest.json.
RunManifest run_experiment(const ExperimentConfig& config);

// stats CSV: rule,distribution,k,mean_variance,n_samples,sample_stddev
void write_stats(const std::vector<CellResult>& cells, const std::filesystem::path& path);

std::string sha256_file(const std::filesystem::path& path);

}  // namespace spatialvote
