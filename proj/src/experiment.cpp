#include "spatialvote/experiment.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <thread>

#include "spatialvote/approximation.hpp"
#include "spatialvote/errors.hpp"
#include "spatialvote/render.hpp"
#include "spatialvote/sequential_rules.hpp"

namespace spatialvote {
namespace {

struct RuleInfo {
  Rule rule;
  std::string_view name;
};

constexpr RuleInfo kRules[] = {
    {Rule::SNTV, "sntv"},           {Rule::STV, "stv"},
    {Rule::Bloc, "bloc"},           {Rule::KBorda, "kborda"},
    {Rule::CC, "cc"},               {Rule::Monroe, "monroe"},
    {Rule::HB, "hb"},               {Rule::GreedyCC, "greedy-cc"},
    {Rule::AlgorithmP, "algorithm-p"}, {Rule::RangingCC, "ranging-cc"},
    {Rule::GreedyMonroe, "greedy-monroe"},
};

std::string cell_stem(const CellResult& cell) {
  return std::string(distribution_name(cell.distribution)) + "_" + std::string(rule_name(cell.rule)) + "_k" +
         std::to_string(cell.k);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Per-worker accumulators for one (distribution, k) block.
struct WorkerTotals {
  std::vector<HistogramGrid> grids;
  std::vector<std::vector<std::uint64_t>> loads;
  std::vector<std::uint64_t> ties;
  std::vector<double> seconds;
};

}  // namespace

std::string_view rule_name(Rule rule) {
  for (const auto& info : kRules) {
    if (info.rule == rule) return info.name;
  }
  return "unknown";
}

std::optional<Rule> parse_rule(std::string_view name) {
  for (const auto& info : kRules) {
    if (info.name == name) return info.rule;
  }
  return std::nullopt;
}

const std::vector<Rule>& all_rules() {
  static const std::vector<Rule> rules = [] {
    std::vector<Rule> out;
    for (const auto& info : kRules) out.push_back(info.rule);
    return out;
  }();
  return rules;
}

bool is_exact(Rule rule) { return rule == Rule::CC || rule == Rule::Monroe || rule == Rule::HB; }

RuleOutcome apply_rule(Rule rule, const Election& election, int k, RngStream& rng, const OptimizerConfig& optimizer) {
  switch (rule) {
    case Rule::SNTV: return sntv(election, k, rng);
    case Rule::STV: return stv(election, k, rng);
    case Rule::Bloc: return bloc(election, k, rng);
    case Rule::KBorda: return k_borda(election, k, rng);
    case Rule::CC: return exact_cc(election, k, rng, optimizer);
    case Rule::Monroe: return exact_monroe(election, k, rng, optimizer);
    case Rule::HB: return exact_hb(election, k, rng, optimizer);
    case Rule::GreedyCC: return greedy_cc(election, k, rng);
    case Rule::AlgorithmP: return algorithm_p(election, k, rng);
    case Rule::RangingCC: return ranging_cc(election, k, rng);
    case Rule::GreedyMonroe: return greedy_monroe(election, k, rng);
  }
  throw InputError("unknown rule");
}

void validate(const ExperimentConfig& config) {
  if (config.rules.empty()) throw InputError("no rules selected");
  if (config.distributions.empty()) throw InputError("no distributions selected");
  if (config.m < 1 || config.n < 1) throw InputError("m and n must be positive");
  if (config.committee_sizes.empty()) throw InputError("no committee sizes selected");
  for (int k : config.committee_sizes) {
    if (k < 1 || k > config.m) throw InputError("committee size " + std::to_string(k) + " outside [1, m]");
  }
  if (config.num_elections < 0) throw InputError("number of elections must be nonnegative");
  if (!(config.epsilon > 0.0)) throw InputError("epsilon must be positive");
  if (config.threads < 1) throw InputError("thread count must be at least 1");
  if (config.geometry.cells < 1 || !(config.geometry.hi > config.geometry.lo)) throw InputError("bad grid geometry");
  for (Rule rule : config.rules) {
    if (rule == Rule::Monroe || rule == Rule::GreedyMonroe) {
      for (int k : config.committee_sizes) {
        if (k > config.n) throw InputError(std::string(rule_name(rule)) + " needs k <= n");
      }
    }
    if (is_exact(rule) && config.m > config.optimizer.max_exact_m) {
      throw InfeasibleScale("rule '" + std::string(rule_name(rule)) + "' needs exact committee search, limited to m <= " +
                            std::to_string(config.optimizer.max_exact_m) + " (requested m=" + std::to_string(config.m) +
                            "); use greedy-cc, ranging-cc or greedy-monroe, or a smaller instance");
    }
  }
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
  nlohmann::json doc;
  auto& rules = doc["rules"] = nlohmann::json::array();
  for (Rule r : config.rules) rules.push_back(rule_name(r));
  auto& dists = doc["distributions"] = nlohmann::json::array();
  for (Distribution d : config.distributions) dists.push_back(distribution_name(d));
  doc["m"] = config.m;
  doc["n"] = config.n;
  doc["k"] = config.committee_sizes;
  doc["elections"] = config.num_elections;
  doc["seed"] = config.seed;
  doc["epsilon"] = config.epsilon;
  doc["grid"] = {{"lo", config.geometry.lo}, {"hi", config.geometry.hi}, {"cells", config.geometry.cells}};
  doc["threads"] = config.threads;
  doc["out"] = config.output_dir.string();
  doc["sample_images"] = config.sample_images;
  nlohmann::json opt{{"max_exact_m", config.optimizer.max_exact_m},
                     {"exhaustive_limit", config.optimizer.exhaustive_limit}};
  opt["node_budget"] = config.optimizer.node_budget ? nlohmann::json(*config.optimizer.node_budget) : nlohmann::json();
  doc["optimizer"] = opt;
  return doc;
}

ExperimentConfig config_from_json(const nlohmann::json& doc, ExperimentConfig base) {
  if (!doc.is_object()) throw InputError("config must be a JSON object");
  try {
    if (doc.contains("rules")) {
      base.rules.clear();
      for (const auto& name : doc.at("rules")) {
        const auto rule = parse_rule(name.get<std::string>());
        if (!rule) throw InputError("unknown rule '" + name.get<std::string>() + "'");
        base.rules.push_back(*rule);
      }
    }
    if (doc.contains("distributions")) {
      base.distributions.clear();
      for (const auto& name : doc.at("distributions")) {
        const auto dist = parse_distribution(name.get<std::string>());
        if (!dist) throw InputError("unknown distribution '" + name.get<std::string>() + "'");
        base.distributions.push_back(*dist);
      }
    }
    if (doc.contains("m")) base.m = doc.at("m").get<int>();
    if (doc.contains("n")) base.n = doc.at("n").get<int>();
    if (doc.contains("k")) {
      const auto& k = doc.at("k");
      base.committee_sizes = k.is_array() ? k.get<std::vector<int>>() : std::vector<int>{k.get<int>()};
    }
    if (doc.contains("elections")) base.num_elections = doc.at("elections").get<int>();
    if (doc.contains("seed")) base.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("epsilon")) base.epsilon = doc.at("epsilon").get<double>();
    if (doc.contains("grid")) {
      const auto& g = doc.at("grid");
      base.geometry.lo = g.value("lo", base.geometry.lo);
      base.geometry.hi = g.value("hi", base.geometry.hi);
      base.geometry.cells = g.value("cells", base.geometry.cells);
    }
    if (doc.contains("threads")) base.threads = doc.at("threads").get<int>();
    if (doc.contains("out")) base.output_dir = doc.at("out").get<std::string>();
    if (doc.contains("sample_images")) base.sample_images = doc.at("sample_images").get<bool>();
    if (doc.contains("optimizer")) {
      const auto& o = doc.at("optimizer");
      base.optimizer.max_exact_m = o.value("max_exact_m", base.optimizer.max_exact_m);
      base.optimizer.exhaustive_limit = o.value("exhaustive_limit", base.optimizer.exhaustive_limit);
      if (o.contains("node_budget")) {
        if (o.at("node_budget").is_null()) {
          base.optimizer.node_budget.reset();
        } else {
          base.optimizer.node_budget = o.at("node_budget").get<std::uint64_t>();
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad config value: ") + e.what());
  }
  return base;
}

std::uint64_t sampling_stream_key(Distribution dist) {
  return (std::uint64_t{1} << 56) | static_cast<std::uint64_t>(dist);
}

std::uint64_t rule_stream_key(Rule rule, Distribution dist, int k) {
  return (std::uint64_t{2} << 56) | (static_cast<std::uint64_t>(rule) << 40) |
         (static_cast<std::uint64_t>(dist) << 32) | static_cast<std::uint32_t>(k);
}

std::vector<CellResult> simulate(const ExperimentConfig& config) {
  validate(config);
  std::vector<CellResult> results;
  const std::size_t num_rules = config.rules.size();
  const auto elections = static_cast<std::size_t>(config.num_elections);

  for (Distribution dist : config.distributions) {
    for (int k : config.committee_sizes) {
      const std::size_t first = results.size();
      for (Rule rule : config.rules) {
        CellResult cell{rule, dist, k, HistogramGrid(config.geometry, config.epsilon), {}, 0,
                        std::vector<std::uint64_t>(static_cast<std::size_t>(config.n) + 1, 0), 0.0, std::nullopt, {}};
        cell.quadrant.samples.assign(elections, 0.0);
        results.push_back(std::move(cell));
      }

      const int workers = std::max(1, std::min<int>(config.threads, static_cast<int>(std::max<std::size_t>(elections, 1))));
      std::vector<WorkerTotals> totals(static_cast<std::size_t>(workers));
      std::atomic<std::size_t> next{0};

      auto work = [&](WorkerTotals& mine) {
        mine.grids.assign(num_rules, HistogramGrid(config.geometry, config.epsilon));
        mine.loads.assign(num_rules, std::vector<std::uint64_t>(static_cast<std::size_t>(config.n) + 1, 0));
        mine.ties.assign(num_rules, 0);
        mine.seconds.assign(num_rules, 0.0);
        std::vector<Point> winners;
        for (std::size_t index = next++; index < elections; index = next++) {
          RngStream sample_rng(config.seed, sampling_stream_key(dist), index);
          const Election election = sample_election(dist, config.m, config.n, sample_rng);
          const auto candidates = election.candidate_points();
          for (std::size_t r = 0; r < num_rules; ++r) {
            const Rule rule = config.rules[r];
            const auto start = std::chrono::steady_clock::now();
            RngStream rule_rng(config.seed, rule_stream_key(rule, dist, k), index);
            const RuleOutcome outcome = apply_rule(rule, election, k, rule_rng, config.optimizer);
            mine.seconds[r] += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

            winners.clear();
            for (CandidateId c : outcome.committee.members()) winners.push_back(candidates[static_cast<std::size_t>(c)]);
            accumulate_histogram(mine.grids[r], winners);
            results[first + r].quadrant.samples[index] = quadrant_variance(winners);
            mine.ties[r] += static_cast<std::uint64_t>(outcome.tie_events);
            const auto assignment = outcome.assignment ? *outcome.assignment : gyb_assignment(election, outcome.committee);
            for (int load : assignment.loads()) ++mine.loads[r][static_cast<std::size_t>(load)];
            if (index == 0) {
              results[first + r].sample_election = election;
              results[first + r].sample_committee = outcome.committee;
            }
          }
        }
      };

      if (workers == 1) {
        work(totals.front());
      } else {
        std::vector<std::jthread> pool;
        for (auto& mine : totals) pool.emplace_back(work, std::ref(mine));
      }

      for (std::size_t r = 0; r < num_rules; ++r) {
        auto& cell = results[first + r];
        for (const auto& mine : totals) {
          if (mine.grids.empty()) continue;
          cell.grid = merge_histograms(cell.grid, mine.grids[r]);
          for (std::size_t s = 0; s < cell.load_histogram.size(); ++s) cell.load_histogram[s] += mine.loads[r][s];
          cell.tie_events += mine.ties[r];
          cell.wall_seconds += mine.seconds[r];
        }
      }
    }
  }
  return results;
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json doc;
  doc["config"] = config;
  doc["cells"] = cells;
  doc["warnings"] = warnings;
  doc["files"] = file_hashes;
  return doc;
}

void write_stats(const std::vector<CellResult>& cells, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "rule,distribution,k,mean_variance,n_samples,sample_stddev\n";
  for (const auto& cell : cells) {
    out << rule_name(cell.rule) << ',' << distribution_name(cell.distribution) << ',' << cell.k << ',';
    if (cell.quadrant.size() > 0) {
      out << format_double(cell.quadrant.mean()) << ',' << cell.quadrant.size() << ','
          << format_double(cell.quadrant.stddev());
    } else {
      out << ",0,";
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for hashing");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw IoError("SHA-256 failed for " + path.string());
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

RunManifest run_experiment(const ExperimentConfig& config) {
  validate(config);
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) throw IoError("cannot create output directory " + config.output_dir.string() + ": " + ec.message());

  const auto cells = simulate(config);
  RunManifest manifest;
  manifest.config = config_to_json(config);
  std::vector<std::filesystem::path> written;

  for (const auto& cell : cells) {
    const auto stem = cell_stem(cell);
    const auto grid_path = config.output_dir / (stem + "_hist.csv");
    write_grid_csv(cell.grid, grid_path);
    written.push_back(grid_path);
    const auto image_path = config.output_dir / (stem + "_hist.pgm");
    render_histogram(cell.grid, image_path);
    written.push_back(image_path);

    const auto loads_path = config.output_dir / (stem + "_loads.csv");
    {
      std::ofstream out(loads_path);
      if (!out) throw IoError("cannot open " + loads_path.string() + " for writing");
      out << "voters_represented,members\n";
      for (std::size_t s = 0; s < cell.load_histogram.size(); ++s) out << s << ',' << cell.load_histogram[s] << '\n';
      if (!out) throw IoError("write failed: " + loads_path.string());
    }
    written.push_back(loads_path);

    if (config.sample_images && cell.sample_election) {
      const auto sample_path = config.output_dir / (stem + "_sample.ppm");
      render_sample_run(*cell.sample_election, cell.sample_committee, sample_path);
      written.push_back(sample_path);
    }

    if (cell.grid.clamped() > 0) {
      manifest.warnings.push_back(stem + ": " + std::to_string(cell.grid.clamped()) +
                                  " winners outside the histogram extent were clamped");
    }
    manifest.cells.push_back({{"rule", rule_name(cell.rule)},
                              {"distribution", distribution_name(cell.distribution)},
                              {"k", cell.k},
                              {"elections", cell.quadrant.size()},
                              {"mean_variance", cell.quadrant.mean()},
                              {"total_winners", cell.grid.total()},
                              {"tie_events", cell.tie_events},
                              {"clamped_points", cell.grid.clamped()},
                              {"wall_seconds", cell.wall_seconds}});
  }

  const auto stats_path = config.output_dir / "stats.csv";
  write_stats(cells, stats_path);
  written.push_back(stats_path);

  for (const auto& path : written) manifest.file_hashes[path.filename().string()] = sha256_file(path);

  const auto manifest_path = config.output_dir / "manifest.json";
  std::ofstream out(manifest_path);
  if (!out) throw IoError("cannot open " + manifest_path.string() + " for writing");
  out << manifest.to_json().dump(2) << '\n';
  if (!out) throw IoError("write failed: " + manifest_path.string());
  return manifest;
}

}  // namespace spatialvote
