// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Reference values and tolerances are fixed here; do not loosen them to pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <string>
#include <vector>

#include "spatialvote/approximation.hpp"
#include "spatialvote/exact.hpp"
#include "spatialvote/experiment.hpp"
#include "spatialvote/metrics.hpp"
#include "spatialvote/sequential_rules.hpp"
#include "test_support.hpp"

using namespace spatialvote;
using namespace spatialvote::testing;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Reference {
  Rule rule;
  Distribution dist;
  double value;
};

// Reference mean quadrant variances at m = n = 200, k = 20.
const std::vector<Reference> kPositionalReference{
    {Rule::SNTV, Distribution::UniformSquare, 3.292},   {Rule::SNTV, Distribution::UniformDisc, 3.219},
    {Rule::SNTV, Distribution::Gaussian, 3.275},        {Rule::SNTV, Distribution::FourGaussian, 2.787},
    {Rule::STV, Distribution::UniformSquare, 0.994},    {Rule::STV, Distribution::UniformDisc, 1.070},
    {Rule::STV, Distribution::Gaussian, 1.150},         {Rule::STV, Distribution::FourGaussian, 1.043},
    {Rule::Bloc, Distribution::UniformSquare, 17.789},  {Rule::Bloc, Distribution::UniformDisc, 17.146},
    {Rule::Bloc, Distribution::Gaussian, 18.709},       {Rule::Bloc, Distribution::FourGaussian, 9.663},
    {Rule::KBorda, Distribution::UniformSquare, 4.605}, {Rule::KBorda, Distribution::UniformDisc, 4.653},
    {Rule::KBorda, Distribution::Gaussian, 4.736},      {Rule::KBorda, Distribution::FourGaussian, 3.653},
};

const std::vector<Reference> kApproximationReference{
    {Rule::GreedyCC, Distribution::UniformSquare, 1.019},     {Rule::GreedyCC, Distribution::UniformDisc, 1.083},
    {Rule::GreedyCC, Distribution::Gaussian, 1.106},          {Rule::GreedyCC, Distribution::FourGaussian, 1.132},
    {Rule::AlgorithmP, Distribution::UniformSquare, 2.551},   {Rule::AlgorithmP, Distribution::UniformDisc, 2.453},
    {Rule::AlgorithmP, Distribution::Gaussian, 2.418},        {Rule::AlgorithmP, Distribution::FourGaussian, 2.381},
    {Rule::RangingCC, Distribution::UniformSquare, 0.907},    {Rule::RangingCC, Distribution::UniformDisc, 0.944},
    {Rule::RangingCC, Distribution::Gaussian, 1.015},         {Rule::RangingCC, Distribution::FourGaussian, 0.959},
    {Rule::GreedyMonroe, Distribution::UniformSquare, 0.848}, {Rule::GreedyMonroe, Distribution::UniformDisc, 0.926},
    {Rule::GreedyMonroe, Distribution::Gaussian, 0.978},      {Rule::GreedyMonroe, Distribution::FourGaussian, 0.877},
};

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// Runs the full-scale simulation for the referenced rules and compares every
// mean against its reference within a relative tolerance.
std::vector<CellResult> table_check(int id, const std::string& what, const std::vector<Reference>& refs,
                                    int elections, double tolerance) {
  ExperimentConfig cfg;
  cfg.rules.clear();
  for (const auto& r : refs) {
    if (std::find(cfg.rules.begin(), cfg.rules.end(), r.rule) == cfg.rules.end()) cfg.rules.push_back(r.rule);
  }
  cfg.distributions = {Distribution::UniformSquare, Distribution::UniformDisc, Distribution::Gaussian,
                       Distribution::FourGaussian};
  cfg.num_elections = elections;
  cfg.seed = kSeed;
  const auto start = std::chrono::steady_clock::now();
  auto cells = simulate(cfg);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  int bad = 0;
  for (const auto& ref : refs) {
    const auto it = std::find_if(cells.begin(), cells.end(), [&](const CellResult& c) {
      return c.rule == ref.rule && c.distribution == ref.dist;
    });
    const double got = it->quadrant.mean();
    const double rel = (got - ref.value) / ref.value;
    const bool ok = std::abs(rel) <= tolerance;
    if (!ok) ++bad;
    std::printf("  %-4s %-13s %-7s reference %7.3f measured %7.3f (sd %.3f) rel %+6.1f%%\n", ok ? "ok" : "MISS",
                std::string(rule_name(ref.rule)).c_str(), std::string(distribution_name(ref.dist)).c_str(), ref.value,
                got, it->quadrant.stddev(), 100.0 * rel);
  }
  report(id, bad == 0, what,
         fmt("%d of %zu rows outside +-%.0f%%, %d elections, %.1f s", bad, refs.size(), 100 * tolerance, elections,
             seconds));
  return cells;
}

Committee committee_of(const std::vector<int>& members, int m) { return Committee(members, m); }

void criterion_3() {
  int instances = 0, oracle_bad = 0, bound_bad = 0, order_bad = 0;
  for (std::uint64_t seed = 0; instances < 120; ++seed) {
    const int m = 5 + static_cast<int>(seed % 8);  // 5..12
    const int n = 3 + static_cast<int>(seed % 10);  // 3..12
    const int k = 1 + static_cast<int>(seed % 3);
    const Distribution dist = all_distributions()[seed % 4];
    RngStream sample_rng(kSeed, 300, seed);
    const auto e = sample_election(dist, m, n, sample_rng);
    RngStream rng(kSeed, 301, seed);
    ++instances;

    const auto cc_fn = [&](const Committee& w) { return static_cast<double>(cc_score(e, w)); };
    const auto mon_fn = [&](const Committee& w) { return static_cast<double>(monroe_assignment(e, w).score); };
    const auto hb_fn = [&](const Committee& w) { return hb_score(e, w); };

    OptimizerConfig bnb;
    bnb.exhaustive_limit = 0;
    const double cc_opt = cc_fn(brute_force_best(e, k, cc_fn));
    const double mon_opt = mon_fn(brute_force_best(e, k, mon_fn));
    const double hb_opt = hb_fn(brute_force_best(e, k, hb_fn));
    if (cc_fn(exact_cc(e, k, rng, bnb).committee) != cc_opt) ++oracle_bad;
    if (mon_fn(exact_monroe(e, k, rng, bnb).committee) != mon_opt) ++oracle_bad;
    if (std::abs(hb_fn(exact_hb(e, k, rng, bnb).committee) - hb_opt) > 1e-9) ++oracle_bad;
    if (cc_fn(exact_cc(e, k, rng).committee) != cc_opt) ++oracle_bad;

    if (cc_fn(greedy_cc(e, k, rng).committee) < greedy_cc_ratio() * cc_opt - 1e-9) ++bound_bad;
    const auto gm = greedy_monroe(e, k, rng);
    if (static_cast<double>(assignment_score(e, *gm.assignment)) < greedy_monroe_ratio(m, k) * mon_opt - 1e-9) {
      ++bound_bad;
    }
    if (cc_opt < mon_opt) ++order_bad;
  }
  report(3, oracle_bad + bound_bad + order_bad == 0,
         "exact rules match brute force, greedy bounds hold, OPT_CC >= OPT_Monroe",
         fmt("%d instances, m<=12 n<=12 k<=3; mismatches %d, bound violations %d, order violations %d", instances,
             oracle_bad, bound_bad, order_bad));
}

void criterion_4() {
  int bad = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int m = 4 + static_cast<int>(seed % 9);
    const int n = 2 + static_cast<int>(seed % 11);
    RngStream sample_rng(kSeed, 400, seed);
    const auto e = sample_election(all_distributions()[seed % 4], m, n, sample_rng);
    const auto borda = all_candidate_scores(e, ScoringFunction::borda(m));
    const Score top = *std::max_element(borda.begin(), borda.end());
    RngStream rng(kSeed, 401, seed);
    for (const auto& outcome : {exact_cc(e, 1, rng), exact_monroe(e, 1, rng), exact_hb(e, 1, rng), k_borda(e, 1, rng),
                                greedy_cc(e, 1, rng)}) {
      if (borda[static_cast<std::size_t>(outcome.committee.members().front())] != top) ++bad;
    }
  }
  report(4, bad == 0, "k = 1 rules return a Borda winner", fmt("100 instances x 5 rules, %d non-Borda picks", bad));
}

void criterion_5() {
  const double eps = kDefaultEpsilon;
  const double total = 200.0 * 20 * 1000;
  const double at_zero = intensity_transform(0.0, eps, total);
  const double at_one = intensity_transform(eps * total, eps, total);
  const double peak = intensity_transform(10.9 * eps * total, eps, total);
  const bool ok = at_zero == 0.0 && std::abs(at_one - 0.5) <= 1e-12 && peak >= 0.9417 && peak <= 0.9419;
  report(5, ok, "intensity transform fixed points", fmt("y(0)=%.17g y(eT)=%.17g y(10.9eT)=%.10f", at_zero, at_one, peak));
}

void criterion_6(const std::vector<CellResult>& table1) {
  const auto it = std::find_if(table1.begin(), table1.end(), [](const CellResult& c) {
    return c.rule == Rule::Bloc && c.distribution == Distribution::Gaussian;
  });
  const auto& grid = it->grid;
  double centre = 0, ring = 0;
  int centre_cells = 0, ring_cells = 0;
  for (int row = 0; row < grid.cells(); ++row) {
    for (int col = 0; col < grid.cells(); ++col) {
      const Point c = grid.cell_center(row, col);
      const double r = std::hypot(c.x, c.y);
      if (r <= 0.3) {
        centre += static_cast<double>(grid.at(row, col));
        ++centre_cells;
      } else if (r >= 0.6 && r <= 1.2) {
        ring += static_cast<double>(grid.at(row, col));
        ++ring_cells;
      }
    }
  }
  centre /= centre_cells;
  ring /= ring_cells;
  report(6, centre < ring, "Bloc winner density dips at the centre of the Gaussian",
         fmt("mean cell count r<=0.3: %.2f over %d cells, 0.6<=r<=1.2: %.2f over %d cells, %zu elections", centre,
             centre_cells, ring, ring_cells, it->quadrant.size()));
}

std::map<std::string, std::string> output_bytes(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto ext = entry.path().extension();
    if (ext != ".csv" && ext != ".pgm") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    files[entry.path().filename().string()] = {std::istreambuf_iterator<char>(in), {}};
  }
  return files;
}

void criterion_7() {
  ExperimentConfig cfg;
  cfg.rules = all_rules();
  cfg.distributions = all_distributions();
  cfg.m = 14;
  cfg.n = 20;
  cfg.committee_sizes = {3, 5};
  cfg.num_elections = 40;
  cfg.seed = 2024;
  cfg.sample_images = false;
  const auto base = fs::temp_directory_path() / "spatialvote_acceptance_determinism";
  fs::remove_all(base);
  std::vector<std::map<std::string, std::string>> runs;
  for (int threads : {1, 2, 5}) {
    cfg.threads = threads;
    cfg.output_dir = base / ("t" + std::to_string(threads));
    run_experiment(cfg);
    runs.push_back(output_bytes(cfg.output_dir));
  }
  const bool ok = !runs[0].empty() && runs[0] == runs[1] && runs[0] == runs[2];
  report(7, ok, "outputs are byte-identical across thread counts",
         fmt("%zu CSV/PGM files compared for 1, 2 and 5 threads, all 11 rules, 5 distributions", runs[0].size()));
  fs::remove_all(base);
}

bool unanimous_prefix(int m, int n, int k, RngStream& rng, StvTrace* trace = nullptr) {
  std::vector<std::vector<int>> rankings(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(m)));
  for (auto& r : rankings) std::iota(r.begin(), r.end(), 0);
  std::vector<int> prefix(static_cast<std::size_t>(k));
  std::iota(prefix.begin(), prefix.end(), 0);
  return stv(make_election(m, rankings), k, rng, trace).committee.members() == prefix;
}

// The prefix property needs k * q <= n; at n=200, k=30 the electorate runs out
// after 28 quota elections and the last seats are filled by elimination or at random.
void criterion_8() {
  const int q20 = stv_quota(200, 20);
  const int q30 = stv_quota(200, 30);
  RngStream rng(kSeed, 800, 0);
  bool prefixes = unanimous_prefix(5, 10, 2, rng);
  for (int k : {1, 10, 20}) prefixes = unanimous_prefix(200, 200, k, rng) && prefixes;

  StvTrace trace;
  unanimous_prefix(200, 200, 30, rng, &trace);
  int quota_elections = 0;
  for (const auto& ev : trace.events) quota_elections += ev.kind == StvEvent::Kind::QuotaElected;

  report(8, q20 == 10 && q30 == 7 && prefixes && quota_elections == 200 / q30,
         "STV quota arithmetic and unanimous profile",
         fmt("q(200,20)=%d q(200,30)=%d, top-k prefix for (n=10,k=2) and n=200 k in {1,10,20}: %s, "
             "k=30 quota elections %d of 30",
             q20, q30, prefixes ? "yes" : "no", quota_elections));
}

void criterion_9() {
  int instances = 0, bad = 0;
  for (std::uint64_t seed = 0; instances < 150; ++seed) {
    const int n = 1 + static_cast<int>(seed % 8);
    const int k = 1 + static_cast<int>(seed % 3);
    if (k > n) continue;
    const int m = 3 + static_cast<int>(seed % 5);
    RngStream sample_rng(kSeed, 900, seed);
    const auto e = sample_election(all_distributions()[seed % 5], m, n, sample_rng);
    std::vector<int> members(static_cast<std::size_t>(m));
    std::iota(members.begin(), members.end(), 0);
    RngStream rng(kSeed, 901, seed);
    rng.shuffle(std::span<int>(members));
    members.resize(static_cast<std::size_t>(k));
    if (monroe_assignment(e, committee_of(members, m)).score != brute_monroe(e, members)) ++bad;
    ++instances;
  }
  report(9, bad == 0, "flow Monroe assignment equals brute-force balanced optimum",
         fmt("%d instances with n<=8, k<=3, %d mismatches", instances, bad));
}

}  // namespace

int main() {
  const auto table1 = table_check(1, "positional rules match reference quadrant variances",
                                  kPositionalReference, 1000, 0.10);
  table_check(2, "approximation algorithms match reference quadrant variances", kApproximationReference, 500, 0.15);
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6(table1);
  criterion_7();
  criterion_8();
  criterion_9();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
