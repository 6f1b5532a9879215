#pragma once

#include <vector>

#include "spatialvote/election.hpp"
#include "spatialvote/rng.hpp"
#include "spatialvote/rule_outcome.hpp"

namespace spatialvote {

// Principal branch of Lambert's W on the positive reals: w * exp(w) = k.
double lambert_w(double k);

// H_k = 1 + 1/2 + ... + 1/k.
double harmonic_number(int k);

// Coverage thresholds for Algorithm P: x_max = ceil(m * w(k) / k), at least 1
// and at most m.
struct ThresholdSchedule {
  double w_k = 0.0;
  int x_max = 1;
};
ThresholdSchedule threshold_schedule(int m, int k);

// Worst-case approximation ratios of GreedyCC and GreedyMonroe.
double greedy_cc_ratio();
double greedy_monroe_ratio(int m, int k);

struct GreedyTrace {
  std::vector<Score> gains;  // marginal CC gain of each pick
};

// Adds, k times, the candidate maximizing cc_score of the enlarged committee.
RuleOutcome greedy_cc(const Election& election, int k, RngStream& rng, GreedyTrace* trace = nullptr);

struct CoverTrace {
  std::vector<int> covered;  // voters newly covered by each pick
  int filled_at_random = 0;
};

// Greedy cover: each pick covers the most remaining voters that rank it within
// their top `threshold` positions; covered voters are deleted. Seats left once
// every voter is covered are filled uniformly at random.
RuleOutcome algorithm_p(const Election& election, int k, int threshold, RngStream& rng,
                        CoverTrace* trace = nullptr);
// algorithm_p at the default threshold x_max.
RuleOutcome algorithm_p(const Election& election, int k, RngStream& rng);

struct RangingTrace {
  std::vector<Score> cc_scores;  // one per threshold 1..x_max
  int chosen_threshold = 0;
};

// Best cc_score over algorithm_p runs with thresholds 1..x_max.
RuleOutcome ranging_cc(const Election& election, int k, RngStream& rng, RangingTrace* trace = nullptr);
RuleOutcome ranging_cc(const Election& election, int k, int x_max, RngStream& rng, RangingTrace* trace = nullptr);

// Builds a Monroe assignment member by member: each pick is the candidate with
// the best Borda score from its floor(n/k) or ceil(n/k) favourite remaining
// voters, who are then assigned to it. The first (n mod k) picks take ceil(n/k).
RuleOutcome greedy_monroe(const Election& election, int k, RngStream& rng);

}  // namespace spatialvote
