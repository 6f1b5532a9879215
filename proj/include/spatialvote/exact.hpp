#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "spatialvote/election.hpp"
#include "spatialvote/rng.hpp"
#include "spatialvote/rule_outcome.hpp"

namespace spatialvote {

enum class BoundKind {
  // CC/Monroe: min of the per-voter bound and f(I) + best marginal gains
  // (coverage is submodular). HB: per-voter bound.
  Tight,
  // Sum over voters of the best score reachable from fixed-in plus undecided candidates.
  PerVoter,
  // No pruning; plain depth-first enumeration.
  None,
};

struct OptimizerConfig {
  // Exact rules refuse instances with more candidates than this.
  int max_exact_m = 40;
  // Enumerate every committee instead of branching when C(m,k) is at most this.
  std::uint64_t exhaustive_limit = 20000;
  BoundKind bound_kind = BoundKind::Tight;
  // Abort with BudgetExceeded after visiting this many search nodes.
  std::optional<std::uint64_t> node_budget;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::size_t optimal_committees = 0;
  bool exhaustive = false;
  double best_score = 0.0;
};

// Chamberlin-Courant: committee with maximum cc_score. When the optimal
// representation uses fewer than k members, the rest are chosen uniformly at
// random; ties among optimal representations are uniform.
RuleOutcome exact_cc(const Election& election, int k, RngStream& rng, const OptimizerConfig& cfg = {},
                     SearchStats* stats = nullptr);

// Monroe: committee maximizing the balanced (monroe_assignment) score.
RuleOutcome exact_monroe(const Election& election, int k, RngStream& rng, const OptimizerConfig& cfg = {},
                         SearchStats* stats = nullptr);

// HarmonicBorda: committee maximizing hb_score (ties within kScoreTolerance).
RuleOutcome exact_hb(const Election& election, int k, RngStream& rng, const OptimizerConfig& cfg = {},
                     SearchStats* stats = nullptr);

using CommitteeScoreFn = std::function<double(const Committee&)>;

// Enumerates all size-k committees in lexicographic order and returns the first
// one with maximum score. Throws BudgetExceeded if C(m,k) > max_committees.
Committee brute_force_best(const Election& election, int k, const CommitteeScoreFn& score_fn,
                           std::uint64_t max_committees = 5'000'000);

// C(n, r), saturating at UINT64_MAX.
std::uint64_t binomial(int n, int r);

}  // namespace spatialvote
