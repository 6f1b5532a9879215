#pragma once

#include <vector>

#include "spatialvote/election.hpp"
#include "spatialvote/rng.hpp"
#include "spatialvote/rule_outcome.hpp"

namespace spatialvote {

// Top-k by Plurality / k-Approval / Borda score, boundary ties uniform.
RuleOutcome sntv(const Election& election, int k, RngStream& rng);
RuleOutcome bloc(const Election& election, int k, RngStream& rng);
RuleOutcome k_borda(const Election& election, int k, RngStream& rng);

// Droop-style quota floor(n/(k+1)) + 1, fixed from the original voter count.
int stv_quota(int num_voters, int k);

struct StvEvent {
  enum class Kind {
    QuotaElected,      // reached the quota; `voters_removed` supporters leave
    Eliminated,        // lowest Plurality score, removed from all rankings
    ElectedRemaining,  // active candidates == open seats
    FilledAtRandom,    // no voters left; seat filled uniformly at random
  };
  Kind kind;
  CandidateId candidate;
  int plurality = 0;
  int voters_removed = 0;
};

struct StvTrace {
  int quota = 0;
  std::vector<StvEvent> events;
};

// STV with random removal of exactly q supporters on each election and
// uniformly random tie-breaking.
RuleOutcome stv(const Election& election, int k, RngStream& rng, StvTrace* trace = nullptr);

}  // namespace spatialvote
