#pragma once

#include <optional>

#include "spatialvote/election.hpp"

namespace spatialvote {

struct RuleOutcome {
  Committee committee;
  // Number of uniform random tie-break decisions that had more than one option.
  int tie_events = 0;
  // Set by rules that construct a representation explicitly (GreedyMonroe, exact Monroe).
  std::optional<Assignment> assignment;
};

}  // namespace spatialvote
