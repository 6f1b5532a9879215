#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include "spatialvote/election.hpp"
#include "spatialvote/errors.hpp"
#include "spatialvote/rng.hpp"

namespace spatialvote::detail {

inline void require_committee_size(const Election& election, int k) {
  if (k < 1 || k > election.num_candidates()) {
    throw InputError("committee size k=" + std::to_string(k) + " must satisfy 1 <= k <= m=" +
                     std::to_string(election.num_candidates()));
  }
}

// Uniform choice among `options`; counts a tie event when there is more than one.
template <class T>
T pick_uniform(const std::vector<T>& options, RngStream& rng, int& tie_events) {
  if (options.size() == 1) return options.front();
  ++tie_events;
  return options[rng.index(options.size())];
}

// Candidate(s) maximizing `score` among `pool`, one picked uniformly at random.
template <class ScoreFn>
CandidateId pick_best(std::span<const CandidateId> pool, ScoreFn&& score, RngStream& rng, int& tie_events,
                      double tolerance = 0.0) {
  std::vector<CandidateId> best;
  double best_score = 0.0;
  for (CandidateId c : pool) {
    const double s = static_cast<double>(score(c));
    if (best.empty() || s > best_score + tolerance) {
      best.assign(1, c);
      best_score = s;
    } else if (s >= best_score - tolerance) {
      best.push_back(c);
    }
  }
  return pick_uniform(best, rng, tie_events);
}

// The k highest-scoring candidates; candidates tied at the boundary score are
// shuffled and taken as needed.
inline std::vector<CandidateId> top_k_by_score(std::span<const Score> scores, int k, RngStream& rng,
                                               int& tie_events) {
  std::vector<CandidateId> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](CandidateId a, CandidateId b) {
    return scores[static_cast<std::size_t>(a)] > scores[static_cast<std::size_t>(b)];
  });
  const Score boundary = scores[static_cast<std::size_t>(order[static_cast<std::size_t>(k - 1)])];
  std::vector<CandidateId> chosen;
  std::vector<CandidateId> tied;
  for (CandidateId c : order) {
    if (scores[static_cast<std::size_t>(c)] > boundary) {
      chosen.push_back(c);
    } else if (scores[static_cast<std::size_t>(c)] == boundary) {
      tied.push_back(c);
    }
  }
  const std::size_t needed = static_cast<std::size_t>(k) - chosen.size();
  if (tied.size() > needed) {
    ++tie_events;
    rng.shuffle(std::span<CandidateId>(tied));
  }
  chosen.insert(chosen.end(), tied.begin(), tied.begin() + static_cast<std::ptrdiff_t>(needed));
  return chosen;
}

// Adds uniformly random non-members until the committee has k members.
inline void fill_at_random(std::vector<CandidateId>& members, int m, int k, RngStream& rng, int& tie_events) {
  if (static_cast<int>(members.size()) >= k) return;
  std::vector<bool> taken(static_cast<std::size_t>(m), false);
  for (CandidateId c : members) taken[static_cast<std::size_t>(c)] = true;
  std::vector<CandidateId> pool;
  for (CandidateId c = 0; c < m; ++c) {
    if (!taken[static_cast<std::size_t>(c)]) pool.push_back(c);
  }
  const std::size_t needed = static_cast<std::size_t>(k) - members.size();
  if (pool.size() > needed) ++tie_events;
  rng.shuffle(std::span<CandidateId>(pool));
  members.insert(members.end(), pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(needed));
}

}  // namespace spatialvote::detail
