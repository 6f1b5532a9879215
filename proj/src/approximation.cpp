#include "spatialvote/approximation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tie_break.hpp"

namespace spatialvote {

double lambert_w(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw InputError("lambert_w needs a finite positive argument");
  double w = k < std::numbers::e ? std::log1p(k) : std::log(k) - std::log(std::log(k));
  for (int iter = 0; iter < 100; ++iter) {
    const double ew = std::exp(w);
    const double residual = w * ew - k;
    if (std::abs(residual) <= 1e-12 * std::max(1.0, k)) break;
    w -= residual / (ew * (w + 1.0));
  }
  return w;
}

double harmonic_number(int k) {
  double h = 0.0;
  for (int t = 1; t <= k; ++t) h += 1.0 / t;
  return h;
}

ThresholdSchedule threshold_schedule(int m, int k) {
  if (k < 1 || m < 1) throw InputError("threshold_schedule needs m, k >= 1");
  ThresholdSchedule s;
  s.w_k = lambert_w(static_cast<double>(k));
  const double x = static_cast<double>(m) * s.w_k / static_cast<double>(k);
  s.x_max = std::clamp(static_cast<int>(std::ceil(x)), 1, m);
  return s;
}

double greedy_cc_ratio() { return 1.0 - 1.0 / std::numbers::e; }

double greedy_monroe_ratio(int m, int k) {
  const double spread = m > 1 ? static_cast<double>(k - 1) / (2.0 * (m - 1)) : 0.0;
  return 1.0 - spread - harmonic_number(k) / k;
}

RuleOutcome greedy_cc(const Election& election, int k, RngStream& rng, GreedyTrace* trace) {
  detail::require_committee_size(election, k);
  const int m = election.num_candidates();
  const int n = election.num_voters();
  // Borda points each voter currently gets from her representative (0 = none yet).
  std::vector<Score> current(static_cast<std::size_t>(n), 0);
  std::vector<bool> taken(static_cast<std::size_t>(m), false);
  std::vector<Score> gain(static_cast<std::size_t>(m));
  std::vector<CandidateId> members;
  RuleOutcome out;
  if (trace) trace->gains.clear();

  for (int round = 0; round < k; ++round) {
    std::fill(gain.begin(), gain.end(), 0);
    for (VoterId v = 0; v < n; ++v) {
      const Score have = current[static_cast<std::size_t>(v)];
      // only candidates ranked above the current representative improve this voter
      const int limit = m - static_cast<int>(have);
      for (int p = 1; p < limit; ++p) gain[static_cast<std::size_t>(election.at(v, p))] += (m - p) - have;
    }
    std::vector<CandidateId> pool;
    for (CandidateId c = 0; c < m; ++c) {
      if (!taken[static_cast<std::size_t>(c)]) pool.push_back(c);
    }
    const CandidateId pick = detail::pick_best(
        pool, [&](CandidateId c) { return gain[static_cast<std::size_t>(c)]; }, rng, out.tie_events);
    taken[static_cast<std::size_t>(pick)] = true;
    members.push_back(pick);
    if (trace) trace->gains.push_back(gain[static_cast<std::size_t>(pick)]);
    for (VoterId v = 0; v < n; ++v) {
      auto& have = current[static_cast<std::size_t>(v)];
      have = std::max<Score>(have, borda_points(m, election.position(v, pick)));
    }
  }
  out.committee = Committee(std::move(members), m);
  return out;
}

RuleOutcome algorithm_p(const Election& election, int k, int threshold, RngStream& rng, CoverTrace* trace) {
  detail::require_committee_size(election, k);
  const int m = election.num_candidates();
  const int n = election.num_voters();
  if (threshold < 1 || threshold > m) throw InputError("algorithm_p threshold must be in [1, m]");

  // coverage[c] = remaining voters ranking c within their top `threshold`.
  std::vector<int> coverage(static_cast<std::size_t>(m), 0);
  for (VoterId v = 0; v < n; ++v) {
    for (int p = 1; p <= threshold; ++p) ++coverage[static_cast<std::size_t>(election.at(v, p))];
  }
  std::vector<bool> voter_active(static_cast<std::size_t>(n), true);
  std::vector<bool> taken(static_cast<std::size_t>(m), false);
  int remaining = n;
  std::vector<CandidateId> members;
  RuleOutcome out;
  if (trace) *trace = {};

  while (static_cast<int>(members.size()) < k && remaining > 0) {
    std::vector<CandidateId> pool;
    for (CandidateId c = 0; c < m; ++c) {
      if (!taken[static_cast<std::size_t>(c)]) pool.push_back(c);
    }
    const CandidateId pick = detail::pick_best(
        pool, [&](CandidateId c) { return coverage[static_cast<std::size_t>(c)]; }, rng, out.tie_events);
    taken[static_cast<std::size_t>(pick)] = true;
    members.push_back(pick);
    if (trace) trace->covered.push_back(coverage[static_cast<std::size_t>(pick)]);
    for (VoterId v = 0; v < n; ++v) {
      if (!voter_active[static_cast<std::size_t>(v)] || election.position(v, pick) > threshold) continue;
      voter_active[static_cast<std::size_t>(v)] = false;
      --remaining;
      for (int p = 1; p <= threshold; ++p) --coverage[static_cast<std::size_t>(election.at(v, p))];
    }
  }
  if (trace) trace->filled_at_random = k - static_cast<int>(members.size());
  detail::fill_at_random(members, m, k, rng, out.tie_events);
  out.committee = Committee(std::move(members), m);
  return out;
}

RuleOutcome algorithm_p(const Election& election, int k, RngStream& rng) {
  detail::require_committee_size(election, k);
  return algorithm_p(election, k, threshold_schedule(election.num_candidates(), k).x_max, rng);
}

RuleOutcome ranging_cc(const Election& election, int k, RngStream& rng, RangingTrace* trace) {
  detail::require_committee_size(election, k);
  return ranging_cc(election, k, threshold_schedule(election.num_candidates(), k).x_max, rng, trace);
}

RuleOutcome ranging_cc(const Election& election, int k, int x_max, RngStream& rng, RangingTrace* trace) {
  detail::require_committee_size(election, k);
  if (x_max < 1 || x_max > election.num_candidates()) throw InputError("ranging_cc x_max must be in [1, m]");
  std::vector<RuleOutcome> runs;
  std::vector<Score> scores;
  int tie_events = 0;
  for (int x = 1; x <= x_max; ++x) {
    runs.push_back(algorithm_p(election, k, x, rng));
    scores.push_back(cc_score(election, runs.back().committee));
    tie_events += runs.back().tie_events;
  }
  std::vector<int> thresholds(static_cast<std::size_t>(x_max));
  std::iota(thresholds.begin(), thresholds.end(), 1);
  const int best = detail::pick_best(
      std::span<const int>(thresholds), [&](int x) { return scores[static_cast<std::size_t>(x - 1)]; }, rng,
      tie_events);
  if (trace) {
    trace->cc_scores = scores;
    trace->chosen_threshold = best;
  }
  RuleOutcome out = std::move(runs[static_cast<std::size_t>(best - 1)]);
  out.tie_events = tie_events;
  return out;
}

RuleOutcome greedy_monroe(const Election& election, int k, RngStream& rng) {
  detail::require_committee_size(election, k);
  const int m = election.num_candidates();
  const int n = election.num_voters();
  if (k > n) throw InputError("GreedyMonroe needs k <= n");
  const int lower = n / k;
  const int extra = n % k;

  std::vector<bool> voter_active(static_cast<std::size_t>(n), true);
  std::vector<bool> taken(static_cast<std::size_t>(m), false);
  std::vector<CandidateId> rep(static_cast<std::size_t>(n), -1);
  std::vector<CandidateId> members;
  std::vector<int> positions;
  std::vector<Score> best_sum(static_cast<std::size_t>(m));
  RuleOutcome out;

  for (int round = 0; round < k; ++round) {
    const int size = round < extra ? lower + 1 : lower;
    std::vector<CandidateId> pool;
    for (CandidateId c = 0; c < m; ++c) {
      if (taken[static_cast<std::size_t>(c)]) continue;
      pool.push_back(c);
      positions.clear();
      for (VoterId v = 0; v < n; ++v) {
        if (voter_active[static_cast<std::size_t>(v)]) positions.push_back(election.position(v, c));
      }
      std::nth_element(positions.begin(), positions.begin() + size, positions.end());
      Score sum = 0;
      for (int i = 0; i < size; ++i) sum += borda_points(m, positions[static_cast<std::size_t>(i)]);
      best_sum[static_cast<std::size_t>(c)] = sum;
    }
    const CandidateId pick = detail::pick_best(
        pool, [&](CandidateId c) { return best_sum[static_cast<std::size_t>(c)]; }, rng, out.tie_events);
    taken[static_cast<std::size_t>(pick)] = true;
    members.push_back(pick);

    // Voters ranking `pick` highest; ties at the cut-off position are uniform.
    std::vector<VoterId> voters;
    for (VoterId v = 0; v < n; ++v) {
      if (voter_active[static_cast<std::size_t>(v)]) voters.push_back(v);
    }
    std::sort(voters.begin(), voters.end(), [&](VoterId a, VoterId b) {
      return election.position(a, pick) < election.position(b, pick);
    });
    if (size > 0 && size < static_cast<int>(voters.size())) {
      const int cut = election.position(voters[static_cast<std::size_t>(size - 1)], pick);
      auto first = std::find_if(voters.begin(), voters.end(),
                                [&](VoterId v) { return election.position(v, pick) == cut; });
      auto last = std::find_if(first, voters.end(), [&](VoterId v) { return election.position(v, pick) != cut; });
      if (last > voters.begin() + size) {
        ++out.tie_events;
        rng.shuffle(std::span<VoterId>(first, last));
      }
    }
    for (int i = 0; i < size; ++i) {
      const VoterId v = voters[static_cast<std::size_t>(i)];
      voter_active[static_cast<std::size_t>(v)] = false;
      rep[static_cast<std::size_t>(v)] = pick;
    }
  }
  out.committee = Committee(std::move(members), m);
  out.assignment = Assignment{std::move(rep), out.committee};
  return out;
}

}  // namespace spatialvote
