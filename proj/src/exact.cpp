#include "spatialvote/exact.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "tie_break.hpp"

namespace spatialvote {

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= r; ++i) {
    acc = acc * static_cast<unsigned>(n - r + i) / static_cast<unsigned>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

namespace {

enum class Objective { CC, Monroe, HB };

// Borda points as a dense voter x candidate table.
class BordaTable {
 public:
  explicit BordaTable(const Election& e)
      : m_(static_cast<std::size_t>(e.num_candidates())), points_(static_cast<std::size_t>(e.num_voters()) * m_) {
    for (VoterId v = 0; v < e.num_voters(); ++v) {
      for (CandidateId c = 0; c < e.num_candidates(); ++c) {
        points_[static_cast<std::size_t>(v) * m_ + static_cast<std::size_t>(c)] =
            static_cast<double>(borda_points(e.num_candidates(), e.position(v, c)));
      }
    }
  }
  double operator()(VoterId v, CandidateId c) const {
    return points_[static_cast<std::size_t>(v) * m_ + static_cast<std::size_t>(c)];
  }

 private:
  std::size_t m_;
  std::vector<double> points_;
};

class CommitteeSearch {
 public:
  CommitteeSearch(const Election& election, int k, Objective objective, const OptimizerConfig& cfg)
      : election_(election), k_(k), objective_(objective), cfg_(cfg), borda_(election) {
    const auto scores = all_candidate_scores(election, ScoringFunction::borda(election.num_candidates()));
    order_.resize(scores.size());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](CandidateId a, CandidateId b) {
      return scores[static_cast<std::size_t>(a)] > scores[static_cast<std::size_t>(b)];
    });
  }

  void run() {
    const int m = election_.num_candidates();
    if (binomial(m, k_) <= cfg_.exhaustive_limit) {
      stats_.exhaustive = true;
      enumerate();
    } else {
      dfs(0);
    }
    stats_.optimal_committees = optima_.size();
    stats_.best_score = best_;
  }

  const std::vector<std::vector<CandidateId>>& optima() const { return optima_; }
  const SearchStats& stats() const { return stats_; }

 private:
  void visit() {
    ++stats_.nodes;
    if (cfg_.node_budget && stats_.nodes > *cfg_.node_budget) {
      throw BudgetExceeded("exact search exceeded node budget of " + std::to_string(*cfg_.node_budget));
    }
  }

  void enumerate() {
    const int m = election_.num_candidates();
    std::vector<CandidateId> combo(static_cast<std::size_t>(k_));
    std::iota(combo.begin(), combo.end(), 0);
    while (true) {
      visit();
      record(combo, value(combo));
      int i = k_ - 1;
      while (i >= 0 && combo[static_cast<std::size_t>(i)] == m - k_ + i) --i;
      if (i < 0) break;
      ++combo[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k_; ++j) combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
    }
  }

  void dfs(std::size_t next) {
    visit();
    const int slots = k_ - static_cast<int>(chosen_.size());
    if (slots == 0) {
      record(chosen_, value(chosen_));
      return;
    }
    if (order_.size() - next < static_cast<std::size_t>(slots)) return;
    if (cfg_.bound_kind != BoundKind::None && !optima_.empty()) {
      const std::span<const CandidateId> undecided(order_.data() + next, order_.size() - next);
      if (bound(undecided, slots) < best_ - kScoreTolerance) return;
    }
    chosen_.push_back(order_[next]);
    dfs(next + 1);
    chosen_.pop_back();
    dfs(next + 1);
  }

  void record(const std::vector<CandidateId>& members, double score) {
    if (optima_.empty() || score > best_ + kScoreTolerance) {
      best_ = score;
      optima_.clear();
      optima_.push_back(members);
    } else if (score >= best_ - kScoreTolerance) {
      optima_.push_back(members);
    }
  }

  double value(const std::vector<CandidateId>& members) const {
    switch (objective_) {
      case Objective::CC: {
        double total = 0.0;
        for (VoterId v = 0; v < election_.num_voters(); ++v) {
          double best = 0.0;
          for (CandidateId c : members) best = std::max(best, borda_(v, c));
          total += best;
        }
        return total;
      }
      case Objective::Monroe:
        return static_cast<double>(
            monroe_assignment(election_, Committee(members, election_.num_candidates())).score);
      case Objective::HB:
        return hb_score(election_, Committee(members, election_.num_candidates()));
    }
    return 0.0;
  }

  // Admissible: never below the best value of any completion of chosen_ by
  // `slots` members of `undecided`.
  double bound(std::span<const CandidateId> undecided, int slots) const {
    if (objective_ == Objective::HB) return hb_bound(undecided, slots);
    // Monroe is CC with extra constraints, so any CC bound covers it.
    double per_voter = 0.0;
    double fixed = 0.0;
    std::vector<double> gains(undecided.size(), 0.0);
    for (VoterId v = 0; v < election_.num_voters(); ++v) {
      double in_best = 0.0;
      for (CandidateId c : chosen_) in_best = std::max(in_best, borda_(v, c));
      double reach = in_best;
      for (std::size_t i = 0; i < undecided.size(); ++i) {
        const double b = borda_(v, undecided[i]);
        reach = std::max(reach, b);
        gains[i] += std::max(0.0, b - in_best);
      }
      fixed += in_best;
      per_voter += reach;
    }
    if (cfg_.bound_kind == BoundKind::PerVoter) return per_voter;
    std::partial_sort(gains.begin(), gains.begin() + slots, gains.end(), std::greater<>());
    const double marginal = fixed + std::accumulate(gains.begin(), gains.begin() + slots, 0.0);
    return std::min(per_voter, marginal);
  }

  // Per voter, the best HB value is reached by adding her `slots` favourite
  // undecided candidates (HB is monotone in every member's Borda points).
  double hb_bound(std::span<const CandidateId> undecided, int slots) const {
    double total = 0.0;
    std::vector<double> extra(undecided.size());
    std::vector<double> scores;
    for (VoterId v = 0; v < election_.num_voters(); ++v) {
      for (std::size_t i = 0; i < undecided.size(); ++i) extra[i] = borda_(v, undecided[i]);
      std::partial_sort(extra.begin(), extra.begin() + slots, extra.end(), std::greater<>());
      scores.clear();
      for (CandidateId c : chosen_) scores.push_back(borda_(v, c));
      scores.insert(scores.end(), extra.begin(), extra.begin() + slots);
      std::sort(scores.begin(), scores.end(), std::greater<>());
      for (std::size_t t = 0; t < scores.size(); ++t) total += scores[t] / static_cast<double>(t + 1);
    }
    return total;
  }

  const Election& election_;
  int k_;
  Objective objective_;
  OptimizerConfig cfg_;
  BordaTable borda_;
  std::vector<CandidateId> order_;
  std::vector<CandidateId> chosen_;
  std::vector<std::vector<CandidateId>> optima_;
  double best_ = 0.0;
  SearchStats stats_;
};

void check_instance(const Election& election, int k, const OptimizerConfig& cfg) {
  detail::require_committee_size(election, k);
  if (election.num_candidates() > cfg.max_exact_m) {
    throw InfeasibleScale("exact search limited to m <= " + std::to_string(cfg.max_exact_m) + " candidates (got m=" +
                          std::to_string(election.num_candidates()) +
                          "); use an approximation rule or a smaller instance");
  }
}

CommitteeSearch run_search(const Election& election, int k, Objective objective, const OptimizerConfig& cfg,
                           SearchStats* stats) {
  CommitteeSearch search(election, k, objective, cfg);
  search.run();
  if (stats) *stats = search.stats();
  return search;
}

RuleOutcome pick_optimum(const Election& election, const CommitteeSearch& search, RngStream& rng) {
  RuleOutcome out;
  auto members = detail::pick_uniform(search.optima(), rng, out.tie_events);
  out.committee = Committee(std::move(members), election.num_candidates());
  return out;
}

}  // namespace

RuleOutcome exact_cc(const Election& election, int k, RngStream& rng, const OptimizerConfig& cfg,
                     SearchStats* stats) {
  check_instance(election, k, cfg);
  const auto search = run_search(election, k, Objective::CC, cfg, stats);

  // Optimal committees correspond to optimal representations through their
  // grab-your-best image; pick a representation, then supplement.
  std::set<std::vector<CandidateId>> images;
  for (const auto& members : search.optima()) {
    const auto assignment = gyb_assignment(election, Committee(members, election.num_candidates()));
    std::vector<CandidateId> image = assignment.rep;
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    images.insert(std::move(image));
  }
  RuleOutcome out;
  auto members = detail::pick_uniform(std::vector<std::vector<CandidateId>>(images.begin(), images.end()), rng,
                                      out.tie_events);
  detail::fill_at_random(members, election.num_candidates(), k, rng, out.tie_events);
  out.committee = Committee(std::move(members), election.num_candidates());
  return out;
}

RuleOutcome exact_monroe(const Election& election, int k, RngStream& rng, const OptimizerConfig& cfg,
                         SearchStats* stats) {
  check_instance(election, k, cfg);
  if (k > election.num_voters()) throw InputError("Monroe needs k <= n");
  const auto search = run_search(election, k, Objective::Monroe, cfg, stats);
  auto out = pick_optimum(election, search, rng);
  out.assignment = monroe_assignment(election, out.committee).assignment;
  return out;
}

RuleOutcome exact_hb(const Election& election, int k, RngStream& rng, const OptimizerConfig& cfg,
                     SearchStats* stats) {
  check_instance(election, k, cfg);
  const auto search = run_search(election, k, Objective::HB, cfg, stats);
  return pick_optimum(election, search, rng);
}

Committee brute_force_best(const Election& election, int k, const CommitteeScoreFn& score_fn,
                           std::uint64_t max_committees) {
  detail::require_committee_size(election, k);
  const int m = election.num_candidates();
  const auto total = binomial(m, k);
  if (total > max_committees) {
    throw BudgetExceeded("brute force would enumerate " + std::to_string(total) + " committees (limit " +
                         std::to_string(max_committees) + ")");
  }
  std::vector<CandidateId> combo(static_cast<std::size_t>(k));
  std::iota(combo.begin(), combo.end(), 0);
  std::optional<Committee> best;
  double best_score = 0.0;
  while (true) {
    Committee current(combo, m);
    const double s = score_fn(current);
    if (!best || s > best_score + kScoreTolerance) {
      best = std::move(current);
      best_score = s;
    }
    int i = k - 1;
    while (i >= 0 && combo[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) break;
    ++combo[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
  }
  return *best;
}

}  // namespace spatialvote
