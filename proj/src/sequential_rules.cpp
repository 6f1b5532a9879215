#include "spatialvote/sequential_rules.hpp"

#include "tie_break.hpp"

namespace spatialvote {
namespace {

RuleOutcome top_k_rule(const Election& election, const ScoringFunction& scoring, int k, RngStream& rng) {
  detail::require_committee_size(election, k);
  const auto scores = all_candidate_scores(election, scoring);
  RuleOutcome out;
  auto members = detail::top_k_by_score(scores, k, rng, out.tie_events);
  out.committee = Committee(std::move(members), election.num_candidates());
  return out;
}

}  // namespace

RuleOutcome sntv(const Election& election, int k, RngStream& rng) {
  return top_k_rule(election, ScoringFunction::plurality(election.num_candidates()), k, rng);
}

RuleOutcome bloc(const Election& election, int k, RngStream& rng) {
  detail::require_committee_size(election, k);
  return top_k_rule(election, ScoringFunction::approval(k, election.num_candidates()), k, rng);
}

RuleOutcome k_borda(const Election& election, int k, RngStream& rng) {
  return top_k_rule(election, ScoringFunction::borda(election.num_candidates()), k, rng);
}

int stv_quota(int num_voters, int k) {
  if (k < 1) throw InputError("stv_quota: k must be positive");
  return num_voters / (k + 1) + 1;
}

RuleOutcome stv(const Election& election, int k, RngStream& rng, StvTrace* trace) {
  detail::require_committee_size(election, k);
  const int m = election.num_candidates();
  const int n = election.num_voters();
  const int quota = stv_quota(n, k);

  RuleOutcome out;
  std::vector<CandidateId> elected;
  std::vector<bool> candidate_active(static_cast<std::size_t>(m), true);
  std::vector<bool> voter_active(static_cast<std::size_t>(n), true);
  // Index into each voter's ranking of her top still-active candidate.
  std::vector<int> top(static_cast<std::size_t>(n), 0);
  int active_candidates = m;
  int active_voters = n;
  std::vector<int> plurality(static_cast<std::size_t>(m));

  auto log = [&](StvEvent::Kind kind, CandidateId c, int votes, int removed) {
    if (trace) trace->events.push_back({kind, c, votes, removed});
  };
  auto active_list = [&] {
    std::vector<CandidateId> list;
    for (CandidateId c = 0; c < m; ++c) {
      if (candidate_active[static_cast<std::size_t>(c)]) list.push_back(c);
    }
    return list;
  };
  auto first_choice = [&](VoterId v) {
    auto& idx = top[static_cast<std::size_t>(v)];
    while (!candidate_active[static_cast<std::size_t>(election.at(v, idx + 1))]) ++idx;
    return election.at(v, idx + 1);
  };
  auto remove_candidate = [&](CandidateId c) {
    candidate_active[static_cast<std::size_t>(c)] = false;
    --active_candidates;
  };

  if (trace) {
    trace->quota = quota;
    trace->events.clear();
  }

  while (static_cast<int>(elected.size()) < k) {
    const int seats = k - static_cast<int>(elected.size());
    if (active_candidates == seats) {
      for (CandidateId c : active_list()) {
        elected.push_back(c);
        log(StvEvent::Kind::ElectedRemaining, c, 0, 0);
      }
      break;
    }
    if (active_voters == 0) {
      auto pool = active_list();
      ++out.tie_events;
      rng.shuffle(std::span<CandidateId>(pool));
      for (int i = 0; i < seats; ++i) {
        elected.push_back(pool[static_cast<std::size_t>(i)]);
        log(StvEvent::Kind::FilledAtRandom, pool[static_cast<std::size_t>(i)], 0, 0);
      }
      break;
    }

    std::fill(plurality.begin(), plurality.end(), 0);
    for (VoterId v = 0; v < n; ++v) {
      if (voter_active[static_cast<std::size_t>(v)]) ++plurality[static_cast<std::size_t>(first_choice(v))];
    }
    const auto pool = active_list();
    auto votes = [&](CandidateId c) { return plurality[static_cast<std::size_t>(c)]; };
    const CandidateId leader = detail::pick_best(pool, votes, rng, out.tie_events);

    if (votes(leader) >= quota) {
      std::vector<VoterId> supporters;
      for (VoterId v = 0; v < n; ++v) {
        if (voter_active[static_cast<std::size_t>(v)] && first_choice(v) == leader) supporters.push_back(v);
      }
      if (static_cast<int>(supporters.size()) > quota) {
        ++out.tie_events;
        rng.shuffle(std::span<VoterId>(supporters));
      }
      for (int i = 0; i < quota; ++i) voter_active[static_cast<std::size_t>(supporters[static_cast<std::size_t>(i)])] = false;
      active_voters -= quota;
      elected.push_back(leader);
      remove_candidate(leader);
      log(StvEvent::Kind::QuotaElected, leader, votes(leader), quota);
    } else {
      const CandidateId loser = detail::pick_best(
          pool, [&](CandidateId c) { return -votes(c); }, rng, out.tie_events);
      remove_candidate(loser);
      log(StvEvent::Kind::Eliminated, loser, votes(loser), 0);
    }
  }

  out.committee = Committee(std::move(elected), m);
  return out;
}

}  // namespace spatialvote
