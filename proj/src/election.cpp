#include "spatialvote/election.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spatialvote/errors.hpp"

namespace spatialvote {

int position_of(const PreferenceOrder& voter, CandidateId candidate) {
  const auto it = std::find(voter.ranking.begin(), voter.ranking.end(), candidate);
  if (candidate < 0 || it == voter.ranking.end()) {
    throw InputError("position_of: candidate " + std::to_string(candidate) + " out of range");
  }
  return static_cast<int>(it - voter.ranking.begin()) + 1;
}

Election::Election(int num_candidates, std::vector<PreferenceOrder> voters)
    : num_candidates_(num_candidates), voters_(std::move(voters)) {
  if (num_candidates_ <= 0) throw InputError("election needs at least one candidate");
  index_positions();
}

Election::Election(int num_candidates, std::vector<PreferenceOrder> voters,
                   std::vector<Point> candidate_points, std::vector<Point> voter_points)
    : Election(num_candidates, std::move(voters)) {
  if (static_cast<int>(candidate_points.size()) != num_candidates_ ||
      voter_points.size() != voters_.size()) {
    throw InputError("election point counts do not match candidate/voter counts");
  }
  auto finite = [](const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); };
  if (!std::all_of(candidate_points.begin(), candidate_points.end(), finite) ||
      !std::all_of(voter_points.begin(), voter_points.end(), finite)) {
    throw InputError("election points must be finite");
  }
  points_ = Points{std::move(candidate_points), std::move(voter_points)};
}

void Election::index_positions() {
  const auto m = static_cast<std::size_t>(num_candidates_);
  positions_.assign(voters_.size() * m, 0);
  for (std::size_t v = 0; v < voters_.size(); ++v) {
    const auto& ranking = voters_[v].ranking;
    if (ranking.size() != m) {
      throw InputError("voter " + std::to_string(v) + " ranks " + std::to_string(ranking.size()) +
                       " candidates, expected " + std::to_string(m));
    }
    int* row = positions_.data() + v * m;
    for (std::size_t j = 0; j < m; ++j) {
      const CandidateId c = ranking[j];
      if (c < 0 || c >= num_candidates_ || row[c] != 0) {
        throw InputError("voter " + std::to_string(v) + " ranking is not a permutation");
      }
      row[c] = static_cast<int>(j) + 1;
    }
  }
}

std::span<const Point> Election::candidate_points() const {
  if (!points_) throw InputError("election has no point data");
  return points_->candidates;
}

std::span<const Point> Election::voter_points() const {
  if (!points_) throw InputError("election has no point data");
  return points_->voters;
}

ScoringFunction ScoringFunction::borda(int m) {
  if (m <= 0) throw InputError("Borda scoring needs m >= 1");
  return {Kind::Borda, m, m};
}

ScoringFunction ScoringFunction::approval(int t, int m) {
  if (t < 1 || t > m) throw InputError("t-Approval needs 1 <= t <= m");
  return {Kind::Approval, t, m};
}

Committee::Committee(std::vector<CandidateId> members, int num_candidates)
    : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw InputError("committee has duplicate members");
  }
  if (!members_.empty() && (members_.front() < 0 || members_.back() >= num_candidates)) {
    throw InputError("committee member out of range");
  }
}

bool Committee::contains(CandidateId c) const {
  return std::binary_search(members_.begin(), members_.end(), c);
}

std::vector<int> Assignment::loads() const {
  const auto& members = committee.members();
  std::vector<int> counts(members.size(), 0);
  for (CandidateId c : rep) {
    const auto it = std::lower_bound(members.begin(), members.end(), c);
    ++counts[static_cast<std::size_t>(it - members.begin())];
  }
  return counts;
}

Score candidate_score(const Election& election, const ScoringFunction& scoring, CandidateId candidate) {
  if (scoring.num_candidates() != election.num_candidates()) {
    throw InputError("scoring function built for a different candidate count");
  }
  if (candidate < 0 || candidate >= election.num_candidates()) {
    throw InputError("candidate_score: candidate out of range");
  }
  Score total = 0;
  for (VoterId v = 0; v < election.num_voters(); ++v) total += scoring(election.position(v, candidate));
  return total;
}

std::vector<Score> all_candidate_scores(const Election& election, const ScoringFunction& scoring) {
  if (scoring.num_candidates() != election.num_candidates()) {
    throw InputError("scoring function built for a different candidate count");
  }
  std::vector<Score> scores(static_cast<std::size_t>(election.num_candidates()), 0);
  for (VoterId v = 0; v < election.num_voters(); ++v) {
    const auto& ranking = election.voter(v).ranking;
    for (std::size_t j = 0; j < ranking.size(); ++j) {
      scores[static_cast<std::size_t>(ranking[j])] += scoring(static_cast<int>(j) + 1);
    }
  }
  return scores;
}

Assignment gyb_assignment(const Election& election, const Committee& committee) {
  if (committee.empty()) throw InputError("grab-your-best assignment needs a nonempty committee");
  if (committee.members().back() >= election.num_candidates()) {
    throw InputError("committee member out of range for election");
  }
  Assignment out{std::vector<CandidateId>(static_cast<std::size_t>(election.num_voters())), committee};
  for (VoterId v = 0; v < election.num_voters(); ++v) {
    CandidateId best = committee.members().front();
    int best_pos = election.position(v, best);
    for (CandidateId c : committee.members()) {
      const int p = election.position(v, c);
      if (p < best_pos) {
        best_pos = p;
        best = c;
      }
    }
    out.rep[static_cast<std::size_t>(v)] = best;
  }
  return out;
}

Score assignment_score(const Election& election, const Assignment& assignment) {
  const int m = election.num_candidates();
  Score total = 0;
  for (VoterId v = 0; v < election.num_voters(); ++v) {
    total += borda_points(m, election.position(v, assignment.rep[static_cast<std::size_t>(v)]));
  }
  return total;
}

Score cc_score(const Election& election, const Committee& committee) {
  return assignment_score(election, gyb_assignment(election, committee));
}

double hb_score(const Election& election, const Committee& committee) {
  const int m = election.num_candidates();
  if (!committee.empty() && committee.members().back() >= m) {
    throw InputError("committee member out of range for election");
  }
  std::vector<int> positions(committee.members().size());
  double total = 0.0;
  for (VoterId v = 0; v < election.num_voters(); ++v) {
    for (std::size_t i = 0; i < positions.size(); ++i) {
      positions[i] = election.position(v, committee.members()[i]);
    }
    std::sort(positions.begin(), positions.end());
    for (std::size_t t = 0; t < positions.size(); ++t) {
      total += static_cast<double>(borda_points(m, positions[t])) / static_cast<double>(t + 1);
    }
  }
  return total;
}

}  // namespace spatialvote
