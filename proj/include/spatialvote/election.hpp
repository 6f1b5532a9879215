#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace spatialvote {

using CandidateId = int;
using VoterId = int;
using Score = std::int64_t;

// Tolerance used when comparing floating-point committee scores (HarmonicBorda).
inline constexpr double kScoreTolerance = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double squared_distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// A complete strict ranking, most preferred candidate first.
struct PreferenceOrder {
  std::vector<CandidateId> ranking;
};

// 1-based position of `candidate` in `voter`'s ranking. Throws InputError when
// the candidate does not appear.
int position_of(const PreferenceOrder& voter, CandidateId candidate);

class Election {
 public:
  Election(int num_candidates, std::vector<PreferenceOrder> voters);
  Election(int num_candidates, std::vector<PreferenceOrder> voters,
           std::vector<Point> candidate_points, std::vector<Point> voter_points);

  int num_candidates() const { return num_candidates_; }
  int num_voters() const { return static_cast<int>(voters_.size()); }

  const PreferenceOrder& voter(VoterId v) const { return voters_[v]; }
  const std::vector<PreferenceOrder>& voters() const { return voters_; }

  // Candidate ranked at 1-based `position` by voter v.
  CandidateId at(VoterId v, int position) const { return voters_[v].ranking[position - 1]; }
  // O(1) 1-based position lookup.
  int position(VoterId v, CandidateId c) const {
    return positions_[static_cast<std::size_t>(v) * num_candidates_ + c];
  }
  std::span<const int> positions_of_voter(VoterId v) const {
    return {positions_.data() + static_cast<std::size_t>(v) * num_candidates_,
            static_cast<std::size_t>(num_candidates_)};
  }

  bool has_points() const { return points_.has_value(); }
  std::span<const Point> candidate_points() const;
  std::span<const Point> voter_points() const;

 private:
  struct Points {
    std::vector<Point> candidates;
    std::vector<Point> voters;
  };

  void index_positions();

  int num_candidates_;
  std::vector<PreferenceOrder> voters_;
  std::vector<int> positions_;
  std::optional<Points> points_;
};

// Positional scoring functions: Borda (beta_m) and t-Approval (alpha_t).
class ScoringFunction {
 public:
  enum class Kind { Borda, Approval };

  static ScoringFunction borda(int m);
  static ScoringFunction approval(int t, int m);
  static ScoringFunction plurality(int m) { return approval(1, m); }

  Kind kind() const { return kind_; }
  int threshold() const { return threshold_; }
  int num_candidates() const { return m_; }

  Score operator()(int position) const {
    if (kind_ == Kind::Borda) return m_ - position;
    return position <= threshold_ ? 1 : 0;
  }

 private:
  ScoringFunction(Kind kind, int threshold, int m) : kind_(kind), threshold_(threshold), m_(m) {}

  Kind kind_;
  int threshold_;
  int m_;
};

inline Score borda_points(int m, int position) { return m - position; }

// A set of distinct candidates, kept sorted.
class Committee {
 public:
  Committee() = default;
  Committee(std::vector<CandidateId> members, int num_candidates);

  const std::vector<CandidateId>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  bool contains(CandidateId c) const;

  friend bool operator==(const Committee&, const Committee&) = default;

 private:
  std::vector<CandidateId> members_;
};

// Voter -> representative map into a committee.
struct Assignment {
  std::vector<CandidateId> rep;
  Committee committee;

  // Number of voters represented by each committee member, in member order.
  std::vector<int> loads() const;
};

Score candidate_score(const Election& election, const ScoringFunction& scoring, CandidateId candidate);
std::vector<Score> all_candidate_scores(const Election& election, const ScoringFunction& scoring);

// Grab-your-best: each voter is represented by the member she ranks highest.
Assignment gyb_assignment(const Election& election, const Committee& committee);

// Chamberlin-Courant Borda score of the grab-your-best assignment.
Score cc_score(const Election& election, const Committee& committee);
Score assignment_score(const Election& election, const Assignment& assignment);

// HarmonicBorda: per voter, sum_t (1/t) * beta_m(p_t) over the voter's sorted
// positions p_1 < ... < p_k of committee members.
double hb_score(const Election& election, const Committee& committee);

struct MonroeResult {
  Assignment assignment;
  Score score = 0;
};

// Optimal capacity-respecting assignment: every member represents between
// floor(n/k) and ceil(n/k) voters.
MonroeResult monroe_assignment(const Election& election, const Committee& committee);

}  // namespace spatialvote
