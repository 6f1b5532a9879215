#include "spatialvote/spatial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#include "spatialvote/errors.hpp"

namespace spatialvote {
namespace {

constexpr double kSquareHalfWidth = 3.0;
constexpr double kDiscRadius = 3.0;
constexpr double kFourGaussianSigma = 0.5;
constexpr std::array<Point, 4> kFourGaussianMeans{{{-1.0, 0.0}, {1.0, 0.0}, {0.0, -1.0}, {0.0, 1.0}}};

// `ordinal` is the point's index within its sample; 4-Gaussian cycles through
// the means so each generates exactly a quarter of the points.
Point draw(const DistributionSpec& spec, int ordinal, RngStream& rng) {
  switch (spec.kind) {
    case Distribution::Gaussian: {
      const double x = rng.normal(0.0, 1.0);
      return {x, rng.normal(0.0, 1.0)};
    }
    case Distribution::UniformSquare: {
      const double x = rng.uniform(-kSquareHalfWidth, kSquareHalfWidth);
      return {x, rng.uniform(-kSquareHalfWidth, kSquareHalfWidth)};
    }
    case Distribution::UniformDisc: {
      // inverse-CDF radius keeps exactly two draws per point
      const double r = kDiscRadius * std::sqrt(rng.uniform(0.0, 1.0));
      const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
      return {r * std::cos(angle), r * std::sin(angle)};
    }
    case Distribution::FourGaussian: {
      const Point& mean = kFourGaussianMeans[static_cast<std::size_t>(ordinal) % kFourGaussianMeans.size()];
      const double x = rng.normal(mean.x, kFourGaussianSigma);
      return {x, rng.normal(mean.y, kFourGaussianSigma)};
    }
    case Distribution::OverlappingSquares: {
      const double lo = spec.role == Role::Candidates ? -3.0 : -1.0;
      const double x = rng.uniform(lo, lo + 4.0);
      return {x, rng.uniform(lo, lo + 4.0)};
    }
  }
  throw InputError("unknown distribution");
}

}  // namespace

std::string_view distribution_name(Distribution d) {
  switch (d) {
    case Distribution::Gaussian: return "gauss";
    case Distribution::UniformSquare: return "square";
    case Distribution::UniformDisc: return "disc";
    case Distribution::FourGaussian: return "gauss4";
    case Distribution::OverlappingSquares: return "overlapping";
  }
  return "unknown";
}

std::optional<Distribution> parse_distribution(std::string_view name) {
  for (Distribution d : all_distributions()) {
    if (distribution_name(d) == name) return d;
  }
  return std::nullopt;
}

const std::vector<Distribution>& all_distributions() {
  static const std::vector<Distribution> all{Distribution::Gaussian, Distribution::UniformSquare,
                                             Distribution::UniformDisc, Distribution::FourGaussian,
                                             Distribution::OverlappingSquares};
  return all;
}

std::vector<Point> sample_points(const DistributionSpec& spec, int count, RngStream& rng) {
  if (count < 0) throw InputError("sample_points: negative count");
  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) points.push_back(draw(spec, i, rng));
  return points;
}

Election build_election(std::vector<Point> candidate_points, std::vector<Point> voter_points, RngStream& rng) {
  if (candidate_points.empty() || voter_points.empty()) {
    throw InputError("build_election needs at least one candidate and one voter");
  }
  const auto m = candidate_points.size();
  std::vector<PreferenceOrder> voters(voter_points.size());
  std::vector<double> dist(m);
  for (std::size_t v = 0; v < voter_points.size(); ++v) {
    for (std::size_t c = 0; c < m; ++c) dist[c] = squared_distance(voter_points[v], candidate_points[c]);
    auto& ranking = voters[v].ranking;
    ranking.resize(m);
    std::iota(ranking.begin(), ranking.end(), 0);
    std::sort(ranking.begin(), ranking.end(), [&](CandidateId a, CandidateId b) {
      return dist[static_cast<std::size_t>(a)] < dist[static_cast<std::size_t>(b)] ||
             (dist[static_cast<std::size_t>(a)] == dist[static_cast<std::size_t>(b)] && a < b);
    });
    for (auto first = ranking.begin(); first != ranking.end();) {
      const double d = dist[static_cast<std::size_t>(*first)];
      auto last = std::find_if(first, ranking.end(),
                               [&](CandidateId c) { return dist[static_cast<std::size_t>(c)] != d; });
      if (last - first > 1) rng.shuffle(std::span<CandidateId>(first, last));
      first = last;
    }
  }
  const int num_candidates = static_cast<int>(m);
  return Election(num_candidates, std::move(voters), std::move(candidate_points), std::move(voter_points));
}

Election sample_election(Distribution dist, int m, int n, RngStream& rng) {
  auto candidates = sample_points({dist, Role::Candidates}, m, rng);
  auto voters = sample_points({dist, Role::Voters}, n, rng);
  return build_election(std::move(candidates), std::move(voters), rng);
}

void write_points_csv(const PointSet& points, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.precision(17);
  out << "role,x,y\n";
  for (const Point& p : points.candidates) out << "candidate," << p.x << ',' << p.y << '\n';
  for (const Point& p : points.voters) out << "voter," << p.x << ',' << p.y << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

PointSet read_points_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  PointSet points;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (line_no == 1 && line.rfind("role", 0) == 0)) continue;
    std::istringstream row(line);
    std::string role, xs, ys;
    if (!std::getline(row, role, ',') || !std::getline(row, xs, ',') || !std::getline(row, ys)) {
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": expected role,x,y");
    }
    Point p;
    try {
      p = {std::stod(xs), std::stod(ys)};
    } catch (const std::exception&) {
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": bad coordinate");
    }
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": non-finite coordinate");
    }
    if (role == "candidate") {
      points.candidates.push_back(p);
    } else if (role == "voter") {
      points.voters.push_back(p);
    } else {
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": unknown role '" + role + "'");
    }
  }
  return points;
}

}  // namespace spatialvote
