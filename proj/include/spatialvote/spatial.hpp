#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spatialvote/election.hpp"
#include "spatialvote/rng.hpp"

namespace spatialvote {

enum class Distribution {
  Gaussian,            // N((0,0), I)
  UniformSquare,       // [-3,3]^2
  UniformDisc,         // center (0,0), radius 3
  FourGaussian,        // sigma 0.5 around (+-1,0), (0,+-1); point i uses mean i mod 4
  OverlappingSquares,  // candidates on [-3,1]^2, voters on [-1,3]^2
};

enum class Role { Candidates, Voters };

struct DistributionSpec {
  Distribution kind = Distribution::Gaussian;
  Role role = Role::Candidates;
};

std::string_view distribution_name(Distribution d);
std::optional<Distribution> parse_distribution(std::string_view name);
const std::vector<Distribution>& all_distributions();

std::vector<Point> sample_points(const DistributionSpec& spec, int count, RngStream& rng);

// Voters rank candidates by increasing Euclidean distance; exact distance ties
// are ordered uniformly at random.
Election build_election(std::vector<Point> candidate_points, std::vector<Point> voter_points, RngStream& rng);

// Draws m candidate points then n voter points from one stream and builds the election.
Election sample_election(Distribution dist, int m, int n, RngStream& rng);

// Point-set CSV: header "role,x,y", role is "candidate" or "voter".
struct PointSet {
  std::vector<Point> candidates;
  std::vector<Point> voters;
};
void write_points_csv(const PointSet& points, const std::filesystem::path& path);
PointSet read_points_csv(const std::filesystem::path& path);

}  // namespace spatialvote
