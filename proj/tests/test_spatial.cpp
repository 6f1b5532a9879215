#include <cmath>
#include <filesystem>
#include <fstream>

#include <catch2/catch_amalgamated.hpp>

#include "spatialvote/errors.hpp"
#include "test_support.hpp"

using namespace spatialvote;
using namespace spatialvote::testing;
using Catch::Approx;

namespace {

struct Moments {
  double mean_x = 0, mean_y = 0, var_x = 0, var_y = 0;
};

Moments moments(const std::vector<Point>& pts) {
  Moments mo;
  for (const auto& p : pts) {
    mo.mean_x += p.x;
    mo.mean_y += p.y;
  }
  mo.mean_x /= static_cast<double>(pts.size());
  mo.mean_y /= static_cast<double>(pts.size());
  for (const auto& p : pts) {
    mo.var_x += (p.x - mo.mean_x) * (p.x - mo.mean_x);
    mo.var_y += (p.y - mo.mean_y) * (p.y - mo.mean_y);
  }
  mo.var_x /= static_cast<double>(pts.size());
  mo.var_y /= static_cast<double>(pts.size());
  return mo;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("spatialvote_test_" + name);
}

}  // namespace

TEST_CASE("distribution names round-trip", "[spatial]") {
  for (Distribution d : all_distributions()) CHECK(parse_distribution(distribution_name(d)) == d);
  CHECK(distribution_name(Distribution::FourGaussian) == "gauss4");
  CHECK_FALSE(parse_distribution("cube").has_value());
}

TEST_CASE("Gaussian sampler has unit moments", "[spatial][statistics]") {
  RngStream rng(42);
  const auto pts = sample_points({Distribution::Gaussian, Role::Voters}, 100000, rng);
  const auto mo = moments(pts);
  CHECK(std::abs(mo.mean_x) < 0.02);
  CHECK(std::abs(mo.mean_y) < 0.02);
  CHECK(std::abs(mo.var_x - 1.0) < 0.02);
  CHECK(std::abs(mo.var_y - 1.0) < 0.02);
}

TEST_CASE("uniform square and disc stay on their support", "[spatial][statistics]") {
  RngStream rng(7);
  const auto square = sample_points({Distribution::UniformSquare, Role::Voters}, 50000, rng);
  for (const auto& p : square) {
    REQUIRE(std::abs(p.x) <= 3.0);
    REQUIRE(std::abs(p.y) <= 3.0);
  }
  CHECK(moments(square).var_x == Approx(3.0).epsilon(0.03));  // (6^2)/12

  const auto disc = sample_points({Distribution::UniformDisc, Role::Voters}, 50000, rng);
  int inner = 0;
  for (const auto& p : disc) {
    const double r = std::hypot(p.x, p.y);
    REQUIRE(r <= 3.0 + 1e-12);
    if (r <= 1.5) ++inner;
  }
  // Area-uniform: P(r <= 1.5) = 1/4.
  CHECK(std::abs(inner / 50000.0 - 0.25) < 0.01);
}

TEST_CASE("4-Gaussian splits points evenly between the four means", "[spatial]") {
  RngStream rng(3);
  const auto pts = sample_points({Distribution::FourGaussian, Role::Candidates}, 40000, rng);
  const std::array<Point, 4> means{{{-1, 0}, {1, 0}, {0, -1}, {0, 1}}};
  for (std::size_t mean = 0; mean < 4; ++mean) {
    std::vector<Point> group;
    for (std::size_t i = mean; i < pts.size(); i += 4) group.push_back(pts[i]);
    const auto mo = moments(group);
    CHECK(std::abs(mo.mean_x - means[mean].x) < 0.02);
    CHECK(std::abs(mo.mean_y - means[mean].y) < 0.02);
    CHECK(std::abs(mo.var_x - 0.25) < 0.02);
  }
}

TEST_CASE("overlapping squares depend on role", "[spatial]") {
  RngStream rng(5);
  for (const auto& p : sample_points({Distribution::OverlappingSquares, Role::Candidates}, 5000, rng)) {
    REQUIRE(p.x >= -3.0);
    REQUIRE(p.x <= 1.0);
    REQUIRE(p.y >= -3.0);
    REQUIRE(p.y <= 1.0);
  }
  for (const auto& p : sample_points({Distribution::OverlappingSquares, Role::Voters}, 5000, rng)) {
    REQUIRE(p.x >= -1.0);
    REQUIRE(p.x <= 3.0);
  }
}

TEST_CASE("build_election ranks by distance", "[spatial]") {
  RngStream rng(1);
  const auto e = build_election({{0, 0}, {2, 0}, {5, 5}}, {{1.9, 0.1}, {-1, -1}}, rng);
  CHECK(e.voter(0).ranking == std::vector<int>{1, 0, 2});
  CHECK(e.voter(1).ranking == std::vector<int>{0, 1, 2});
  CHECK(e.has_points());
  CHECK(e.candidate_points().size() == 3);
  CHECK_THROWS_AS(build_election({}, {{0, 0}}, rng), InputError);
}

TEST_CASE("build_election breaks exact distance ties uniformly", "[spatial]") {
  // Voter at origin, two candidates at distance 1.
  RngStream rng(11);
  int first = 0;
  for (int trial = 0; trial < 4000; ++trial) {
    const auto e = build_election({{1, 0}, {0, -1}, {3, 3}}, {{0, 0}}, rng);
    CHECK(e.voter(0).ranking[2] == 2);
    if (e.voter(0).ranking[0] == 0) ++first;
  }
  CHECK(std::abs(first - 2000) < 200);
}

TEST_CASE("rankings are sorted by distance on sampled elections", "[spatial][property]") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RngStream rng(seed);
    const auto e = sample_election(Distribution::UniformDisc, 30, 20, rng);
    for (int v = 0; v < e.num_voters(); ++v) {
      const auto vp = e.voter_points()[static_cast<std::size_t>(v)];
      for (int pos = 1; pos < 30; ++pos) {
        const auto a = e.candidate_points()[static_cast<std::size_t>(e.at(v, pos))];
        const auto b = e.candidate_points()[static_cast<std::size_t>(e.at(v, pos + 1))];
        CHECK(squared_distance(vp, a) <= squared_distance(vp, b));
      }
    }
  }
}

TEST_CASE("same stream gives the same election", "[spatial]") {
  RngStream a(9, 1, 2), b(9, 1, 2), c(9, 1, 3);
  const auto e1 = sample_election(Distribution::Gaussian, 10, 10, a);
  const auto e2 = sample_election(Distribution::Gaussian, 10, 10, b);
  const auto e3 = sample_election(Distribution::Gaussian, 10, 10, c);
  CHECK(std::equal(e1.candidate_points().begin(), e1.candidate_points().end(), e2.candidate_points().begin()));
  CHECK_FALSE(std::equal(e1.candidate_points().begin(), e1.candidate_points().end(), e3.candidate_points().begin()));
}

TEST_CASE("point CSV round trip", "[spatial][io]") {
  const PointSet in{{{0.125, -2.5}, {1e-17, 3.0}}, {{-0.1, 0.2}}};
  const auto path = temp_file("points.csv");
  write_points_csv(in, path);
  const auto out = read_points_csv(path);
  CHECK(out.candidates == in.candidates);
  CHECK(out.voters == in.voters);
  std::filesystem::remove(path);
}

TEST_CASE("point CSV rejects malformed input", "[spatial][io]") {
  const auto path = temp_file("bad_points.csv");
  {
    std::ofstream(path) << "role,x,y\nwizard,1,2\n";
  }
  CHECK_THROWS_AS(read_points_csv(path), InputError);
  {
    std::ofstream(path) << "role,x,y\ncandidate,abc,2\n";
  }
  CHECK_THROWS_AS(read_points_csv(path), InputError);
  {
    std::ofstream(path) << "role,x,y\ncandidate,nan,2\n";
  }
  CHECK_THROWS_AS(read_points_csv(path), InputError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_points_csv(path), IoError);
}
