#include <catch2/catch_amalgamated.hpp>

#include "spatialvote/errors.hpp"
#include "test_support.hpp"

using namespace spatialvote;
using namespace spatialvote::testing;

namespace {

void check_capacities(const MonroeResult& result, int n, int k) {
  const auto loads = result.assignment.loads();
  REQUIRE(static_cast<int>(loads.size()) == k);
  int total = 0;
  int at_ceiling = 0;
  for (int load : loads) {
    CHECK(load >= n / k);
    CHECK(load <= (n + k - 1) / k);
    total += load;
    if (load > n / k) ++at_ceiling;
  }
  CHECK(total == n);
  CHECK(at_ceiling == n % k);
}

}  // namespace

TEST_CASE("monroe_assignment with one member gives every voter to it", "[monroe]") {
  const auto e = random_rankings(6, 9, 1);
  const auto result = monroe_assignment(e, Committee({4}, 6));
  CHECK(std::all_of(result.assignment.rep.begin(), result.assignment.rep.end(), [](int c) { return c == 4; }));
  CHECK(result.score == candidate_score(e, ScoringFunction::borda(6), 4));
}

TEST_CASE("monroe_assignment at m = n = 200, k = 20 assigns exactly n/k voters", "[monroe]") {
  const auto e = random_euclidean(200, 200, 5);
  std::vector<int> members(20);
  std::iota(members.begin(), members.end(), 0);
  const auto result = monroe_assignment(e, Committee(members, 200));
  const auto loads = result.assignment.loads();
  CHECK(std::all_of(loads.begin(), loads.end(), [](int load) { return load == 10; }));
  CHECK(result.score <= cc_score(e, Committee(members, 200)));
}

TEST_CASE("monroe_assignment with n = k represents one voter each", "[monroe]") {
  const auto e = random_rankings(6, 3, 2);
  const auto result = monroe_assignment(e, Committee({0, 2, 5}, 6));
  CHECK(result.assignment.loads() == std::vector<int>{1, 1, 1});
}

TEST_CASE("monroe_assignment rejects k > n and empty committees", "[monroe]") {
  const auto e = random_rankings(6, 2, 3);
  CHECK_THROWS_AS(monroe_assignment(e, Committee({0, 1, 2}, 6)), InputError);
  CHECK_THROWS_AS(monroe_assignment(e, Committee{}), InputError);
}

TEST_CASE("monroe_assignment on m=6, n=6, k=2 matches the (6 choose 3) split search", "[monroe][oracle]") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto e = random_euclidean(6, 6, seed);
    for (const auto& members : all_subsets(6, 2)) {
      const auto result = monroe_assignment(e, Committee(members, 6));
      CHECK(result.score == brute_monroe(e, members));
      check_capacities(result, 6, 2);
    }
  }
}

TEST_CASE("flow-based Monroe equals brute force for n <= 8, k <= 3", "[monroe][oracle][property]") {
  int instances = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    for (int n : {5, 7, 8}) {
      const int m = 6;
      const auto e = seed % 2 ? random_rankings(m, n, seed) : random_euclidean(m, n, seed, Distribution::UniformDisc);
      for (int k : {1, 2, 3}) {
        RngStream rng(seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
        std::vector<int> pool(6);
        std::iota(pool.begin(), pool.end(), 0);
        rng.shuffle(std::span<int>(pool));
        const std::vector<int> members(pool.begin(), pool.begin() + k);
        const auto result = monroe_assignment(e, Committee(members, m));
        CHECK(result.score == brute_monroe(e, members));
        CHECK(result.score == assignment_score(e, result.assignment));
        CHECK(result.score <= cc_score(e, Committee(members, m)));
        check_capacities(result, n, k);
        ++instances;
      }
    }
  }
  CHECK(instances >= 100);
}
