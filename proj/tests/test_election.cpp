#include <catch2/catch_amalgamated.hpp>

#include "spatialvote/errors.hpp"
#include "test_support.hpp"

using namespace spatialvote;
using namespace spatialvote::testing;

TEST_CASE("position_of is 1-based", "[election]") {
  const PreferenceOrder abc{{0, 1, 2}};
  CHECK(position_of(abc, 0) == 1);
  CHECK(position_of(abc, 2) == 3);
  CHECK(position_of(PreferenceOrder{{1, 0}}, 0) == 2);
  CHECK_THROWS_AS(position_of(abc, 3), InputError);
  CHECK_THROWS_AS(position_of(abc, -1), InputError);
}

TEST_CASE("Election rejects malformed rankings", "[election]") {
  CHECK_THROWS_AS(make_election(3, {{0, 1}}), InputError);
  CHECK_THROWS_AS(make_election(3, {{0, 1, 1}}), InputError);
  CHECK_THROWS_AS(make_election(3, {{0, 1, 3}}), InputError);
  CHECK_THROWS_AS(Election(2, {PreferenceOrder{{0, 1}}}, {{0, 0}}, {{0, 0}}), InputError);

  const auto e = make_election(3, {{2, 0, 1}});
  CHECK(e.position(0, 2) == 1);
  CHECK(e.position(0, 1) == 3);
  CHECK(e.at(0, 2) == 0);
  CHECK_FALSE(e.has_points());
  CHECK_THROWS_AS(e.candidate_points(), InputError);
}

TEST_CASE("scoring functions", "[election]") {
  const auto borda = ScoringFunction::borda(5);
  CHECK(borda(1) == 4);
  CHECK(borda(5) == 0);
  const auto two_approval = ScoringFunction::approval(2, 5);
  CHECK(two_approval(2) == 1);
  CHECK(two_approval(3) == 0);
  CHECK_THROWS_AS(ScoringFunction::approval(0, 5), InputError);
  CHECK_THROWS_AS(ScoringFunction::approval(6, 5), InputError);
}

TEST_CASE("candidate_score examples", "[election]") {
  const auto one = make_election(3, {{0, 1, 2}});
  CHECK(candidate_score(one, ScoringFunction::borda(3), 0) == 2);
  const auto two = make_election(3, {{0, 1, 2}, {0, 1, 2}});
  CHECK(candidate_score(two, ScoringFunction::borda(3), 1) == 2);
  const auto five = make_election(5, {{4, 3, 2, 1, 0}});
  CHECK(candidate_score(five, ScoringFunction::approval(2, 5), 2) == 0);
  CHECK_THROWS_AS(candidate_score(one, ScoringFunction::borda(4), 0), InputError);
  CHECK_THROWS_AS(candidate_score(one, ScoringFunction::borda(3), 5), InputError);
}

TEST_CASE("Committee normalizes and validates", "[election]") {
  const Committee w({3, 1}, 4);
  CHECK(w.members() == std::vector<int>{1, 3});
  CHECK(w.contains(3));
  CHECK_FALSE(w.contains(2));
  CHECK_THROWS_AS(Committee({1, 1}, 4), InputError);
  CHECK_THROWS_AS(Committee({4}, 4), InputError);
}

TEST_CASE("grab-your-best assignment", "[election]") {
  const auto e = make_election(3, {{0, 1, 2}, {2, 1, 0}});
  const auto a = gyb_assignment(e, Committee({1, 2}, 3));
  CHECK(a.rep == std::vector<int>{1, 2});

  const auto all = gyb_assignment(e, Committee({0, 1, 2}, 3));
  CHECK(all.rep == std::vector<int>{0, 2});
  CHECK(all.loads() == std::vector<int>{1, 0, 1});
  CHECK_THROWS_AS(gyb_assignment(e, Committee{}), InputError);
}

TEST_CASE("cc_score examples", "[election]") {
  const auto e = random_rankings(5, 7, 3);
  CHECK(cc_score(e, Committee({0, 1, 2, 3, 4}, 5)) == 7 * 4);
  CHECK(cc_score(make_election(3, {{0, 1, 2}}), Committee({2}, 3)) == 0);
}

TEST_CASE("cc_score equals the best of all assignments into the committee", "[election][oracle]") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto e = random_euclidean(6, 5, seed);
    for (const auto& members : all_subsets(6, 2)) {
      CHECK(cc_score(e, Committee(members, 6)) == brute_cc(e, members));
    }
  }
}

TEST_CASE("cc_score is monotone under adding members", "[election][property]") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto e = random_rankings(8, 9, seed);
    RngStream rng(seed);
    std::vector<int> order(8);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(std::span<int>(order));
    Score previous = 0;
    for (int size = 1; size <= 8; ++size) {
      const Score s = cc_score(e, Committee({order.begin(), order.begin() + size}, 8));
      CHECK(s >= previous);
      previous = s;
    }
  }
}

TEST_CASE("hb_score examples", "[election]") {
  // m=5, voter ranks the two members at positions 1 and 2: 4 + 3/2.
  const auto e = make_election(5, {{3, 1, 0, 2, 4}});
  CHECK(hb_score(e, Committee({1, 3}, 5)) == Catch::Approx(5.5).margin(1e-12));

  // k = m: every voter contributes sum_t beta(t)/t.
  const auto full = random_rankings(4, 3, 9);
  const double per_voter = 3.0 + 2.0 / 2 + 1.0 / 3;
  CHECK(hb_score(full, Committee({0, 1, 2, 3}, 4)) == Catch::Approx(3 * per_voter).margin(1e-12));
}

TEST_CASE("hb_score matches an independent top-down evaluation", "[election][oracle]") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto e = random_euclidean(6, 4, seed, Distribution::Gaussian);
    for (const auto& members : all_subsets(6, 2)) {
      CHECK(hb_score(e, Committee(members, 6)) == Catch::Approx(reference_hb(e, members)).margin(1e-9));
    }
  }
}

TEST_CASE("hb_score with one member is that member's Borda score", "[election][property]") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto e = random_rankings(7, 11, seed);
    for (int c = 0; c < 7; ++c) {
      CHECK(hb_score(e, Committee({c}, 7)) == static_cast<double>(candidate_score(e, ScoringFunction::borda(7), c)));
    }
  }
}
