#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "invrep/equilibrium.hpp"
#include "invrep/rng.hpp"

using namespace invrep;
namespace eqm = invrep::equilibrium;

namespace {

FitnessVector random_pool(CounterRng& rng, std::size_t n) {
  std::vector<double> lam(n);
  for (auto& l : lam) l = rng.next_double() + 1e-6;
  return FitnessVector(std::move(lam));
}

}  // namespace

TEST_CASE("reference four-species system") {
  FitnessVector fv(std::vector<double>{1.0, 0.674, 0.536, 0.342});
  const auto eq = eqm::select_support(fv);

  REQUIRE(eq.k == 3);
  CHECK(eq.support == std::vector<std::size_t>{0, 1, 2});
  const double q_expected = 2.0 / (1.0 / 1.0 + 1.0 / 0.674 + 1.0 / 0.536);
  CHECK(eq.q_star == doctest::Approx(q_expected).epsilon(1e-14));
  CHECK(eq.q_star == doctest::Approx(0.45984).epsilon(1e-4));

  CHECK(eq.z_star[0] == doctest::Approx(1.0 - eq.q_star / 1.0).epsilon(1e-14));
  CHECK(eq.z_star[1] == doctest::Approx(1.0 - eq.q_star / 0.674).epsilon(1e-14));
  CHECK(eq.z_star[2] == doctest::Approx(1.0 - eq.q_star / 0.536).epsilon(1e-14));
  CHECK(eq.z_star[3] == 0.0);
  CHECK(eq.z_star.sum() == doctest::Approx(1.0).epsilon(1e-12));

  // Threshold sandwich: lambda_{k+1} < Q* < lambda_k.
  CHECK(eq.q_star > 0.342);
  CHECK(eq.q_star < 0.536);
}

TEST_CASE("q_star basics") {
  FitnessVector fv(std::vector<double>{0.8, 0.4});
  CHECK(eqm::q_star(fv, {0}) == 0.0);
  CHECK(eqm::q_star_prefix(fv, 2) == doctest::Approx(1.0 / (1.25 + 2.5)).epsilon(1e-15));
  CHECK_THROWS_AS(eqm::q_star(fv, {}), ValidationError);
  CHECK_THROWS_AS(eqm::q_star_prefix(fv, 3), ValidationError);

  FitnessVector with_zero(std::vector<double>{0.5, 0.0});
  CHECK_THROWS_AS(eqm::q_star(with_zero, {0, 1}), ValidationError);
}

TEST_CASE("positive filter splits by sign") {
  FitnessVector fv(std::vector<double>{0.5, -0.2, 0.1});
  const auto p = eqm::positive_filter(fv);
  CHECK(p.s_plus == std::vector<std::size_t>{0, 1});
  CHECK(p.s_minus == std::vector<std::size_t>{2});
}

TEST_CASE("select_support preconditions") {
  CHECK_THROWS_AS(eqm::select_support(FitnessVector(std::vector<double>{0.5})),
                  ValidationError);
  CHECK_THROWS_AS(eqm::select_support(FitnessVector(std::vector<double>{0.5, -0.1})),
                  ValidationError);
}

TEST_CASE("degenerate threshold raises") {
  // Q*_2 of (1, 0.5) is 1/3; a third trait exactly there is degenerate.
  FitnessVector fv(std::vector<double>{1.0, 0.5, 1.0 / 3.0});
  CHECK_THROWS_AS(eqm::select_support(fv), DegenerateThresholdError);
}

TEST_CASE("support is never a singleton and contains the fittest species") {
  CounterRng rng(7, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const auto fv = random_pool(rng, 2 + trial % 9);
    const auto eq = eqm::select_support(fv);
    CHECK(eq.k >= 2);
    CHECK(eq.support.front() == 0);
    // Feasibility: every supported frequency strictly positive.
    for (std::size_t r : eq.support) CHECK(eq.z_star[static_cast<Eigen::Index>(r)] > 0.0);
    CHECK(eq.z_star.sum() == doctest::Approx(1.0).epsilon(1e-10));
    // The threshold sandwich holds.
    CHECK(eq.q_star < fv.lambda(eq.k - 1));
    if (eq.k < fv.size()) CHECK(eq.q_star > fv.lambda(eq.k));
    // Frequencies are ordered like the traits.
    for (std::size_t r = 1; r < eq.k; ++r)
      CHECK(eq.z_star[static_cast<Eigen::Index>(r - 1)] >=
            eq.z_star[static_cast<Eigen::Index>(r)]);
  }
}

TEST_CASE("selected prefix is the unique stable candidate (full enumeration)") {
  CounterRng rng(9, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto fv = random_pool(rng, 5 + trial % 3);
    const auto eq = eqm::select_support(fv);
    const auto cands = eqm::enumerate_candidates(fv, /*fast=*/false);
    int stable_count = 0;
    for (const auto& c : cands) {
      if (!(c.feasible && c.stable)) continue;
      ++stable_count;
      REQUIRE(c.subset.size() == eq.k);
      CHECK(c.subset == eq.support);
    }
    CHECK(stable_count == 1);
  }
}

TEST_CASE("fast enumeration covers singletons and prefixes") {
  FitnessVector fv(std::vector<double>{0.9, 0.6, 0.3});
  const auto cands = eqm::enumerate_candidates(fv, /*fast=*/true);
  CHECK(cands.size() == 5);  // 3 singletons + prefixes of size 2, 3
  int stable = 0;
  for (const auto& c : cands) stable += (c.feasible && c.stable) ? 1 : 0;
  CHECK(stable == 1);
}

TEST_CASE("adding a weaker species never lowers Q*") {
  CounterRng rng(11, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto fv = random_pool(rng, 4);
    const auto eq = eqm::select_support(fv);
    const double weak = fv.lambda(3) * rng.next_double();
    if (weak <= 1e-9) continue;
    const auto grown = fv.with_added("weak", weak);
    try {
      const auto eq2 = eqm::select_support(grown);
      CHECK(eq2.q_star >= eq.q_star - 1e-12);
    } catch (const DegenerateThresholdError&) {
      // measure-zero tie; skip
    }
  }
}
