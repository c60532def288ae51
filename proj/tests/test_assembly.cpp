#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "invrep/assembly.hpp"
#include "invrep/equilibrium.hpp"
#include "invrep/rng.hpp"

using namespace invrep;
namespace asmb = invrep::assembly;

namespace {

EquilibriumResult resident_eq(const FitnessVector& fv) {
  return equilibrium::select_support(fv);
}

}  // namespace

TEST_CASE("two-resident worked example covers all outcome kinds") {
  FitnessVector fv({"r1", "r2"}, {1.0, 0.5});
  const auto eq = resident_eq(fv);
  CHECK(eq.q_star == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  SUBCASE("rejection below Q*") {
    const auto out = asmb::classify_invader(eq, fv, 0.2);
    CHECK(out.kind == asmb::OutcomeKind::rejection);
    CHECK(out.removed.empty());
    CHECK(out.new_equilibrium.k == 2);
    CHECK(out.new_equilibrium.q_star == doctest::Approx(eq.q_star).epsilon(1e-14));
  }
  SUBCASE("augmentation with a less-fit invader") {
    const auto out = asmb::classify_invader(eq, fv, 0.4);
    CHECK(out.kind == asmb::OutcomeKind::augmentation_less_fit);
    CHECK(out.removed.empty());
    CHECK(out.new_equilibrium.k == 3);
    CHECK(out.new_equilibrium.q_star > eq.q_star);
    CHECK(out.new_equilibrium.support_ids.back() == "invader");
  }
  SUBCASE("augmentation with a fitter invader") {
    // U_2 = (2/0.5 - 3)^-1 = 1, so (0.5, 1) augments.
    CHECK(asmb::classify_invader(eq, fv, 0.8).kind ==
          asmb::OutcomeKind::augmentation_fitter);
    const auto out = asmb::classify_invader(eq, fv, 0.8);
    CHECK(out.new_equilibrium.k == 3);
    CHECK(out.thresholds.u_k == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("replacement above U_k evicts the least fit resident") {
    const auto out = asmb::classify_invader(eq, fv, 1.2);
    CHECK(out.kind == asmb::OutcomeKind::replacement_resident_least_fit);
    REQUIRE(out.removed.size() == 1);
    CHECK(out.removed[0] == "r2");
    CHECK(out.new_equilibrium.k == 2);
    REQUIRE(out.thresholds.kprime.has_value());
    CHECK(*out.thresholds.kprime == 1);
    CHECK(*out.thresholds.v_kprime == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("degenerate trait at a threshold") {
    CHECK_THROWS_AS(asmb::classify_invader(eq, fv, 0.5), DegenerateThresholdError);
    CHECK_THROWS_AS(asmb::classify_invader(eq, fv, 1.0 / 3.0),
                    DegenerateThresholdError);
  }
  SUBCASE("non-positive invader") {
    CHECK_THROWS_AS(asmb::classify_invader(eq, fv, -0.3), ValidationError);
  }
}

TEST_CASE("replacement where the invader is the least fit survivor") {
  // Residents (1, 0.15): V_1 = (1/0.15 - 1)^-1 ~ 0.1765, so case (i) is the
  // wide interval (0.1765, 1) and a mid-range invader evicts "b" while
  // staying the least fit member of the new pair.
  FitnessVector steep({"a", "b"}, {1.0, 0.15});
  const auto out = asmb::classify_invader(resident_eq(steep), steep, 0.5);
  CHECK(out.kind == asmb::OutcomeKind::replacement_invader_least_fit);
  REQUIRE(out.removed.size() == 1);
  CHECK(out.removed[0] == "b");
  CHECK(out.new_equilibrium.k == 2);
}

TEST_CASE("singleton resident accepts any fitter or less-fit invader") {
  FitnessVector fv({"only"}, {0.5});
  EquilibriumResult eq;
  eq.k = 1;
  eq.q_star = 0.0;
  eq.support = {0};
  eq.support_ids = {"only"};
  eq.z_star = Eigen::VectorXd::Ones(1);

  const auto weak = asmb::classify_invader(eq, fv, 0.3);
  CHECK(weak.kind == asmb::OutcomeKind::augmentation_less_fit);
  CHECK(weak.new_equilibrium.k == 2);

  const auto strong = asmb::classify_invader(eq, fv, 0.9);
  CHECK(strong.kind == asmb::OutcomeKind::augmentation_fitter);
  CHECK(strong.new_equilibrium.k == 2);
}

TEST_CASE("exactly one interval matches and the oracle agrees, at scale") {
  CounterRng rng(101, 0);
  int counted[5] = {0, 0, 0, 0, 0};
  int degenerate = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = 2 + trial % 7;
    std::vector<double> lam(n);
    for (auto& l : lam) l = rng.next_double() + 1e-6;
    FitnessVector fv(std::move(lam));
    EquilibriumResult eq;
    try {
      eq = equilibrium::select_support(fv);
    } catch (const DegenerateThresholdError&) {
      continue;
    }
    const double invader = rng.next_double() + 1e-6;
    try {
      // classify_invader internally asserts single-interval membership and
      // cross-checks the new support against the threshold-rule oracle.
      const auto out = asmb::classify_invader(eq, fv, invader);
      ++counted[static_cast<int>(out.kind)];
    } catch (const DegenerateThresholdError&) {
      ++degenerate;
    }
  }
  CHECK(degenerate < 10);
  for (int kind = 0; kind < 5; ++kind) {
    INFO("outcome kind " << kind);
    CHECK(counted[kind] > 0);  // all five outcomes occur in a random sweep
  }
}

TEST_CASE("sequential assembly from empty keeps Q* non-decreasing") {
  CounterRng rng(7, 1);
  std::vector<double> invaders;
  for (int i = 0; i < 200; ++i) invaders.push_back(rng.next_double() + 1e-6);
  const auto log = asmb::assemble_sequence(invaders);

  REQUIRE(!log.steps.empty());
  double prev_q = 0.0;
  for (const auto& s : log.steps) {
    CHECK(s.q_star_after >= prev_q - 1e-12);
    prev_q = s.q_star_after;
  }
  CHECK(log.final_equilibrium.k == log.final_community.size());
  CHECK(log.final_equilibrium.k >= 2);

  // The final community is a fixed point of its own selection.
  const auto eq = equilibrium::select_support(log.final_community);
  CHECK(eq.k == log.final_equilibrium.k);
}

TEST_CASE("assembly from an existing pool matches its own equilibrium") {
  FitnessVector init(std::vector<double>{0.9, 0.6, 0.3});
  const auto log = asmb::assemble_sequence(init, {0.75});
  REQUIRE(log.steps.size() == 1);
  CHECK(log.steps[0].outcome == asmb::OutcomeKind::augmentation_fitter);
}

TEST_CASE("saturation gap shrinks and flips sign past the selected support") {
  FitnessVector fv(std::vector<double>{1.0, 0.674, 0.536, 0.342});
  const auto eq = equilibrium::select_support(fv);
  const auto gaps = asmb::saturation_gap(fv, {1, 2, 3, 4});
  REQUIRE(gaps.size() == 4);
  for (std::size_t i = 0; i < eq.k; ++i) CHECK(gaps[i].gap > 0.0);
  CHECK(gaps[3].gap < 0.0);  // past the support, Q* exceeds lambda_k
  CHECK_THROWS_AS(asmb::saturation_gap(fv, {5}), ValidationError);
}
