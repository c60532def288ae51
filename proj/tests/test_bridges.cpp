#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "invrep/bridges.hpp"
#include "invrep/dynamics.hpp"
#include "invrep/equilibrium.hpp"
#include "invrep/rng.hpp"

using namespace invrep;
namespace br = invrep::bridges;

namespace {

Eigen::VectorXd random_interior(CounterRng& rng, std::size_t n) {
  Eigen::VectorXd z(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < z.size(); ++i)
    z[i] = -std::log(1.0 - rng.next_double());
  return z / z.sum();
}

FitnessVector random_pool(CounterRng& rng, std::size_t n) {
  std::vector<double> lam(n);
  for (auto& l : lam) l = rng.next_double() + 1e-3;
  return FitnessVector(std::move(lam));
}

}  // namespace

TEST_CASE("LV system has the prescribed rank-one-plus-shift structure") {
  FitnessVector fv(std::vector<double>{0.9, 0.7, 0.4, 0.2});
  const auto lv = br::to_lotka_volterra(fv);

  CHECK(lv.dim == 3);
  CHECK(lv.reference_rank == 0);
  CHECK(lv.shift == doctest::Approx(-0.9).epsilon(1e-15));
  // Remaining species keep rank order: r = (0.7, 0.4, 0.2).
  CHECK(lv.r[0] == doctest::Approx(0.7));
  CHECK(lv.r[2] == doctest::Approx(0.2));
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) {
      const double expected = (i == j) ? -0.9 : lv.r[i] - 0.9;
      CHECK(lv.A(i, j) == doctest::Approx(expected).epsilon(1e-15));
    }
  }
  CHECK_THROWS_AS(br::to_lotka_volterra(FitnessVector(std::vector<double>{1.0})),
                  ValidationError);
  CHECK_THROWS_AS(br::to_lotka_volterra(fv, 4), ValidationError);
}

TEST_CASE("interaction matrix is numerically rank one after removing the shift") {
  CounterRng rng(51, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto lv = br::to_lotka_volterra(random_pool(rng, 6));
    CHECK(br::rank_one_defect(lv) <= 1e-10);
  }
}

TEST_CASE("simplex <-> LV maps are mutually inverse on the interior") {
  CounterRng rng(52, 0);
  FitnessVector fv = random_pool(rng, 5);
  for (std::size_t ref : {std::size_t{0}, std::size_t{2}, std::size_t{4}}) {
    const auto lv = br::to_lotka_volterra(fv, ref);
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::VectorXd z = random_interior(rng, 5);
      const Eigen::VectorXd z_back = br::lv_to_simplex(lv, br::simplex_to_lv(lv, z));
      CHECK((z - z_back).cwiseAbs().maxCoeff() <= 1e-14);
      CHECK(br::lv_to_simplex(lv, br::simplex_to_lv(lv, z)).sum() ==
            doctest::Approx(1.0).epsilon(1e-14));
    }
  }
  // The inverse map needs a positive reference frequency.
  const auto lv = br::to_lotka_volterra(fv, 1);
  Eigen::VectorXd boundary = Eigen::VectorXd::Zero(5);
  boundary[0] = 0.5;
  boundary[2] = 0.5;
  CHECK_THROWS_AS(br::simplex_to_lv(lv, boundary), ValidationError);
}

TEST_CASE("LV and replicator orbits coincide after reparametrization") {
  CounterRng rng(53, 0);
  for (int trial = 0; trial < 3; ++trial) {
    FitnessVector fv = random_pool(rng, 4);
    const Eigen::VectorXd z0 = random_interior(rng, 4);
    const auto rep = br::lv_replicator_conjugacy_check(fv, SimplexState{z0, 0.0}, 200.0);
    INFO("trial " << trial << " discrepancy " << rep.max_orbit_discrepancy);
    CHECK_FALSE(rep.lv_blow_up);
    CHECK(rep.max_orbit_discrepancy <= 1e-3);
    CHECK(rep.fixed_point_gap <= 1e-8);
  }
}

TEST_CASE("conjugate LV fixed point maps onto the replicator equilibrium") {
  FitnessVector fv(std::vector<double>{1.0, 0.674, 0.536, 0.342});
  const auto eq = equilibrium::select_support(fv);
  const auto lv = br::to_lotka_volterra(fv);

  // Fold the equilibrium into LV coordinates via the support-restricted state
  // (reference z1* > 0, extinct species map to y = 0).
  const Eigen::VectorXd ystar = [&] {
    Eigen::VectorXd y(static_cast<Eigen::Index>(lv.dim));
    const double zref = eq.z_star[0];
    Eigen::Index row = 0;
    for (Eigen::Index i = 1; i < eq.z_star.size(); ++i) y[row++] = eq.z_star[i] / zref;
    return y;
  }();
  const Eigen::VectorXd residual = ystar.cwiseProduct(lv.r + lv.A * ystar);
  CHECK(residual.cwiseAbs().maxCoeff() <= 1e-8);
  CHECK((br::lv_to_simplex(lv, ystar) - eq.z_star).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("symmetric two-species pool balances at one half") {
  FitnessVector fv(std::vector<double>{0.6, 0.6});
  const auto eq = equilibrium::select_support(fv);
  CHECK(eq.z_star[0] == doctest::Approx(0.5).epsilon(1e-12));
  const auto lv = br::to_lotka_volterra(fv);
  // y* = 1 solves y(r + a y) = 0 with r = 0.6, a = -0.6.
  Eigen::VectorXd ystar = Eigen::VectorXd::Ones(1);
  CHECK(std::abs(ystar[0] * (lv.r[0] + lv.A(0, 0) * ystar[0])) <= 1e-15);
  CHECK(br::lv_to_simplex(lv, ystar)[0] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("SIS interaction-trait construction round-trips exactly") {
  FitnessVector fv(std::vector<double>{0.8, 0.5, 0.3, 0.1});
  const auto traits = br::sis_traits_from_lambdas(
      fv, br::SISCase::cocolonization_interaction, /*mu=*/0.7, /*c=*/1.4);
  const auto inv = br::lambdas_from_sis_traits(traits);

  CHECK(inv.structure_tag == MatrixStructure::invader_driven);
  for (Eigen::Index i = 0; i < 4; ++i) {
    CHECK(inv.values(i, i) == 0.0);
    for (Eigen::Index j = 0; j < 4; ++j)
      if (i != j)
        CHECK(std::abs(inv.values(i, j) -
                       fv.lambda(static_cast<std::size_t>(i))) <= 1e-12);
  }
  CHECK_THROWS_AS(br::sis_traits_from_lambdas(
                      fv, br::SISCase::cocolonization_interaction, 0.0, 1.0),
                  ValidationError);
}

TEST_CASE("SIS clearance-trait construction round-trips exactly") {
  FitnessVector fv(std::vector<double>{0.8, 0.5, 0.3, 0.1});
  const auto traits =
      br::sis_traits_from_lambdas(fv, br::SISCase::coinfection_clearance, 0.0, 2.0);
  const auto inv = br::lambdas_from_sis_traits(traits);

  CHECK(inv.structure_tag == MatrixStructure::invader_driven);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j)
      if (i != j)
        CHECK(std::abs(inv.values(i, j) -
                       fv.lambda(static_cast<std::size_t>(i))) <= 1e-12);

  // The construction is symmetric but the formula tolerates the full
  // non-symmetric freedom u_ji = 2 u_jj - lambda_i - u_ij.
  br::SISTraits skew = traits;
  skew.trait_matrix(0, 1) += 0.3;
  skew.trait_matrix(1, 0) -= 0.3;
  const auto inv2 = br::lambdas_from_sis_traits(skew);
  CHECK(std::abs(inv2.values(0, 1) - fv.lambda(0)) <= 1e-12);
  CHECK(std::abs(inv2.values(1, 0) - fv.lambda(1)) <= 1e-12);
}

TEST_CASE("SIS susceptibility case verifies symmetry, never constructs") {
  CHECK_THROWS_AS(br::sis_traits_from_lambdas(
                      FitnessVector(std::vector<double>{0.8, 0.5}),
                      br::SISCase::cocolonization_susceptibility),
                  ValidationError);

  // Hand-built symmetric susceptibility matrix: alpha_ij = alpha_ii + alpha_jj.
  br::SISTraits tr;
  tr.case_tag = br::SISCase::cocolonization_susceptibility;
  Eigen::VectorXd diag(3);
  diag << 0.9, 0.6, 0.2;
  tr.trait_matrix.resize(3, 3);
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index j = 0; j < 3; ++j)
      tr.trait_matrix(i, j) = (i == j) ? diag[i] : diag[i] + diag[j];

  const auto inv = br::lambdas_from_sis_traits(tr);
  CHECK(inv.structure_tag == MatrixStructure::invader_driven);
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index j = 0; j < 3; ++j)
      if (i != j) CHECK(inv.values(i, j) == doctest::Approx(diag[i]).epsilon(1e-15));

  tr.trait_matrix(0, 2) += 0.05;  // break the symmetry
  CHECK_THROWS_AS(br::lambdas_from_sis_traits(tr), ValidationError);
}

TEST_CASE("theta weights scale the recovered invasion fitness") {
  FitnessVector fv(std::vector<double>{0.8, 0.5});
  const auto traits =
      br::sis_traits_from_lambdas(fv, br::SISCase::coinfection_clearance, 0.0, 1.0);
  br::ThetaWeights theta;
  theta.theta3 = 2.5;
  const auto inv = br::lambdas_from_sis_traits(traits, theta);
  CHECK(inv.values(0, 1) == doctest::Approx(2.5 * 0.8).epsilon(1e-13));
  CHECK(inv.values(1, 0) == doctest::Approx(2.5 * 0.5).epsilon(1e-13));
}
