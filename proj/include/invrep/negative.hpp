#ifndef INVREP_NEGATIVE_HPP
#define INVREP_NEGATIVE_HPP

#include <optional>
#include <vector>

#include "invrep/core.hpp"
#include "invrep/dynamics.hpp"

namespace invrep::negative {

enum class Certificate { n2_threshold, cone_condition, necessary_violation, none };

const char* to_string(Certificate c);

struct BasinPrediction {
  std::optional<SpeciesId> winner;        // nullopt = undetermined
  Certificate certificate = Certificate::none;
  std::optional<double> threshold_value;  // N=2 sharp threshold only
};

/// Sharp N=2 basin boundary z1† = lambda1/(lambda1+lambda2).
/// Requires 0 > lambda1 > lambda2 (strict).
double n2_basin_threshold(double lambda1, double lambda2);

/// Sufficient condition: if z0 lies in the cone
/// C = { z : z_1/z_j >= lambda_1/lambda_j for all j } the fittest (least
/// negative) species wins; otherwise undetermined. z0 is in rank order.
BasinPrediction cone_certificate(const SimplexState& z0, const FitnessVector& lambdas);

/// Combined predictor: N=2 sharp threshold, then the cone, then the
/// necessary-dominance exclusion (if no species i > 1 satisfies the
/// dominance prerequisite z_j/z_i < lambda_j/lambda_i for all j < i, the
/// fittest species must win).
BasinPrediction predict_winner(const SimplexState& z0, const FitnessVector& lambdas);

/// Necessary initial-dominance condition for species of rank `winner` (> 0)
/// to be the unique survivor: z_j(0)/z_winner(0) < lambda_j/lambda_winner
/// for every fitter rank j. Always true for winner = 0.
bool necessary_dominance_holds(const SimplexState& z0, const FitnessVector& lambdas,
                               std::size_t winner);

/// Integrate and declare the vertex winner once one frequency exceeds
/// 1 - 1e-6; nullopt if no winner emerged by t_max. Returns the rank.
std::optional<std::size_t> ode_winner(const SimplexState& z0,
                                      const FitnessVector& lambdas,
                                      double t_max = 1e4);

/// Locate the N=2 basin boundary empirically by bisecting the initial
/// condition over `iterations` halvings.
double bisect_n2_boundary(const FitnessVector& lambdas, int iterations = 60,
                          double t_max = 1e4);

struct StabilityAuditEntry {
  std::vector<std::size_t> support;  // ranks
  bool stable = false;
  std::vector<double> eigenvalue_real_parts;
};

struct StabilityAudit {
  std::vector<StabilityAuditEntry> vertices;     // expected all stable
  std::vector<StabilityAuditEntry> multispecies; // feasible k>=2, expected unstable
  bool all_vertices_stable = false;
  bool all_multispecies_unstable = false;
};

/// Linear-stability audit of an all-negative pool: every vertex should be
/// stable and every feasible k>=2 candidate unstable.
StabilityAudit negative_stability_audit(const FitnessVector& lambdas);

}  // namespace invrep::negative

#endif
