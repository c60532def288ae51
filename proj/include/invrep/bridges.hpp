#ifndef INVREP_BRIDGES_HPP
#define INVREP_BRIDGES_HPP

#include <optional>

#include "invrep/core.hpp"

namespace invrep::bridges {

/// (N-1)-dimensional Lotka-Volterra system conjugate to the replicator,
/// with one species folded out as the reference.
struct LVSystem {
  std::size_t dim = 0;              // N - 1
  Eigen::VectorXd r;                // growth rates, r_i = lambda_i
  Eigen::MatrixXd A;                // interactions: a_ii = -lambda_ref,
                                    // a_ij = lambda_i - lambda_ref (j != i)
  Eigen::VectorXd rank_one_column;  // lambda_i - lambda_ref
  double shift = 0.0;               // common diagonal of A: -lambda_ref.
                                    // A + diag(r) = rank_one_column * ones^T.
  std::size_t reference_rank = 0;   // rank of the folded-out species
  SpeciesId reference_id;
};

/// Fold out the reference species (default: the fittest) and build the
/// conjugate LV system over the remaining N-1 species (rank order kept).
LVSystem to_lotka_volterra(const FitnessVector& lambdas,
                           std::optional<std::size_t> reference_rank = std::nullopt);

/// sigma_2 / sigma_1 of A + diag(r); rank-one structure means ~0, i.e.
/// species couple only through the total abundance.
double rank_one_defect(const LVSystem& lv);

/// Map LV state y to the simplex: z_i = y_i/(1+sum y), z_ref = 1/(1+sum y).
Eigen::VectorXd lv_to_simplex(const LVSystem& lv, const Eigen::VectorXd& y);
/// Inverse map for interior z: y_i = z_i / z_ref.
Eigen::VectorXd simplex_to_lv(const LVSystem& lv, const Eigen::VectorXd& z);

struct ConjugacyReport {
  double max_orbit_discrepancy = 0.0;  // after arc-length reparametrization
  double fixed_point_gap = 0.0;        // |map(LV fixed point) - z*|_inf
  bool lv_blow_up = false;
  double lv_t_reached = 0.0;
};

/// Integrate both systems from corresponding starts and compare the mapped
/// LV orbit with the replicator orbit geometrically (the conjugacy maps
/// orbits, not time, so both are resampled by arc-length fraction).
ConjugacyReport lv_replicator_conjugacy_check(const FitnessVector& lambdas,
                                              const SimplexState& z0, double t_max,
                                              std::optional<std::size_t> reference_rank =
                                                  std::nullopt);

enum class SISCase {
  cocolonization_susceptibility,  // (i): verification direction only
  cocolonization_interaction,     // (ii): alpha matrix, needs mu > 0
  coinfection_clearance,          // (iii): symmetric u matrix
};

const char* to_string(SISCase c);

struct SISTraits {
  SISCase case_tag = SISCase::cocolonization_interaction;
  Eigen::MatrixXd trait_matrix;  // alpha (i, ii) or u (iii), rank order
  double mu = 0.0;               // case (ii) only
  double c = 0.0;                // free constant used by the constructor
};

/// Weights of the five trait-asymmetry terms in the pairwise invasion
/// fitness; only the term active for the chosen case is used here.
struct ThetaWeights {
  double theta3 = 1.0;  // clearance term (case iii)
  double theta5 = 1.0;  // interaction term (cases i, ii)
};

/// Construct SIS trait matrices whose induced invasion fitness matrix is
/// invader-driven with the given rows. Cases (ii) and (iii) only; case (i)
/// has no constructor (verification direction only).
SISTraits sis_traits_from_lambdas(const FitnessVector& lambdas, SISCase case_tag,
                                  double mu = 0.0, double c = 0.0);

/// Evaluate the active term of the pairwise invasion fitness formula and
/// return the full matrix (zero diagonal). For case (i) the susceptibility
/// symmetry alpha_ij = alpha_ii + alpha_jj is checked first.
InvasionMatrix lambdas_from_sis_traits(const SISTraits& traits,
                                       const ThetaWeights& theta = {});

}  // namespace invrep::bridges

#endif
