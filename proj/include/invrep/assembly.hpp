#ifndef INVREP_ASSEMBLY_HPP
#define INVREP_ASSEMBLY_HPP

#include <optional>
#include <vector>

#include "invrep/core.hpp"

namespace invrep::assembly {

enum class OutcomeKind {
  augmentation_less_fit,
  augmentation_fitter,
  rejection,
  replacement_invader_least_fit,
  replacement_resident_least_fit,
};

const char* to_string(OutcomeKind k);

struct Thresholds {
  double q_star_k = 0.0;               // rejection threshold
  double u_k = 0.0;                    // upper edge of the augmentation window
  std::optional<double> v_kprime;      // replacement lower edge (case i)
  std::optional<double> w_kprime;      // max(lambda_k', V_k') (case ii lower edge)
  std::optional<std::size_t> kprime;   // surviving resident prefix depth
};

struct InvasionOutcome {
  OutcomeKind kind;
  std::vector<SpeciesId> removed;
  EquilibriumResult new_equilibrium;   // over the new community's FitnessVector
  FitnessVector new_community;         // survivors of the old support + invader
  Thresholds thresholds;
};

/// Classify a single invader against a resident equilibrium by the threshold
/// intervals; the intervals partition (0, inf) so exactly one case matches.
/// residents must be the stable equilibrium of `lambdas` (positive pool).
InvasionOutcome classify_invader(const EquilibriumResult& residents,
                                 const FitnessVector& lambdas, double lambda_new,
                                 const SpeciesId& invader_id = "invader",
                                 double tol = kNumericTol);

struct AssemblyStep {
  std::size_t step;
  double invader_lambda;
  OutcomeKind outcome;
  std::vector<SpeciesId> removed;
  std::size_t k_after;
  double q_star_after;
};

struct AssemblyLog {
  std::vector<AssemblyStep> steps;
  FitnessVector final_community;
  EquilibriumResult final_equilibrium;
};

/// Sequentially apply classify_invader over a stream of invader traits.
AssemblyLog assemble_sequence(const FitnessVector& initial,
                              const std::vector<double>& invaders);
AssemblyLog assemble_sequence(const std::vector<double>& invaders);  // empty start

struct SaturationPoint {
  std::size_t k;
  double gap;  // lambda_k - Q*_k, the admissible-invader window width
};

std::vector<SaturationPoint> saturation_gap(const FitnessVector& lambdas,
                                            const std::vector<std::size_t>& prefix_range);

}  // namespace invrep::assembly

#endif
