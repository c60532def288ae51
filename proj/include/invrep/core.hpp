#ifndef INVREP_CORE_HPP
#define INVREP_CORE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace invrep {

/// Default tolerances. The model itself is tolerance-free; these pin down
/// the numerics of validation, equality assertions and stability verdicts.
inline constexpr double kSimplexTol = 1e-9;
inline constexpr double kNumericTol = 1e-8;
inline constexpr double kStabilityTol = 1e-7;
inline constexpr double kExtinctionCutoff = 1e-4;

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a trait sits exactly on a selection threshold, where the
/// strict-inequality theory gives no verdict.
class DegenerateThresholdError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

using SpeciesId = std::string;

/// Invasiveness traits, held in descending order with the original
/// identities preserved. Ties keep original order (stable sort).
class FitnessVector {
 public:
  FitnessVector() = default;

  /// Ids default to "1".."N" in input order.
  explicit FitnessVector(std::vector<double> lambdas);
  FitnessVector(std::vector<SpeciesId> ids, std::vector<double> lambdas);

  std::size_t size() const { return sorted_.size(); }
  /// Trait at descending rank (0-based: rank 0 is the fittest).
  double lambda(std::size_t rank) const { return sorted_[rank]; }
  const SpeciesId& id(std::size_t rank) const { return ids_[rank]; }
  const std::vector<double>& sorted() const { return sorted_; }

  std::size_t rank_of_original(std::size_t original_index) const {
    return orig_to_rank_[original_index];
  }
  std::size_t original_of_rank(std::size_t rank) const {
    return rank_to_orig_[rank];
  }

  bool all_positive() const;
  bool all_negative() const;

  /// New vector with one extra species appended (re-sorted).
  FitnessVector with_added(const SpeciesId& id, double lambda) const;
  /// New vector restricted to the given ranks (order preserved).
  FitnessVector restricted_to_ranks(const std::vector<std::size_t>& ranks) const;

 private:
  void build(std::vector<SpeciesId> ids, std::vector<double> lambdas);

  std::vector<double> sorted_;      // descending
  std::vector<SpeciesId> ids_;      // aligned with sorted_
  std::vector<std::size_t> rank_to_orig_;
  std::vector<std::size_t> orig_to_rank_;
};

enum class MatrixStructure { general, invader_driven };

/// Pairwise invasion fitness matrix with zero diagonal.
struct InvasionMatrix {
  Eigen::MatrixXd values;
  MatrixStructure structure_tag = MatrixStructure::general;

  std::size_t dim() const { return static_cast<std::size_t>(values.rows()); }
};

/// Frequency vector on the unit simplex, stamped with dimensionless time.
struct SimplexState {
  Eigen::VectorXd z;
  double tau = 0.0;

  std::size_t size() const { return static_cast<std::size_t>(z.size()); }
};

enum class Stability { stable, unstable, boundary_saddle };

struct EquilibriumResult {
  std::vector<std::size_t> support;  // ranks into the FitnessVector, ascending
  std::vector<SpeciesId> support_ids;
  Eigen::VectorXd z_star;            // rank order, zeros off support
  double q_star = 0.0;
  Stability stability = Stability::stable;
  std::size_t k = 0;
};

/// Rows constant off-diagonal: entry (i,j) = lambda_i for j != i.
InvasionMatrix build_invader_driven(const FitnessVector& lambdas);

/// Q(z) = sum_i lambda_i (1 - z_i) z_i. z must be in rank order.
double mean_fitness(const SimplexState& z, const FitnessVector& lambdas);

/// Clamp tiny negatives and renormalize; reject anything beyond tol.
SimplexState validate_simplex(const Eigen::VectorXd& raw, double tol = kSimplexTol);

inline const char* to_string(Stability s) {
  switch (s) {
    case Stability::stable: return "stable";
    case Stability::unstable: return "unstable";
    default: return "boundary_saddle";
  }
}

}  // namespace invrep

#endif
