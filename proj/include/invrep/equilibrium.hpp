#ifndef INVREP_EQUILIBRIUM_HPP
#define INVREP_EQUILIBRIUM_HPP

#include <vector>

#include "invrep/core.hpp"

namespace invrep::equilibrium {

struct CandidateEquilibrium {
  std::vector<std::size_t> subset;  // ranks, ascending
  double q_value = 0.0;
  bool feasible = false;
  bool stable = false;
};

struct SignPartition {
  std::vector<std::size_t> s_plus;   // ranks with lambda >= 0
  std::vector<std::size_t> s_minus;  // ranks with lambda < 0
};

SignPartition positive_filter(const FitnessVector& lambdas);

/// Q*_S = (|S|-1) / sum_{i in S} 1/lambda_i; zero for singletons.
double q_star(const FitnessVector& lambdas, const std::vector<std::size_t>& subset);

/// Q*_k for the top-k prefix of the sorted traits.
double q_star_prefix(const FitnessVector& lambdas, std::size_t k);

/// The unique stable support via the threshold rule: first k (descending
/// scan) with Q*_k > lambda_{k+1}, where lambda_{N+1} := 0. Requires all
/// traits strictly positive and N >= 2. Exact ties with a threshold within
/// tol raise DegenerateThresholdError.
EquilibriumResult select_support(const FitnessVector& lambdas,
                                 double tol = kNumericTol);

/// All candidate equilibria with feasibility and (numerical) stability.
/// fast=true enumerates top-k prefixes plus all singletons; fast=false all
/// 2^N - 1 subsets (guarded at N <= 20 unless override_guard).
std::vector<CandidateEquilibrium> enumerate_candidates(const FitnessVector& lambdas,
                                                       bool fast = true,
                                                       bool override_guard = false);

}  // namespace invrep::equilibrium

#endif
