#ifndef INVREP_COEXISTENCE_HPP
#define INVREP_COEXISTENCE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "invrep/core.hpp"

namespace invrep::coexist {

enum class Method { mc_integral, ordered_simplex_mc, closed_form, ode_ensemble };

struct ProbabilityEstimate {
  int k = 0;
  int N = 0;
  double value = 0.0;
  double std_error = 0.0;
  double ci95_halfwidth = 0.0;
  Method method = Method::mc_integral;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

struct CoexistenceDistribution {
  int N = 0;
  std::map<int, ProbabilityEstimate> pmf;  // k = 2..N
  double mean_n = 0.0;
  // ODE-ensemble only: runs where the survivor set disagreed with the
  // threshold rule, with the smallest |lambda - Q*| gap seen in each.
  struct Disagreement {
    std::uint64_t run;
    int ode_k;
    int rule_k;
    double min_threshold_gap;
  };
  std::vector<Disagreement> disagreements;
  std::uint64_t runs = 0;
};

struct IntegralConfig {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  int replicates = 32;      // independent scrambles; CI from their spread
  double proposal_b = 0.5;  // per-coordinate proposal Beta(1, b), mass near 1
  bool use_sobol = true;    // false: plain pseudorandom points
};

/// Quasi-Monte Carlo estimate of the exact-k coexistence probability for
/// i.i.d. U[0,1] traits, via the (k-1)-dimensional hypercube integral with
/// importance sampling against the (1-u)^-2 factors.
ProbabilityEstimate prob_k_integral(int N, int k, const IntegralConfig& cfg);
ProbabilityEstimate prob_k_integral(int N, int k, std::uint64_t samples,
                                    std::uint64_t seed);

/// Order-statistics oracle: draw N uniforms, sort, apply the threshold rule.
ProbabilityEstimate prob_k_ordered_oracle(int N, int k, std::uint64_t samples,
                                          std::uint64_t seed,
                                          bool allow_large_n = false);

/// Full pmf from ODE integration of random pools (survivors at the 1e-4
/// cutoff), with per-run agreement tracking against the threshold rule.
CoexistenceDistribution prob_k_ode_ensemble(int N, std::uint64_t runs,
                                            std::uint64_t seed);

/// Same pmf via the threshold rule only (no ODE); much faster.
CoexistenceDistribution prob_k_threshold_ensemble(int N, std::uint64_t runs,
                                                  std::uint64_t seed);

/// Closed forms where analytic values are known; nullopt otherwise.
/// The (4,3), (4,4), (5,3) cells are reference values rounded to four
/// decimals, exact expressions being unavailable.
std::optional<double> closed_form_prob(int N, int k);

struct MeanPoint {
  int N;
  double mean_n;
  double std_error;
};

/// E[n] per pool size via the threshold rule.
std::vector<MeanPoint> expected_n_curve(const std::vector<int>& n_list,
                                        std::uint64_t runs, std::uint64_t seed);

/// Density of the j-th largest of N i.i.d. U[0,1]: Beta(N+1-j, j).
double beta_order_stat_pdf(int N, int j, double x);

/// Support size selected by the threshold rule for raw positive traits.
int threshold_rule_k(std::vector<double> lambdas);

}  // namespace invrep::coexist

#endif
