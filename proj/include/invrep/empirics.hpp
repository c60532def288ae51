#ifndef INVREP_EMPIRICS_HPP
#define INVREP_EMPIRICS_HPP

#include <string>
#include <utility>
#include <vector>

#include "invrep/core.hpp"
#include "invrep/stats.hpp"

namespace invrep::empirics {

/// Species frequencies observed at one site, assumed to be an equilibrium.
struct SiteFrequencyTable {
  std::string site_id;
  std::vector<std::pair<SpeciesId, double>> rows;  // 0 < z < 1, ids unique

  bool renormalized = false;  // set when frequencies were rescaled to sum 1
  double original_sum = 1.0;
};

/// Validate a raw table and renormalize frequencies to sum to 1.
/// Throws on duplicates or z outside (0, 1) after rescaling.
SiteFrequencyTable normalize_site(SiteFrequencyTable site);

struct PairTestResult {
  std::string site_a;
  std::string site_b;
  std::vector<SpeciesId> shared;
  double slope = 0.0;
  double slope_se = 0.0;
  double intercept = 0.0;
  double intercept_se = 0.0;
  double intercept_p = 1.0;
  double slope_p = 1.0;
  double pearson_r = 0.0;
  double r2 = 0.0;
};

/// OLS of 1/(1-z) at site a on 1/(1-z) at site b over the shared species.
/// If both sites sit at invader-driven equilibria of the same trait vector,
/// the relation is exactly linear through the origin with slope equal to
/// the ratio of the sites' mean fitnesses. Requires >= 3 shared species.
/// `orthogonal` swaps in a total-least-squares slope (both axes noisy).
PairTestResult pair_linearity_test(const SiteFrequencyTable& a,
                                   const SiteFrequencyTable& b,
                                   bool orthogonal = false);

struct TriangleReport {
  double s_ab = 0.0;
  double s_ac = 0.0;
  double s_bc = 0.0;
  double defect = 0.0;     // s_bc - s_ac / s_ab
  double defect_se = 0.0;  // delta-method propagation
  double zscore = 0.0;
  bool consistent = false;
};

/// Slope-chain identity: the (b, c) slope must equal the ratio of the
/// (a, c) and (a, b) slopes. Fails when |defect| exceeds z_crit standard
/// errors. The three results must involve sites labelled consistently:
/// ab = (a on b), ac = (a on c), bc = (b on c).
TriangleReport triangle_consistency(const PairTestResult& ab,
                                    const PairTestResult& ac,
                                    const PairTestResult& bc,
                                    double z_crit = 2.0);

/// One-parameter trait fit from a single site: lambda_i = q_bar/(1-z_i).
FitnessVector fit_lambdas_single_site(const SiteFrequencyTable& site, double q_bar);

}  // namespace invrep::empirics

#endif
