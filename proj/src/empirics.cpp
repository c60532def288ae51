#include "invrep/empirics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace invrep::empirics {

SiteFrequencyTable normalize_site(SiteFrequencyTable site) {
  if (site.rows.empty())
    throw ValidationError("normalize_site: empty table for site " + site.site_id);
  std::set<SpeciesId> seen;
  double sum = 0.0;
  for (const auto& [id, z] : site.rows) {
    if (!seen.insert(id).second)
      throw ValidationError("normalize_site: duplicate species " + id + " at " +
                            site.site_id);
    if (!(z > 0.0) || !(z < 1.0))
      throw ValidationError("normalize_site: frequency of " + id + " at " +
                            site.site_id + " outside (0,1)");
    sum += z;
  }
  site.original_sum = sum;
  if (std::abs(sum - 1.0) > kNumericTol) {
    for (auto& [id, z] : site.rows) z /= sum;
    site.renormalized = true;
    for (const auto& [id, z] : site.rows) {
      if (!(z < 1.0))
        throw ValidationError("normalize_site: rescaled frequency of " + id +
                              " reaches 1 at " + site.site_id);
    }
  }
  return site;
}

PairTestResult pair_linearity_test(const SiteFrequencyTable& a,
                                   const SiteFrequencyTable& b, bool orthogonal) {
  PairTestResult res;
  res.site_a = a.site_id;
  res.site_b = b.site_id;

  std::vector<double> xs, ys;
  for (const auto& [id, za] : a.rows) {
    auto it = std::find_if(b.rows.begin(), b.rows.end(),
                           [&](const auto& row) { return row.first == id; });
    if (it == b.rows.end()) continue;
    if (!(za < 1.0) || !(it->second < 1.0))
      throw ValidationError("pair_linearity_test: frequency 1 makes 1/(1-z) infinite");
    res.shared.push_back(id);
    ys.push_back(1.0 / (1.0 - za));        // site a on the vertical axis
    xs.push_back(1.0 / (1.0 - it->second));
  }
  if (res.shared.size() < 3)
    throw ValidationError("pair_linearity_test: need >= 3 shared species between " +
                          a.site_id + " and " + b.site_id + ", have " +
                          std::to_string(res.shared.size()));

  const auto fit = stats::ols(xs, ys);
  res.slope = fit.slope;
  res.slope_se = fit.slope_se;
  res.intercept = fit.intercept;
  res.intercept_se = fit.intercept_se;
  res.slope_p = fit.slope_p;
  res.intercept_p = fit.intercept_p;
  res.pearson_r = fit.pearson_r;
  res.r2 = fit.r2;
  if (orthogonal) {
    const auto ofit = stats::orthogonal_fit(xs, ys);
    res.slope = ofit.slope;
    res.intercept = ofit.intercept;
    res.slope_se = 0.0;
    res.intercept_se = 0.0;
  }
  return res;
}

TriangleReport triangle_consistency(const PairTestResult& ab, const PairTestResult& ac,
                                    const PairTestResult& bc, double z_crit) {
  if (std::abs(ab.slope) <= kNumericTol)
    throw ValidationError("triangle_consistency: (a,b) slope too close to zero");

  TriangleReport rep;
  rep.s_ab = ab.slope;
  rep.s_ac = ac.slope;
  rep.s_bc = bc.slope;
  rep.defect = bc.slope - ac.slope / ab.slope;

  const double d_ac = 1.0 / ab.slope;
  const double d_ab = ac.slope / (ab.slope * ab.slope);
  rep.defect_se = std::sqrt(bc.slope_se * bc.slope_se +
                            d_ac * d_ac * ac.slope_se * ac.slope_se +
                            d_ab * d_ab * ab.slope_se * ab.slope_se);
  rep.zscore = rep.defect_se > 0.0 ? std::abs(rep.defect) / rep.defect_se
                                   : (rep.defect == 0.0 ? 0.0
                                                        : std::numeric_limits<double>::infinity());
  rep.consistent = rep.zscore <= z_crit;
  return rep;
}

FitnessVector fit_lambdas_single_site(const SiteFrequencyTable& site, double q_bar) {
  if (!(q_bar > 0.0))
    throw ValidationError("fit_lambdas_single_site: q_bar must be positive");
  std::vector<SpeciesId> ids;
  std::vector<double> lambdas;
  for (const auto& [id, z] : site.rows) {
    if (!(z < 1.0))
      throw ValidationError("fit_lambdas_single_site: frequency 1 for " + id);
    ids.push_back(id);
    lambdas.push_back(q_bar / (1.0 - z));
  }
  return FitnessVector(std::move(ids), std::move(lambdas));
}

}  // namespace invrep::empirics
