#ifndef INVREP_STATS_HPP
#define INVREP_STATS_HPP

#include <cstddef>
#include <vector>

namespace invrep::stats {

struct OLSFit {
  std::size_t n = 0;
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double intercept_se = 0.0;
  double slope_p = 1.0;      // two-sided t-test of slope = 0
  double intercept_p = 1.0;  // two-sided t-test of intercept = 0
  double pearson_r = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares of y on x (n >= 3). p-values use Student's t
/// with n-2 degrees of freedom; exact fits report p = 0 and se = 0.
OLSFit ols(const std::vector<double>& x, const std::vector<double>& y);

/// Orthogonal (total least squares) slope/intercept, for when both axes
/// carry comparable noise; no standard errors are reported.
struct OrthogonalFit {
  double slope = 0.0;
  double intercept = 0.0;
};
OrthogonalFit orthogonal_fit(const std::vector<double>& x, const std::vector<double>& y);

double pearson(const std::vector<double>& x, const std::vector<double>& y);

/// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction.
double incomplete_beta(double a, double b, double x);

/// Two-sided p-value of a t statistic with df degrees of freedom.
double t_test_p(double t, double df);

}  // namespace invrep::stats

#endif
