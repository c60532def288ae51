#include "invrep/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace invrep::stats {

namespace {

struct Moments {
  std::size_t n;
  double mx, my, sxx, syy, sxy;
};

Moments moments(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("stats: size mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("stats: need at least 2 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  return {n, mx, my, sxx, syy, sxy};
}

double beta_cf(double a, double b, double x) {
  // Lentz's algorithm for the continued fraction of I_x(a, b).
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-15;
  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    const double m2 = 2.0 * m;
    double num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
    d = 1.0 + num * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + num / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
    d = 1.0 + num * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + num / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < eps) break;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("incomplete_beta: a, b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                        b * std::log1p(-x) + a * std::log(x)) *
                   beta_cf(b, a, 1.0 - x) / b;
}

double t_test_p(double t, double df) {
  if (df <= 0.0) throw std::invalid_argument("t_test_p: df > 0 required");
  if (!std::isfinite(t)) return 0.0;
  return incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
}

OLSFit ols(const std::vector<double>& x, const std::vector<double>& y) {
  const Moments m = moments(x, y);
  if (m.n < 3) throw std::invalid_argument("ols: need at least 3 points");
  if (m.sxx <= 0.0) throw std::invalid_argument("ols: degenerate x values");

  OLSFit fit;
  fit.n = m.n;
  fit.slope = m.sxy / m.sxx;
  fit.intercept = m.my - fit.slope * m.mx;

  const double ss_res = std::max(m.syy - fit.slope * m.sxy, 0.0);
  fit.r2 = m.syy > 0.0 ? 1.0 - ss_res / m.syy : 1.0;
  fit.pearson_r = (m.sxx > 0.0 && m.syy > 0.0)
                      ? m.sxy / std::sqrt(m.sxx * m.syy)
                      : 0.0;

  const double df = static_cast<double>(m.n - 2);
  const double sigma2 = ss_res / df;
  fit.slope_se = std::sqrt(sigma2 / m.sxx);
  fit.intercept_se =
      std::sqrt(sigma2 * (1.0 / m.n + m.mx * m.mx / m.sxx));
  fit.slope_p = fit.slope_se > 0.0 ? t_test_p(fit.slope / fit.slope_se, df)
                                   : (fit.slope != 0.0 ? 0.0 : 1.0);
  fit.intercept_p = fit.intercept_se > 0.0
                        ? t_test_p(fit.intercept / fit.intercept_se, df)
                        : (fit.intercept != 0.0 ? 0.0 : 1.0);
  return fit;
}

OrthogonalFit orthogonal_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const Moments m = moments(x, y);
  const double diff = m.syy - m.sxx;
  OrthogonalFit fit;
  if (m.sxy == 0.0) {
    if (diff >= 0.0)
      throw std::invalid_argument("orthogonal_fit: vertical or undefined principal axis");
    fit.slope = 0.0;
  } else {
    fit.slope = (diff + std::sqrt(diff * diff + 4.0 * m.sxy * m.sxy)) / (2.0 * m.sxy);
  }
  fit.intercept = m.my - fit.slope * m.mx;
  return fit;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const Moments m = moments(x, y);
  if (m.sxx <= 0.0 || m.syy <= 0.0)
    throw std::invalid_argument("pearson: zero variance");
  return m.sxy / std::sqrt(m.sxx * m.syy);
}

}  // namespace invrep::stats
