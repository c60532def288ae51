#include "invrep/kernels.hpp"

namespace invrep::kernels {
namespace {

double mean_fitness_s(const double* lam, const double* z, std::size_t n) {
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) q += lam[i] * (1.0 - z[i]) * z[i];
  return q;
}

void rhs_s(const double* lam, const double* z, std::size_t n, double q, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = z[i] * (lam[i] * (1.0 - z[i]) - q);
}

double potential_s(const double* lam, const double* z, std::size_t n) {
  double p = 0.0;
  for (std::size_t i = 0; i < n; ++i) p += lam[i] * z[i] * (1.0 - 0.5 * z[i]);
  return p;
}

double sum_s(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

void rk4_combine_s(const double* z, const double* k1, const double* k2,
                   const double* k3, const double* k4, std::size_t n, double h,
                   double* out) {
  const double c = h / 6.0;
  for (std::size_t i = 0; i < n; ++i)
    out[i] = z[i] + c * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{mean_fitness_s, rhs_s, potential_s, sum_s, rk4_combine_s,
                       "scalar"};
  return ops;
}

}  // namespace invrep::kernels
