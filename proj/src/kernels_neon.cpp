// NEON variants of the inner-loop kernels (aarch64).
#include <arm_neon.h>

#include "invrep/kernels.hpp"

namespace invrep::kernels {
namespace {

double mean_fitness_v(const double* lam, const double* z, std::size_t n) {
  float64x2_t one = vdupq_n_f64(1.0);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t zi = vld1q_f64(z + i);
    float64x2_t li = vld1q_f64(lam + i);
    float64x2_t t = vmulq_f64(vsubq_f64(one, zi), zi);
    acc = vfmaq_f64(acc, li, t);
  }
  double q = vaddvq_f64(acc);
  for (; i < n; ++i) q += lam[i] * (1.0 - z[i]) * z[i];
  return q;
}

void rhs_v(const double* lam, const double* z, std::size_t n, double q, double* out) {
  float64x2_t one = vdupq_n_f64(1.0);
  float64x2_t qv = vdupq_n_f64(q);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t zi = vld1q_f64(z + i);
    float64x2_t li = vld1q_f64(lam + i);
    float64x2_t g = vsubq_f64(vmulq_f64(li, vsubq_f64(one, zi)), qv);
    vst1q_f64(out + i, vmulq_f64(zi, g));
  }
  for (; i < n; ++i) out[i] = z[i] * (lam[i] * (1.0 - z[i]) - q);
}

double potential_v(const double* lam, const double* z, std::size_t n) {
  float64x2_t one = vdupq_n_f64(1.0);
  float64x2_t half = vdupq_n_f64(0.5);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t zi = vld1q_f64(z + i);
    float64x2_t li = vld1q_f64(lam + i);
    float64x2_t t = vmulq_f64(zi, vsubq_f64(one, vmulq_f64(half, zi)));
    acc = vfmaq_f64(acc, li, t);
  }
  double p = vaddvq_f64(acc);
  for (; i < n; ++i) p += lam[i] * z[i] * (1.0 - 0.5 * z[i]);
  return p;
}

double sum_v(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(x + i));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += x[i];
  return s;
}

void rk4_combine_v(const double* z, const double* k1, const double* k2,
                   const double* k3, const double* k4, std::size_t n, double h,
                   double* out) {
  float64x2_t c = vdupq_n_f64(h / 6.0);
  float64x2_t two = vdupq_n_f64(2.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t a = vaddq_f64(vld1q_f64(k1 + i), vld1q_f64(k4 + i));
    float64x2_t b = vaddq_f64(vld1q_f64(k2 + i), vld1q_f64(k3 + i));
    a = vfmaq_f64(a, two, b);
    vst1q_f64(out + i, vfmaq_f64(vld1q_f64(z + i), c, a));
  }
  const double cs = h / 6.0;
  for (; i < n; ++i)
    out[i] = z[i] + cs * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

}  // namespace

const Ops& neon_ops_impl() {
  static const Ops ops{mean_fitness_v, rhs_v, potential_v, sum_v, rk4_combine_v,
                       "neon"};
  return ops;
}

}  // namespace invrep::kernels
