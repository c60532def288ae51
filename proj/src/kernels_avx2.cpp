// AVX2/FMA variants of the inner-loop kernels. Compiled with -mavx2 -mfma in
// its own TU; selected at runtime only when the CPU reports AVX2.
#include <immintrin.h>

#include "invrep/kernels.hpp"

namespace invrep::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double mean_fitness_v(const double* lam, const double* z, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d zi = _mm256_loadu_pd(z + i);
    __m256d li = _mm256_loadu_pd(lam + i);
    __m256d t = _mm256_mul_pd(_mm256_sub_pd(one, zi), zi);
    acc = _mm256_fmadd_pd(li, t, acc);
  }
  double q = hsum(acc);
  for (; i < n; ++i) q += lam[i] * (1.0 - z[i]) * z[i];
  return q;
}

void rhs_v(const double* lam, const double* z, std::size_t n, double q, double* out) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d qv = _mm256_set1_pd(q);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d zi = _mm256_loadu_pd(z + i);
    __m256d li = _mm256_loadu_pd(lam + i);
    __m256d g = _mm256_fmsub_pd(li, _mm256_sub_pd(one, zi), qv);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(zi, g));
  }
  for (; i < n; ++i) out[i] = z[i] * (lam[i] * (1.0 - z[i]) - q);
}

double potential_v(const double* lam, const double* z, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d half = _mm256_set1_pd(0.5);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d zi = _mm256_loadu_pd(z + i);
    __m256d li = _mm256_loadu_pd(lam + i);
    __m256d t = _mm256_mul_pd(zi, _mm256_fnmadd_pd(half, zi, one));
    acc = _mm256_fmadd_pd(li, t, acc);
  }
  double p = hsum(acc);
  for (; i < n; ++i) p += lam[i] * z[i] * (1.0 - 0.5 * z[i]);
  return p;
}

double sum_v(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i];
  return s;
}

void rk4_combine_v(const double* z, const double* k1, const double* k2,
                   const double* k3, const double* k4, std::size_t n, double h,
                   double* out) {
  const __m256d c = _mm256_set1_pd(h / 6.0);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_add_pd(_mm256_loadu_pd(k1 + i), _mm256_loadu_pd(k4 + i));
    __m256d b = _mm256_add_pd(_mm256_loadu_pd(k2 + i), _mm256_loadu_pd(k3 + i));
    a = _mm256_fmadd_pd(two, b, a);
    _mm256_storeu_pd(out + i, _mm256_fmadd_pd(c, a, _mm256_loadu_pd(z + i)));
  }
  const double cs = h / 6.0;
  for (; i < n; ++i)
    out[i] = z[i] + cs * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

}  // namespace

const Ops& avx2_ops_impl() {
  static const Ops ops{mean_fitness_v, rhs_v, potential_v, sum_v, rk4_combine_v,
                       "avx2"};
  return ops;
}

}  // namespace invrep::kernels
