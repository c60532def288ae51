#ifndef INVREP_KERNELS_HPP
#define INVREP_KERNELS_HPP

#include <cstddef>
#include <string>

namespace invrep::kernels {

// Hot inner loops of the ODE and ensemble paths. Scalar versions are the
// reference semantics; SIMD variants must agree with them within round-off
// (equivalence-tested in tests/test_kernels.cpp).
struct Ops {
  // Q(z) = sum_i lam_i (1 - z_i) z_i
  double (*mean_fitness)(const double* lam, const double* z, std::size_t n);
  // out_i = z_i (lam_i (1 - z_i) - q)
  void (*rhs)(const double* lam, const double* z, std::size_t n, double q, double* out);
  // Phi(z) = sum_i (lam_i z_i - lam_i z_i^2 / 2)
  double (*potential)(const double* lam, const double* z, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
  // out = z + (h/6)(k1 + 2 k2 + 2 k3 + k4)
  void (*rk4_combine)(const double* z, const double* k1, const double* k2,
                      const double* k3, const double* k4, std::size_t n, double h,
                      double* out);
  const char* name;
};

enum class Backend { scalar, avx2, neon };

const Ops& scalar_ops();
bool backend_available(Backend b);

/// Active backend: best available by default, overridable by force_backend()
/// or the INVREP_SIMD env var (scalar|avx2|neon|auto), checked once at startup.
const Ops& active();
Backend active_backend();
void force_backend(Backend b);
void reset_backend();  // back to auto-detection

}  // namespace invrep::kernels

#endif
