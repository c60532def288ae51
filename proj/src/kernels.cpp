#include "invrep/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <optional>

namespace invrep::kernels {

#if defined(INVREP_BUILD_AVX2)
const Ops& avx2_ops_impl();
#endif
#if defined(INVREP_BUILD_NEON)
const Ops& neon_ops_impl();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(INVREP_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::optional<Backend>& override_slot() {
  static std::optional<Backend> slot;
  return slot;
}

Backend detect() {
  if (override_slot()) return *override_slot();
  if (const char* env = std::getenv("INVREP_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && backend_available(Backend::avx2))
      return Backend::avx2;
    if (std::strcmp(env, "neon") == 0 && backend_available(Backend::neon))
      return Backend::neon;
    // "auto" or anything unrecognized falls through
  }
#if defined(INVREP_BUILD_NEON)
  return Backend::neon;
#else
  return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
#endif
}

}  // namespace

bool backend_available(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
      return cpu_has_avx2();
    case Backend::neon:
#if defined(INVREP_BUILD_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend active_backend() { return detect(); }

const Ops& active() {
  switch (detect()) {
#if defined(INVREP_BUILD_AVX2)
    case Backend::avx2:
      return avx2_ops_impl();
#endif
#if defined(INVREP_BUILD_NEON)
    case Backend::neon:
      return neon_ops_impl();
#endif
    default:
      return scalar_ops();
  }
}

void force_backend(Backend b) { override_slot() = b; }
void reset_backend() { override_slot().reset(); }

}  // namespace invrep::kernels
