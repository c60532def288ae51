#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "invrep/kernels.hpp"
#include "invrep/rng.hpp"

using namespace invrep;

namespace {

struct Case {
  std::vector<double> lam, z;
};

std::vector<Case> random_cases() {
  CounterRng rng(42, 0);
  std::vector<Case> cases;
  for (std::size_t n : {1u, 2u, 3u, 4u, 7u, 8u, 13u, 32u, 100u}) {
    Case c;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      c.lam.push_back(rng.next_double());
      const double v = rng.next_double() + 1e-3;
      c.z.push_back(v);
      sum += v;
    }
    for (auto& v : c.z) v /= sum;
    cases.push_back(std::move(c));
  }
  return cases;
}

double ref_mean_fitness(const Case& c) {
  double q = 0.0;
  for (std::size_t i = 0; i < c.lam.size(); ++i)
    q += c.lam[i] * (1.0 - c.z[i]) * c.z[i];
  return q;
}

}  // namespace

TEST_CASE("scalar kernels match straightforward loops") {
  const auto& ops = kernels::scalar_ops();
  for (const auto& c : random_cases()) {
    const std::size_t n = c.lam.size();
    CHECK(ops.mean_fitness(c.lam.data(), c.z.data(), n) ==
          doctest::Approx(ref_mean_fitness(c)).epsilon(1e-14));

    double phi = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      phi += c.lam[i] * c.z[i] - 0.5 * c.lam[i] * c.z[i] * c.z[i];
      sum += c.z[i];
    }
    CHECK(ops.potential(c.lam.data(), c.z.data(), n) ==
          doctest::Approx(phi).epsilon(1e-14));
    CHECK(ops.sum(c.z.data(), n) == doctest::Approx(sum).epsilon(1e-14));

    const double q = ref_mean_fitness(c);
    std::vector<double> out(n);
    ops.rhs(c.lam.data(), c.z.data(), n, q, out.data());
    for (std::size_t i = 0; i < n; ++i)
      CHECK(out[i] ==
            doctest::Approx(c.z[i] * (c.lam[i] * (1.0 - c.z[i]) - q)).epsilon(1e-14));
  }
}

TEST_CASE("every available SIMD backend agrees with the scalar reference") {
  const auto& ref = kernels::scalar_ops();
  for (auto b : {kernels::Backend::avx2, kernels::Backend::neon}) {
    if (!kernels::backend_available(b)) continue;
    kernels::force_backend(b);
    const auto& ops = kernels::active();
    INFO("backend: " << ops.name);
    CHECK(std::string(ops.name) != std::string(ref.name));

    for (const auto& c : random_cases()) {
      const std::size_t n = c.lam.size();
      CHECK(ops.mean_fitness(c.lam.data(), c.z.data(), n) ==
            doctest::Approx(ref.mean_fitness(c.lam.data(), c.z.data(), n))
                .epsilon(1e-13));
      CHECK(ops.potential(c.lam.data(), c.z.data(), n) ==
            doctest::Approx(ref.potential(c.lam.data(), c.z.data(), n)).epsilon(1e-13));
      CHECK(ops.sum(c.z.data(), n) ==
            doctest::Approx(ref.sum(c.z.data(), n)).epsilon(1e-13));

      const double q = ref.mean_fitness(c.lam.data(), c.z.data(), n);
      std::vector<double> a(n), bvec(n);
      ref.rhs(c.lam.data(), c.z.data(), n, q, a.data());
      ops.rhs(c.lam.data(), c.z.data(), n, q, bvec.data());
      for (std::size_t i = 0; i < n; ++i)
        CHECK(bvec[i] == doctest::Approx(a[i]).epsilon(1e-13));

      // rk4_combine on synthetic slopes
      std::vector<double> k1(c.z), k2(n), k3(n), k4(n), r1(n), r2(n);
      for (std::size_t i = 0; i < n; ++i) {
        k2[i] = 0.5 * c.z[i] - 0.1;
        k3[i] = c.lam[i] - 0.5;
        k4[i] = -c.z[i];
      }
      ref.rk4_combine(c.z.data(), k1.data(), k2.data(), k3.data(), k4.data(), n, 0.01,
                      r1.data());
      ops.rk4_combine(c.z.data(), k1.data(), k2.data(), k3.data(), k4.data(), n, 0.01,
                      r2.data());
      for (std::size_t i = 0; i < n; ++i)
        CHECK(r2[i] == doctest::Approx(r1[i]).epsilon(1e-13));
    }
  }
  kernels::reset_backend();
}

TEST_CASE("backend forcing and reset") {
  CHECK(kernels::backend_available(kernels::Backend::scalar));
  kernels::force_backend(kernels::Backend::scalar);
  CHECK(kernels::active_backend() == kernels::Backend::scalar);
  CHECK(std::string(kernels::active().name) == "scalar");
  kernels::reset_backend();
}
