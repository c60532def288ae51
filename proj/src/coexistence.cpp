#include "invrep/coexistence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "invrep/dynamics.hpp"
#include "invrep/equilibrium.hpp"
#include "invrep/rng.hpp"
#include "invrep/sobol.hpp"

namespace invrep::coexist {

namespace {

constexpr double kZ95 = 1.959964;

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
  return r;
}

}  // namespace

int threshold_rule_k(std::vector<double> lambdas) {
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  const std::size_t n = lambdas.size();
  double inv = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    inv += 1.0 / lambdas[k - 1];
    const double q = static_cast<double>(k - 1) / inv;
    const double lam_next = (k < n) ? lambdas[k] : 0.0;
    if (q > lam_next) return static_cast<int>(k);
  }
  return static_cast<int>(n);  // unreachable for positive traits
}

ProbabilityEstimate prob_k_integral(int N, int k, const IntegralConfig& cfg) {
  if (k < 2)
    throw ValidationError("prob_k_integral: k < 2 (no stable single-species state)");
  if (k > N) throw ValidationError("prob_k_integral: k > N");
  if (cfg.samples < 1000) throw ValidationError("prob_k_integral: samples < 1000");
  if (cfg.proposal_b <= 0.0 || cfg.proposal_b > 1.0)
    throw ValidationError("prob_k_integral: proposal_b must be in (0, 1]");

  const int d = k - 1;
  const double constant = binom(N, k) * k * std::pow(double(k - 1), N - k) / N;
  const double inv_b = 1.0 / cfg.proposal_b;

  const int reps = std::max(2, cfg.replicates);
  const std::uint64_t per_rep = cfg.samples / reps;
  std::vector<double> rep_means(reps, 0.0);
  std::vector<double> u(d), point(d);

  for (int r = 0; r < reps; ++r) {
    SobolSequence sobol(static_cast<unsigned>(d), cfg.seed, static_cast<std::uint64_t>(r));
    CounterRng prng(cfg.seed, 1000 + static_cast<std::uint64_t>(r));
    double acc = 0.0;
    for (std::uint64_t s = 0; s < per_rep; ++s) {
      if (cfg.use_sobol) {
        sobol.next(point.data());
      } else {
        for (int j = 0; j < d; ++j) point[j] = prng.next_double();
      }
      // Proposal Beta(1, b): u = 1 - (1 - v)^(1/b), density b (1-u)^(b-1).
      // Combined with the integrand's (1-u)^-2 this gives the per-coordinate
      // weight (1/b) (1-u)^(-1-b), finite under the sum constraint.
      double sum = 0.0, mx = 0.0, wcoord = 1.0;
      for (int j = 0; j < d; ++j) {
        const double one_minus_u = std::pow(1.0 - point[j], inv_b);
        const double uj = 1.0 - one_minus_u;
        u[j] = uj;
        sum += uj;
        mx = std::max(mx, uj);
        wcoord *= inv_b * std::pow(one_minus_u, -1.0 - cfg.proposal_b);
      }
      if (sum >= 1.0) continue;
      const double w = std::pow(1.0 - mx, N) /
                       std::pow(static_cast<double>(k) - sum, N - k) * wcoord;
      acc += w;
    }
    rep_means[r] = constant * acc / static_cast<double>(per_rep);
  }

  const double mean = std::accumulate(rep_means.begin(), rep_means.end(), 0.0) / reps;
  double var = 0.0;
  for (double m : rep_means) var += (m - mean) * (m - mean);
  var /= (reps - 1);
  const double se = std::sqrt(var / reps);

  ProbabilityEstimate est;
  est.k = k;
  est.N = N;
  est.value = mean;
  est.std_error = se;
  est.ci95_halfwidth = kZ95 * se;
  est.method = Method::mc_integral;
  est.samples = per_rep * static_cast<std::uint64_t>(reps);
  est.seed = cfg.seed;
  return est;
}

ProbabilityEstimate prob_k_integral(int N, int k, std::uint64_t samples,
                                    std::uint64_t seed) {
  IntegralConfig cfg;
  cfg.samples = samples;
  cfg.seed = seed;
  return prob_k_integral(N, k, cfg);
}

ProbabilityEstimate prob_k_ordered_oracle(int N, int k, std::uint64_t samples,
                                          std::uint64_t seed, bool allow_large_n) {
  if (k < 1 || k > N) throw ValidationError("prob_k_ordered_oracle: bad k");
  if (N > 8 && !allow_large_n)
    throw ValidationError("prob_k_ordered_oracle: N > 8 (rejection sampling "
                          "becomes inefficient); pass allow_large_n to override");
  CounterRng rng(seed, 2);
  std::vector<double> lam(static_cast<std::size_t>(N));
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (auto& l : lam) l = rng.next_double();
    if (threshold_rule_k(lam) == k) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  const double se = std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(samples));

  ProbabilityEstimate est;
  est.k = k;
  est.N = N;
  est.value = p;
  est.std_error = se;
  est.ci95_halfwidth = kZ95 * se;
  est.method = Method::ordered_simplex_mc;
  est.samples = samples;
  est.seed = seed;
  return est;
}

namespace {

CoexistenceDistribution run_ensemble(int N, std::uint64_t runs, std::uint64_t seed,
                                     bool use_ode) {
  if (runs < 100) throw ValidationError("ensemble: runs < 100");
  CoexistenceDistribution dist;
  dist.N = N;
  dist.runs = runs;

  std::vector<std::uint64_t> counts(static_cast<std::size_t>(N) + 1, 0);
  double sum_k = 0.0;
  CounterRng rng(seed, 3);
  std::vector<double> lam(static_cast<std::size_t>(N));

  dynamics::StepControl ctl;
  ctl.record_stride = 0;  // endpoints only

  for (std::uint64_t run = 0; run < runs; ++run) {
    for (auto& l : lam) l = rng.next_double();
    const int rule_k = threshold_rule_k(lam);
    int observed_k = rule_k;

    if (use_ode) {
      FitnessVector fv(lam);
      Eigen::VectorXd z0 = Eigen::VectorXd::Constant(N, 1.0 / N);
      auto traj = dynamics::integrate(SimplexState{z0, 0.0}, fv, 1e4, ctl);
      observed_k = static_cast<int>(dynamics::survivors(traj).size());
      if (observed_k != rule_k) {
        // Near-threshold traits converge too slowly for the cutoff; log the
        // tightest gap so the disagreement is traceable.
        std::vector<double> sorted = lam;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        double inv = 0.0, min_gap = 1e300;
        for (int kk = 1; kk <= N; ++kk) {
          inv += 1.0 / sorted[kk - 1];
          const double q = (kk - 1) / inv;
          const double nxt = (kk < N) ? sorted[kk] : 0.0;
          min_gap = std::min(min_gap, std::abs(q - nxt));
        }
        dist.disagreements.push_back({run, observed_k, rule_k, min_gap});
      }
    }
    ++counts[static_cast<std::size_t>(observed_k)];
    sum_k += observed_k;
  }

  for (int k = 2; k <= N; ++k) {
    const double p = static_cast<double>(counts[static_cast<std::size_t>(k)]) / runs;
    const double se = std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(runs));
    ProbabilityEstimate est;
    est.k = k;
    est.N = N;
    est.value = p;
    est.std_error = se;
    est.ci95_halfwidth = kZ95 * se;
    est.method = Method::ode_ensemble;
    est.samples = runs;
    est.seed = seed;
    dist.pmf[k] = est;
  }
  dist.mean_n = sum_k / static_cast<double>(runs);
  return dist;
}

}  // namespace

CoexistenceDistribution prob_k_ode_ensemble(int N, std::uint64_t runs,
                                            std::uint64_t seed) {
  return run_ensemble(N, runs, seed, /*use_ode=*/true);
}

CoexistenceDistribution prob_k_threshold_ensemble(int N, std::uint64_t runs,
                                                  std::uint64_t seed) {
  return run_ensemble(N, runs, seed, /*use_ode=*/false);
}

std::optional<double> closed_form_prob(int N, int k) {
  const double ln2 = std::log(2.0);
  if (N == 3 && k == 2) return 2.0 - 2.0 * ln2;
  if (N == 3 && k == 3) return -1.0 + 2.0 * ln2;
  if (N == 4 && k == 2) return 4.5 - 6.0 * ln2;
  if (N == 4 && k == 3) return 0.5490;  // published percentage
  if (N == 4 && k == 4) return 0.1099;  // published percentage
  if (N == 5 && k == 2) return 8.5 - 12.0 * ln2;
  if (N == 5 && k == 3) return 0.5469;  // published percentage
  return std::nullopt;
}

std::vector<MeanPoint> expected_n_curve(const std::vector<int>& n_list,
                                        std::uint64_t runs, std::uint64_t seed) {
  if (runs < 100) throw ValidationError("expected_n_curve: runs < 100");
  std::vector<MeanPoint> out;
  for (std::size_t idx = 0; idx < n_list.size(); ++idx) {
    const int N = n_list[idx];
    CounterRng rng(seed, 100 + idx);
    std::vector<double> lam(static_cast<std::size_t>(N));
    double sum = 0.0, sum2 = 0.0;
    for (std::uint64_t r = 0; r < runs; ++r) {
      for (auto& l : lam) l = rng.next_double();
      const int k = threshold_rule_k(lam);
      sum += k;
      sum2 += static_cast<double>(k) * k;
    }
    const double mean = sum / runs;
    const double var = std::max(sum2 / runs - mean * mean, 0.0);
    out.push_back({N, mean, std::sqrt(var / static_cast<double>(runs))});
  }
  return out;
}

double beta_order_stat_pdf(int N, int j, double x) {
  if (j < 1 || j > N) throw ValidationError("beta_order_stat_pdf: j out of range");
  if (!(x > 0.0 && x < 1.0))
    throw ValidationError("beta_order_stat_pdf: x outside (0,1)");
  const double log_b = std::lgamma(N + 1.0 - j) + std::lgamma(static_cast<double>(j)) -
                       std::lgamma(N + 1.0);
  return std::exp((N - j) * std::log(x) + (j - 1) * std::log1p(-x) - log_b);
}

}  // namespace invrep::coexist
