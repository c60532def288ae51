#include "invrep/equilibrium.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "invrep/dynamics.hpp"

namespace invrep::equilibrium {

SignPartition positive_filter(const FitnessVector& lambdas) {
  SignPartition p;
  for (std::size_t r = 0; r < lambdas.size(); ++r) {
    (lambdas.lambda(r) >= 0.0 ? p.s_plus : p.s_minus).push_back(r);
  }
  return p;
}

double q_star(const FitnessVector& lambdas, const std::vector<std::size_t>& subset) {
  if (subset.empty()) throw ValidationError("q_star: empty subset");
  if (subset.size() == 1) return 0.0;
  double inv = 0.0;
  for (std::size_t r : subset) {
    const double l = lambdas.lambda(r);
    if (l == 0.0) throw ValidationError("q_star: zero trait in subset");
    inv += 1.0 / l;
  }
  return static_cast<double>(subset.size() - 1) / inv;
}

double q_star_prefix(const FitnessVector& lambdas, std::size_t k) {
  if (k == 0 || k > lambdas.size()) throw ValidationError("q_star_prefix: bad k");
  if (k == 1) return 0.0;
  double inv = 0.0;
  for (std::size_t r = 0; r < k; ++r) inv += 1.0 / lambdas.lambda(r);
  return static_cast<double>(k - 1) / inv;
}

EquilibriumResult select_support(const FitnessVector& lambdas, double tol) {
  const std::size_t n = lambdas.size();
  if (n < 2) throw ValidationError("select_support: need N >= 2");
  if (!lambdas.all_positive())
    throw ValidationError("select_support: all traits must be positive");

  // Descending scan of D_k = Q*_k - lambda_{k+1}; once positive it stays
  // positive, so the first crossing is the support size.
  std::size_t k_sel = 0;
  double q_sel = 0.0;
  double inv = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    inv += 1.0 / lambdas.lambda(k - 1);
    const double q = static_cast<double>(k - 1) / inv;
    const double lam_next = (k < n) ? lambdas.lambda(k) : 0.0;
    if (std::abs(q - lam_next) <= tol)
      throw DegenerateThresholdError("select_support: trait equals threshold Q*_" +
                                     std::to_string(k));
    if (q > lam_next) {
      k_sel = k;
      q_sel = q;
      break;
    }
  }
  if (k_sel < 2)
    throw NumericalError("select_support: threshold scan failed");  // unreachable for positive traits

  EquilibriumResult res;
  res.k = k_sel;
  res.q_star = q_sel;
  res.z_star = Eigen::VectorXd::Zero(n);
  for (std::size_t r = 0; r < k_sel; ++r) {
    res.support.push_back(r);
    res.support_ids.push_back(lambdas.id(r));
    res.z_star[static_cast<Eigen::Index>(r)] = 1.0 - q_sel / lambdas.lambda(r);
  }
  res.stability = Stability::stable;
  return res;
}

namespace {

CandidateEquilibrium classify_candidate(const FitnessVector& lambdas,
                                        std::vector<std::size_t> subset) {
  const std::size_t n = lambdas.size();
  CandidateEquilibrium c;
  c.subset = std::move(subset);
  c.q_value = q_star(lambdas, c.subset);

  Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
  bool feasible = true;
  if (c.subset.size() == 1) {
    z[static_cast<Eigen::Index>(c.subset[0])] = 1.0;
  } else {
    for (std::size_t r : c.subset) {
      const double zi = 1.0 - c.q_value / lambdas.lambda(r);
      z[static_cast<Eigen::Index>(r)] = zi;
      if (!(zi > 0.0)) feasible = false;
    }
  }
  c.feasible = feasible;
  if (!feasible) {
    c.stable = false;
    return c;
  }

  // Transverse eigenvalues are lambda_i - Q* (block-triangular structure);
  // the on-support block is checked numerically. The singleton block is the
  // radial direction and carries no simplex information.
  bool stable = true;
  std::vector<bool> in_subset(n, false);
  for (std::size_t r : c.subset) in_subset[r] = true;
  for (std::size_t r = 0; r < n && stable; ++r) {
    if (!in_subset[r] && lambdas.lambda(r) - c.q_value >= -kStabilityTol) stable = false;
  }
  if (stable && c.subset.size() >= 2) {
    const Eigen::MatrixXd jac =
        dynamics::jacobian_at(SimplexState{z, 0.0}, lambdas);
    const auto k = static_cast<Eigen::Index>(c.subset.size());
    Eigen::MatrixXd block(k, k);
    for (Eigen::Index a = 0; a < k; ++a)
      for (Eigen::Index b = 0; b < k; ++b)
        block(a, b) = jac(static_cast<Eigen::Index>(c.subset[a]),
                          static_cast<Eigen::Index>(c.subset[b]));
    Eigen::EigenSolver<Eigen::MatrixXd> es(block, /*computeEigenvectors=*/false);
    for (Eigen::Index a = 0; a < k; ++a) {
      if (es.eigenvalues()[a].real() >= -kStabilityTol) stable = false;
    }
  }
  c.stable = stable;
  return c;
}

}  // namespace

std::vector<CandidateEquilibrium> enumerate_candidates(const FitnessVector& lambdas,
                                                       bool fast,
                                                       bool override_guard) {
  const std::size_t n = lambdas.size();
  if (n == 0) throw ValidationError("enumerate_candidates: empty pool");
  if (!fast && n > 20 && !override_guard)
    throw ValidationError("enumerate_candidates: N > 20 needs override");

  std::vector<CandidateEquilibrium> out;
  if (fast) {
    // Stable supports are prefixes of the sorted order (persistence
    // propagates upwards in rank), so prefixes + singletons cover them.
    for (std::size_t r = 0; r < n; ++r) out.push_back(classify_candidate(lambdas, {r}));
    for (std::size_t k = 2; k <= n; ++k) {
      std::vector<std::size_t> prefix(k);
      for (std::size_t r = 0; r < k; ++r) prefix[r] = r;
      out.push_back(classify_candidate(lambdas, std::move(prefix)));
    }
  } else {
    const std::uint64_t total = (1ull << n) - 1;
    for (std::uint64_t mask = 1; mask <= total; ++mask) {
      std::vector<std::size_t> subset;
      for (std::size_t r = 0; r < n; ++r)
        if (mask & (1ull << r)) subset.push_back(r);
      out.push_back(classify_candidate(lambdas, std::move(subset)));
    }
  }
  return out;
}

}  // namespace invrep::equilibrium
