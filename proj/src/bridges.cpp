#include "invrep/bridges.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <vector>

#include "invrep/dynamics.hpp"

namespace invrep::bridges {

const char* to_string(SISCase c) {
  switch (c) {
    case SISCase::cocolonization_susceptibility: return "cocolonization_susceptibility";
    case SISCase::cocolonization_interaction: return "cocolonization_interaction";
    default: return "coinfection_clearance";
  }
}

LVSystem to_lotka_volterra(const FitnessVector& lambdas,
                           std::optional<std::size_t> reference_rank) {
  const std::size_t n = lambdas.size();
  if (n < 2) throw ValidationError("to_lotka_volterra: need N >= 2");
  const std::size_t ref = reference_rank.value_or(0);  // fittest by default
  if (ref >= n) throw ValidationError("to_lotka_volterra: reference out of range");

  LVSystem lv;
  lv.dim = n - 1;
  lv.reference_rank = ref;
  lv.reference_id = lambdas.id(ref);
  const double lref = lambdas.lambda(ref);
  lv.shift = -lref;

  lv.r.resize(static_cast<Eigen::Index>(n - 1));
  lv.rank_one_column.resize(static_cast<Eigen::Index>(n - 1));
  lv.A.resize(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n - 1));
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == ref) continue;
    const double li = lambdas.lambda(i);
    lv.r[row] = li;
    lv.rank_one_column[row] = li - lref;
    ++row;
  }
  for (Eigen::Index a = 0; a < lv.A.rows(); ++a)
    for (Eigen::Index b = 0; b < lv.A.cols(); ++b)
      lv.A(a, b) = (a == b) ? lv.shift : lv.rank_one_column[a];
  return lv;
}

double rank_one_defect(const LVSystem& lv) {
  if (lv.dim < 2) return 0.0;
  Eigen::MatrixXd residual = lv.A;
  residual.diagonal() += lv.r;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual);
  const auto& s = svd.singularValues();
  return s[0] > 0.0 ? s[1] / s[0] : 0.0;
}

Eigen::VectorXd lv_to_simplex(const LVSystem& lv, const Eigen::VectorXd& y) {
  if (static_cast<std::size_t>(y.size()) != lv.dim)
    throw ValidationError("lv_to_simplex: dimension mismatch");
  const double denom = 1.0 + y.sum();
  Eigen::VectorXd z(static_cast<Eigen::Index>(lv.dim + 1));
  Eigen::Index row = 0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (static_cast<std::size_t>(i) == lv.reference_rank) {
      z[i] = 1.0 / denom;
    } else {
      z[i] = y[row++] / denom;
    }
  }
  return z;
}

Eigen::VectorXd simplex_to_lv(const LVSystem& lv, const Eigen::VectorXd& z) {
  if (static_cast<std::size_t>(z.size()) != lv.dim + 1)
    throw ValidationError("simplex_to_lv: dimension mismatch");
  const double zref = z[static_cast<Eigen::Index>(lv.reference_rank)];
  if (!(zref > 0.0))
    throw ValidationError("simplex_to_lv: reference frequency must be positive");
  Eigen::VectorXd y(static_cast<Eigen::Index>(lv.dim));
  Eigen::Index row = 0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (static_cast<std::size_t>(i) != lv.reference_rank) y[row++] = z[i] / zref;
  }
  return y;
}

namespace {

// Resample a polyline at `m` equal fractions of its arc length.
std::vector<Eigen::VectorXd> resample_by_arclength(const std::vector<Eigen::VectorXd>& pts,
                                                   int m) {
  std::vector<double> cum(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i)
    cum[i] = cum[i - 1] + (pts[i] - pts[i - 1]).norm();
  const double total = cum.back();
  std::vector<Eigen::VectorXd> out;
  out.reserve(static_cast<std::size_t>(m));
  std::size_t seg = 0;
  for (int s = 0; s < m; ++s) {
    const double target = total * s / (m - 1);
    while (seg + 1 < pts.size() && cum[seg + 1] < target) ++seg;
    if (seg + 1 >= pts.size()) {
      out.push_back(pts.back());
      continue;
    }
    const double span = cum[seg + 1] - cum[seg];
    const double w = span > 0.0 ? (target - cum[seg]) / span : 0.0;
    out.push_back(pts[seg] + w * (pts[seg + 1] - pts[seg]));
  }
  return out;
}

}  // namespace

ConjugacyReport lv_replicator_conjugacy_check(const FitnessVector& lambdas,
                                              const SimplexState& z0, double t_max,
                                              std::optional<std::size_t> reference_rank) {
  const std::size_t n = lambdas.size();
  if (z0.size() != n)
    throw ValidationError("conjugacy_check: dimension mismatch");
  for (Eigen::Index i = 0; i < z0.z.size(); ++i)
    if (!(z0.z[i] > 0.0))
      throw ValidationError("conjugacy_check: interior start required");

  const LVSystem lv = to_lotka_volterra(lambdas, reference_rank);

  dynamics::StepControl ctl;
  const auto total_steps = static_cast<std::size_t>(t_max / ctl.h);
  ctl.record_stride = std::max<std::size_t>(1, total_steps / 20000);
  auto rep_traj = dynamics::integrate(z0, lambdas, t_max, ctl);

  // LV side: classic RK4 on y' = y .* (r + A y), same step size.
  ConjugacyReport rep;
  Eigen::VectorXd y = simplex_to_lv(lv, z0.z);
  std::vector<Eigen::VectorXd> lv_orbit;
  lv_orbit.push_back(lv_to_simplex(lv, y));
  auto f = [&](const Eigen::VectorXd& s) -> Eigen::VectorXd {
    return s.cwiseProduct(lv.r + lv.A * s);
  };
  const double h = ctl.h;
  double t = 0.0;
  int quiet = 0;
  std::size_t step = 0;
  while (t < t_max - 0.5 * h) {
    const Eigen::VectorXd k1 = f(y);
    const Eigen::VectorXd k2 = f(y + (0.5 * h) * k1);
    const Eigen::VectorXd k3 = f(y + (0.5 * h) * k2);
    const Eigen::VectorXd k4 = f(y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
    ++step;
    if (!y.allFinite() || y.cwiseAbs().maxCoeff() > 1e8) {
      rep.lv_blow_up = true;
      break;
    }
    y = y.cwiseMax(0.0);
    if (step % ctl.record_stride == 0) lv_orbit.push_back(lv_to_simplex(lv, y));
    quiet = (f(y).cwiseAbs().maxCoeff() < ctl.conv_tol) ? quiet + 1 : 0;
    if (quiet >= ctl.conv_window) break;
  }
  rep.lv_t_reached = t;
  if (!rep.lv_blow_up) lv_orbit.push_back(lv_to_simplex(lv, y));

  const int m = 512;
  auto a = resample_by_arclength(rep_traj.states, m);
  auto b = resample_by_arclength(lv_orbit, m);
  for (int s = 0; s < m; ++s)
    rep.max_orbit_discrepancy = std::max(rep.max_orbit_discrepancy, (a[s] - b[s]).norm());
  rep.fixed_point_gap =
      (rep_traj.final_state() - lv_orbit.back()).cwiseAbs().maxCoeff();
  return rep;
}

SISTraits sis_traits_from_lambdas(const FitnessVector& lambdas, SISCase case_tag,
                                  double mu, double c) {
  const auto n = static_cast<Eigen::Index>(lambdas.size());
  if (n < 2) throw ValidationError("sis_traits_from_lambdas: need N >= 2");

  SISTraits tr;
  tr.case_tag = case_tag;
  tr.mu = mu;
  tr.c = c;
  tr.trait_matrix.resize(n, n);

  switch (case_tag) {
    case SISCase::cocolonization_interaction: {
      if (!(mu > 0.0))
        throw ValidationError("sis_traits_from_lambdas: mu must be positive");
      for (Eigen::Index i = 0; i < n; ++i) {
        const double base = (c - lambdas.lambda(static_cast<std::size_t>(i))) / mu;
        for (Eigen::Index j = 0; j < n; ++j)
          tr.trait_matrix(i, j) = (i == j) ? (mu + 1.0) * base - c : base;
      }
      return tr;
    }
    case SISCase::coinfection_clearance: {
      const double l1 = lambdas.lambda(0);
      for (Eigen::Index i = 0; i < n; ++i) {
        const double li = lambdas.lambda(static_cast<std::size_t>(i));
        for (Eigen::Index j = 0; j < n; ++j) {
          const double lj = lambdas.lambda(static_cast<std::size_t>(j));
          tr.trait_matrix(i, j) =
              (i == j) ? c + 0.5 * (l1 - li) : c + 0.5 * (l1 - (li + lj));
        }
      }
      return tr;
    }
    default:
      throw ValidationError(
          "sis_traits_from_lambdas: the susceptibility case has no constructor "
          "(verification direction only)");
  }
}

InvasionMatrix lambdas_from_sis_traits(const SISTraits& traits, const ThetaWeights& theta) {
  const Eigen::Index n = traits.trait_matrix.rows();
  if (n != traits.trait_matrix.cols() || n < 2)
    throw ValidationError("lambdas_from_sis_traits: trait matrix must be square, N >= 2");
  const Eigen::MatrixXd& M = traits.trait_matrix;

  InvasionMatrix out;
  out.values = Eigen::MatrixXd::Zero(n, n);
  out.structure_tag = MatrixStructure::general;

  switch (traits.case_tag) {
    case SISCase::cocolonization_susceptibility: {
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
          if (i != j && std::abs(M(i, j) - (M(i, i) + M(j, j))) > kNumericTol)
            throw ValidationError(
                "lambdas_from_sis_traits: susceptibility symmetry violated");
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
          if (i != j) out.values(i, j) = theta.theta5 * M(i, i);
      break;
    }
    case SISCase::cocolonization_interaction: {
      const double mu = traits.mu;
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
          if (i != j)
            out.values(i, j) =
                theta.theta5 * (mu * (M(j, i) - M(i, j)) + M(j, i) - M(j, j));
      break;
    }
    case SISCase::coinfection_clearance: {
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
          if (i != j)
            out.values(i, j) = theta.theta3 * (-M(i, j) - M(j, i) + 2.0 * M(j, j));
      break;
    }
  }

  // Tag invader-driven structure when every row is constant off-diagonal.
  bool invader_driven = true;
  for (Eigen::Index i = 0; i < n && invader_driven; ++i) {
    double row_val = 0.0;
    bool first = true;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      if (first) {
        row_val = out.values(i, j);
        first = false;
      } else if (std::abs(out.values(i, j) - row_val) > kNumericTol) {
        invader_driven = false;
        break;
      }
    }
  }
  if (invader_driven) out.structure_tag = MatrixStructure::invader_driven;
  return out;
}

}  // namespace invrep::bridges
