#include "invrep/negative.hpp"

#include <cmath>

#include "invrep/equilibrium.hpp"

namespace invrep::negative {

const char* to_string(Certificate c) {
  switch (c) {
    case Certificate::n2_threshold: return "n2_threshold";
    case Certificate::cone_condition: return "cone_condition";
    case Certificate::necessary_violation: return "necessary_violation";
    default: return "none";
  }
}

namespace {

constexpr double kWinnerCutoff = 1.0 - 1e-6;

void require_all_negative(const FitnessVector& lambdas, const char* where) {
  if (lambdas.size() == 0 || !lambdas.all_negative())
    throw ValidationError(std::string(where) + ": all traits must be negative");
}

}  // namespace

double n2_basin_threshold(double lambda1, double lambda2) {
  if (!(lambda1 < 0.0) || !(lambda2 < lambda1))
    throw ValidationError("n2_basin_threshold: need 0 > lambda1 > lambda2");
  return lambda1 / (lambda1 + lambda2);
}

BasinPrediction cone_certificate(const SimplexState& z0, const FitnessVector& lambdas) {
  require_all_negative(lambdas, "cone_certificate");
  if (z0.size() != lambdas.size())
    throw ValidationError("cone_certificate: dimension mismatch");

  BasinPrediction pred;
  const double z1 = z0.z[0];
  const double l1 = lambdas.lambda(0);
  for (std::size_t j = 1; j < lambdas.size(); ++j) {
    const double zj = z0.z[static_cast<Eigen::Index>(j)];
    // z1/zj >= l1/lj with zj, lj > 0-free signs: lj < 0 so cross-multiply
    // by zj > 0 and compare against the positive ratio l1/lj.
    if (zj <= 0.0) continue;  // vacuously inside along this face
    if (z1 / zj < l1 / lambdas.lambda(j)) return pred;  // undetermined
  }
  pred.winner = lambdas.id(0);
  pred.certificate = Certificate::cone_condition;
  return pred;
}

BasinPrediction predict_winner(const SimplexState& z0, const FitnessVector& lambdas) {
  require_all_negative(lambdas, "predict_winner");
  if (z0.size() != lambdas.size())
    throw ValidationError("predict_winner: dimension mismatch");

  if (lambdas.size() == 2) {
    const double thr = n2_basin_threshold(lambdas.lambda(0), lambdas.lambda(1));
    BasinPrediction pred;
    pred.threshold_value = thr;
    if (z0.z[0] > thr) {
      pred.winner = lambdas.id(0);
      pred.certificate = Certificate::n2_threshold;
    } else if (z0.z[0] < thr) {
      pred.winner = lambdas.id(1);
      pred.certificate = Certificate::n2_threshold;
    }  // exactly at the threshold: stationary, undetermined winner
    return pred;
  }

  BasinPrediction cone = cone_certificate(z0, lambdas);
  if (cone.winner) return cone;

  // Necessary-dominance exclusion: species i > 1 can only win if
  // z_j/z_i < lambda_j/lambda_i for every j < i. If that prerequisite fails
  // for all i > 1, the fittest species must be the survivor. (Because the
  // trait ratios chain multiplicatively this can only trigger on the cone's
  // boundary, where the strict cone test above just missed.)
  bool any_contender = false;
  for (std::size_t i = 1; i < lambdas.size() && !any_contender; ++i) {
    if (necessary_dominance_holds(z0, lambdas, i)) any_contender = true;
  }
  BasinPrediction pred;
  if (!any_contender) {
    pred.winner = lambdas.id(0);
    pred.certificate = Certificate::necessary_violation;
  }
  return pred;
}

bool necessary_dominance_holds(const SimplexState& z0, const FitnessVector& lambdas,
                               std::size_t winner) {
  require_all_negative(lambdas, "necessary_dominance_holds");
  if (winner >= lambdas.size())
    throw ValidationError("necessary_dominance_holds: rank out of range");
  const double zi = z0.z[static_cast<Eigen::Index>(winner)];
  if (zi <= 0.0) return false;
  for (std::size_t j = 0; j < winner; ++j) {
    const double zj = z0.z[static_cast<Eigen::Index>(j)];
    if (!(zj / zi < lambdas.lambda(j) / lambdas.lambda(winner))) return false;
  }
  return true;
}

std::optional<std::size_t> ode_winner(const SimplexState& z0,
                                      const FitnessVector& lambdas, double t_max) {
  dynamics::StepControl ctl;
  ctl.record_stride = 0;
  ctl.boundary_allowed = true;
  auto traj = dynamics::integrate(z0, lambdas, t_max, ctl);
  const Eigen::VectorXd& zf = traj.final_state();
  for (Eigen::Index i = 0; i < zf.size(); ++i) {
    if (zf[i] > kWinnerCutoff) return static_cast<std::size_t>(i);
  }
  return std::nullopt;
}

double bisect_n2_boundary(const FitnessVector& lambdas, int iterations, double t_max) {
  require_all_negative(lambdas, "bisect_n2_boundary");
  if (lambdas.size() != 2)
    throw ValidationError("bisect_n2_boundary: N = 2 only");

  auto winner_at = [&](double z1) {
    Eigen::VectorXd z(2);
    z << z1, 1.0 - z1;
    return ode_winner(SimplexState{z, 0.0}, lambdas, t_max);
  };

  double lo = 1e-6, hi = 1.0 - 1e-6;
  const auto at_lo = winner_at(lo), at_hi = winner_at(hi);
  if (!at_lo || !at_hi || *at_lo != 1 || *at_hi != 0)
    throw NumericalError("bisect_n2_boundary: endpoints do not bracket");
  for (int it = 0; it < iterations && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    const auto w = winner_at(mid);
    // No winner: the start is stationary within the integrator's resolution,
    // i.e. it sits on the boundary itself.
    if (!w) return mid;
    (*w == 0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

StabilityAudit negative_stability_audit(const FitnessVector& lambdas) {
  require_all_negative(lambdas, "negative_stability_audit");

  StabilityAudit audit;
  audit.all_vertices_stable = true;
  audit.all_multispecies_unstable = true;

  const bool fast = lambdas.size() > 20;
  const auto candidates = equilibrium::enumerate_candidates(lambdas, fast);
  for (const auto& c : candidates) {
    if (c.subset.size() >= 2 && !c.feasible) continue;

    EquilibriumResult eq;
    eq.k = c.subset.size();
    eq.q_star = c.q_value;
    eq.support = c.subset;
    eq.z_star = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(lambdas.size()));
    for (std::size_t r : c.subset) {
      eq.support_ids.push_back(lambdas.id(r));
      eq.z_star[static_cast<Eigen::Index>(r)] =
          (eq.k == 1) ? 1.0 : 1.0 - c.q_value / lambdas.lambda(r);
    }

    auto rep = dynamics::classify_stability(eq, lambdas);
    StabilityAuditEntry entry;
    entry.support = c.subset;
    entry.stable = rep.verdict == dynamics::StabilityReport::Verdict::stable;
    entry.eigenvalue_real_parts = rep.eigenvalue_real_parts;
    if (eq.k == 1) {
      audit.all_vertices_stable = audit.all_vertices_stable && entry.stable;
      audit.vertices.push_back(std::move(entry));
    } else {
      audit.all_multispecies_unstable = audit.all_multispecies_unstable && !entry.stable;
      audit.multispecies.push_back(std::move(entry));
    }
  }
  return audit;
}

}  // namespace invrep::negative
