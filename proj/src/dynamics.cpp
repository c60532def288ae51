#include "invrep/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "invrep/kernels.hpp"

namespace invrep::dynamics {

Eigen::VectorXd rhs(const SimplexState& z, const FitnessVector& lambdas,
                    double theta) {
  if (z.size() != lambdas.size())
    throw ValidationError("rhs: dimension mismatch");
  const auto& ops = kernels::active();
  const std::size_t n = z.size();
  const double q = ops.mean_fitness(lambdas.sorted().data(), z.z.data(), n);
  Eigen::VectorXd out(static_cast<Eigen::Index>(n));
  ops.rhs(lambdas.sorted().data(), z.z.data(), n, q, out.data());
  if (theta != 1.0) out *= theta;
  return out;
}

Trajectory integrate(const SimplexState& z0, const FitnessVector& lambdas,
                     double t_max, const StepControl& ctl) {
  const std::size_t n = lambdas.size();
  if (z0.size() != n) throw ValidationError("integrate: dimension mismatch");
  if (!ctl.boundary_allowed) {
    for (Eigen::Index i = 0; i < z0.z.size(); ++i) {
      if (z0.z[i] <= 0.0)
        throw ValidationError("integrate: boundary start needs boundary_allowed");
    }
  }

  const auto& ops = kernels::active();
  const double* lam = lambdas.sorted().data();
  const double h = ctl.h;

  Trajectory traj;
  Eigen::VectorXd z = z0.z;
  Eigen::VectorXd k1(z.size()), k2(z.size()), k3(z.size()), k4(z.size()), tmp(z.size());

  auto eval = [&](const Eigen::VectorXd& s, Eigen::VectorXd& out) {
    const double q = ops.mean_fitness(lam, s.data(), n);
    ops.rhs(lam, s.data(), n, q, out.data());
    if (ctl.theta != 1.0) out *= ctl.theta;
  };

  auto record = [&](double t) {
    traj.times.push_back(t);
    traj.states.push_back(z);
    traj.q_series.push_back(ops.mean_fitness(lam, z.data(), n));
  };

  record(z0.tau);
  double t = z0.tau;
  int quiet_steps = 0;
  std::size_t step = 0;
  traj.terminated_by = Termination::t_max;

  while (t < z0.tau + t_max - 0.5 * h) {
    eval(z, k1);
    tmp = z + (0.5 * h) * k1;
    eval(tmp, k2);
    tmp = z + (0.5 * h) * k2;
    eval(tmp, k3);
    tmp = z + h * k3;
    eval(tmp, k4);
    ops.rk4_combine(z.data(), k1.data(), k2.data(), k3.data(), k4.data(), n, h,
                    z.data());

    double s = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      if (z[i] < 0.0) {
        if (z[i] < -kSimplexTol) {
          traj.terminated_by = Termination::error;
          record(t + h);
          throw NumericalError("integrate: state left the simplex at t=" +
                               std::to_string(t) + ", z_" + std::to_string(i) +
                               "=" + std::to_string(z[i]));
        }
        z[i] = 0.0;
      }
      s += z[i];
    }
    z /= s;
    t += h;
    ++step;

    eval(z, k1);
    const double resid = k1.cwiseAbs().maxCoeff();
    quiet_steps = (resid < ctl.conv_tol) ? quiet_steps + 1 : 0;

    const bool done = quiet_steps >= ctl.conv_window;
    if (ctl.record_stride != 0 && step % ctl.record_stride == 0 && !done) record(t);
    if (done) {
      record(t);
      traj.terminated_by = Termination::converged;
      return traj;
    }
  }
  if (traj.times.back() != t) record(t);
  return traj;
}

Eigen::MatrixXd jacobian_at(const SimplexState& z, const FitnessVector& lambdas) {
  const auto n = static_cast<Eigen::Index>(lambdas.size());
  const double q = mean_fitness(z, lambdas);
  Eigen::MatrixXd jac(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double li = lambdas.lambda(static_cast<std::size_t>(i));
    const double zi = z.z[i];
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) {
        jac(i, i) = li * (1.0 - zi) - q - 2.0 * li * zi * (1.0 - zi);
      } else {
        const double lj = lambdas.lambda(static_cast<std::size_t>(j));
        jac(i, j) = -lj * zi * (1.0 - 2.0 * z.z[j]);
      }
    }
  }
  return jac;
}

StabilityReport classify_stability(const EquilibriumResult& eq,
                                   const FitnessVector& lambdas) {
  const std::size_t n = lambdas.size();
  StabilityReport rep;
  rep.jacobian = jacobian_at(SimplexState{eq.z_star, 0.0}, lambdas);

  std::vector<bool> in_support(n, false);
  for (std::size_t r : eq.support) in_support[r] = true;

  for (std::size_t r = 0; r < n; ++r) {
    if (!in_support[r])
      rep.eigenvalue_real_parts.push_back(lambdas.lambda(r) - eq.q_star);
  }
  if (eq.support.size() >= 2) {
    const auto k = static_cast<Eigen::Index>(eq.support.size());
    Eigen::MatrixXd block(k, k);
    for (Eigen::Index a = 0; a < k; ++a)
      for (Eigen::Index b = 0; b < k; ++b)
        block(a, b) = rep.jacobian(static_cast<Eigen::Index>(eq.support[a]),
                                   static_cast<Eigen::Index>(eq.support[b]));
    Eigen::EigenSolver<Eigen::MatrixXd> es(block, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
      throw NumericalError("classify_stability: eigensolver failed");
    for (Eigen::Index a = 0; a < k; ++a)
      rep.eigenvalue_real_parts.push_back(es.eigenvalues()[a].real());
  }

  bool any_pos = false, any_marginal = false;
  for (double re : rep.eigenvalue_real_parts) {
    if (re > kStabilityTol) any_pos = true;
    else if (re >= -kStabilityTol) any_marginal = true;
  }
  rep.verdict = any_pos      ? StabilityReport::Verdict::unstable
                : any_marginal ? StabilityReport::Verdict::marginal
                               : StabilityReport::Verdict::stable;
  return rep;
}

double lyapunov_potential(const SimplexState& z, const FitnessVector& lambdas) {
  return kernels::active().potential(lambdas.sorted().data(), z.z.data(),
                                     lambdas.size());
}

std::vector<std::size_t> survivors(const Trajectory& traj, double cutoff) {
  std::vector<std::size_t> out;
  const Eigen::VectorXd& zf = traj.final_state();
  for (Eigen::Index i = 0; i < zf.size(); ++i)
    if (zf[i] > cutoff) out.push_back(static_cast<std::size_t>(i));
  return out;
}

}  // namespace invrep::dynamics
