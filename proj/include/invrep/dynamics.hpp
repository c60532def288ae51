#ifndef INVREP_DYNAMICS_HPP
#define INVREP_DYNAMICS_HPP

#include <vector>

#include "invrep/core.hpp"

namespace invrep::dynamics {

enum class Termination { t_max, converged, error };

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<double> q_series;
  Termination terminated_by = Termination::t_max;

  const Eigen::VectorXd& final_state() const { return states.back(); }
  double final_time() const { return times.back(); }
};

struct StepControl {
  double h = 0.01;
  double conv_tol = 1e-10;      // max_i |zdot_i| below this ...
  int conv_window = 10;         // ... for this many consecutive steps
  double theta = 1.0;           // optional time rescaling of the RHS
  bool boundary_allowed = false;
  // Store every record_stride-th step (plus first and last). 0 = only endpoints.
  std::size_t record_stride = 1;
};

struct StabilityReport {
  Eigen::MatrixXd jacobian;
  std::vector<double> eigenvalue_real_parts;
  enum class Verdict { stable, unstable, marginal } verdict;
};

/// zdot_i = theta * z_i (lambda_i (1 - z_i) - Q(z)). theta defaults to 1.
Eigen::VectorXd rhs(const SimplexState& z, const FitnessVector& lambdas,
                    double theta = 1.0);

/// Fixed-step RK4 with per-step renormalization onto the simplex.
Trajectory integrate(const SimplexState& z0, const FitnessVector& lambdas,
                     double t_max, const StepControl& ctl = {});

/// Analytic Jacobian of the RHS (theta = 1).
Eigen::MatrixXd jacobian_at(const SimplexState& z, const FitnessVector& lambdas);

/// Transverse eigenvalues lambda_i - Q* analytically; on-support block via a
/// dense eigensolver. Singleton supports contribute only the radial zero,
/// which is excluded from the verdict.
StabilityReport classify_stability(const EquilibriumResult& eq,
                                   const FitnessVector& lambdas);

/// Phi(z) = sum_i (lambda_i z_i - lambda_i z_i^2 / 2); non-decreasing along
/// trajectories for positive pools.
double lyapunov_potential(const SimplexState& z, const FitnessVector& lambdas);

/// Species with final frequency above the cutoff (ranks, ascending).
std::vector<std::size_t> survivors(const Trajectory& traj,
                                   double cutoff = kExtinctionCutoff);

inline const char* to_string(StabilityReport::Verdict v) {
  switch (v) {
    case StabilityReport::Verdict::stable: return "stable";
    case StabilityReport::Verdict::unstable: return "unstable";
    default: return "marginal";
  }
}

}  // namespace invrep::dynamics

#endif
