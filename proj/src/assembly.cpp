#include "invrep/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "invrep/equilibrium.hpp"

namespace invrep::assembly {

const char* to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::augmentation_less_fit: return "augmentation_less_fit";
    case OutcomeKind::augmentation_fitter: return "augmentation_fitter";
    case OutcomeKind::rejection: return "rejection";
    case OutcomeKind::replacement_invader_least_fit:
      return "replacement_invader_least_fit";
    default: return "replacement_resident_least_fit";
  }
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1/x with non-positive denominators mapped to +inf (empty upper bound).
double safe_inv(double denom) { return denom > 0.0 ? 1.0 / denom : kInf; }

EquilibriumResult singleton_equilibrium(const FitnessVector& community) {
  EquilibriumResult eq;
  eq.k = 1;
  eq.q_star = 0.0;
  eq.support = {0};
  eq.support_ids = {community.id(0)};
  eq.z_star = Eigen::VectorXd::Zero(1);
  eq.z_star[0] = 1.0;
  eq.stability = Stability::stable;
  return eq;
}

}  // namespace

InvasionOutcome classify_invader(const EquilibriumResult& residents,
                                 const FitnessVector& lambdas, double lambda_new,
                                 const SpeciesId& invader_id, double tol) {
  if (!(lambda_new > 0.0))
    throw ValidationError("classify_invader: invader trait must be positive");
  const std::size_t k = residents.k;
  if (k == 0 || k > lambdas.size())
    throw ValidationError("classify_invader: residents not an equilibrium of the pool");

  // Support traits are the top-k prefix of the sorted pool.
  std::vector<double> lam(k);
  std::vector<double> prefix_inv(k + 1, 0.0);  // prefix_inv[j] = sum_{i<j} 1/lam_i
  for (std::size_t i = 0; i < k; ++i) {
    lam[i] = lambdas.lambda(i);
    if (!(lam[i] > 0.0))
      throw ValidationError("classify_invader: resident pool must be positive");
    prefix_inv[i + 1] = prefix_inv[i] + 1.0 / lam[i];
  }
  const double q_k = (k == 1) ? 0.0 : static_cast<double>(k - 1) / prefix_inv[k];
  const double u_k = safe_inv(static_cast<double>(k) / lam[k - 1] - prefix_inv[k]);

  Thresholds th;
  th.q_star_k = q_k;
  th.u_k = u_k;

  // Interval scan; the boundaries chain (U_{k'} equals V_{k'-1}), so the
  // positive axis is partitioned up to the degenerate boundary points.
  struct Match {
    OutcomeKind kind;
    std::size_t kprime;  // surviving old prefix depth (k for non-replacement)
  };
  std::vector<Match> matches;
  auto degenerate = [&](double b) {
    if (std::isfinite(b) && std::abs(lambda_new - b) <= tol)
      throw DegenerateThresholdError(
          "classify_invader: invader trait within tol of threshold " +
          std::to_string(b));
  };

  degenerate(q_k);
  degenerate(lam[k - 1]);
  degenerate(u_k);
  if (lambda_new < q_k) matches.push_back({OutcomeKind::rejection, k});
  if (q_k < lambda_new && lambda_new < lam[k - 1])
    matches.push_back({OutcomeKind::augmentation_less_fit, k});
  if (lam[k - 1] < lambda_new && lambda_new < u_k)
    matches.push_back({OutcomeKind::augmentation_fitter, k});

  for (std::size_t kp = k - 1; kp >= 1 && k >= 2; --kp) {
    const double v = safe_inv(static_cast<double>(kp) / lam[kp] - prefix_inv[kp]);
    const double t = safe_inv(static_cast<double>(kp) / lam[kp - 1] - prefix_inv[kp]);
    const double w = std::max(lam[kp - 1], v);
    degenerate(v);
    degenerate(t);
    degenerate(lam[kp - 1]);
    if (v < lambda_new && lambda_new < lam[kp - 1]) {
      matches.push_back({OutcomeKind::replacement_invader_least_fit, kp});
      th.v_kprime = v;
      th.w_kprime = w;
      th.kprime = kp;
    }
    if (w < lambda_new && lambda_new < t) {
      matches.push_back({OutcomeKind::replacement_resident_least_fit, kp});
      th.v_kprime = v;
      th.w_kprime = w;
      th.kprime = kp;
    }
    if (kp == 1) break;
  }

  if (matches.size() != 1)
    throw NumericalError("classify_invader: " + std::to_string(matches.size()) +
                         " interval matches for trait " + std::to_string(lambda_new));
  const Match m = matches.front();

  InvasionOutcome out;
  out.kind = m.kind;
  out.thresholds = th;

  std::vector<std::size_t> support_ranks(residents.support);
  const FitnessVector support_fv = lambdas.restricted_to_ranks(support_ranks);

  if (m.kind == OutcomeKind::rejection) {
    out.new_community = support_fv;
    out.new_equilibrium =
        (k == 1) ? singleton_equilibrium(support_fv)
                 : equilibrium::select_support(support_fv, tol);
    return out;
  }

  const FitnessVector pooled = support_fv.with_added(invader_id, lambda_new);
  out.new_community = pooled;
  out.new_equilibrium = equilibrium::select_support(pooled, tol);

  // The interval decision must agree with the threshold-rule oracle on the
  // pooled community.
  const std::size_t expected_k =
      (m.kind == OutcomeKind::augmentation_less_fit ||
       m.kind == OutcomeKind::augmentation_fitter)
          ? k + 1
          : m.kprime + 1;
  if (out.new_equilibrium.k != expected_k)
    throw NumericalError("classify_invader: interval case predicts support " +
                         std::to_string(expected_k) + " but threshold rule gives " +
                         std::to_string(out.new_equilibrium.k));
  const auto& new_ids = out.new_equilibrium.support_ids;
  if (std::find(new_ids.begin(), new_ids.end(), invader_id) == new_ids.end())
    throw NumericalError("classify_invader: accepted invader missing from new support");

  for (std::size_t r = 0; r < support_fv.size(); ++r) {
    const SpeciesId& id = support_fv.id(r);
    if (std::find(new_ids.begin(), new_ids.end(), id) == new_ids.end())
      out.removed.push_back(id);
  }
  return out;
}

AssemblyLog assemble_sequence(const FitnessVector& initial,
                              const std::vector<double>& invaders) {
  for (std::size_t r = 0; r < initial.size(); ++r) {
    if (!(initial.lambda(r) > 0.0))
      throw ValidationError("assemble_sequence: traits must be positive");
  }

  AssemblyLog log;
  FitnessVector community = initial;
  EquilibriumResult eq;
  bool empty = community.size() == 0;
  if (!empty) {
    if (community.size() == 1) {
      eq = singleton_equilibrium(community);
    } else {
      eq = equilibrium::select_support(community);
      if (eq.k != community.size()) {
        // Drop the unsupported tail so subsequent support ranks stay aligned.
        community = community.restricted_to_ranks(eq.support);
        eq = equilibrium::select_support(community);
      }
    }
  }

  std::size_t next_label = initial.size() + 1;
  for (std::size_t s = 0; s < invaders.size(); ++s) {
    const double trait = invaders[s];
    if (!(trait > 0.0))
      throw ValidationError("assemble_sequence: traits must be positive");
    const SpeciesId inv_id = "inv" + std::to_string(next_label++);

    if (empty) {
      community = FitnessVector({inv_id}, {trait});
      eq = singleton_equilibrium(community);
      empty = false;
      log.steps.push_back({s, trait, OutcomeKind::augmentation_less_fit, {}, 1, 0.0});
      continue;
    }

    auto outcome = classify_invader(eq, community, trait, inv_id);
    community = outcome.new_community.restricted_to_ranks(outcome.new_equilibrium.support);
    eq = (community.size() == 1) ? singleton_equilibrium(community)
                                 : equilibrium::select_support(community);
    log.steps.push_back({s, trait, outcome.kind, outcome.removed, eq.k, eq.q_star});
  }

  log.final_community = community;
  log.final_equilibrium = eq;
  return log;
}

AssemblyLog assemble_sequence(const std::vector<double>& invaders) {
  return assemble_sequence(FitnessVector(std::vector<double>{}), invaders);
}

std::vector<SaturationPoint> saturation_gap(const FitnessVector& lambdas,
                                            const std::vector<std::size_t>& prefix_range) {
  if (!lambdas.all_positive())
    throw ValidationError("saturation_gap: traits must be positive");
  std::vector<SaturationPoint> out;
  for (std::size_t k : prefix_range) {
    if (k < 1 || k > lambdas.size())
      throw ValidationError("saturation_gap: prefix out of range");
    out.push_back({k, lambdas.lambda(k - 1) - equilibrium::q_star_prefix(lambdas, k)});
  }
  return out;
}

}  // namespace invrep::assembly
