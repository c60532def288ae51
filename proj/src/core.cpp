#include "invrep/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "invrep/kernels.hpp"

namespace invrep {

FitnessVector::FitnessVector(std::vector<double> lambdas) {
  std::vector<SpeciesId> ids(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) ids[i] = std::to_string(i + 1);
  build(std::move(ids), std::move(lambdas));
}

FitnessVector::FitnessVector(std::vector<SpeciesId> ids, std::vector<double> lambdas) {
  if (ids.size() != lambdas.size())
    throw ValidationError("FitnessVector: ids/lambdas size mismatch");
  build(std::move(ids), std::move(lambdas));
}

void FitnessVector::build(std::vector<SpeciesId> ids, std::vector<double> lambdas) {
  const std::size_t n = lambdas.size();
  for (double l : lambdas) {
    if (!std::isfinite(l)) throw ValidationError("FitnessVector: non-finite trait");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (ids[i] == ids[j])
        throw ValidationError("FitnessVector: duplicate species id '" + ids[i] + "'");
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return lambdas[a] > lambdas[b]; });

  sorted_.resize(n);
  ids_.resize(n);
  rank_to_orig_ = order;
  orig_to_rank_.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    sorted_[r] = lambdas[order[r]];
    ids_[r] = ids[order[r]];
    orig_to_rank_[order[r]] = r;
  }
}

bool FitnessVector::all_positive() const {
  return std::all_of(sorted_.begin(), sorted_.end(), [](double l) { return l > 0.0; });
}

bool FitnessVector::all_negative() const {
  return std::all_of(sorted_.begin(), sorted_.end(), [](double l) { return l < 0.0; });
}

FitnessVector FitnessVector::with_added(const SpeciesId& id, double lambda) const {
  std::vector<SpeciesId> ids = ids_;
  std::vector<double> lams = sorted_;
  ids.push_back(id);
  lams.push_back(lambda);
  return FitnessVector(std::move(ids), std::move(lams));
}

FitnessVector FitnessVector::restricted_to_ranks(const std::vector<std::size_t>& ranks) const {
  std::vector<SpeciesId> ids;
  std::vector<double> lams;
  ids.reserve(ranks.size());
  lams.reserve(ranks.size());
  for (std::size_t r : ranks) {
    ids.push_back(ids_.at(r));
    lams.push_back(sorted_.at(r));
  }
  return FitnessVector(std::move(ids), std::move(lams));
}

InvasionMatrix build_invader_driven(const FitnessVector& lambdas) {
  const std::size_t n = lambdas.size();
  if (n < 1) throw ValidationError("build_invader_driven: empty trait vector");
  InvasionMatrix m;
  m.values = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) m.values(i, j) = lambdas.lambda(i);
    }
  }
  m.structure_tag = MatrixStructure::invader_driven;
  return m;
}

double mean_fitness(const SimplexState& z, const FitnessVector& lambdas) {
  if (z.size() != lambdas.size())
    throw ValidationError("mean_fitness: dimension mismatch");
  return kernels::active().mean_fitness(lambdas.sorted().data(), z.z.data(), z.size());
}

SimplexState validate_simplex(const Eigen::VectorXd& raw, double tol) {
  Eigen::VectorXd z = raw;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (!std::isfinite(z[i])) throw ValidationError("validate_simplex: non-finite entry");
    if (z[i] < -tol)
      throw ValidationError("validate_simplex: negative entry " + std::to_string(z[i]));
    if (z[i] < 0.0) z[i] = 0.0;
  }
  const double s = z.sum();
  if (std::abs(s - 1.0) > tol)
    throw ValidationError("validate_simplex: sum " + std::to_string(s) + " off the simplex");
  z /= s;
  return SimplexState{std::move(z), 0.0};
}

}  // namespace invrep
