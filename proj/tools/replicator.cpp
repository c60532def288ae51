// replicator: command-line front end for the invader-driven replicator
// library. One binary, one subcommand per module. Exit codes: 0 success,
// 1 usage, 2 validation, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "invrep/assembly.hpp"
#include "invrep/bridges.hpp"
#include "invrep/coexistence.hpp"
#include "invrep/core.hpp"
#include "invrep/dynamics.hpp"
#include "invrep/empirics.hpp"
#include "invrep/equilibrium.hpp"
#include "invrep/io.hpp"
#include "invrep/negative.hpp"
#include "invrep/rng.hpp"

namespace {

using invrep::FitnessVector;
using invrep::SimplexState;
using nlohmann::json;
namespace fs = std::filesystem;

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::ofstream out(out_path);
    if (!out) throw invrep::ValidationError("cannot write file: " + out_path);
    out << j.dump(2) << '\n';
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw invrep::ValidationError("cannot write file: " + path);
  return out;
}

json equilibrium_json(const invrep::EquilibriumResult& eq, const FitnessVector& fv) {
  json z_star = json::array();
  for (std::size_t r = 0; r < fv.size(); ++r) {
    z_star.push_back({{"id", fv.id(r)},
                      {"lambda", fv.lambda(r)},
                      {"z", eq.z_star[static_cast<Eigen::Index>(r)]}});
  }
  return {{"k", eq.k},
          {"q_star", eq.q_star},
          {"stability", invrep::to_string(eq.stability)},
          {"support", eq.support},
          {"support_ids", eq.support_ids},
          {"z_star", z_star}};
}

Eigen::VectorXd initial_state(const std::string& z0_spec, const FitnessVector& fv,
                              std::uint64_t seed) {
  const auto n = static_cast<Eigen::Index>(fv.size());
  if (z0_spec == "uniform") return Eigen::VectorXd::Constant(n, 1.0 / n);
  if (z0_spec == "random") {
    // Uniform on the simplex: normalized exponentials.
    invrep::CounterRng rng(seed, 11);
    Eigen::VectorXd z(n);
    for (Eigen::Index i = 0; i < n; ++i) z[i] = -std::log(1.0 - rng.next_double());
    return z / z.sum();
  }
  const auto rows = invrep::io::read_id_value_csv(z0_spec);
  if (rows.size() != fv.size())
    throw invrep::ValidationError("--z0 file has " + std::to_string(rows.size()) +
                                  " rows, expected " + std::to_string(fv.size()));
  Eigen::VectorXd z(n);
  for (const auto& [id, v] : rows) {
    bool found = false;
    for (std::size_t r = 0; r < fv.size(); ++r) {
      if (fv.id(r) == id) {
        z[static_cast<Eigen::Index>(r)] = v;
        found = true;
        break;
      }
    }
    if (!found) throw invrep::ValidationError("--z0 species " + id + " not in pool");
  }
  return invrep::validate_simplex(z).z;
}

double normal_quantile_upper(double alpha_two_sided) {
  // z with P(|Z| > z) = alpha; bisection on erfc is plenty here.
  if (!(alpha_two_sided > 0.0) || !(alpha_two_sided < 1.0))
    throw invrep::ValidationError("--alpha must be in (0,1)");
  double lo = 0.0, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::erfc(mid / std::sqrt(2.0)) > alpha_two_sided ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

int run_equilibrium(const std::string& lambdas_path, const std::string& out,
                    const std::string& candidates_out, double tol) {
  const FitnessVector fv = invrep::io::read_lambdas(lambdas_path);
  const auto eq = invrep::equilibrium::select_support(fv, tol);
  emit(equilibrium_json(eq, fv), out);
  if (!candidates_out.empty()) {
    auto csv = open_out(candidates_out);
    csv << "subset,k,q,feasible,stable\n";
    for (const auto& c : invrep::equilibrium::enumerate_candidates(fv)) {
      csv << '"';
      for (std::size_t i = 0; i < c.subset.size(); ++i)
        csv << (i ? " " : "") << fv.id(c.subset[i]);
      csv << "\"," << c.subset.size() << ',' << invrep::io::fmt(c.q_value) << ','
          << (c.feasible ? 1 : 0) << ',' << (c.stable ? 1 : 0) << '\n';
    }
  }
  return 0;
}

int run_simulate(const std::string& lambdas_path, const std::string& z0_spec,
                 double t_max, double h, double theta, std::uint64_t seed,
                 const std::string& out, bool long_format, std::size_t stride) {
  const FitnessVector fv = invrep::io::read_lambdas(lambdas_path);
  invrep::dynamics::StepControl ctl;
  ctl.h = h;
  ctl.theta = theta;
  ctl.record_stride = stride;
  ctl.boundary_allowed = true;
  const Eigen::VectorXd z0 = initial_state(z0_spec, fv, seed);
  const auto traj = invrep::dynamics::integrate(SimplexState{z0, 0.0}, fv, t_max, ctl);
  if (out.empty())
    throw invrep::ValidationError("simulate: --out is required");
  invrep::io::write_trajectory_csv(out, traj, fv, long_format);
  std::cout << "terminated_by="
            << (traj.terminated_by == invrep::dynamics::Termination::converged
                    ? "converged"
                    : "t_max")
            << " steps=" << traj.times.size() << '\n';
  return 0;
}

void write_pmf_rows(std::ostream& os,
                    const std::vector<invrep::coexist::ProbabilityEstimate>& rows) {
  os << "k,p,stderr,ci95,method\n";
  for (const auto& e : rows) {
    const char* m = "";
    switch (e.method) {
      case invrep::coexist::Method::mc_integral: m = "integral"; break;
      case invrep::coexist::Method::ordered_simplex_mc: m = "oracle"; break;
      case invrep::coexist::Method::closed_form: m = "closed"; break;
      case invrep::coexist::Method::ode_ensemble: m = "ode"; break;
    }
    os << e.k << ',' << invrep::io::fmt(e.value) << ',' << invrep::io::fmt(e.std_error)
       << ',' << invrep::io::fmt(e.ci95_halfwidth) << ',' << m << '\n';
  }
}

int run_prob(int N, int k, bool all_k, const std::string& method,
             std::uint64_t samples, std::uint64_t seed, const std::string& out) {
  std::vector<int> ks;
  if (all_k) {
    for (int kk = 2; kk <= N; ++kk) ks.push_back(kk);
  } else {
    if (k < 0) throw invrep::ValidationError("prob: pass --k or --all-k");
    ks.push_back(k);
  }

  std::vector<invrep::coexist::ProbabilityEstimate> rows;
  if (method == "ode" || method == "rule") {
    const auto dist = method == "ode"
                          ? invrep::coexist::prob_k_ode_ensemble(N, samples, seed)
                          : invrep::coexist::prob_k_threshold_ensemble(N, samples, seed);
    for (int kk : ks) rows.push_back(dist.pmf.at(kk));
  } else {
    for (int kk : ks) {
      if (method == "integral") {
        rows.push_back(invrep::coexist::prob_k_integral(N, kk, samples, seed));
      } else if (method == "oracle") {
        rows.push_back(invrep::coexist::prob_k_ordered_oracle(N, kk, samples, seed));
      } else if (method == "closed") {
        const auto v = invrep::coexist::closed_form_prob(N, kk);
        if (!v)
          throw invrep::ValidationError("prob: no closed form for N=" +
                                        std::to_string(N) + ", k=" + std::to_string(kk));
        invrep::coexist::ProbabilityEstimate e;
        e.k = kk;
        e.N = N;
        e.value = *v;
        e.method = invrep::coexist::Method::closed_form;
        rows.push_back(e);
      } else {
        throw invrep::ValidationError("prob: unknown method " + method);
      }
    }
  }
  if (out.empty()) {
    write_pmf_rows(std::cout, rows);
  } else {
    auto os = open_out(out);
    write_pmf_rows(os, rows);
  }
  return 0;
}

int run_invade(const std::string& residents_path, double invader, double tol,
               const std::string& out) {
  const FitnessVector fv = invrep::io::read_lambdas(residents_path);
  invrep::EquilibriumResult eq;
  if (fv.size() == 1) {
    eq.k = 1;
    eq.q_star = 0.0;
    eq.support = {0};
    eq.support_ids = {fv.id(0)};
    eq.z_star = Eigen::VectorXd::Ones(1);
  } else {
    eq = invrep::equilibrium::select_support(fv, tol);
  }
  const auto outcome = invrep::assembly::classify_invader(eq, fv, invader, "invader", tol);

  json th = {{"q_star_k", outcome.thresholds.q_star_k}, {"u_k", outcome.thresholds.u_k}};
  th["v_kprime"] =
      outcome.thresholds.v_kprime ? json(*outcome.thresholds.v_kprime) : json(nullptr);
  th["w_kprime"] =
      outcome.thresholds.w_kprime ? json(*outcome.thresholds.w_kprime) : json(nullptr);
  th["kprime"] =
      outcome.thresholds.kprime ? json(*outcome.thresholds.kprime) : json(nullptr);

  emit({{"outcome", invrep::assembly::to_string(outcome.kind)},
        {"invader_lambda", invader},
        {"removed", outcome.removed},
        {"thresholds", th},
        {"new_equilibrium", equilibrium_json(outcome.new_equilibrium, outcome.new_community)}},
       out);
  return 0;
}

int run_assemble(const std::string& initial, const std::string& invaders_spec,
                 const std::string& out) {
  FitnessVector init;
  if (initial != "empty") init = invrep::io::read_lambdas(initial);

  std::vector<double> invaders;
  if (invaders_spec.rfind("random:", 0) == 0) {
    const auto rest = invaders_spec.substr(7);
    const auto colon = rest.find(':');
    if (colon == std::string::npos)
      throw invrep::ValidationError("assemble: --invaders random:<count>:<seed>");
    const auto count = std::stoull(rest.substr(0, colon));
    const auto seed = std::stoull(rest.substr(colon + 1));
    invrep::CounterRng rng(seed, 7);
    for (std::uint64_t i = 0; i < count; ++i) invaders.push_back(rng.next_double());
  } else {
    for (const auto& [id, v] : invrep::io::read_id_value_csv(invaders_spec))
      invaders.push_back(v);
  }

  const auto log = invrep::assembly::assemble_sequence(init, invaders);
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out.empty()) {
    file = open_out(out);
    os = &file;
  }
  *os << "step,trait,outcome,removed,k,Q*\n";
  for (const auto& s : log.steps) {
    *os << s.step << ',' << invrep::io::fmt(s.invader_lambda) << ','
        << invrep::assembly::to_string(s.outcome) << ",\"";
    for (std::size_t i = 0; i < s.removed.size(); ++i)
      *os << (i ? " " : "") << s.removed[i];
    *os << "\"," << s.k_after << ',' << invrep::io::fmt(s.q_star_after) << '\n';
  }
  return 0;
}

int run_basin(const std::string& lambdas_path, int grid, double t_max,
              const std::string& out, int jobs) {
  const FitnessVector fv = invrep::io::read_lambdas(lambdas_path);
  const std::size_t n = fv.size();
  if (n != 2 && n != 3)
    throw invrep::ValidationError("basin: grids are supported for N = 2 or 3 only");
  if (grid < 2) throw invrep::ValidationError("basin: --grid must be >= 2");

  std::vector<Eigen::VectorXd> starts;
  if (n == 2) {
    for (int i = 1; i < grid; ++i) {
      Eigen::VectorXd z(2);
      z << double(i) / grid, 1.0 - double(i) / grid;
      starts.push_back(z);
    }
  } else {
    for (int i = 1; i < grid; ++i) {
      for (int j = 1; j < grid - i; ++j) {
        Eigen::VectorXd z(3);
        z << double(i) / grid, double(j) / grid, 1.0 - double(i + j) / grid;
        starts.push_back(z);
      }
    }
  }

  std::vector<std::string> winners(starts.size());
  const unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs)
                                    : std::max(1u, std::thread::hardware_concurrency());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto w = invrep::negative::ode_winner(SimplexState{starts[i], 0.0}, fv, t_max);
      winners[i] = w ? fv.id(*w) : "none";
    }
  };
  if (workers <= 1 || starts.size() < 2 * workers) {
    work(0, starts.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (starts.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t b = w * chunk;
      if (b >= starts.size()) break;
      pool.emplace_back(work, b, std::min(starts.size(), b + chunk));
    }
    for (auto& t : pool) t.join();
  }

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out.empty()) {
    file = open_out(out);
    os = &file;
  }
  for (std::size_t r = 0; r < n; ++r) *os << "z_" << fv.id(r) << ',';
  *os << "winner\n";
  for (std::size_t i = 0; i < starts.size(); ++i) {
    for (Eigen::Index c = 0; c < starts[i].size(); ++c)
      *os << invrep::io::fmt(starts[i][c]) << ',';
    *os << winners[i] << '\n';
  }
  return 0;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invrep::ValidationError("cannot open file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw invrep::ValidationError(path + ": empty matrix");
  Eigen::MatrixXd m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw invrep::ValidationError(path + ": ragged matrix rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return m;
}

int run_transform(const std::string& to, const std::string& lambdas_path,
                  const std::string& traits_path, double mu, double c,
                  int reference, const std::string& out) {
  using invrep::bridges::SISCase;
  json j;
  j["to"] = to;

  if (to == "lv") {
    const FitnessVector fv = invrep::io::read_lambdas(lambdas_path);
    std::optional<std::size_t> ref;
    if (reference >= 0) ref = static_cast<std::size_t>(reference);
    const auto lv = invrep::bridges::to_lotka_volterra(fv, ref);
    j["dim"] = lv.dim;
    j["reference_id"] = lv.reference_id;
    j["reference_rank"] = lv.reference_rank;
    j["r"] = std::vector<double>(lv.r.data(), lv.r.data() + lv.r.size());
    j["A"] = matrix_json(lv.A);
    j["rank_one"] = {{"column", std::vector<double>(lv.rank_one_column.data(),
                                                    lv.rank_one_column.data() +
                                                        lv.rank_one_column.size())},
                     {"shift", lv.shift}};
    j["rank_one_defect"] = invrep::bridges::rank_one_defect(lv);
    emit(j, out);
    return 0;
  }

  SISCase tag;
  if (to == "sis-case-i") tag = SISCase::cocolonization_susceptibility;
  else if (to == "sis-case-ii") tag = SISCase::cocolonization_interaction;
  else if (to == "sis-case-iii") tag = SISCase::coinfection_clearance;
  else throw invrep::ValidationError("transform: unknown target " + to);

  invrep::bridges::SISTraits traits;
  if (tag == SISCase::cocolonization_susceptibility) {
    if (traits_path.empty())
      throw invrep::ValidationError(
          "transform: sis-case-i verifies a given trait matrix; pass --traits");
    traits.case_tag = tag;
    traits.trait_matrix = read_matrix_csv(traits_path);
    traits.mu = mu;
    traits.c = c;
  } else {
    const FitnessVector fv = invrep::io::read_lambdas(lambdas_path);
    traits = invrep::bridges::sis_traits_from_lambdas(fv, tag, mu, c);
    // Report the roundtrip error against the target invader-driven matrix.
    const auto lam = invrep::bridges::lambdas_from_sis_traits(traits);
    double max_err = 0.0;
    for (Eigen::Index i = 0; i < lam.values.rows(); ++i)
      for (Eigen::Index jj = 0; jj < lam.values.cols(); ++jj)
        if (i != jj)
          max_err = std::max(max_err,
                             std::abs(lam.values(i, jj) -
                                      fv.lambda(static_cast<std::size_t>(i))));
    j["max_roundtrip_error"] = max_err;
  }

  const auto lam = invrep::bridges::lambdas_from_sis_traits(traits);
  j["mu"] = traits.mu;
  j["c"] = traits.c;
  j["trait_matrix"] = matrix_json(traits.trait_matrix);
  j["invasion_matrix"] = matrix_json(lam.values);
  j["invader_driven"] =
      lam.structure_tag == invrep::MatrixStructure::invader_driven;
  emit(j, out);
  return 0;
}

int run_hypothesis_test(const std::string& sites_dir, const std::string& reference,
                        double alpha, const std::string& out, bool orthogonal) {
  std::vector<invrep::empirics::SiteFrequencyTable> sites;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(sites_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".csv")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) sites.push_back(invrep::io::read_site_csv(f.string()));
  if (sites.size() < 2)
    throw invrep::ValidationError("hypothesis-test: need at least 2 site CSVs in " +
                                  sites_dir);

  std::size_t ref_idx = 0;
  if (!reference.empty()) {
    bool found = false;
    for (std::size_t i = 0; i < sites.size(); ++i) {
      if (sites[i].site_id == reference) {
        ref_idx = i;
        found = true;
        break;
      }
    }
    if (!found)
      throw invrep::ValidationError("hypothesis-test: unknown reference site " +
                                    reference);
  }

  const double z_crit = normal_quantile_upper(alpha);
  json pairs = json::array();
  std::map<std::pair<std::size_t, std::size_t>, invrep::empirics::PairTestResult> fits;
  auto fit_pair = [&](std::size_t a, std::size_t b) {
    auto key = std::make_pair(a, b);
    auto it = fits.find(key);
    if (it == fits.end())
      it = fits.emplace(key, invrep::empirics::pair_linearity_test(sites[a], sites[b],
                                                                   orthogonal))
               .first;
    return it->second;
  };

  for (std::size_t a = 0; a < sites.size(); ++a) {
    for (std::size_t b = a + 1; b < sites.size(); ++b) {
      try {
        const auto r = fit_pair(a, b);
        pairs.push_back({{"site_a", r.site_a},
                         {"site_b", r.site_b},
                         {"shared", r.shared},
                         {"slope", r.slope},
                         {"slope_se", r.slope_se},
                         {"intercept", r.intercept},
                         {"intercept_se", r.intercept_se},
                         {"slope_p", r.slope_p},
                         {"intercept_p", r.intercept_p},
                         {"pearson_r", r.pearson_r},
                         {"r2", r.r2},
                         {"linear_at_alpha", r.slope_p < alpha},
                         {"zero_intercept_at_alpha", r.intercept_p >= alpha}});
      } catch (const invrep::ValidationError& e) {
        pairs.push_back({{"site_a", sites[a].site_id},
                         {"site_b", sites[b].site_id},
                         {"skipped", e.what()}});
      }
    }
  }

  json triangles = json::array();
  for (std::size_t b = 0; b < sites.size(); ++b) {
    for (std::size_t cidx = b + 1; cidx < sites.size(); ++cidx) {
      if (b == ref_idx || cidx == ref_idx) continue;
      try {
        const auto ab = fit_pair(ref_idx, b);
        const auto ac = fit_pair(ref_idx, cidx);
        const auto bc = fit_pair(b, cidx);
        const auto rep = invrep::empirics::triangle_consistency(ab, ac, bc, z_crit);
        triangles.push_back({{"site_a", sites[ref_idx].site_id},
                             {"site_b", sites[b].site_id},
                             {"site_c", sites[cidx].site_id},
                             {"s_ab", rep.s_ab},
                             {"s_ac", rep.s_ac},
                             {"s_bc", rep.s_bc},
                             {"defect", rep.defect},
                             {"defect_se", rep.defect_se},
                             {"zscore", rep.zscore},
                             {"consistent", rep.consistent}});
      } catch (const invrep::ValidationError& e) {
        triangles.push_back({{"site_b", sites[b].site_id},
                             {"site_c", sites[cidx].site_id},
                             {"skipped", e.what()}});
      }
    }
  }

  json sites_json = json::array();
  for (const auto& s : sites)
    sites_json.push_back({{"site_id", s.site_id},
                          {"species", s.rows.size()},
                          {"renormalized", s.renormalized},
                          {"original_sum", s.original_sum}});
  emit({{"alpha", alpha},
        {"z_crit", z_crit},
        {"reference", sites[ref_idx].site_id},
        {"sites", sites_json},
        {"pairs", pairs},
        {"triangles", triangles}},
       out);
  return 0;
}

int run_ensemble(int N, std::uint64_t runs, std::uint64_t seed,
                 const std::string& method, const std::string& out) {
  const auto dist = method == "ode"
                        ? invrep::coexist::prob_k_ode_ensemble(N, runs, seed)
                        : invrep::coexist::prob_k_threshold_ensemble(N, runs, seed);
  std::vector<invrep::coexist::ProbabilityEstimate> rows;
  for (const auto& [k, est] : dist.pmf) rows.push_back(est);
  if (out.empty()) {
    write_pmf_rows(std::cout, rows);
  } else {
    auto os = open_out(out);
    write_pmf_rows(os, rows);
  }
  std::cout << "mean_n=" << invrep::io::fmt(dist.mean_n)
            << " disagreements=" << dist.disagreements.size() << '\n';
  for (const auto& d : dist.disagreements)
    std::cerr << "disagreement run=" << d.run << " ode_k=" << d.ode_k
              << " rule_k=" << d.rule_k << " min_gap=" << d.min_threshold_gap << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invader-driven replicator toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value config file merged under flags");
  int jobs = 0;
  app.add_option("--jobs", jobs, "worker count (0 = auto)")->capture_default_str();

  // equilibrium
  auto* sc_eq = app.add_subcommand("equilibrium", "stable support via the threshold rule");
  std::string eq_lambdas, eq_out, eq_candidates;
  double eq_tol = invrep::kNumericTol;
  sc_eq->add_option("--lambdas", eq_lambdas, "trait CSV/JSON")->required();
  sc_eq->add_option("--out", eq_out, "output JSON path (default stdout)");
  sc_eq->add_option("--candidates", eq_candidates, "candidate-table CSV path");
  sc_eq->add_option("--tol", eq_tol, "degeneracy tolerance")->capture_default_str();

  // simulate
  auto* sc_sim = app.add_subcommand("simulate", "integrate the replicator ODE");
  std::string sim_lambdas, sim_z0 = "uniform", sim_out;
  double sim_tmax = 1e4, sim_h = 0.01, sim_theta = 1.0;
  std::uint64_t sim_seed = 1;
  std::size_t sim_stride = 1;
  bool sim_long = false;
  sc_sim->add_option("--lambdas", sim_lambdas, "trait CSV/JSON")->required();
  sc_sim->add_option("--z0", sim_z0, "uniform | random | CSV path")->capture_default_str();
  sc_sim->add_option("--t-max", sim_tmax, "time horizon")->capture_default_str();
  sc_sim->add_option("--step", sim_h, "RK4 step size")->capture_default_str();
  sc_sim->add_option("--theta", sim_theta, "time-scale factor")->capture_default_str();
  sc_sim->add_option("--seed", sim_seed, "seed for --z0 random")
      ->envname("REPLICATOR_SEED")
      ->capture_default_str();
  sc_sim->add_option("--stride", sim_stride, "record every n-th step")
      ->capture_default_str();
  sc_sim->add_option("--out", sim_out, "trajectory CSV path")->required();
  sc_sim->add_flag("--long", sim_long, "long-format CSV (tau,id,z,Q)");

  // prob
  auto* sc_prob = app.add_subcommand("prob", "exact-k coexistence probabilities");
  int prob_N = 0, prob_k = -1;
  bool prob_all = false;
  std::string prob_method = "integral", prob_out;
  std::uint64_t prob_samples = 1'000'000, prob_seed = 1;
  sc_prob->add_option("--N", prob_N, "pool size")->required();
  sc_prob->add_option("--k", prob_k, "coexisting count");
  sc_prob->add_flag("--all-k", prob_all, "all k = 2..N");
  sc_prob->add_option("--method", prob_method, "integral|oracle|ode|rule|closed")
      ->capture_default_str();
  sc_prob->add_option("--samples", prob_samples, "samples (or runs for ode/rule)")
      ->capture_default_str();
  sc_prob->add_option("--seed", prob_seed, "seed")
      ->envname("REPLICATOR_SEED")
      ->capture_default_str();
  sc_prob->add_option("--out", prob_out, "pmf CSV path (default stdout)");

  // invade
  auto* sc_inv = app.add_subcommand("invade", "classify a single invader");
  std::string inv_residents, inv_out;
  double inv_lambda = 0.0, inv_tol = invrep::kNumericTol;
  sc_inv->add_option("--residents", inv_residents, "resident trait CSV/JSON")->required();
  sc_inv->add_option("--invader", inv_lambda, "invader trait")->required();
  sc_inv->add_option("--tol", inv_tol, "degeneracy tolerance")->capture_default_str();
  sc_inv->add_option("--out", inv_out, "output JSON path (default stdout)");

  // assemble
  auto* sc_asm = app.add_subcommand("assemble", "sequential invasion assembly");
  std::string asm_initial = "empty", asm_invaders, asm_out;
  sc_asm->add_option("--initial", asm_initial, "trait CSV/JSON or 'empty'")
      ->capture_default_str();
  sc_asm->add_option("--invaders", asm_invaders, "CSV path or random:<count>:<seed>")
      ->required();
  sc_asm->add_option("--out", asm_out, "log CSV path (default stdout)");

  // basin
  auto* sc_basin = app.add_subcommand("basin", "basin-of-attraction grid (N = 2, 3)");
  std::string basin_lambdas, basin_out;
  int basin_grid = 20;
  double basin_tmax = 1e4;
  sc_basin->add_option("--lambdas", basin_lambdas, "trait CSV/JSON")->required();
  sc_basin->add_option("--grid", basin_grid, "grid resolution")->capture_default_str();
  sc_basin->add_option("--t-max", basin_tmax, "time horizon")->capture_default_str();
  sc_basin->add_option("--out", basin_out, "CSV path (default stdout)");

  // transform
  auto* sc_tr = app.add_subcommand("transform", "LV and SIS bridges");
  std::string tr_to, tr_lambdas, tr_traits, tr_out;
  double tr_mu = 0.1, tr_c = 0.0;
  int tr_ref = -1;
  sc_tr->add_option("--to", tr_to, "lv|sis-case-i|sis-case-ii|sis-case-iii")->required();
  sc_tr->add_option("--lambdas", tr_lambdas, "trait CSV/JSON (lv, sis-case-ii/iii)");
  sc_tr->add_option("--traits", tr_traits, "trait matrix CSV (sis-case-i)");
  sc_tr->add_option("--mu", tr_mu, "single/co-infection ratio (sis-case-ii)")
      ->capture_default_str();
  sc_tr->add_option("--c", tr_c, "free constant")->capture_default_str();
  sc_tr->add_option("--reference", tr_ref, "LV reference rank (default fittest)");
  sc_tr->add_option("--out", tr_out, "output JSON path (default stdout)");

  // hypothesis-test
  auto* sc_hyp = app.add_subcommand("hypothesis-test", "multi-site linearity tests");
  std::string hyp_sites, hyp_ref, hyp_out;
  double hyp_alpha = 0.05;
  bool hyp_orth = false;
  sc_hyp->add_option("--sites", hyp_sites, "directory of id,z CSV files")->required();
  sc_hyp->add_option("--reference", hyp_ref, "reference site id (default first)");
  sc_hyp->add_option("--alpha", hyp_alpha, "significance level")->capture_default_str();
  sc_hyp->add_flag("--orthogonal", hyp_orth, "total-least-squares slopes");
  sc_hyp->add_option("--out", hyp_out, "report JSON path (default stdout)");

  // ensemble
  auto* sc_ens = app.add_subcommand("ensemble", "random-pool coexistence ensembles");
  int ens_N = 0;
  std::uint64_t ens_runs = 1000, ens_seed = 1;
  std::string ens_method = "ode", ens_out;
  sc_ens->add_option("--N", ens_N, "pool size")->required();
  sc_ens->add_option("--runs", ens_runs, "number of pools")->capture_default_str();
  sc_ens->add_option("--seed", ens_seed, "seed")
      ->envname("REPLICATOR_SEED")
      ->capture_default_str();
  sc_ens->add_option("--method", ens_method, "ode|rule")->capture_default_str();
  sc_ens->add_option("--out", ens_out, "pmf CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*sc_eq) return run_equilibrium(eq_lambdas, eq_out, eq_candidates, eq_tol);
    if (*sc_sim)
      return run_simulate(sim_lambdas, sim_z0, sim_tmax, sim_h, sim_theta, sim_seed,
                          sim_out, sim_long, sim_stride);
    if (*sc_prob)
      return run_prob(prob_N, prob_k, prob_all, prob_method, prob_samples, prob_seed,
                      prob_out);
    if (*sc_inv) return run_invade(inv_residents, inv_lambda, inv_tol, inv_out);
    if (*sc_asm) return run_assemble(asm_initial, asm_invaders, asm_out);
    if (*sc_basin) return run_basin(basin_lambdas, basin_grid, basin_tmax, basin_out, jobs);
    if (*sc_tr) return run_transform(tr_to, tr_lambdas, tr_traits, tr_mu, tr_c, tr_ref,
                                     tr_out);
    if (*sc_hyp)
      return run_hypothesis_test(hyp_sites, hyp_ref, hyp_alpha, hyp_out, hyp_orth);
    if (*sc_ens) return run_ensemble(ens_N, ens_runs, ens_seed, ens_method, ens_out);
  } catch (const invrep::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const invrep::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
