#include "invrep/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace invrep::io {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  return out;
}

bool parse_double(const std::string& s, double& v) {
  try {
    std::size_t pos = 0;
    v = std::stod(s, &pos);
    return pos == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  return in;
}

}  // namespace

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

FitnessVector read_lambdas(const std::string& path) {
  std::vector<SpeciesId> ids;
  std::vector<double> lambdas;

  if (std::filesystem::path(path).extension() == ".json") {
    auto in = open_or_throw(path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("bad JSON in " + path + ": " + e.what());
    }
    if (!j.is_array()) throw ValidationError(path + ": expected a JSON array");
    for (const auto& entry : j) {
      if (!entry.contains("lambda"))
        throw ValidationError(path + ": entry missing \"lambda\"");
      ids.push_back(entry.value("id", std::to_string(ids.size() + 1)));
      lambdas.push_back(entry.at("lambda").get<double>());
    }
  } else {
    auto in = open_or_throw(path);
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
      ++row;
      line = trim(line);
      if (line.empty() || line[0] == '#') continue;
      const auto cells = split_csv_line(line);
      double v = 0.0;
      if (cells.size() == 1) {
        if (!parse_double(cells[0], v)) {
          if (row == 1) continue;  // header
          throw ValidationError(path + ": bad number at line " + std::to_string(row));
        }
        ids.push_back(std::to_string(ids.size() + 1));
        lambdas.push_back(v);
      } else if (cells.size() == 2) {
        if (!parse_double(cells[1], v)) {
          if (row == 1) continue;  // header like "id,lambda"
          throw ValidationError(path + ": bad number at line " + std::to_string(row));
        }
        ids.push_back(cells[0]);
        lambdas.push_back(v);
      } else {
        throw ValidationError(path + ": expected 1 or 2 columns at line " +
                              std::to_string(row));
      }
    }
  }
  if (lambdas.empty()) throw ValidationError(path + ": no traits found");
  return FitnessVector(std::move(ids), std::move(lambdas));
}

void write_lambdas_csv(const std::string& path, const FitnessVector& fv) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << "id,lambda\n";
  for (std::size_t r = 0; r < fv.size(); ++r)
    out << fv.id(r) << ',' << fmt(fv.lambda(r)) << '\n';
}

std::vector<std::pair<SpeciesId, double>> read_id_value_csv(const std::string& path) {
  auto in = open_or_throw(path);
  std::vector<std::pair<SpeciesId, double>> rows;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 2)
      throw ValidationError(path + ": expected 2 columns at line " + std::to_string(row));
    double v = 0.0;
    if (!parse_double(cells[1], v)) {
      if (row == 1) continue;  // header
      throw ValidationError(path + ": bad number at line " + std::to_string(row));
    }
    rows.emplace_back(cells[0], v);
  }
  if (rows.empty()) throw ValidationError(path + ": no rows found");
  return rows;
}

empirics::SiteFrequencyTable read_site_csv(const std::string& path,
                                           const std::string& site_id) {
  empirics::SiteFrequencyTable site;
  site.site_id = site_id.empty() ? std::filesystem::path(path).stem().string() : site_id;
  site.rows = read_id_value_csv(path);
  return empirics::normalize_site(std::move(site));
}

void write_trajectory_csv(const std::string& path, const dynamics::Trajectory& traj,
                          const FitnessVector& lambdas, bool long_format) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path);
  const std::size_t n = lambdas.size();
  if (long_format) {
    out << "tau,id,z,Q\n";
    for (std::size_t s = 0; s < traj.times.size(); ++s)
      for (std::size_t r = 0; r < n; ++r)
        out << fmt(traj.times[s]) << ',' << lambdas.id(r) << ','
            << fmt(traj.states[s][static_cast<Eigen::Index>(r)]) << ','
            << fmt(traj.q_series[s]) << '\n';
  } else {
    out << "tau";
    for (std::size_t r = 0; r < n; ++r) out << ",z_" << lambdas.id(r);
    out << ",Q\n";
    for (std::size_t s = 0; s < traj.times.size(); ++s) {
      out << fmt(traj.times[s]);
      for (std::size_t r = 0; r < n; ++r)
        out << ',' << fmt(traj.states[s][static_cast<Eigen::Index>(r)]);
      out << ',' << fmt(traj.q_series[s]) << '\n';
    }
  }
}

}  // namespace invrep::io
