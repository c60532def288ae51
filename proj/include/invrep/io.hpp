#ifndef INVREP_IO_HPP
#define INVREP_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include "invrep/core.hpp"
#include "invrep/dynamics.hpp"
#include "invrep/empirics.hpp"

namespace invrep::io {

/// Serialize a double with 17 significant digits (round-trip exact).
std::string fmt(double v);

/// Read a trait file: CSV with rows `id,lambda` (optional header) or a JSON
/// array of {"id": ..., "lambda": ...} when the path ends in .json.
/// Ids default to the row number when the CSV has a single column.
FitnessVector read_lambdas(const std::string& path);

void write_lambdas_csv(const std::string& path, const FitnessVector& fv);

/// Read `id,z` rows (optional header); order preserved.
std::vector<std::pair<SpeciesId, double>> read_id_value_csv(const std::string& path);

/// Site table from an `id,z` CSV; the site id defaults to the file stem.
empirics::SiteFrequencyTable read_site_csv(const std::string& path,
                                           const std::string& site_id = "");

/// Wide format: tau, z_<id>..., Q. Long format: tau, id, z, Q.
void write_trajectory_csv(const std::string& path, const dynamics::Trajectory& traj,
                          const FitnessVector& lambdas, bool long_format = false);

}  // namespace invrep::io

#endif
