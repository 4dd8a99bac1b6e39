// Named experiments: each turns an ExperimentSpec into a set of CSV tables.

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "fqlga_cli/config.hpp"
#include "fqlga_cli/result_table.hpp"

namespace fqlga::cli {

struct NamedTable {
  std::string stem;  // file name without ".csv"
  ResultTable table;
};

struct ExperimentOutput {
  std::vector<NamedTable> tables;

  const ResultTable& table(std::string_view stem) const;
};

// Pure computation; every table carries provenance (experiment, table, config
// hash, seed, mode, version). Core rejections propagate with the experiment
// name prepended.
ExperimentOutput run_experiment(const ExperimentSpec& spec);

// Writes <output_dir>/<stem>.csv for each table plus resolved_config.json.
// Returns the paths written. Throws IoError.
std::vector<std::filesystem::path> write_experiment(const ExperimentSpec& spec, const ExperimentOutput& output);

// The collision scheme the lattice experiment runs against the ideal reference.
schemes::CollisionScheme error_scheme(const ExperimentSpec& spec);

// Rows (t, site, rho) for every snapshot.
ResultTable trajectory_table(const lattice::Trajectory& trajectory);

}  // namespace fqlga::cli
