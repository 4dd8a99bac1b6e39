// Experiment configuration: JSON in, validated ExperimentSpec out.
//
// Every physical default lives in default_config(). A user document may only
// contain keys that appear there; anything else is rejected with its JSON
// pointer. The fully resolved document is kept on the spec so it can be
// echoed and hashed.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "fqlga/lattice.hpp"
#include "fqlga/pcqubit.hpp"
#include "fqlga/schemes.hpp"

namespace fqlga::cli {

using Json = nlohmann::json;

inline constexpr int kDefaultsVersion = 1;

enum class ExperimentName {
  fig3_spectrum,
  fig4_alignment,
  fig5_approx_swap,
  fig7_random_phase,
  fig8_coupled_init,
  potential_grid,
  custom,
};

std::string_view to_string(ExperimentName name);
std::optional<ExperimentName> parse_experiment_name(std::string_view text);
// True for experiments that produce lattice trajectories.
bool is_lattice_experiment(ExperimentName name);

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string pointer, const std::string& message);

  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

struct SpectrumSweep {
  double f_min = 0.45;
  double f_max = 0.55;
  std::size_t points = 101;
};

struct AlignmentSweep {
  double f1 = 0.508;
  double f2_min = 0.50;
  double f2_max = 0.52;
  std::size_t points = 201;
  double coupling = 1.0;
};

struct PotentialSweep {
  pcqubit::PotentialParams params;
  std::size_t resolution = 128;
};

enum class CollisionKind { ideal, approx_swap, pulse_sequence };
enum class PhaseErrorKind { none, uniform, fixed };

struct CustomScheme {
  CollisionKind collision = CollisionKind::ideal;
  PhaseErrorKind phase_error = PhaseErrorKind::none;
  bool coupled_init = false;
};

struct ExperimentSpec {
  ExperimentName name = ExperimentName::custom;
  std::filesystem::path output_dir;
  std::uint64_t seed = 0;

  // Lattice, profile and measurement mode. The scheme is chosen per experiment.
  lattice::RunConfig run;

  pcqubit::QubitParams qubit;     // epsilon_scale and tunneling shared by all qubits
  pcqubit::CoupledParams approx_swap;
  schemes::PhaseDistribution phase = schemes::UniformFullCircle{};
  double coupled_j_ratio = 0.1;
  CustomScheme custom;

  SpectrumSweep spectrum;
  AlignmentSweep alignment;
  PotentialSweep potential;

  Json resolved;  // every field populated
};

// The versioned defaults block. `name` is required and has no default.
const Json& default_config();

struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;  // "exact" | "sampled"
  std::optional<std::filesystem::path> output_dir;
};

// Merge `user` over the defaults (plus any per-experiment defaults), apply
// overrides and validate. Throws ConfigError.
ExperimentSpec parse_config(const Json& user, const ConfigOverrides& overrides = {});

// Throws IoError when the file cannot be read, ConfigError otherwise.
ExperimentSpec load_config(const std::filesystem::path& path, const ConfigOverrides& overrides = {});

// FNV-1a 64 of the canonical dump of the resolved document, as 16 hex digits.
std::string config_hash(const Json& resolved);

}  // namespace fqlga::cli
