// fqlga: run lattice-gas and qubit experiments from JSON configs, compare CSVs.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "fqlga/errors.hpp"
#include "fqlga/pcqubit.hpp"
#include "fqlga_cli/config.hpp"
#include "fqlga_cli/diff.hpp"
#include "fqlga_cli/experiments.hpp"
#include "fqlga_cli/result_table.hpp"

namespace {

using namespace fqlga::cli;

enum ExitCode : int { kOk = 0, kConfig = 2, kRejected = 3, kIo = 4 };

struct RunOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<std::string> out;

  ConfigOverrides overrides() const {
    ConfigOverrides o;
    o.seed = seed;
    o.mode = mode;
    if (out) o.output_dir = *out;
    return o;
  }
};

void add_run_options(CLI::App* cmd, RunOptions& opts, bool with_mode) {
  cmd->add_option("config", opts.config, "experiment config (JSON)")->required();
  cmd->add_option("--seed", opts.seed, "override the RNG seed");
  cmd->add_option("--out", opts.out, "override the output directory");
  if (with_mode)
    cmd->add_option("--mode", opts.mode, "override the measurement mode")
        ->check(CLI::IsMember({"exact", "sampled"}));
}

int execute(const RunOptions& opts, bool sweeps_only) {
  const ExperimentSpec spec = load_config(opts.config, opts.overrides());
  if (sweeps_only && is_lattice_experiment(spec.name))
    throw ConfigError("/name", "'" + std::string(to_string(spec.name)) +
                                   "' is a lattice experiment; use `simulate`");
  const ExperimentOutput output = run_experiment(spec);
  for (const auto& path : write_experiment(spec, output)) std::cout << path.string() << '\n';
  const ResultTable& summary = output.table("summary");
  std::cout << "summary (" << to_string(spec.name) << ")\n" << csv_body(to_csv(summary));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Factorized quantum lattice-gas simulator and flux-qubit error models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", FQLGA_VERSION);

  RunOptions simulate_opts;
  auto* simulate = app.add_subcommand("simulate", "run any named experiment and write CSV tables");
  add_run_options(simulate, simulate_opts, true);

  RunOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep (fig3_spectrum, fig4_alignment, potential_grid)");
  add_run_options(sweep, sweep_opts, false);

  RunOptions resolve_opts;
  auto* resolve = app.add_subcommand("resolve", "print the fully defaulted config without running it");
  add_run_options(resolve, resolve_opts, true);

  std::string diff_a, diff_b;
  auto* diff = app.add_subcommand("diff", "compare two CSV tables: max abs, RMS, mass drift");
  diff->add_option("a", diff_a, "reference CSV")->required();
  diff->add_option("b", diff_b, "candidate CSV")->required();

  fqlga::pcqubit::CalibrationTarget target;
  auto* calibrate = app.add_subcommand("calibrate", "scan epsilon_scale against the alignment target");
  calibrate->add_option("--f1", target.f1, "fixed flux of qubit 1")->capture_default_str();
  calibrate->add_option("--f2", target.f2, "flux of qubit 2 at the target")->capture_default_str();
  calibrate->add_option("--coupling", target.coupling, "J in units of tau")->capture_default_str();
  calibrate->add_option("--eta-min", target.eta_min)->capture_default_str();
  calibrate->add_option("--eta-max", target.eta_max)->capture_default_str();
  calibrate->add_option("--eta-step", target.eta_step)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*simulate) return execute(simulate_opts, false);
    if (*sweep) return execute(sweep_opts, true);
    if (*resolve) {
      const ExperimentSpec spec = load_config(resolve_opts.config, resolve_opts.overrides());
      std::cout << spec.resolved.dump(2) << '\n';
      return kOk;
    }
    if (*diff) {
      const DiffMetrics m = diff_trajectories(read_csv(diff_a), read_csv(diff_b));
      std::cout << "max_abs," << format_real(m.max_abs) << '\n'
                << "rms," << format_real(m.rms) << '\n'
                << "mass_drift," << format_real(m.mass_drift) << '\n'
                << "compared," << m.compared << '\n';
      return kOk;
    }
    if (*calibrate) {
      const auto result = fqlga::pcqubit::calibrate_epsilon_scale(target);
      Json j{{"epsilon_scale", result.epsilon_scale},
             {"objective", result.objective},
             {"f2", result.row.f2},
             {"overlap_first", result.row.overlap_first},
             {"overlap_second", result.row.overlap_second},
             {"rabi", result.row.rabi}};
      std::cout << j.dump(2) << '\n';
      return kOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "fqlga: " << e.what() << '\n';
    return kConfig;
  } catch (const IoError& e) {
    std::cerr << "fqlga: " << e.what() << '\n';
    return kIo;
  } catch (const CsvError& e) {
    std::cerr << "fqlga: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "fqlga: rejected: " << e.what() << '\n';
    return kRejected;
  }
  return kOk;
}
