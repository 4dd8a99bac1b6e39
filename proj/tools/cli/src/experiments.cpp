#include "fqlga_cli/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "fqlga/errors.hpp"
#include "fqlga_cli/diff.hpp"

namespace fqlga::cli {

namespace {

using lattice::Trajectory;
using schemes::CollisionScheme;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

class TableBuilder {
 public:
  TableBuilder(const ExperimentSpec& spec, ExperimentOutput& out) : spec_(spec), out_(out) {}

  ResultTable& add(std::string stem, std::vector<Column> columns) {
    ResultTable table(std::move(columns));
    table.set_provenance("fqlga_version", FQLGA_VERSION);
    table.set_provenance("experiment", std::string(to_string(spec_.name)));
    table.set_provenance("table", stem);
    table.set_provenance("config_fnv1a64", config_hash(spec_.resolved));
    table.set_provenance("seed", std::to_string(spec_.seed));
    table.set_provenance("mode", spec_.run.mode.is_sampled()
                                     ? "sampled(" + std::to_string(spec_.run.mode.ensemble_size) + ")"
                                     : "exact");
    out_.tables.push_back({std::move(stem), std::move(table)});
    return out_.tables.back().table;
  }

 private:
  const ExperimentSpec& spec_;
  ExperimentOutput& out_;
};

struct FitOutcome {
  double diffusion = kNaN;
  double std_error = kNaN;
  std::string note;
};

FitOutcome try_fit(const Trajectory& trajectory) {
  try {
    const auto fit = lattice::fit_diffusion_constant(trajectory);
    return {fit.diffusion, fit.std_error, {}};
  } catch (const std::invalid_argument& e) {
    return {kNaN, kNaN, e.what()};
  } catch (const DegenerateError& e) {
    return {kNaN, kNaN, e.what()};
  }
}

void lattice_experiment(const ExperimentSpec& spec, TableBuilder& tables) {
  lattice::RunConfig ideal_config = spec.run;
  ideal_config.scheme = CollisionScheme::ideal();
  ideal_config.mode = lattice::MeasurementMode::exact();
  lattice::RunConfig error_config = spec.run;
  error_config.scheme = error_scheme(spec);

  const Trajectory ideal = lattice::run(ideal_config);
  const Trajectory error = lattice::run(error_config);

  ResultTable ideal_table = trajectory_table(ideal);
  ResultTable error_table = trajectory_table(error);
  const DiffMetrics deviation = diff_trajectories(ideal_table, error_table);

  auto attach = [&](std::string stem, const ResultTable& source, const lattice::RunConfig& config) {
    ResultTable& t = tables.add(std::move(stem), source.columns());
    t.set_provenance("scheme", config.scheme.label());
    if (!config.mode.is_sampled()) t.set_provenance("mode", "exact");
    for (const auto& row : source.rows()) t.add_row(row);
  };
  attach("trajectory_ideal", ideal_table, ideal_config);
  attach("trajectory_error", error_table, error_config);

  const FitOutcome ideal_fit = try_fit(ideal);
  const FitOutcome error_fit = try_fit(error);
  const double shift_sigma = (error_fit.diffusion - ideal_fit.diffusion) /
                             std::hypot(error_fit.std_error, ideal_fit.std_error);

  ResultTable& summary = tables.add("summary", {{"run", ColumnType::integer},
                                                {"mass_drift", ColumnType::real},
                                                {"diffusion", ColumnType::real},
                                                {"diffusion_std_error", ColumnType::real},
                                                {"max_dev_from_ideal", ColumnType::real},
                                                {"rms_dev_from_ideal", ColumnType::real},
                                                {"shift_sigma", ColumnType::real}});
  summary.set_provenance("runs", "0 = ideal reference, 1 = " + error_config.scheme.label());
  if (!ideal_fit.note.empty()) summary.set_provenance("fit_ideal", ideal_fit.note);
  if (!error_fit.note.empty()) summary.set_provenance("fit_error", error_fit.note);
  summary.add_row({std::int64_t{0}, lattice::relative_mass_drift(ideal), ideal_fit.diffusion,
                   ideal_fit.std_error, 0.0, 0.0, 0.0});
  summary.add_row({std::int64_t{1}, lattice::relative_mass_drift(error), error_fit.diffusion,
                   error_fit.std_error, deviation.max_abs, deviation.rms, shift_sigma});
}

void spectrum_experiment(const ExperimentSpec& spec, TableBuilder& tables) {
  const auto fluxes = linspace(spec.spectrum.f_min, spec.spectrum.f_max, spec.spectrum.points);
  const auto points = pcqubit::two_level_spectrum(spec.qubit, fluxes);

  ResultTable& raw = tables.add("spectrum", {{"f", ColumnType::real},
                                             {"E_ground", ColumnType::real},
                                             {"E_excited", ColumnType::real}});
  const pcqubit::SpectrumPoint* best = &points.front();
  for (const auto& p : points) {
    raw.add_row({p.flux, p.ground, p.excited});
    if (p.gap() < best->gap()) best = &p;
  }

  pcqubit::QubitParams half = spec.qubit;
  half.flux = 0.5;
  const double half_gap = pcqubit::two_level_spectrum(half, std::vector<double>{0.5}).front().gap();

  ResultTable& summary = tables.add("summary", {{"min_gap", ColumnType::real},
                                                {"f_at_min_gap", ColumnType::real},
                                                {"gap_at_half_flux", ColumnType::real},
                                                {"two_tunneling", ColumnType::real}});
  summary.add_row({best->gap(), best->flux, half_gap, 2.0 * spec.qubit.tunneling});
}

void alignment_experiment(const ExperimentSpec& spec, TableBuilder& tables) {
  pcqubit::CoupledParams tmpl;
  tmpl.first = spec.qubit;
  tmpl.second = spec.qubit;
  tmpl.coupling = spec.alignment.coupling;
  const auto f2s = linspace(spec.alignment.f2_min, spec.alignment.f2_max, spec.alignment.points);
  const auto rows = pcqubit::alignment_sweep(spec.alignment.f1, f2s, tmpl);

  ResultTable& raw = tables.add("alignment", {{"f2", ColumnType::real},
                                              {"overlap_first", ColumnType::real},
                                              {"overlap_second", ColumnType::real},
                                              {"rabi", ColumnType::real},
                                              {"middle_gap", ColumnType::real},
                                              {"crossing", ColumnType::integer}});
  const pcqubit::CalibrationTarget target;
  std::int64_t crossings = 0;
  const pcqubit::AlignmentRow* best = &rows.front();
  for (const auto& r : rows) {
    raw.add_row({r.f2, r.overlap_first, r.overlap_second, r.rabi, r.middle_gap, std::int64_t{r.crossing}});
    crossings += r.crossing;
    if (pcqubit::alignment_objective(r, target) < pcqubit::alignment_objective(*best, target)) best = &r;
  }

  ResultTable& summary = tables.add("summary", {{"f1", ColumnType::real},
                                                {"epsilon_scale", ColumnType::real},
                                                {"coupling", ColumnType::real},
                                                {"best_f2", ColumnType::real},
                                                {"overlap_first", ColumnType::real},
                                                {"overlap_second", ColumnType::real},
                                                {"rabi", ColumnType::real},
                                                {"crossings", ColumnType::integer}});
  summary.set_provenance("best_row", "row closest to overlap 0.97 and rabi 0.02 (calibration objective)");
  summary.add_row({spec.alignment.f1, spec.qubit.epsilon_scale, spec.alignment.coupling, best->f2,
                   best->overlap_first, best->overlap_second, best->rabi, crossings});
}

void potential_experiment(const ExperimentSpec& spec, TableBuilder& tables) {
  const auto grid = pcqubit::potential_grid(spec.potential.params, spec.potential.resolution);
  ResultTable& raw = tables.add("potential", {{"phi_p", ColumnType::real},
                                              {"phi_m", ColumnType::real},
                                              {"U", ColumnType::real}});
  for (std::size_t i = 0; i < grid.resolution; ++i)
    for (std::size_t j = 0; j < grid.resolution; ++j) raw.add_row({grid.axis[i], grid.axis[j], grid.at(i, j)});

  const auto landscape = pcqubit::analyze_landscape(grid);
  ResultTable& summary = tables.add("summary", {{"minima", ColumnType::integer},
                                                {"unit_cells", ColumnType::real},
                                                {"pairs_merge_first", ColumnType::integer},
                                                {"intra_barrier", ColumnType::real},
                                                {"inter_barrier", ColumnType::real}});
  summary.add_row({as_int(landscape.minima), landscape.unit_cells, std::int64_t{landscape.pairs_merge_first},
                   landscape.intra_barrier, landscape.inter_barrier});
}

template <class E>
[[noreturn]] void rethrow_with_context(const ExperimentSpec& spec, const E& e) {
  throw E(std::string(to_string(spec.name)) + ": " + e.what());
}

}  // namespace

const ResultTable& ExperimentOutput::table(std::string_view stem) const {
  for (const auto& t : tables)
    if (t.stem == stem) return t.table;
  throw std::out_of_range("ExperimentOutput: no table '" + std::string(stem) + "'");
}

CollisionScheme error_scheme(const ExperimentSpec& spec) {
  switch (spec.name) {
    case ExperimentName::fig5_approx_swap:
      return CollisionScheme::multibias(spec.approx_swap);
    case ExperimentName::fig7_random_phase:
      return CollisionScheme::random_phase(CollisionScheme::ideal(), spec.phase);
    case ExperimentName::fig8_coupled_init:
      return CollisionScheme::coupled_init(spec.coupled_j_ratio, CollisionScheme::ideal());
    case ExperimentName::custom:
      break;
    default:
      throw std::invalid_argument(std::string(to_string(spec.name)) + " is not a lattice experiment");
  }
  CollisionScheme scheme = CollisionScheme::ideal();
  if (spec.custom.collision == CollisionKind::approx_swap)
    scheme = CollisionScheme::multibias(spec.approx_swap);
  else if (spec.custom.collision == CollisionKind::pulse_sequence)
    scheme = CollisionScheme::pulse_sequence(schemes::sqrt_swap_sequence());
  if (spec.custom.phase_error == PhaseErrorKind::uniform)
    scheme = CollisionScheme::random_phase(scheme, schemes::UniformFullCircle{});
  else if (spec.custom.phase_error == PhaseErrorKind::fixed)
    scheme = CollisionScheme::random_phase(
        scheme, schemes::FixedPhase{spec.resolved.at(Json::json_pointer("/random_phase/delta")).get<double>()});
  if (spec.custom.coupled_init) scheme = CollisionScheme::coupled_init(spec.coupled_j_ratio, scheme);
  return scheme;
}

ResultTable trajectory_table(const Trajectory& trajectory) {
  ResultTable table({{"t", ColumnType::integer}, {"site", ColumnType::integer}, {"rho", ColumnType::real}});
  for (const auto& snapshot : trajectory.snapshots)
    for (std::size_t n = 0; n < snapshot.size(); ++n)
      table.add_row({snapshot.timestep(), as_int(n), snapshot.density(n)});
  return table;
}

ExperimentOutput run_experiment(const ExperimentSpec& spec) {
  ExperimentOutput out;
  TableBuilder tables(spec, out);
  try {
    switch (spec.name) {
      case ExperimentName::fig3_spectrum:
        spectrum_experiment(spec, tables);
        break;
      case ExperimentName::fig4_alignment:
        alignment_experiment(spec, tables);
        break;
      case ExperimentName::potential_grid:
        potential_experiment(spec, tables);
        break;
      default:
        lattice_experiment(spec, tables);
        break;
    }
  } catch (const DegenerateError& e) {
    rethrow_with_context(spec, e);
  } catch (const std::domain_error& e) {
    rethrow_with_context(spec, e);
  } catch (const std::invalid_argument& e) {
    rethrow_with_context(spec, e);
  }
  return out;
}

std::vector<std::filesystem::path> write_experiment(const ExperimentSpec& spec, const ExperimentOutput& output) {
  std::error_code ec;
  std::filesystem::create_directories(spec.output_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + spec.output_dir.string() + "': " + ec.message());

  std::vector<std::filesystem::path> written;
  const auto config_path = spec.output_dir / "resolved_config.json";
  {
    std::ofstream out(config_path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + config_path.string() + "' for writing");
    out << spec.resolved.dump(2) << '\n';
    if (!out) throw IoError("failed writing '" + config_path.string() + "'");
  }
  written.push_back(config_path);
  for (const auto& [stem, table] : output.tables) {
    const auto path = spec.output_dir / (stem + ".csv");
    write_csv(table, path);
    written.push_back(path);
  }
  return written;
}

}  // namespace fqlga::cli
