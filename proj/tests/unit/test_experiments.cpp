#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fqlga/errors.hpp"
#include "fqlga_cli/diff.hpp"
#include "fqlga_cli/experiments.hpp"

using namespace fqlga::cli;

namespace {

ExperimentSpec spec_for(const Json& user) { return parse_config(user); }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("fig3_spectrum: minimum gap at half flux equals twice the tunneling") {
    const auto out = run_experiment(spec_for({{"name", "fig3_spectrum"}}));
    const auto& raw = out.table("spectrum");
    CHECK(raw.row_count() == 101);
    CHECK(raw.columns()[0].name == "f");
    const auto& summary = out.table("summary");
    CHECK(std::abs(summary.column_values("gap_at_half_flux")[0] - 2.0) < 1e-12);
    CHECK(std::abs(summary.column_values("min_gap")[0] - 2.0) < 1e-12);
    CHECK(summary.column_values("f_at_min_gap")[0] == doctest::Approx(0.5).epsilon(1e-12));
  }

  TEST_CASE("fig4_alignment: best row lies near f2 = 0.51") {
    const auto out = run_experiment(spec_for({{"name", "fig4_alignment"}}));
    CHECK(out.table("alignment").row_count() == 201);
    const auto& s = out.table("summary");
    CHECK(s.column_values("best_f2")[0] > 0.508);
    CHECK(s.column_values("best_f2")[0] < 0.512);
    CHECK(s.column_values("overlap_first")[0] >= 0.95);
    CHECK(s.column_values("overlap_second")[0] >= 0.95);
    CHECK(s.column_values("rabi")[0] >= 0.01);
  }

  TEST_CASE("fig5_approx_swap: ideal and error trajectories plus summary") {
    const auto spec = spec_for({{"name", "fig5_approx_swap"}});
    const auto out = run_experiment(spec);
    const auto& ideal = out.table("trajectory_ideal");
    const auto& error = out.table("trajectory_error");
    CHECK(ideal.row_count() == 41 * 64);
    CHECK(ideal.columns() == std::vector<Column>{{"t", ColumnType::integer}, {"site", ColumnType::integer},
                                                 {"rho", ColumnType::real}});
    CHECK(error.provenance_value("scheme").find("multibias") == 0);
    CHECK(error.provenance_value("config_fnv1a64") == config_hash(spec.resolved));
    CHECK(error.provenance_value("experiment") == "fig5_approx_swap");
    const auto& s = out.table("summary");
    REQUIRE(s.row_count() == 2);
    const auto d = s.column_values("diffusion");
    CHECK(s.column_values("mass_drift")[0] < 1e-12);
    CHECK(d[1] > d[0]);
    CHECK(s.column_values("shift_sigma")[1] > 3.0);
    CHECK(s.column_values("max_dev_from_ideal")[1] > 0.0);
  }

  TEST_CASE("fig7_random_phase: small deviations at M = 1000") {
    const auto out = run_experiment(spec_for({{"name", "fig7_random_phase"}}));
    const auto& s = out.table("summary");
    CHECK(out.table("trajectory_error").provenance_value("mode") == "sampled(1000)");
    CHECK(out.table("trajectory_ideal").provenance_value("mode") == "exact");
    CHECK(s.column_values("rms_dev_from_ideal")[1] > 0.0);
    CHECK(s.column_values("rms_dev_from_ideal")[1] < 0.05);
  }

  TEST_CASE("fig8_coupled_init: the coupled initializer pulls occupations toward one half") {
    const auto out = run_experiment(spec_for({{"name", "fig8_coupled_init"}, {"lattice", {{"steps", 10}}}}));
    const auto rho = out.table("trajectory_error").column_values("rho");
    double first = 0.0, last = 0.0;
    for (std::size_t i = 0; i < 64; ++i) {
      first += rho[i];
      last += rho[rho.size() - 64 + i];
    }
    // Every P starts below 1/2, so the admixture adds mass.
    CHECK(last > first);
    CHECK(out.table("summary").column_values("mass_drift")[1] > 0.01);
  }

  TEST_CASE("potential_grid: landscape summary") {
    const auto out = run_experiment(spec_for({{"name", "potential_grid"}, {"potential", {{"resolution", 64}}}}));
    CHECK(out.table("potential").row_count() == 64 * 64);
    CHECK(out.table("summary").column_values("minima")[0] == 4.0);
  }

  TEST_CASE("custom: pulse sequence reproduces the ideal run") {
    const auto out = run_experiment(spec_for({{"name", "custom"}, {"custom", {{"collision", "pulse_sequence"}}}}));
    CHECK(out.table("summary").column_values("max_dev_from_ideal")[1] < 1e-12);
  }

  TEST_CASE("custom scheme composition") {
    auto spec = spec_for({{"name", "custom"},
                          {"custom", {{"collision", "approx_swap"}, {"phase_error", "fixed"}, {"coupled_init", true}}},
                          {"random_phase", {{"delta", 0.4}}}});
    const auto scheme = error_scheme(spec);
    CHECK(scheme.kind() == fqlga::schemes::SchemeKind::coupled_init);
    CHECK(scheme.phase_error().has_value());
    CHECK(std::get<fqlga::schemes::FixedPhase>(*scheme.phase_error()).delta == 0.4);
    CHECK(scheme.label().find("multibias") != std::string::npos);
    spec.name = ExperimentName::fig3_spectrum;
    CHECK_THROWS_AS(error_scheme(spec), std::invalid_argument);
  }

  TEST_CASE("rejections carry the experiment name") {
    const auto spec =
        spec_for({{"name", "fig5_approx_swap"}, {"approx_swap", {{"f2", 0.508}, {"coupling", 0.0}}}});
    try {
      run_experiment(spec);
      FAIL("expected DegenerateError");
    } catch (const fqlga::DegenerateError& e) {
      CHECK(std::string(e.what()).find("fig5_approx_swap: ") == 0);
    }
  }

  TEST_CASE("short runs report an undefined fit instead of failing") {
    const auto out = run_experiment(spec_for({{"name", "fig5_approx_swap"}, {"lattice", {{"steps", 1}}}}));
    const auto& s = out.table("summary");
    CHECK(std::isnan(s.column_values("diffusion")[0]));
    CHECK_FALSE(s.provenance_value("fit_ideal").empty());
  }

  TEST_CASE("same seed gives byte-identical files; another seed does not") {
    const auto base = std::filesystem::temp_directory_path() / "fqlga_determinism";
    std::filesystem::remove_all(base);
    auto spec = spec_for({{"name", "fig7_random_phase"}, {"lattice", {{"steps", 12}}}, {"seed", 31}});
    spec.output_dir = base / "a";
    const auto a = write_experiment(spec, run_experiment(spec));
    spec.output_dir = base / "b";
    const auto b = write_experiment(spec, run_experiment(spec));
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(slurp(a[k]) == slurp(b[k]));

    auto other = spec_for({{"name", "fig7_random_phase"}, {"lattice", {{"steps", 12}}}, {"seed", 32}});
    const auto c = run_experiment(other);
    CHECK(csv_body(to_csv(c.table("trajectory_error"))) != csv_body(slurp(base / "a" / "trajectory_error.csv")));
    CHECK(csv_body(to_csv(c.table("trajectory_ideal"))) == csv_body(slurp(base / "a" / "trajectory_ideal.csv")));

    for (const auto& path : a) {
      if (path.extension() != ".csv") continue;
      const auto table = read_csv(path);
      CHECK(to_csv(table) == slurp(path));
    }
    std::filesystem::remove_all(base);
  }

  TEST_CASE("write_experiment reports I/O failures") {
    const auto blocker = std::filesystem::temp_directory_path() / "fqlga_blocker_file";
    std::ofstream(blocker) << "x";
    auto spec = spec_for({{"name", "fig3_spectrum"}, {"spectrum", {{"points", 3}}}});
    spec.output_dir = blocker / "sub";
    CHECK_THROWS_AS(write_experiment(spec, run_experiment(spec)), IoError);
    std::filesystem::remove(blocker);
  }
}
