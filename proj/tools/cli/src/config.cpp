#include "fqlga_cli/config.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "fqlga_cli/result_table.hpp"

namespace fqlga::cli {

namespace {

constexpr std::array<std::pair<ExperimentName, std::string_view>, 7> kNames{{
    {ExperimentName::fig3_spectrum, "fig3_spectrum"},
    {ExperimentName::fig4_alignment, "fig4_alignment"},
    {ExperimentName::fig5_approx_swap, "fig5_approx_swap"},
    {ExperimentName::fig7_random_phase, "fig7_random_phase"},
    {ExperimentName::fig8_coupled_init, "fig8_coupled_init"},
    {ExperimentName::potential_grid, "potential_grid"},
    {ExperimentName::custom, "custom"},
}};

std::string join(const std::string& parent, const std::string& key) {
  std::string escaped;
  for (const char c : key) {
    if (c == '~') escaped += "~0";
    else if (c == '/') escaped += "~1";
    else escaped += c;
  }
  return parent + "/" + escaped;
}

bool types_compatible(const Json& fallback, const Json& value) {
  if (fallback.is_null()) return value.is_null() || value.is_number();
  if (fallback.is_number_float()) return value.is_number();
  if (fallback.is_number_integer()) return value.is_number_integer();
  if (fallback.is_boolean()) return value.is_boolean();
  if (fallback.is_string()) return value.is_string();
  if (fallback.is_array()) return value.is_array();
  if (fallback.is_object()) return value.is_object();
  return false;
}

std::string_view kind_name(const Json& j) {
  if (j.is_null()) return "null";
  if (j.is_number_integer()) return "integer";
  if (j.is_number()) return "number";
  return j.type_name();
}

std::string_view expected_name(const Json& fallback) {
  if (fallback.is_null() || fallback.is_number_float()) return "number";
  if (fallback.is_number_integer()) return "non-negative integer";
  return fallback.type_name();
}

// Recursively reject keys absent from `schema` and values of the wrong kind.
void check_shape(const Json& user, const Json& schema, const std::string& where) {
  for (const auto& [key, value] : user.items()) {
    const std::string here = join(where, key);
    if (!schema.contains(key)) throw ConfigError(here, "unknown key");
    const Json& fallback = schema.at(key);
    if (!types_compatible(fallback, value))
      throw ConfigError(here, "expected " + std::string(expected_name(fallback)) + ", found " +
                                  std::string(kind_name(value)));
    if (fallback.is_number_unsigned() && value.is_number_integer() && value.get<std::int64_t>() < 0 &&
        !value.is_number_unsigned())
      throw ConfigError(here, "must be a non-negative integer");
    if (fallback.is_object()) check_shape(value, fallback, here);
  }
}

Json experiment_defaults(ExperimentName name) {
  Json patch = Json::object();
  if (name == ExperimentName::fig7_random_phase) patch["measurement"]["mode"] = "sampled";
  return patch;
}

double number(const Json& doc, const std::string& pointer) {
  const Json& v = doc.at(Json::json_pointer(pointer));
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(pointer, "must be finite");
  return x;
}

std::uint64_t count(const Json& doc, const std::string& pointer) {
  return doc.at(Json::json_pointer(pointer)).get<std::uint64_t>();
}

std::string text(const Json& doc, const std::string& pointer) {
  return doc.at(Json::json_pointer(pointer)).get<std::string>();
}

void require(bool ok, const std::string& pointer, const std::string& message) {
  if (!ok) throw ConfigError(pointer, message);
}

void require_flux(double f, const std::string& pointer) {
  require(f > 0.0 && f < 1.0, pointer, "flux must lie in (0, 1)");
}

}  // namespace

std::string_view to_string(ExperimentName name) {
  for (const auto& [n, s] : kNames)
    if (n == name) return s;
  return "custom";
}

std::optional<ExperimentName> parse_experiment_name(std::string_view text) {
  for (const auto& [n, s] : kNames)
    if (s == text) return n;
  return std::nullopt;
}

bool is_lattice_experiment(ExperimentName name) {
  switch (name) {
    case ExperimentName::fig5_approx_swap:
    case ExperimentName::fig7_random_phase:
    case ExperimentName::fig8_coupled_init:
    case ExperimentName::custom:
      return true;
    default:
      return false;
  }
}

ConfigError::ConfigError(std::string pointer, const std::string& message)
    : std::runtime_error("config error at " + (pointer.empty() ? std::string("/") : pointer) + ": " + message),
      pointer_(std::move(pointer)) {}

const Json& default_config() {
  static const Json defaults = [] {
    Json d = Json::parse(R"({
      "output_dir": "out",
      "seed": 0,
      "measurement": {"mode": "exact", "ensemble_size": 1000},
      "lattice": {
        "sites": 64,
        "steps": 40,
        "profile": {"kind": "gaussian", "center": null, "width": 6.0, "peak_density": 1.0, "density": []}
      },
      "qubit": {"epsilon_scale": 497.0, "tunneling": 1.0},
      "approx_swap": {"f1": 0.508, "f2": 0.51, "coupling": 1.0},
      "random_phase": {"distribution": "uniform", "delta": 0.0},
      "coupled_init": {"j_ratio": 0.1},
      "custom": {"collision": "ideal", "phase_error": "none", "coupled_init": false},
      "spectrum": {"f_min": 0.45, "f_max": 0.55, "points": 101},
      "alignment": {"f1": 0.508, "f2_min": 0.50, "f2_max": 0.52, "points": 201, "coupling": 1.0},
      "potential": {"alpha": 0.8, "flux": 0.495, "josephson_energy": 1.0, "resolution": 128}
    })");
    d["defaults_version"] = static_cast<std::uint64_t>(kDefaultsVersion);
    d["name"] = "";
    d["qubit"]["epsilon_scale"] = pcqubit::kCalibratedEpsilonScale;
    return d;
  }();
  return defaults;
}

ExperimentSpec parse_config(const Json& user, const ConfigOverrides& overrides) {
  if (!user.is_object()) throw ConfigError("", "top level must be a JSON object");
  check_shape(user, default_config(), "");

  if (!user.contains("name")) throw ConfigError("/name", "required key missing");
  const auto name = parse_experiment_name(user.at("name").get<std::string>());
  if (!name) {
    std::string known;
    for (const auto& [n, s] : kNames) known += (known.empty() ? "" : ", ") + std::string(s);
    throw ConfigError("/name", "unknown experiment '" + user.at("name").get<std::string>() +
                                   "' (expected one of: " + known + ")");
  }
  if (user.contains("defaults_version") && user.at("defaults_version") != kDefaultsVersion)
    throw ConfigError("/defaults_version", "unsupported version, expected " + std::to_string(kDefaultsVersion));

  Json doc = default_config();
  doc.merge_patch(experiment_defaults(*name));
  doc.merge_patch(user);
  if (overrides.seed) doc["seed"] = *overrides.seed;
  if (overrides.mode) doc["measurement"]["mode"] = *overrides.mode;
  if (overrides.output_dir) doc["output_dir"] = overrides.output_dir->generic_string();

  ExperimentSpec spec;
  spec.name = *name;
  spec.output_dir = text(doc, "/output_dir");
  require(!spec.output_dir.empty(), "/output_dir", "must not be empty");
  spec.seed = count(doc, "/seed");

  // measurement
  const std::string mode = text(doc, "/measurement/mode");
  const std::uint64_t ensemble = count(doc, "/measurement/ensemble_size");
  if (mode == "exact") {
    spec.run.mode = lattice::MeasurementMode::exact();
  } else if (mode == "sampled") {
    require(ensemble >= 1, "/measurement/ensemble_size", "must be >= 1 in sampled mode");
    spec.run.mode = lattice::MeasurementMode::sampled(ensemble, spec.seed);
  } else {
    throw ConfigError("/measurement/mode", "expected \"exact\" or \"sampled\", found \"" + mode + "\"");
  }

  // lattice and profile
  spec.run.sites = count(doc, "/lattice/sites");
  spec.run.steps = count(doc, "/lattice/steps");
  require(spec.run.sites >= 3, "/lattice/sites", "must be >= 3");
  const std::string kind = text(doc, "/lattice/profile/kind");
  Json& profile = doc["lattice"]["profile"];
  if (kind == "gaussian") {
    require(profile["density"].empty(), "/lattice/profile/density", "only valid when kind is \"explicit\"");
    if (profile["center"].is_null()) profile["center"] = 0.5 * static_cast<double>(spec.run.sites);
    lattice::GaussianProfile g;
    g.center = number(doc, "/lattice/profile/center");
    g.width = number(doc, "/lattice/profile/width");
    g.peak_density = number(doc, "/lattice/profile/peak_density");
    require(g.width > 0.0, "/lattice/profile/width", "must be positive");
    require(g.peak_density >= 0.0, "/lattice/profile/peak_density", "must be >= 0");
    require(g.peak_density <= 2.0, "/lattice/profile/peak_density", "P=rho/2 exceeds 1");
    spec.run.profile = g;
  } else if (kind == "explicit") {
    lattice::ExplicitProfile e;
    const Json& rho = profile["density"];
    require(rho.size() == spec.run.sites, "/lattice/profile/density",
            "length " + std::to_string(rho.size()) + " does not match sites = " + std::to_string(spec.run.sites));
    for (std::size_t n = 0; n < rho.size(); ++n) {
      const std::string here = "/lattice/profile/density/" + std::to_string(n);
      require(rho[n].is_number(), here, "expected number");
      const double r = rho[n].get<double>();
      require(r >= 0.0, here, "must be >= 0");
      require(r <= 2.0, here, "P=rho/2 exceeds 1");
      e.density.push_back(r);
    }
    spec.run.profile = std::move(e);
  } else {
    throw ConfigError("/lattice/profile/kind", "expected \"gaussian\" or \"explicit\", found \"" + kind + "\"");
  }

  // qubits
  spec.qubit.epsilon_scale = number(doc, "/qubit/epsilon_scale");
  spec.qubit.tunneling = number(doc, "/qubit/tunneling");
  require(spec.qubit.epsilon_scale > 0.0, "/qubit/epsilon_scale", "must be positive");
  require(spec.qubit.tunneling > 0.0, "/qubit/tunneling", "must be positive");

  spec.approx_swap.first = spec.qubit;
  spec.approx_swap.second = spec.qubit;
  spec.approx_swap.first.flux = number(doc, "/approx_swap/f1");
  spec.approx_swap.second.flux = number(doc, "/approx_swap/f2");
  spec.approx_swap.coupling = number(doc, "/approx_swap/coupling");
  require_flux(spec.approx_swap.first.flux, "/approx_swap/f1");
  require_flux(spec.approx_swap.second.flux, "/approx_swap/f2");

  const std::string distribution = text(doc, "/random_phase/distribution");
  if (distribution == "uniform") {
    spec.phase = schemes::UniformFullCircle{};
  } else if (distribution == "fixed") {
    spec.phase = schemes::FixedPhase{number(doc, "/random_phase/delta")};
  } else {
    throw ConfigError("/random_phase/distribution",
                      "expected \"uniform\" or \"fixed\", found \"" + distribution + "\"");
  }

  spec.coupled_j_ratio = number(doc, "/coupled_init/j_ratio");

  const std::string collision = text(doc, "/custom/collision");
  if (collision == "ideal") spec.custom.collision = CollisionKind::ideal;
  else if (collision == "approx_swap") spec.custom.collision = CollisionKind::approx_swap;
  else if (collision == "pulse_sequence") spec.custom.collision = CollisionKind::pulse_sequence;
  else
    throw ConfigError("/custom/collision",
                      "expected \"ideal\", \"approx_swap\" or \"pulse_sequence\", found \"" + collision + "\"");
  const std::string phase_error = text(doc, "/custom/phase_error");
  if (phase_error == "none") spec.custom.phase_error = PhaseErrorKind::none;
  else if (phase_error == "uniform") spec.custom.phase_error = PhaseErrorKind::uniform;
  else if (phase_error == "fixed") spec.custom.phase_error = PhaseErrorKind::fixed;
  else
    throw ConfigError("/custom/phase_error",
                      "expected \"none\", \"uniform\" or \"fixed\", found \"" + phase_error + "\"");
  spec.custom.coupled_init = doc.at(Json::json_pointer("/custom/coupled_init")).get<bool>();

  // sweeps
  spec.spectrum.f_min = number(doc, "/spectrum/f_min");
  spec.spectrum.f_max = number(doc, "/spectrum/f_max");
  spec.spectrum.points = count(doc, "/spectrum/points");
  require_flux(spec.spectrum.f_min, "/spectrum/f_min");
  require_flux(spec.spectrum.f_max, "/spectrum/f_max");
  require(spec.spectrum.f_min <= spec.spectrum.f_max, "/spectrum/f_max", "must be >= f_min");
  require(spec.spectrum.points >= 2, "/spectrum/points", "must be >= 2");

  spec.alignment.f1 = number(doc, "/alignment/f1");
  spec.alignment.f2_min = number(doc, "/alignment/f2_min");
  spec.alignment.f2_max = number(doc, "/alignment/f2_max");
  spec.alignment.points = count(doc, "/alignment/points");
  spec.alignment.coupling = number(doc, "/alignment/coupling");
  require_flux(spec.alignment.f1, "/alignment/f1");
  require_flux(spec.alignment.f2_min, "/alignment/f2_min");
  require_flux(spec.alignment.f2_max, "/alignment/f2_max");
  require(spec.alignment.f2_min <= spec.alignment.f2_max, "/alignment/f2_max", "must be >= f2_min");
  require(spec.alignment.points >= 2, "/alignment/points", "must be >= 2");

  spec.potential.params.alpha = number(doc, "/potential/alpha");
  spec.potential.params.flux = number(doc, "/potential/flux");
  spec.potential.params.josephson_energy = number(doc, "/potential/josephson_energy");
  spec.potential.resolution = count(doc, "/potential/resolution");
  require(spec.potential.params.alpha > 0.0 && spec.potential.params.alpha < 1.0, "/potential/alpha",
          "must lie in (0, 1)");
  require(spec.potential.params.josephson_energy > 0.0, "/potential/josephson_energy", "must be positive");
  require(spec.potential.resolution >= 8, "/potential/resolution", "must be >= 8");

  try {
    spec.run.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("/lattice", e.what());
  }

  spec.resolved = std::move(doc);
  return spec;
}

ExperimentSpec load_config(const std::filesystem::path& path, const ConfigOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  Json user;
  try {
    user = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("", path.string() + ": malformed JSON: " + e.what());
  }
  return parse_config(user, overrides);
}

std::string config_hash(const Json& resolved) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : resolved.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace fqlga::cli
