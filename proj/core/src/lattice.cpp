#include "fqlga/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"

namespace fqlga::lattice {

namespace {

void check_probabilities(const std::vector<double>& p, const char* name) {
  for (std::size_t n = 0; n < p.size(); ++n)
    if (!(p[n] >= 0.0 && p[n] <= 1.0)) {
      std::ostringstream msg;
      msg << "OccupationField: " << name << "[" << n << "] = " << p[n] << " outside [0, 1]";
      throw std::invalid_argument(msg.str());
    }
}

}  // namespace

OccupationField::OccupationField(std::vector<double> p1, std::vector<double> p2,
                                 std::int64_t timestep)
    : p1_(std::move(p1)), p2_(std::move(p2)), timestep_(timestep) {
  if (p1_.empty()) throw std::invalid_argument("OccupationField: empty lattice");
  if (p1_.size() != p2_.size()) throw std::invalid_argument("OccupationField: P1 and P2 sizes differ");
  check_probabilities(p1_, "P1");
  check_probabilities(p2_, "P2");
}

OccupationField OccupationField::equilibrium(std::span<const double> density, std::int64_t timestep) {
  std::vector<double> half(density.size());
  std::transform(density.begin(), density.end(), half.begin(), [](double r) { return 0.5 * r; });
  return OccupationField(half, half, timestep);
}

std::vector<double> OccupationField::density() const {
  std::vector<double> rho(size());
  for (std::size_t n = 0; n < size(); ++n) rho[n] = density(n);
  return rho;
}

double OccupationField::mass() const {
  return std::accumulate(p1_.begin(), p1_.end(), 0.0) + std::accumulate(p2_.begin(), p2_.end(), 0.0);
}

OccupationField stream(const OccupationField& field) {
  const std::size_t n = field.size();
  std::vector<double> p1(n), p2(n);
  for (std::size_t i = 0; i < n; ++i) {
    p1[(i + 1) % n] = field.p1()[i];
    p2[(i + n - 1) % n] = field.p2()[i];
  }
  return OccupationField(std::move(p1), std::move(p2), field.timestep());
}

OccupationField step(const OccupationField& field, const schemes::CollisionScheme& scheme,
                     const MeasurementMode& mode) {
  const std::size_t n = field.size();
  std::vector<double> q1(n), q2(n);
  const auto t = static_cast<std::uint64_t>(field.timestep());
  const bool heavy = mode.is_sampled() && mode.ensemble_size * n >= (1u << 16);

  detail::parallel_for(n, heavy, [&](std::size_t site) {
    const Occupations o = mode.is_sampled()
                              ? scheme.sample(field.p1()[site], field.p2()[site], mode, {t, site})
                              : scheme.expected(field.p1()[site], field.p2()[site]);
    q1[site] = std::clamp(o.p1, 0.0, 1.0);
    q2[site] = std::clamp(o.p2, 0.0, 1.0);
  });

  const OccupationField collided(std::move(q1), std::move(q2), field.timestep() + 1);
  return stream(collided);
}

std::vector<double> discretize(const InitialProfile& profile, std::size_t sites) {
  if (const auto* explicit_profile = std::get_if<ExplicitProfile>(&profile))
    return explicit_profile->density;
  const auto& g = std::get<GaussianProfile>(profile);
  std::vector<double> rho(sites);
  for (std::size_t n = 0; n < sites; ++n) {
    const double x = static_cast<double>(n) - g.center;
    rho[n] = g.peak_density * std::exp(-x * x / (2.0 * g.width * g.width));
  }
  return rho;
}

void RunConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("RunConfig: " + what); };
  if (sites < 3) fail("sites must be >= 3");
  if (mode.is_sampled() && mode.ensemble_size == 0) fail("ensemble_size must be >= 1");
  if (const auto* g = std::get_if<GaussianProfile>(&profile)) {
    if (!(g->peak_density >= 0.0)) fail("peak_density must be >= 0");
    if (!(g->peak_density <= 2.0)) fail("peak_density: P=rho/2 exceeds 1");
    if (!(g->width > 0.0) || !std::isfinite(g->width)) fail("width must be positive");
    if (!std::isfinite(g->center)) fail("center must be finite");
  } else {
    const auto& rho = std::get<ExplicitProfile>(profile).density;
    if (rho.size() != sites) fail("explicit density length must equal sites");
    for (std::size_t n = 0; n < rho.size(); ++n) {
      if (!(rho[n] >= 0.0)) fail("explicit density[" + std::to_string(n) + "] must be >= 0");
      if (!(rho[n] <= 2.0))
        fail("explicit density[" + std::to_string(n) + "]: P=rho/2 exceeds 1");
    }
  }
}

std::vector<std::vector<double>> Trajectory::densities() const {
  std::vector<std::vector<double>> out;
  out.reserve(snapshots.size());
  for (const auto& s : snapshots) out.push_back(s.density());
  return out;
}

std::vector<double> Trajectory::masses() const {
  std::vector<double> out;
  out.reserve(snapshots.size());
  for (const auto& s : snapshots) out.push_back(s.mass());
  return out;
}

Trajectory run(const RunConfig& config) {
  config.validate();
  Trajectory traj;
  traj.snapshots.reserve(config.steps + 1);
  traj.snapshots.push_back(OccupationField::equilibrium(discretize(config.profile, config.sites)));
  for (std::size_t t = 0; t < config.steps; ++t)
    traj.snapshots.push_back(step(traj.snapshots.back(), config.scheme, config.mode));
  return traj;
}

double relative_mass_drift(const Trajectory& trajectory) {
  if (trajectory.snapshots.empty()) return 0.0;
  const double m0 = trajectory.snapshots.front().mass();
  double drift = 0.0;
  for (const auto& s : trajectory.snapshots) drift = std::max(drift, std::abs(s.mass() - m0));
  return m0 > 0.0 ? drift / m0 : drift;
}

std::vector<double> classical_diffusion_step(std::span<const double> density) {
  const std::size_t n = density.size();
  std::vector<double> next(n);
  for (std::size_t i = 0; i < n; ++i)
    next[i] = 0.5 * (density[(i + n - 1) % n] + density[(i + 1) % n]);
  return next;
}

}  // namespace fqlga::lattice
