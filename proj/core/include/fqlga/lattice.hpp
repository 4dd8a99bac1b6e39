// The lattice-gas time loop: initialize, collide, measure, stream.

#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "fqlga/schemes.hpp"
#include "fqlga/site.hpp"

namespace fqlga::lattice {

// Per-site occupation probabilities. p1 moves +1 site per stream, p2 moves -1.
class OccupationField {
 public:
  // Throws std::invalid_argument on size mismatch, empty lattice or any
  // probability outside [0, 1].
  OccupationField(std::vector<double> p1, std::vector<double> p2, std::int64_t timestep = 0);

  // Local-equilibrium split P1 = P2 = rho / 2.
  static OccupationField equilibrium(std::span<const double> density, std::int64_t timestep = 0);

  std::size_t size() const { return p1_.size(); }
  std::int64_t timestep() const { return timestep_; }
  const std::vector<double>& p1() const { return p1_; }
  const std::vector<double>& p2() const { return p2_; }

  double density(std::size_t site) const { return p1_[site] + p2_[site]; }
  std::vector<double> density() const;
  double mass() const;

 private:
  std::vector<double> p1_;
  std::vector<double> p2_;
  std::int64_t timestep_ = 0;
};

// Periodic shift: p1 by +1 site, p2 by -1 site. Timestep unchanged.
OccupationField stream(const OccupationField& field);

// One full time step. Each site is prepared from its current (P1, P2) by the
// scheme's initializer, collided, measured per `mode`, clamped to [0, 1] and
// streamed. Sites are evaluated in parallel for large ensembles.
OccupationField step(const OccupationField& field, const schemes::CollisionScheme& scheme,
                     const MeasurementMode& mode);

struct GaussianProfile {
  double center = 32.0;
  double width = 6.0;
  double peak_density = 1.0;
};

struct ExplicitProfile {
  std::vector<double> density;
};

using InitialProfile = std::variant<GaussianProfile, ExplicitProfile>;

// rho_n for n = 0 .. sites-1.
std::vector<double> discretize(const InitialProfile& profile, std::size_t sites);

struct RunConfig {
  std::size_t sites = 64;
  std::size_t steps = 0;
  InitialProfile profile = GaussianProfile{};
  schemes::CollisionScheme scheme = schemes::CollisionScheme::ideal();
  MeasurementMode mode = MeasurementMode::exact();

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct Trajectory {
  std::vector<OccupationField> snapshots;  // t = 0 .. steps

  std::vector<std::vector<double>> densities() const;
  std::vector<double> masses() const;
};

Trajectory run(const RunConfig& config);

// max_t |mass(t) - mass(0)| / mass(0)
double relative_mass_drift(const Trajectory& trajectory);

// Classical stencil rho_n(t+1) = (rho_{n-1}(t) + rho_{n+1}(t)) / 2, periodic.
std::vector<double> classical_diffusion_step(std::span<const double> density);

struct DiffusionFit {
  double diffusion = 0.0;  // slope / 2, lattice units
  double std_error = 0.0;  // standard error of `diffusion` from the fit residuals
  double intercept = 0.0;
  std::vector<double> variances;  // spatial variance of rho / mass per snapshot
};

// Least-squares line through the spatial variance of rho / mass versus t.
// Throws std::invalid_argument for fewer than three snapshots and
// fqlga::DegenerateError for a zero-mass or spatially constant snapshot.
DiffusionFit fit_diffusion_constant(std::span<const std::vector<double>> densities);
DiffusionFit fit_diffusion_constant(const Trajectory& trajectory);

}  // namespace fqlga::lattice
