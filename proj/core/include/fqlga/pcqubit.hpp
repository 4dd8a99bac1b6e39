// Persistent-current (flux) qubit physics in the two-level approximation.
//
// Energies are in units of the tunneling element tau (tau = 1 by default).
// The single-qubit Hamiltonian is eps * sigma_z - tau * sigma_x with
// eps = eta * tau * (f - 1/2) and sigma_z = diag(+1, -1), so |0> is the
// circulating-current state whose energy rises with the flux bias f.

#pragma once

#include <span>
#include <vector>

#include "fqlga/smallmat.hpp"

namespace fqlga::pcqubit {

using smallmat::Matrix2;
using smallmat::Matrix4;

// eta chosen by calibrate_epsilon_scale() with the default CalibrationTarget;
// `fqlga calibrate` reproduces it.
inline constexpr double kCalibratedEpsilonScale = 497.0;

struct QubitParams {
  double flux = 0.5;                                // f, in flux quanta
  double epsilon_scale = kCalibratedEpsilonScale;  // eta = Phi_0 I_p / tau
  double tunneling = 1.0;        // tau

  double epsilon() const { return epsilon_scale * tunneling * (flux - 0.5); }
  // Throws std::invalid_argument unless eta > 0, tau > 0 and f in (0, 1).
  void validate() const;
};

struct CoupledParams {
  QubitParams first;
  QubitParams second;
  double coupling = 1.0;  // J, coefficient of sigma_z (x) sigma_z

  void validate() const;
};

struct PotentialParams {
  double alpha = 0.8;
  double flux = 0.495;
  double josephson_energy = 1.0;

  void validate() const;
};

// E_j (1 - cos phi).
double junction_energy(double phase, double josephson_energy = 1.0);

// E_j [2 + alpha - 2 cos(phi_p) cos(phi_m) - alpha cos(2 pi f + 2 phi_m)]
double potential_2d(double phi_p, double phi_m, const PotentialParams& params);

Matrix2 two_level_h(const QubitParams& q);

// H1 (x) I + I (x) H2 + J sigma_z (x) sigma_z
Matrix4 coupled_h(const CoupledParams& p);

// Microwave drive enters only through sigma_z: sigma_z (x) I + I (x) sigma_z.
Matrix4 drive_operator();

struct SpectrumPoint {
  double flux = 0.0;
  double ground = 0.0;
  double excited = 0.0;

  double gap() const { return excited - ground; }
};

std::vector<SpectrumPoint> two_level_spectrum(const QubitParams& q, std::span<const double> fluxes);

struct AlignmentRow {
  double f2 = 0.0;
  double overlap_first = 0.0;   // |<E1|01>|
  double overlap_second = 0.0;  // |<E2|10>|
  double rabi = 0.0;            // |<E1| drive |E2>|
  double middle_gap = 0.0;      // E2 - E1
  // E1/E2 are labelled by energy; set when the dominant computational state of
  // E1 differs from the previous row (the pair exchanged character) or the
  // middle pair is degenerate within 1e-10.
  bool crossing = false;
};

// One row per f2 with qubit 1 held at f1; the remaining parameters (eta, tau,
// J) come from `tmpl`.
std::vector<AlignmentRow> alignment_sweep(double f1, std::span<const double> f2_values,
                                          const CoupledParams& tmpl);

// Flux bias whose single-qubit ground state has |<1|ground>|^2 = p. The ground
// state amplitudes are real and positive along the whole curve.
// Throws std::domain_error unless 0 < p < 1.
double flux_for_probability(double p, const QubitParams& q);

// |<1|ground>|^2 of two_level_h(q).
double excited_occupancy_of_ground(const QubitParams& q);

struct CalibrationTarget {
  double f1 = 0.508;
  double f2 = 0.51;
  double coupling = 1.0;
  double overlap = 0.97;
  double rabi = 0.02;
  double eta_min = 100.0;
  double eta_max = 1000.0;
  double eta_step = 1.0;
};

struct CalibrationResult {
  double epsilon_scale = 0.0;
  AlignmentRow row;
  double objective = 0.0;
};

//   ((min overlap - target) / (1 - target))^2 + ((rabi - target) / target)^2
double alignment_objective(const AlignmentRow& row, const CalibrationTarget& target);

// Grid scan over eta minimizing alignment_objective() at the target bias point.
CalibrationResult calibrate_epsilon_scale(const CalibrationTarget& target);

// ---- potential landscape -------------------------------------------------

struct PotentialGrid {
  std::size_t resolution = 0;  // points per axis over [-pi, pi)
  std::vector<double> axis;    // shared phi_p / phi_m sample values
  std::vector<double> energy;  // row-major, energy[i * resolution + j] at (axis[i], axis[j])

  double at(std::size_t i, std::size_t j) const { return energy[i * resolution + j]; }
};

PotentialGrid potential_grid(const PotentialParams& params, std::size_t resolution);

struct LandscapeSummary {
  std::size_t minima = 0;
  double unit_cells = 0.0;      // cells of area 2 pi^2 contained in the periodic domain
  bool pairs_merge_first = false;  // every minimum first joins exactly one partner
  double intra_barrier = 0.0;   // level at which each double well connects internally
  double inter_barrier = 0.0;   // level at which distinct double wells connect
};

// Local minima and merge levels of sublevel sets on the periodic grid.
LandscapeSummary analyze_landscape(const PotentialGrid& grid);

}  // namespace fqlga::pcqubit
