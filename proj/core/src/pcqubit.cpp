#include "fqlga/pcqubit.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fqlga::pcqubit {

using smallmat::kron;
using smallmat::pauli_x;
using smallmat::pauli_z;

void QubitParams::validate() const {
  std::ostringstream msg;
  if (!(epsilon_scale > 0.0) || !std::isfinite(epsilon_scale))
    msg << "epsilon_scale must be positive and finite (got " << epsilon_scale << ")";
  else if (!(tunneling > 0.0) || !std::isfinite(tunneling))
    msg << "tunneling must be positive and finite (got " << tunneling << ")";
  else if (!(flux > 0.0 && flux < 1.0))
    msg << "flux must lie in (0, 1) (got " << flux << ")";
  else
    return;
  throw std::invalid_argument("QubitParams: " + msg.str());
}

void CoupledParams::validate() const {
  first.validate();
  second.validate();
  if (!std::isfinite(coupling)) throw std::invalid_argument("CoupledParams: coupling must be finite");
}

void PotentialParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("PotentialParams: alpha must lie in (0, 1)");
  if (!std::isfinite(flux) || !(josephson_energy > 0.0))
    throw std::invalid_argument("PotentialParams: flux must be finite and E_j positive");
}

double junction_energy(double phase, double josephson_energy) {
  return josephson_energy * (1.0 - std::cos(phase));
}

double potential_2d(double phi_p, double phi_m, const PotentialParams& params) {
  const double a = params.alpha;
  return params.josephson_energy *
         (2.0 + a - 2.0 * std::cos(phi_p) * std::cos(phi_m) -
          a * std::cos(2.0 * M_PI * params.flux + 2.0 * phi_m));
}

Matrix2 two_level_h(const QubitParams& q) {
  return q.epsilon() * pauli_z() - q.tunneling * pauli_x();
}

Matrix4 coupled_h(const CoupledParams& p) {
  const auto id = Matrix2::identity();
  return kron(two_level_h(p.first), id) + kron(id, two_level_h(p.second)) +
         p.coupling * kron(pauli_z(), pauli_z());
}

Matrix4 drive_operator() {
  const auto id = Matrix2::identity();
  return kron(pauli_z(), id) + kron(id, pauli_z());
}

std::vector<SpectrumPoint> two_level_spectrum(const QubitParams& q, std::span<const double> fluxes) {
  std::vector<SpectrumPoint> out;
  out.reserve(fluxes.size());
  for (double f : fluxes) {
    QubitParams at = q;
    at.flux = f;
    at.validate();
    const auto es = smallmat::eig_hermitian(two_level_h(at));
    out.push_back({f, es.values[0], es.values[1]});
  }
  return out;
}

std::vector<AlignmentRow> alignment_sweep(double f1, std::span<const double> f2_values,
                                          const CoupledParams& tmpl) {
  const auto drive = drive_operator();
  const auto ket01 = smallmat::Vector4::basis(1);
  const auto ket10 = smallmat::Vector4::basis(2);

  std::vector<AlignmentRow> rows;
  rows.reserve(f2_values.size());
  int previous_dominant = -1;
  for (double f2 : f2_values) {
    CoupledParams p = tmpl;
    p.first.flux = f1;
    p.second.flux = f2;
    p.validate();
    const auto es = smallmat::eig_hermitian(coupled_h(p));
    const auto& e1 = es.vectors[1];
    const auto& e2 = es.vectors[2];

    AlignmentRow row;
    row.f2 = f2;
    row.overlap_first = std::abs(smallmat::inner(e1, ket01));
    row.overlap_second = std::abs(smallmat::inner(e2, ket10));
    row.rabi = std::abs(smallmat::inner(e1, drive * e2));
    row.middle_gap = es.values[2] - es.values[1];

    int dominant = 0;
    for (int i = 1; i < 4; ++i)
      if (std::abs(e1[i]) > std::abs(e1[dominant])) dominant = i;
    row.crossing = row.middle_gap < 1e-10 ||
                   (previous_dominant >= 0 && dominant != previous_dominant);
    previous_dominant = dominant;
    rows.push_back(row);
  }
  return rows;
}

double flux_for_probability(double p, const QubitParams& q) {
  if (!(p > 0.0 && p < 1.0)) {
    std::ostringstream msg;
    msg << "flux_for_probability: target probability must lie strictly inside (0, 1), got " << p
        << " (the endpoints need |f - 1/2| -> infinity)";
    throw std::domain_error(msg.str());
  }
  // Ground state of [[eps, -tau], [-tau, -eps]] has amplitude ratio
  // <1|g>/<0|g> = (eps + sqrt(eps^2 + tau^2)) / tau = sqrt(p / (1 - p)).
  const double ratio = (2.0 * p - 1.0) / (2.0 * std::sqrt(p * (1.0 - p)));
  return 0.5 + ratio / q.epsilon_scale;
}

double excited_occupancy_of_ground(const QubitParams& q) {
  const auto es = smallmat::eig_hermitian(two_level_h(q));
  return std::norm(es.vectors[0][1]);
}

double alignment_objective(const AlignmentRow& row, const CalibrationTarget& target) {
  const double overlap = std::min(row.overlap_first, row.overlap_second);
  const double d_overlap = (overlap - target.overlap) / (1.0 - target.overlap);
  const double d_rabi = (row.rabi - target.rabi) / target.rabi;
  return d_overlap * d_overlap + d_rabi * d_rabi;
}

CalibrationResult calibrate_epsilon_scale(const CalibrationTarget& target) {
  if (!(target.eta_step > 0.0) || !(target.eta_max >= target.eta_min) || !(target.eta_min > 0.0))
    throw std::invalid_argument("calibrate_epsilon_scale: invalid eta scan range");

  CalibrationResult best;
  best.objective = std::numeric_limits<double>::infinity();
  const double f2[] = {target.f2};
  const auto steps =
      static_cast<long>(std::floor((target.eta_max - target.eta_min) / target.eta_step + 1e-9));
  for (long k = 0; k <= steps; ++k) {
    const double eta = target.eta_min + static_cast<double>(k) * target.eta_step;
    CoupledParams p;
    p.first.epsilon_scale = eta;
    p.second.epsilon_scale = eta;
    p.coupling = target.coupling;
    const auto row = alignment_sweep(target.f1, f2, p).front();
    const double objective = alignment_objective(row, target);
    if (objective < best.objective) best = {eta, row, objective};
  }
  return best;
}

}  // namespace fqlga::pcqubit
