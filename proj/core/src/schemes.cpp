#include "fqlga/schemes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fqlga/errors.hpp"

namespace fqlga::schemes {

using smallmat::Complex;
using smallmat::kron;
using smallmat::pauli_y;
using smallmat::pauli_z;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Matrix2 single_qubit_rotation(Axis axis, double theta) {
  const Matrix2 sigma = axis == Axis::y ? pauli_y() : pauli_z();
  return std::cos(0.5 * theta) * Matrix2::identity() +
         Complex(0.0, -std::sin(0.5 * theta)) * sigma;
}

Matrix4 exchange_generator() {
  return kron(pauli_z(), pauli_z()) + kron(pauli_y(), pauli_y());
}

Matrix4 half_swap_block() {
  Matrix4 s = Matrix4::identity();
  s(1, 1) = Complex(0.5, 0.5);
  s(1, 2) = Complex(0.5, -0.5);
  s(2, 1) = Complex(0.5, -0.5);
  s(2, 2) = Complex(0.5, 0.5);
  return s;
}

std::string describe(const PhaseDistribution& d) {
  return std::visit(Overloaded{[](const UniformFullCircle&) { return std::string("uniform"); },
                               [](const FixedPhase& f) {
                                 std::ostringstream s;
                                 s << "fixed " << f.delta;
                                 return s.str();
                               }},
                    d);
}

}  // namespace

// ---- gates ---------------------------------------------------------------

Matrix4 rotation(int qubit, Axis axis, double theta) {
  const Matrix2 r = single_qubit_rotation(axis, theta);
  const Matrix2 id = Matrix2::identity();
  switch (qubit) {
    case 1:
      return kron(r, id);
    case 2:
      return kron(id, r);
    default:
      throw std::invalid_argument("rotation: qubit must be 1 or 2");
  }
}

Matrix4 free_evolution(double angle) {
  return smallmat::evolve(exchange_generator(), 0.5 * angle);
}

Matrix4 gate_unitary(const Gate& gate) {
  return std::visit(Overloaded{[](const Rotation& r) { return rotation(r.qubit, r.axis, r.angle); },
                               [](const FreeEvolution& f) { return free_evolution(f.angle); }},
                    gate);
}

Matrix4 PulseSequence::unitary() const {
  Matrix4 u = Matrix4::identity();
  for (const auto& g : gates) u = gate_unitary(g) * u;
  return u;
}

PulseSequence PulseSequence::then(const PulseSequence& next) const {
  PulseSequence out = *this;
  out.gates.insert(out.gates.end(), next.gates.begin(), next.gates.end());
  return out;
}

PulseSequence zz_evolution_sequence() {
  // Each free evolution contributes exp(-i pi/16 (zz + yy)); the R_z(pi)
  // conjugation flips the sign of yy between them so only zz accumulates.
  return {{Rotation{1, Axis::z, M_PI}, FreeEvolution{M_PI / 8.0}, Rotation{1, Axis::z, M_PI},
           FreeEvolution{M_PI / 8.0}}};
}

PulseSequence xx_evolution_sequence() {
  const PulseSequence into{{Rotation{1, Axis::y, -M_PI / 2.0}, Rotation{2, Axis::y, -M_PI / 2.0}}};
  const PulseSequence out{{Rotation{1, Axis::y, M_PI / 2.0}, Rotation{2, Axis::y, M_PI / 2.0}}};
  return into.then(zz_evolution_sequence()).then(out);
}

PulseSequence sqrt_swap_sequence() {
  return xx_evolution_sequence().then(PulseSequence{{FreeEvolution{M_PI / 4.0}}});
}

// ---- collision unitaries and perturbations --------------------------------

Matrix4 ideal_unitary() { return lattice::sqrt_swap(); }

Matrix4 multibias_unitary(const pcqubit::CoupledParams& params) {
  params.validate();
  const auto es = smallmat::eig_hermitian(pcqubit::coupled_h(params));
  const double gap = es.values[2] - es.values[1];
  if (!(gap >= 1e-10)) {
    std::ostringstream msg;
    msg << "multibias_unitary: middle coupled eigenstates are degenerate (E2 - E1 = " << gap
        << ")";
    throw DegenerateError(msg.str());
  }
  Matrix4 v;
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t i = 0; i < 4; ++i) v(i, k) = es.vectors[k][i];
  return v * half_swap_block() * v.adjoint();
}

SiteState phase_perturb(const SiteState& state, double delta) {
  const Complex phase = std::polar(1.0, delta);
  return state.apply(Matrix4::diagonal({1.0, 1.0, phase, phase}));
}

double phase_error_amplitude(double p1, double p2) {
  return std::sqrt(std::max(0.0, p1 * (1.0 - p1) * p2 * (1.0 - p2)));
}

Occupations closed_form_phase_unclamped(double p1, double p2, double delta) {
  const double mean = 0.5 * (p1 + p2);
  const double shift = phase_error_amplitude(p1, p2) * std::sin(delta);
  return {mean - shift, mean + shift};
}

Occupations closed_form_phase(double p1, double p2, double delta) {
  const auto o = closed_form_phase_unclamped(p1, p2, delta);
  return {std::clamp(o.p1, 0.0, 1.0), std::clamp(o.p2, 0.0, 1.0)};
}

// ---- NMR-like single-qubit control ---------------------------------------

Matrix2 rotating_frame_h(const DriveParams& drive) {
  if (!(drive.amplitude >= 0.0)) throw std::invalid_argument("rotating_frame_h: amplitude must be >= 0");
  // (g/2)[cos(phi) sz/2 + sin(phi) sy/2]
  const double scale = 0.25 * drive.amplitude;
  return (scale * std::cos(drive.phase)) * pauli_z() + (scale * std::sin(drive.phase)) * pauli_y();
}

double precession_angle(const DriveParams& drive, double duration) {
  return 0.5 * drive.amplitude * duration;
}

// ---- initialization from the coupled ground state -------------------------

double geodesic_rotation_angle(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("geodesic_rotation_angle: probability outside [0, 1]");
  return 2.0 * std::asin(std::sqrt(p)) - 0.5 * M_PI;
}

CoupledGroundInitializer::CoupledGroundInitializer(double j_ratio) : j_ratio_(j_ratio) {
  if (!std::isfinite(j_ratio)) throw std::invalid_argument("CoupledGroundInitializer: j_ratio must be finite");
  pcqubit::CoupledParams p;
  p.first.flux = 0.5;
  p.second.flux = 0.5;
  const double omega = 2.0 * p.first.tunneling;
  p.coupling = j_ratio * omega;
  ground_ = smallmat::eig_hermitian(pcqubit::coupled_h(p)).vectors[0];
}

SiteState CoupledGroundInitializer::prepare(double p1, double p2) const {
  const Matrix2 r1 = single_qubit_rotation(Axis::y, geodesic_rotation_angle(p1));
  const Matrix2 r2 = single_qubit_rotation(Axis::y, geodesic_rotation_angle(p2));
  return SiteState(kron(r1, r2) * ground_);
}

SiteState coupled_ground_init(double p1, double p2, double j_ratio) {
  return CoupledGroundInitializer(j_ratio).prepare(p1, p2);
}

// ---- CollisionScheme -------------------------------------------------------

CollisionScheme CollisionScheme::ideal() {
  CollisionScheme s;
  s.kind_ = SchemeKind::ideal;
  s.label_ = "ideal";
  s.unitary_ = ideal_unitary();
  return s;
}

CollisionScheme CollisionScheme::multibias(const pcqubit::CoupledParams& params) {
  CollisionScheme s;
  s.kind_ = SchemeKind::multibias;
  std::ostringstream label;
  label << "multibias(f1=" << params.first.flux << ", f2=" << params.second.flux
        << ", eta=" << params.first.epsilon_scale << ", J=" << params.coupling << ")";
  s.label_ = label.str();
  s.unitary_ = multibias_unitary(params);
  return s;
}

CollisionScheme CollisionScheme::pulse_sequence(const PulseSequence& sequence) {
  CollisionScheme s;
  s.kind_ = SchemeKind::pulse_sequence;
  s.label_ = "pulse_sequence(" + std::to_string(sequence.gates.size()) + " gates)";
  s.unitary_ = sequence.unitary();
  return s;
}

CollisionScheme CollisionScheme::random_phase(const CollisionScheme& base,
                                              PhaseDistribution distribution) {
  if (base.phase_) throw std::invalid_argument("random_phase: base scheme already has a phase error");
  CollisionScheme s = base;
  s.kind_ = SchemeKind::random_phase;
  s.label_ = "random_phase(" + describe(distribution) + ", " + base.label_ + ")";
  s.phase_ = distribution;
  return s;
}

CollisionScheme CollisionScheme::coupled_init(double j_ratio, const CollisionScheme& base) {
  if (base.coupled_) throw std::invalid_argument("coupled_init: base scheme already uses the coupled initializer");
  CollisionScheme s = base;
  s.kind_ = SchemeKind::coupled_init;
  std::ostringstream label;
  label << "coupled_init(J/omega=" << j_ratio << ", " << base.label_ << ")";
  s.label_ = label.str();
  s.initializer_ = Initializer::rotation_from_coupled_ground;
  s.coupled_.emplace(j_ratio);
  return s;
}

std::optional<double> CollisionScheme::coupled_j_ratio() const {
  if (!coupled_) return std::nullopt;
  return coupled_->j_ratio();
}

SiteState CollisionScheme::prepare(double p1, double p2) const {
  if (coupled_) return coupled_->prepare(p1, p2);
  return lattice::init_site(p1, p2);
}

SiteState CollisionScheme::collide(double p1, double p2, double delta) const {
  SiteState s = prepare(p1, p2);
  if (delta != 0.0) s = phase_perturb(s, delta);
  return s.apply(unitary_);
}

Occupations CollisionScheme::expected(double p1, double p2) const {
  if (!phase_) return lattice::occupations_exact(collide(p1, p2, 0.0));
  if (const auto* fixed = std::get_if<FixedPhase>(&*phase_))
    return lattice::occupations_exact(collide(p1, p2, fixed->delta));
  // Outcome probabilities are first-degree trigonometric polynomials in delta,
  // so the mean over four equally spaced phases is the exact circular average.
  Occupations mean;
  for (int k = 0; k < 4; ++k) {
    const auto o = lattice::occupations_exact(collide(p1, p2, 0.5 * M_PI * k));
    mean.p1 += 0.25 * o.p1;
    mean.p2 += 0.25 * o.p2;
  }
  return mean;
}

Occupations CollisionScheme::sample(double p1, double p2, const MeasurementMode& mode,
                                    const SampleLocation& where) const {
  if (!mode.is_sampled()) return expected(p1, p2);
  const bool per_member_phase = phase_ && std::holds_alternative<UniformFullCircle>(*phase_);
  if (!per_member_phase) {
    const double delta = phase_ ? std::get<FixedPhase>(*phase_).delta : 0.0;
    return lattice::occupations_sampled(collide(p1, p2, delta), mode, where);
  }

  // Each outcome probability is a + b cos(delta) + c sin(delta); three
  // evaluations fix the coefficients for every member at this site.
  const auto at0 = collide(p1, p2, 0.0).probabilities();
  const auto at_half_pi = collide(p1, p2, 0.5 * M_PI).probabilities();
  const auto at_pi = collide(p1, p2, M_PI).probabilities();
  std::array<double, 4> a{}, b{}, c{};
  for (std::size_t k = 0; k < 4; ++k) {
    a[k] = 0.5 * (at0[k] + at_pi[k]);
    b[k] = 0.5 * (at0[k] - at_pi[k]);
    c[k] = at_half_pi[k] - a[k];
  }

  const rng::EnsembleKey key{mode.seed, where.timestep, where.site};
  std::uint64_t left = 0;
  std::uint64_t right = 0;
  for (std::uint64_t m = 0; m < mode.ensemble_size; ++m) {
    const auto draw = rng::member_draw(key, m);
    const double delta = 2.0 * M_PI * draw.phase;
    const double cos_d = std::cos(delta);
    const double sin_d = std::sin(delta);
    std::array<double, 4> probs;
    for (std::size_t k = 0; k < 4; ++k) probs[k] = a[k] + b[k] * cos_d + c[k] * sin_d;
    const int outcome = lattice::sample_basis_state(probs, draw.outcome);
    left += static_cast<std::uint64_t>(outcome >> 1);
    right += static_cast<std::uint64_t>(outcome & 1);
  }
  const double inv = 1.0 / static_cast<double>(mode.ensemble_size);
  return {static_cast<double>(left) * inv, static_cast<double>(right) * inv};
}

}  // namespace fqlga::schemes
