// Collision operators and the implementation-error models built on them.

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fqlga/pcqubit.hpp"
#include "fqlga/site.hpp"

namespace fqlga::schemes {

using lattice::MeasurementMode;
using lattice::Occupations;
using lattice::SampleLocation;
using lattice::SiteState;
using smallmat::Matrix2;
using smallmat::Matrix4;
using smallmat::Vector4;

// ---- gates ---------------------------------------------------------------

enum class Axis { y, z };

struct Rotation {
  int qubit = 1;  // 1 or 2
  Axis axis = Axis::y;
  double angle = 0.0;
};

// exp(-i * angle * (sz sz + sy sy) / 2), coupled evolution in the co-rotating frame.
struct FreeEvolution {
  double angle = 0.0;
};

using Gate = std::variant<Rotation, FreeEvolution>;

// Gates in the order they act: gates.front() is applied first.
struct PulseSequence {
  std::vector<Gate> gates;

  Matrix4 unitary() const;
  // `*this` followed by `next`.
  PulseSequence then(const PulseSequence& next) const;
};

// exp(-i theta sigma_axis / 2) on `qubit`, identity on the other.
// Throws std::invalid_argument unless qubit is 1 or 2.
Matrix4 rotation(int qubit, Axis axis, double theta);
Matrix4 free_evolution(double angle);
Matrix4 gate_unitary(const Gate& gate);

// exp(-i pi/8 sz sz) from two free evolutions interleaved with R_z(pi) on qubit 1.
PulseSequence zz_evolution_sequence();
// exp(-i pi/8 sx sx): the zz sequence conjugated by R_y(-/+ pi/2) on both qubits.
PulseSequence xx_evolution_sequence();
// sqrt-swap = free_evolution(pi/4) * exp(-i pi/8 sx sx), up to global phase.
PulseSequence sqrt_swap_sequence();

// ---- collision unitaries and perturbations --------------------------------

Matrix4 ideal_unitary();

// Quarter-Rabi-period pulse between the middle coupled eigenstates in the
// rotating frame with dynamic phases removed: V S V^dagger with V the coupled
// eigenbasis and S the half-swap on (E1, E2).
// Throws fqlga::DegenerateError when E2 - E1 < 1e-10.
Matrix4 multibias_unitary(const pcqubit::CoupledParams& params);

// Multiplies the |10>, |11> amplitudes by e^{i delta}.
SiteState phase_perturb(const SiteState& state, double delta);

// gamma = sqrt(P1 (1 - P1) P2 (1 - P2))
double phase_error_amplitude(double p1, double p2);

// Post-collision occupations of init_site(p1, p2) -> phase_perturb(delta) -> sqrt-swap:
// P1' = (P1 + P2)/2 - gamma sin(delta), P2' = (P1 + P2)/2 + gamma sin(delta),
// clamped to [0, 1].
Occupations closed_form_phase(double p1, double p2, double delta);

// Same without the clamp, so P1' + P2' = P1 + P2 can be checked directly.
Occupations closed_form_phase_unclamped(double p1, double p2, double delta);

// ---- NMR-like single-qubit control ---------------------------------------

struct DriveParams {
  double frequency = 2.0;  // w_o, resonant with the f = 1/2 gap 2 tau
  double amplitude = 0.0;  // g_o >= 0
  double phase = 0.0;      // phi
};

// (g_o / 2) [cos(phi) I_z + sin(phi) I_y] with I = sigma / 2 (hbar = 1).
// Throws std::invalid_argument when amplitude < 0.
Matrix2 rotating_frame_h(const DriveParams& drive);

// theta = g_o t / 2
double precession_angle(const DriveParams& drive, double duration);

// ---- initialization from the coupled ground state -------------------------

// Two f = 1/2 qubits (gap omega = 2 tau) coupled by J sigma_z sigma_z with
// J = j_ratio * omega. Preparation applies R_y(alpha_1) (x) R_y(alpha_2), the
// rotations that carry the uncoupled ground state |+>|+> to
// init_site(P1, P2), to the true coupled ground state instead.
class CoupledGroundInitializer {
 public:
  explicit CoupledGroundInitializer(double j_ratio);

  double j_ratio() const { return j_ratio_; }
  const Vector4& ground_state() const { return ground_; }

  SiteState prepare(double p1, double p2) const;

 private:
  double j_ratio_;
  Vector4 ground_;
};

SiteState coupled_ground_init(double p1, double p2, double j_ratio);

// R_y angle taking |+> to sqrt(1 - p)|0> + sqrt(p)|1>.
double geodesic_rotation_angle(double p);

// ---- scheme descriptions --------------------------------------------------

struct UniformFullCircle {};
struct FixedPhase {
  double delta = 0.0;
};
using PhaseDistribution = std::variant<UniformFullCircle, FixedPhase>;

enum class SchemeKind { ideal, multibias, random_phase, pulse_sequence, coupled_init };
enum class Initializer { product_geodesic, rotation_from_coupled_ground };

// Immutable description of how each site is prepared, perturbed and collided.
// Wrappers (random_phase, coupled_init) are flattened at construction into
// one initializer, an optional per-member phase error and one 4x4 unitary.
class CollisionScheme {
 public:
  static CollisionScheme ideal();
  static CollisionScheme multibias(const pcqubit::CoupledParams& params);
  static CollisionScheme pulse_sequence(const PulseSequence& sequence);
  // Throws std::invalid_argument if `base` already carries a phase error.
  static CollisionScheme random_phase(const CollisionScheme& base, PhaseDistribution distribution);
  // Throws std::invalid_argument if `base` already uses the coupled-ground initializer.
  static CollisionScheme coupled_init(double j_ratio, const CollisionScheme& base);

  SchemeKind kind() const { return kind_; }
  Initializer initializer() const { return initializer_; }
  const Matrix4& unitary() const { return unitary_; }
  const std::optional<PhaseDistribution>& phase_error() const { return phase_; }
  std::optional<double> coupled_j_ratio() const;
  const std::string& label() const { return label_; }

  SiteState prepare(double p1, double p2) const;
  // prepare -> phase_perturb(delta) -> unitary
  SiteState collide(double p1, double p2, double delta) const;

  // Expectation over the phase-error distribution (exact measurement mode).
  Occupations expected(double p1, double p2) const;
  // Ensemble of mode.ensemble_size members; member m draws its phase and its
  // measurement outcome from the counter keyed by (seed, timestep, site, m).
  Occupations sample(double p1, double p2, const MeasurementMode& mode,
                     const SampleLocation& where) const;

 private:
  CollisionScheme() = default;

  SchemeKind kind_ = SchemeKind::ideal;
  std::string label_ = "ideal";
  Matrix4 unitary_ = Matrix4::identity();
  Initializer initializer_ = Initializer::product_geodesic;
  std::optional<CoupledGroundInitializer> coupled_;
  std::optional<PhaseDistribution> phase_;
};

}  // namespace fqlga::schemes
