// Per-site state of the two-qubit lattice-gas cell.
//
// Qubit 1 (left tensor factor) carries the left-mover occupation P1, qubit 2
// the right-mover occupation P2. Basis order is |00>, |01>, |10>, |11>.

#pragma once

#include <cstdint>

#include "fqlga/philox.hpp"
#include "fqlga/smallmat.hpp"

namespace fqlga::lattice {

using smallmat::Matrix4;
using smallmat::Vector4;

struct Occupations {
  double p1 = 0.0;
  double p2 = 0.0;

  double density() const { return p1 + p2; }
};

class SiteState {
 public:
  // Throws std::invalid_argument unless |amplitudes| = 1 within 1e-12.
  explicit SiteState(const Vector4& amplitudes);

  const Vector4& amplitudes() const { return amplitudes_; }

  SiteState apply(const Matrix4& unitary) const;

  // |amplitude|^2 of each basis state.
  std::array<double, 4> probabilities() const;

 private:
  struct Unchecked {};
  SiteState(const Vector4& amplitudes, Unchecked) : amplitudes_(amplitudes) {}

  Vector4 amplitudes_;
};

// Product of the two single-qubit states sqrt(1-P)|0> + sqrt(P)|1>.
// Throws std::domain_error if either probability is outside [0, 1].
SiteState init_site(double p1, double p2);

// The diffusion collision: identity on |00>, |11>; half-swap on the middle pair.
Matrix4 sqrt_swap();
Matrix4 swap_gate();

// Expected occupations, the infinite-ensemble limit of repeated measurement.
Occupations occupations_exact(const SiteState& state);

struct MeasurementMode {
  enum class Kind { exact, sampled };

  Kind kind = Kind::exact;
  std::uint64_t ensemble_size = 1;
  std::uint64_t seed = 0;

  static MeasurementMode exact() { return {}; }
  // Throws std::invalid_argument when ensemble_size == 0.
  static MeasurementMode sampled(std::uint64_t ensemble_size, std::uint64_t seed);

  bool is_sampled() const { return kind == Kind::sampled; }
};

// Basis index selected by a uniform draw u in [0, 1) from the cumulative
// distribution of `probabilities`.
int sample_basis_state(const std::array<double, 4>& probabilities, double u);

struct SampleLocation {
  std::uint64_t timestep = 0;
  std::uint64_t site = 0;
};

// Empirical occupations of M projective measurements of `state`, member m using
// the draw keyed by (seed, timestep, site, m).
Occupations occupations_sampled(const SiteState& state, const MeasurementMode& mode,
                                const SampleLocation& where);

}  // namespace fqlga::lattice
