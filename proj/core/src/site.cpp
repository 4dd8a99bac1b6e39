#include "fqlga/site.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fqlga::lattice {

using smallmat::Complex;

SiteState::SiteState(const Vector4& amplitudes) : amplitudes_(amplitudes) {
  const double n = smallmat::norm(amplitudes);
  if (!(std::abs(n - 1.0) <= 1e-12)) {
    std::ostringstream msg;
    msg << "SiteState: amplitudes not normalized (norm = " << n << ")";
    throw std::invalid_argument(msg.str());
  }
}

SiteState SiteState::apply(const Matrix4& unitary) const {
  return SiteState(unitary * amplitudes_, Unchecked{});
}

std::array<double, 4> SiteState::probabilities() const {
  return {std::norm(amplitudes_[0]), std::norm(amplitudes_[1]), std::norm(amplitudes_[2]),
          std::norm(amplitudes_[3])};
}

SiteState init_site(double p1, double p2) {
  if (!(p1 >= 0.0 && p1 <= 1.0) || !(p2 >= 0.0 && p2 <= 1.0)) {
    std::ostringstream msg;
    msg << "init_site: occupation probability outside [0, 1] (P1 = " << p1 << ", P2 = " << p2
        << ")";
    throw std::domain_error(msg.str());
  }
  const double a0 = std::sqrt(1.0 - p1), a1 = std::sqrt(p1);
  const double b0 = std::sqrt(1.0 - p2), b1 = std::sqrt(p2);
  return SiteState(Vector4{a0 * b0, a0 * b1, a1 * b0, a1 * b1});
}

Matrix4 sqrt_swap() {
  const Complex plus(0.5, 0.5);
  const Complex minus(0.5, -0.5);
  return Matrix4{{1.0, 0.0, 0.0, 0.0},
                 {0.0, plus, minus, 0.0},
                 {0.0, minus, plus, 0.0},
                 {0.0, 0.0, 0.0, 1.0}};
}

Matrix4 swap_gate() {
  return Matrix4{{1.0, 0.0, 0.0, 0.0},
                 {0.0, 0.0, 1.0, 0.0},
                 {0.0, 1.0, 0.0, 0.0},
                 {0.0, 0.0, 0.0, 1.0}};
}

Occupations occupations_exact(const SiteState& state) {
  const auto p = state.probabilities();
  return {p[2] + p[3], p[1] + p[3]};
}

MeasurementMode MeasurementMode::sampled(std::uint64_t ensemble_size, std::uint64_t seed) {
  if (ensemble_size == 0) throw std::invalid_argument("MeasurementMode: ensemble size must be >= 1");
  return {Kind::sampled, ensemble_size, seed};
}

int sample_basis_state(const std::array<double, 4>& probabilities, double u) {
  double cumulative = 0.0;
  for (int k = 0; k < 3; ++k) {
    cumulative += probabilities[k];
    if (u < cumulative) return k;
  }
  return 3;
}

Occupations occupations_sampled(const SiteState& state, const MeasurementMode& mode,
                                const SampleLocation& where) {
  if (!mode.is_sampled()) return occupations_exact(state);
  const auto probs = state.probabilities();
  const rng::EnsembleKey key{mode.seed, where.timestep, where.site};
  std::uint64_t left = 0;
  std::uint64_t right = 0;
  for (std::uint64_t m = 0; m < mode.ensemble_size; ++m) {
    const int outcome = sample_basis_state(probs, rng::member_draw(key, m).outcome);
    left += static_cast<std::uint64_t>(outcome >> 1);
    right += static_cast<std::uint64_t>(outcome & 1);
  }
  const double inv = 1.0 / static_cast<double>(mode.ensemble_size);
  return {static_cast<double>(left) * inv, static_cast<double>(right) * inv};
}

}  // namespace fqlga::lattice
