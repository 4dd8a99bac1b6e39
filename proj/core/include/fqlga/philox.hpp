// Counter-based Philox4x32-10 generator (Salmon et al., SC'11).
//
// Every ensemble draw is a pure function of (seed, timestep, site, member), so
// ensembles can be evaluated in any order or in parallel and still reproduce.

#pragma once

#include <array>
#include <cstdint>

namespace fqlga::rng {

using Philox4x32Counter = std::array<std::uint32_t, 4>;
using Philox4x32Key = std::array<std::uint32_t, 2>;

Philox4x32Counter philox4x32(Philox4x32Counter counter, Philox4x32Key key);

// 53-bit uniform double in [0, 1) from two 32-bit words.
constexpr double uniform01(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits =
      ((static_cast<std::uint64_t>(hi) << 32) | static_cast<std::uint64_t>(lo)) >> 11;
  return static_cast<double>(bits) * 0x1.0p-53;
}

struct EnsembleKey {
  std::uint64_t seed = 0;
  std::uint64_t timestep = 0;
  std::uint64_t site = 0;
};

// Two independent uniforms for one ensemble member: `outcome` drives the
// projective measurement, `phase` drives any per-member perturbation.
struct MemberDraw {
  double outcome = 0.0;
  double phase = 0.0;
};

MemberDraw member_draw(const EnsembleKey& key, std::uint64_t member);

}  // namespace fqlga::rng
