#include "fqlga/philox.hpp"

namespace fqlga::rng {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline Philox4x32Counter round(const Philox4x32Counter& c, const Philox4x32Key& k) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mulhilo(kMul0, c[0], hi0, lo0);
  mulhilo(kMul1, c[2], hi1, lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

Philox4x32Counter philox4x32(Philox4x32Counter counter, Philox4x32Key key) {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    counter = round(counter, key);
  }
  return counter;
}

MemberDraw member_draw(const EnsembleKey& key, std::uint64_t member) {
  // counter = (member lo, member hi, site, timestep); key = seed.
  const Philox4x32Counter ctr{static_cast<std::uint32_t>(member),
                              static_cast<std::uint32_t>(member >> 32),
                              static_cast<std::uint32_t>(key.site),
                              static_cast<std::uint32_t>(key.timestep)};
  const Philox4x32Key k{static_cast<std::uint32_t>(key.seed),
                        static_cast<std::uint32_t>(key.seed >> 32)};
  const auto w = philox4x32(ctr, k);
  return {uniform01(w[0], w[1]), uniform01(w[2], w[3])};
}

}  // namespace fqlga::rng
