// Symmetry and reproducibility properties of whole runs.

#include <algorithm>
#include <random>

#include "doctest.h"
#include "fqlga/lattice.hpp"
#include "test_support.hpp"

using namespace fqlga::lattice;
using fqlga::schemes::CollisionScheme;

namespace {

std::vector<CollisionScheme> exact_schemes() {
  return {CollisionScheme::ideal(),
          CollisionScheme::multibias({{0.508}, {0.51}, 1.0}),
          CollisionScheme::coupled_init(0.1, CollisionScheme::ideal()),
          CollisionScheme::random_phase(CollisionScheme::ideal(), fqlga::schemes::UniformFullCircle{}),
          CollisionScheme::random_phase(CollisionScheme::ideal(), fqlga::schemes::FixedPhase{1.1})};
}

std::vector<double> random_profile(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::vector<double> rho(n);
  for (auto& r : rho) r = u(gen);
  return rho;
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("translation covariance in exact mode") {
    const std::size_t n = 24;
    const auto rho = random_profile(n, 1);
    for (const auto& scheme : exact_schemes())
      for (std::size_t k : {1u, 5u, 23u}) {
        auto shifted = rho;
        std::rotate(shifted.rbegin(), shifted.rbegin() + static_cast<long>(k), shifted.rend());
        RunConfig a, b;
        a.sites = b.sites = n;
        a.steps = b.steps = 30;
        a.scheme = b.scheme = scheme;
        a.profile = ExplicitProfile{rho};
        b.profile = ExplicitProfile{shifted};
        const auto ta = run(a), tb = run(b);
        double worst = 0.0;
        for (std::size_t t = 0; t < ta.snapshots.size(); ++t)
          for (std::size_t i = 0; i < n; ++i)
            worst = std::max(worst, std::abs(ta.snapshots[t].density(i) - tb.snapshots[t].density((i + k) % n)));
        CHECK_MESSAGE(worst == 0.0, scheme.label());
      }
  }

  TEST_CASE("reflection symmetry for exchange-symmetric schemes") {
    const std::size_t n = 19;
    const auto rho = random_profile(n, 2);
    const auto schemes = exact_schemes();
    for (const auto* scheme : {&schemes[0], &schemes[2], &schemes[3]}) {
      // Start from an asymmetric split so that P1 and P2 genuinely trade places.
      std::vector<double> p1(n), p2(n);
      for (std::size_t i = 0; i < n; ++i) {
        p1[i] = 0.3 * rho[i];
        p2[i] = 0.5 * rho[i];
      }
      OccupationField a(p1, p2);
      std::vector<double> q1(n), q2(n);
      for (std::size_t i = 0; i < n; ++i) {
        q1[i] = p2[n - 1 - i];
        q2[i] = p1[n - 1 - i];
      }
      OccupationField b(q1, q2);
      double worst = 0.0;
      for (int t = 0; t < 25; ++t) {
        a = step(a, *scheme, MeasurementMode::exact());
        b = step(b, *scheme, MeasurementMode::exact());
        for (std::size_t i = 0; i < n; ++i) {
          worst = std::max(worst, std::abs(a.p1()[i] - b.p2()[n - 1 - i]));
          worst = std::max(worst, std::abs(a.p2()[i] - b.p1()[n - 1 - i]));
        }
      }
      CHECK_MESSAGE(worst < 1e-14, scheme->label());
    }
  }

  TEST_CASE("sampled runs are bit-reproducible for a fixed seed") {
    for (const auto& scheme : exact_schemes()) {
      RunConfig c;
      c.sites = 32;
      c.steps = 15;
      c.profile = GaussianProfile{16.0, 4.0, 1.0};
      c.scheme = scheme;
      c.mode = MeasurementMode::sampled(300, 123456789);
      const auto a = run(c), b = run(c);
      for (std::size_t t = 0; t < a.snapshots.size(); ++t) {
        REQUIRE(a.snapshots[t].p1() == b.snapshots[t].p1());
        REQUIRE(a.snapshots[t].p2() == b.snapshots[t].p2());
      }
      c.mode = MeasurementMode::sampled(300, 123456790);
      CHECK(run(c).snapshots.back().p1() != a.snapshots.back().p1());
    }
  }
}
