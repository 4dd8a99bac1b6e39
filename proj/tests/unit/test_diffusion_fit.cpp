#include <cmath>

#include "doctest.h"
#include "fqlga/errors.hpp"
#include "fqlga/lattice.hpp"
#include "test_support.hpp"

using namespace fqlga::lattice;

TEST_SUITE("diffusion_fit") {
  TEST_CASE("stencil trajectory gives D = 1/2") {
    std::vector<std::vector<double>> rho{fqlga::test::gaussian(128, 64.0, 6.0, 1.0)};
    for (int t = 0; t < 40; ++t) rho.push_back(fqlga::test::stencil_step(rho.back()));
    const auto fit = fit_diffusion_constant(rho);
    CHECK(fit.diffusion == doctest::Approx(0.5).epsilon(0.04));
    CHECK(fit.variances.size() == 41);
    CHECK(fit.intercept == doctest::Approx(36.0).epsilon(0.01));
  }

  TEST_CASE("simulated ideal trajectory gives D = 1/2") {
    RunConfig c;
    c.sites = 128;
    c.steps = 40;
    c.profile = GaussianProfile{64.0, 6.0, 1.0};
    CHECK(fit_diffusion_constant(run(c)).diffusion == doctest::Approx(0.5).epsilon(0.04));
  }

  TEST_CASE("exactly linear variance has zero residual error") {
    // Unit weight at the centre and weight w at +/- 1 site: variance 2w / (1 + 2w).
    std::vector<std::vector<double>> rho;
    for (double v : {0.1, 0.2, 0.3, 0.4}) {
      std::vector<double> r(21, 0.0);
      const double w = v / (2.0 * (1.0 - v));
      r[9] = r[11] = w;
      r[10] = 1.0;
      rho.push_back(r);
    }
    const auto fit = fit_diffusion_constant(rho);
    CHECK(fit.diffusion == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(fit.std_error < 1e-12);
  }

  TEST_CASE("least-squares slope of a curved variance sequence") {
    std::vector<std::vector<double>> rho;
    for (int k : {1, 2, 3, 4}) {
      std::vector<double> r(41, 0.0);
      r[20 - k] = r[20 + k] = 1.0;
      rho.push_back(r);
    }
    // Variances 1, 4, 9, 16 have least-squares slope 5.
    const auto fit = fit_diffusion_constant(rho);
    CHECK(fit.diffusion == doctest::Approx(2.5));
    CHECK(fit.std_error == doctest::Approx(0.5 * std::sqrt(4.0 / 2.0 / 5.0)));
  }

  TEST_CASE("degenerate inputs are flagged") {
    const std::vector<double> flat(32, 0.8);
    const std::vector<std::vector<double>> uniform{flat, flat, flat};
    CHECK_THROWS_AS(fit_diffusion_constant(uniform), fqlga::DegenerateError);
    const std::vector<double> empty(32, 0.0);
    const std::vector<std::vector<double>> zero{empty, empty, empty};
    CHECK_THROWS_AS(fit_diffusion_constant(zero), fqlga::DegenerateError);
    const std::vector<std::vector<double>> short_run{fqlga::test::gaussian(32, 16, 3, 1),
                                                     fqlga::test::gaussian(32, 16, 3, 1)};
    CHECK_THROWS_AS(fit_diffusion_constant(short_run), std::invalid_argument);

    RunConfig c;
    c.steps = 10;
    c.profile = ExplicitProfile{flat};
    c.sites = 32;
    CHECK_THROWS_AS(fit_diffusion_constant(run(c)), fqlga::DegenerateError);
  }
}
