#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fqlga/errors.hpp"
#include "fqlga/lattice.hpp"

namespace fqlga::lattice {

DiffusionFit fit_diffusion_constant(std::span<const std::vector<double>> densities) {
  if (densities.size() < 3)
    throw std::invalid_argument("fit_diffusion_constant: need at least three snapshots");

  DiffusionFit fit;
  fit.variances.reserve(densities.size());
  for (std::size_t t = 0; t < densities.size(); ++t) {
    const auto& rho = densities[t];
    double mass = 0.0;
    for (double r : rho) mass += r;
    const auto [lo, hi] = std::minmax_element(rho.begin(), rho.end());
    std::ostringstream where;
    where << "fit_diffusion_constant: snapshot " << t;
    if (!(mass > 0.0) || !std::isfinite(mass)) throw DegenerateError(where.str() + " has zero mass");
    if (*hi - *lo <= 1e-12 * std::abs(*hi))
      throw DegenerateError(where.str() + " is spatially constant");

    double mean = 0.0;
    for (std::size_t n = 0; n < rho.size(); ++n) mean += static_cast<double>(n) * rho[n] / mass;
    double var = 0.0;
    for (std::size_t n = 0; n < rho.size(); ++n) {
      const double d = static_cast<double>(n) - mean;
      var += d * d * rho[n] / mass;
    }
    fit.variances.push_back(var);
  }

  const auto count = static_cast<double>(fit.variances.size());
  const double t_mean = 0.5 * (count - 1.0);
  double v_mean = 0.0;
  for (double v : fit.variances) v_mean += v / count;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t t = 0; t < fit.variances.size(); ++t) {
    const double dt = static_cast<double>(t) - t_mean;
    sxx += dt * dt;
    sxy += dt * (fit.variances[t] - v_mean);
  }
  const double slope = sxy / sxx;
  fit.intercept = v_mean - slope * t_mean;
  double rss = 0.0;
  for (std::size_t t = 0; t < fit.variances.size(); ++t) {
    const double r = fit.variances[t] - (fit.intercept + slope * static_cast<double>(t));
    rss += r * r;
  }
  fit.diffusion = 0.5 * slope;
  fit.std_error = 0.5 * std::sqrt(rss / (count - 2.0) / sxx);
  return fit;
}

DiffusionFit fit_diffusion_constant(const Trajectory& trajectory) {
  const auto d = trajectory.densities();
  return fit_diffusion_constant(std::span<const std::vector<double>>(d));
}

}  // namespace fqlga::lattice
