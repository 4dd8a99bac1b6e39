// Shared helpers for the unit tests. Oracles here are written independently
// of the library code they check.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "fqlga/smallmat.hpp"

namespace fqlga::test {

using smallmat::Complex;

template <std::size_t N>
smallmat::Matrix<N> random_hermitian(std::mt19937_64& gen, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  smallmat::Matrix<N> h;
  for (std::size_t i = 0; i < N; ++i) {
    h(i, i) = normal(gen);
    for (std::size_t j = i + 1; j < N; ++j) {
      const Complex z(normal(gen), normal(gen));
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  return h;
}

// exp(-i * angle * H) by a plain Taylor series with repeated squaring.
template <std::size_t N>
smallmat::Matrix<N> taylor_exp(const smallmat::Matrix<N>& h, double angle, int terms = 40) {
  int squarings = 0;
  double norm = h.max_abs() * static_cast<double>(N) * std::abs(angle);
  while (norm > 0.5) {
    norm *= 0.5;
    ++squarings;
  }
  const Complex a(0.0, -angle / std::ldexp(1.0, squarings));
  const smallmat::Matrix<N> x = a * h;
  smallmat::Matrix<N> term = smallmat::Matrix<N>::identity();
  smallmat::Matrix<N> sum = term;
  for (int k = 1; k < terms; ++k) {
    term = Complex(1.0 / k) * (term * x);
    sum = sum + term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

// rho_n(t+1) = (rho_{n-1}(t) + rho_{n+1}(t)) / 2 on a ring.
inline std::vector<double> stencil_step(const std::vector<double>& rho) {
  const std::size_t n = rho.size();
  std::vector<double> next(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t left = i == 0 ? n - 1 : i - 1;
    const std::size_t right = i + 1 == n ? 0 : i + 1;
    next[i] = (rho[left] + rho[right]) / 2.0;
  }
  return next;
}

inline std::vector<double> gaussian(std::size_t n, double center, double width, double peak) {
  std::vector<double> rho(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) - center;
    rho[i] = peak * std::exp(-0.5 * x * x / (width * width));
  }
  return rho;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace fqlga::test
