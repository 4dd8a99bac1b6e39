#include "fqlga/smallmat.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

namespace fqlga::smallmat {

namespace {

constexpr double kDegenerateGap = 1e-12;

template <std::size_t N>
void check_hermitian(const Matrix<N>& h) {
  const double defect = hermiticity_defect(h);
  const double tol = 1e-12 * std::max(1.0, h.max_abs());
  if (!(defect <= tol)) {
    std::ostringstream msg;
    msg << "eig_hermitian: matrix is not Hermitian (max |H - H^dagger| = " << defect << ")";
    throw std::invalid_argument(msg.str());
  }
}

template <std::size_t N>
void fix_phase(Vector<N>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < N; ++i)
    if (std::abs(v[i]) > std::abs(v[best]) + 1e-12) best = i;
  const double mag = std::abs(v[best]);
  if (mag == 0.0) return;
  const Complex rot = std::conj(v[best]) / mag;
  for (std::size_t i = 0; i < N; ++i) v[i] *= rot;
  v[best] = Complex(std::real(v[best]), 0.0);
}

template <std::size_t N>
Vector<N> normalized(const Vector<N>& v) {
  return Complex(1.0 / norm(v), 0.0) * v;
}

// Rebuild the basis of each cluster of (near-)equal eigenvalues from projected
// canonical vectors so the result does not depend on solver round-off.
template <std::size_t N>
void canonicalize_degenerate(Eigensystem<N>& es) {
  std::size_t start = 0;
  while (start < N) {
    std::size_t end = start + 1;
    while (end < N && es.values[end] - es.values[end - 1] <= kDegenerateGap) ++end;
    const std::size_t size = end - start;
    if (size > 1) {
      Matrix<N> projector;
      for (std::size_t k = start; k < end; ++k)
        projector = projector + outer(es.vectors[k], es.vectors[k]);
      std::vector<Vector<N>> basis;
      for (std::size_t k = 0; k < N && basis.size() < size; ++k) {
        Vector<N> w = projector * Vector<N>::basis(k);
        for (int pass = 0; pass < 2; ++pass)
          for (const auto& u : basis) w = w - inner(u, w) * u;
        if (norm(w) > 1e-8) basis.push_back(normalized(w));
      }
      if (basis.size() == size)
        for (std::size_t k = 0; k < size; ++k) es.vectors[start + k] = basis[k];
    }
    start = end;
  }
}

template <std::size_t N>
Eigensystem<N> finish(std::array<double, N> values, std::array<Vector<N>, N> vectors) {
  std::array<std::size_t, N> order{};
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  Eigensystem<N> es;
  for (std::size_t k = 0; k < N; ++k) {
    es.values[k] = values[order[k]];
    es.vectors[k] = vectors[order[k]];
  }
  canonicalize_degenerate(es);
  for (auto& v : es.vectors) fix_phase(v);
  return es;
}

Eigensystem<2> eig_closed_form(const Matrix2& h) {
  const double a = std::real(h(0, 0));
  const double d = std::real(h(1, 1));
  const Complex b = h(0, 1);
  const double mean = 0.5 * (a + d);
  const double r = std::hypot(0.5 * (a - d), std::abs(b));

  std::array<double, 2> values{mean - r, mean + r};
  std::array<Vector2, 2> vectors{Vector2::basis(0), Vector2::basis(1)};
  if (std::abs(b) == 0.0) {
    values = {a, d};
  } else if (2.0 * r > kDegenerateGap) {
    for (std::size_t k = 0; k < 2; ++k) {
      const double lambda = values[k];
      const Vector2 from_row0{b, lambda - a};
      const Vector2 from_row1{lambda - d, std::conj(b)};
      vectors[k] = normalized(norm(from_row0) >= norm(from_row1) ? from_row0 : from_row1);
    }
  }
  return finish<2>(values, vectors);
}

Eigensystem<4> eig_jacobi(Matrix4 a) {
  Matrix4 v = Matrix4::identity();
  const double scale = std::max(a.max_abs(), 1e-300);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < 4; ++p)
      for (std::size_t q = p + 1; q < 4; ++q) off += std::norm(a(p, q));
    if (off <= 1e-34 * scale * scale) break;

    for (std::size_t p = 0; p < 4; ++p) {
      for (std::size_t q = p + 1; q < 4; ++q) {
        const Complex b = a(p, q);
        const double mag = std::abs(b);
        if (mag <= 1e-300) continue;
        const double app = std::real(a(p, p));
        const double aqq = std::real(a(q, q));
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex phase = std::conj(b) / mag;

        // G = diag(1, .., phase at q, ..) * plane rotation(p, q)
        Matrix4 g = Matrix4::identity();
        g(p, p) = c;
        g(p, q) = s;
        g(q, p) = -s * phase;
        g(q, q) = c * phase;

        a = g.adjoint() * a * g;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        v = v * g;
      }
    }
  }

  std::array<double, 4> values{};
  std::array<Vector4, 4> vectors{};
  for (std::size_t k = 0; k < 4; ++k) {
    values[k] = std::real(a(k, k));
    for (std::size_t i = 0; i < 4; ++i) vectors[k][i] = v(i, k);
  }
  return finish<4>(values, vectors);
}

}  // namespace

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 m;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return m;
}

Vector4 kron(const Vector2& a, const Vector2& b) {
  return Vector4{a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
}

template <std::size_t N>
Eigensystem<N> eig_hermitian(const Matrix<N>& h) {
  check_hermitian(h);
  if constexpr (N == 2) {
    return eig_closed_form(h);
  } else {
    return eig_jacobi(h);
  }
}

template <std::size_t N>
Matrix<N> evolve(const Matrix<N>& h, double angle) {
  if (angle == 0.0) {
    check_hermitian(h);
    return Matrix<N>::identity();
  }
  const auto es = eig_hermitian(h);
  Matrix<N> u;
  for (std::size_t k = 0; k < N; ++k) {
    const Complex phase = std::polar(1.0, -angle * es.values[k]);
    u = u + phase * outer(es.vectors[k], es.vectors[k]);
  }
  return u;
}

template <std::size_t N>
PhaseMatch equal_up_to_global_phase(const Matrix<N>& a, const Matrix<N>& b, double tol) {
  std::size_t bi = 0;
  std::size_t bj = 0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (std::abs(b(i, j)) > std::abs(b(bi, bj))) {
        bi = i;
        bj = j;
      }
  if (std::abs(b(bi, bj)) == 0.0) return {a.max_abs() <= tol, 0.0};

  const double phase = std::arg(a(bi, bj)) - std::arg(b(bi, bj));
  const double wrapped = std::remainder(phase, 2.0 * M_PI);
  const double diff = max_abs_diff(a, std::polar(1.0, wrapped) * b);
  return {diff <= tol, wrapped};
}

template Eigensystem<2> eig_hermitian<2>(const Matrix2&);
template Eigensystem<4> eig_hermitian<4>(const Matrix4&);
template Matrix2 evolve<2>(const Matrix2&, double);
template Matrix4 evolve<4>(const Matrix4&, double);
template PhaseMatch equal_up_to_global_phase<2>(const Matrix2&, const Matrix2&, double);
template PhaseMatch equal_up_to_global_phase<4>(const Matrix4&, const Matrix4&, double);

}  // namespace fqlga::smallmat
