// smallmat.hpp: exact complex linear algebra for one- and two-qubit operators.
//
// Everything here is fixed-size (dimension 2 or 4) and value-typed. Basis order
// for dimension 4 is |00>, |01>, |10>, |11> with qubit 1 as the left tensor factor.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>

namespace fqlga::smallmat {

using Complex = std::complex<double>;

template <std::size_t N>
concept SupportedDim = (N == 2 || N == 4);

template <std::size_t N>
  requires SupportedDim<N>
class Vector {
 public:
  static constexpr std::size_t dim = N;

  constexpr Vector() = default;
  constexpr Vector(std::initializer_list<Complex> values) {
    if (values.size() != N) throw std::invalid_argument("Vector: wrong number of entries");
    std::size_t i = 0;
    for (const auto& v : values) data_[i++] = v;
  }
  explicit constexpr Vector(const std::array<Complex, N>& values) : data_(values) {}

  static constexpr Vector basis(std::size_t k) {
    Vector v;
    v.data_.at(k) = 1.0;
    return v;
  }

  constexpr Complex& operator[](std::size_t i) { return data_[i]; }
  constexpr const Complex& operator[](std::size_t i) const { return data_[i]; }

  constexpr auto begin() const { return data_.begin(); }
  constexpr auto end() const { return data_.end(); }

  friend constexpr Vector operator+(Vector a, const Vector& b) {
    for (std::size_t i = 0; i < N; ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend constexpr Vector operator-(Vector a, const Vector& b) {
    for (std::size_t i = 0; i < N; ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend constexpr Vector operator*(Complex s, Vector a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }
  friend constexpr bool operator==(const Vector&, const Vector&) = default;

 private:
  std::array<Complex, N> data_{};
};

template <std::size_t N>
  requires SupportedDim<N>
class Matrix {
 public:
  static constexpr std::size_t dim = N;

  constexpr Matrix() = default;
  // Row-major nested initializer: Matrix2{{a, b}, {c, d}}.
  constexpr Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    if (rows.size() != N) throw std::invalid_argument("Matrix: wrong number of rows");
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != N) throw std::invalid_argument("Matrix: wrong number of columns");
      std::size_t j = 0;
      for (const auto& v : row) data_[i * N + j++] = v;
      ++i;
    }
  }

  static constexpr Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static constexpr Matrix diagonal(const std::array<Complex, N>& d) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  constexpr Complex& operator()(std::size_t i, std::size_t j) { return data_[i * N + j]; }
  constexpr const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * N + j];
  }

  constexpr Matrix adjoint() const {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = std::conj((*this)(j, i));
    return m;
  }

  constexpr Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  constexpr double max_abs() const {
    double m = 0.0;
    for (const auto& x : data_) m = std::max(m, std::abs(x));
    return m;
  }

  friend constexpr Matrix operator+(Matrix a, const Matrix& b) {
    for (std::size_t k = 0; k < N * N; ++k) a.data_[k] += b.data_[k];
    return a;
  }
  friend constexpr Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t k = 0; k < N * N; ++k) a.data_[k] -= b.data_[k];
    return a;
  }
  friend constexpr Matrix operator*(Complex s, Matrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }
  friend constexpr Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < N; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend constexpr Vector<N> operator*(const Matrix& a, const Vector<N>& v) {
    Vector<N> r;
    for (std::size_t i = 0; i < N; ++i) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < N; ++j) s += a(i, j) * v[j];
      r[i] = s;
    }
    return r;
  }
  friend constexpr bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::array<Complex, N * N> data_{};
};

using Vector2 = Vector<2>;
using Vector4 = Vector<4>;
using Matrix2 = Matrix<2>;
using Matrix4 = Matrix<4>;

// Pauli matrices with sigma_z = diag(+1, -1) in the (|0>, |1>) basis.
inline Matrix2 pauli_x() { return Matrix2{{0.0, 1.0}, {1.0, 0.0}}; }
inline Matrix2 pauli_y() { return Matrix2{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}}; }
inline Matrix2 pauli_z() { return Matrix2{{1.0, 0.0}, {0.0, -1.0}}; }

Matrix4 kron(const Matrix2& a, const Matrix2& b);
Vector4 kron(const Vector2& a, const Vector2& b);

template <std::size_t N>
Complex inner(const Vector<N>& a, const Vector<N>& b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

template <std::size_t N>
double norm(const Vector<N>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

template <std::size_t N>
Matrix<N> outer(const Vector<N>& a, const Vector<N>& b) {
  Matrix<N> m;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) m(i, j) = a[i] * std::conj(b[j]);
  return m;
}

template <std::size_t N>
double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b) {
  return (a - b).max_abs();
}

template <std::size_t N>
double max_abs_diff(const Vector<N>& a, const Vector<N>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < N; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// max |A(i,j) - conj(A(j,i))|
template <std::size_t N>
double hermiticity_defect(const Matrix<N>& a) {
  return max_abs_diff(a, a.adjoint());
}

// max |U U^dagger - I|
template <std::size_t N>
double unitarity_defect(const Matrix<N>& u) {
  return max_abs_diff(u * u.adjoint(), Matrix<N>::identity());
}

template <std::size_t N>
struct Eigensystem {
  std::array<double, N> values{};      // ascending
  std::array<Vector<N>, N> vectors{};  // orthonormal, largest entry real positive
};

// Hermitian eigendecomposition. Closed form for N = 2, cyclic complex Jacobi for
// N = 4. Eigenvalues ascend; each eigenvector is rotated so that its
// largest-magnitude entry (first one on ties) is real and positive. Eigenvalues
// closer than 1e-12 form a degenerate block whose basis is rebuilt by projecting
// canonical basis vectors in index order.
// Throws std::invalid_argument when H is not Hermitian.
template <std::size_t N>
Eigensystem<N> eig_hermitian(const Matrix<N>& h);

// exp(-i * angle * H) for Hermitian H. angle == 0 returns the identity exactly.
template <std::size_t N>
Matrix<N> evolve(const Matrix<N>& h, double angle);

struct PhaseMatch {
  bool equal = false;
  double phase = 0.0;  // phi with A ~ e^{i phi} B
};

// True iff A = e^{i phi} B entrywise within tol; phi is read off the
// largest-magnitude entry of B.
template <std::size_t N>
PhaseMatch equal_up_to_global_phase(const Matrix<N>& a, const Matrix<N>& b, double tol);

}  // namespace fqlga::smallmat
