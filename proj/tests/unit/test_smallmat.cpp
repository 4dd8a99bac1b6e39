#include <random>

#include "doctest.h"
#include "fqlga/smallmat.hpp"
#include "test_support.hpp"

using namespace fqlga::smallmat;
using fqlga::test::random_hermitian;
using fqlga::test::taylor_exp;

namespace {

template <std::size_t N>
void check_eigensystem(const Matrix<N>& h) {
  const auto es = eig_hermitian(h);
  const double scale = std::max(1.0, h.max_abs());

  Matrix<N> rebuilt;
  for (std::size_t k = 0; k < N; ++k) rebuilt = rebuilt + Complex(es.values[k]) * outer(es.vectors[k], es.vectors[k]);
  CHECK(max_abs_diff(rebuilt, h) < 1e-12 * scale);

  for (std::size_t k = 0; k < N; ++k) {
    if (k + 1 < N) CHECK(es.values[k] <= es.values[k + 1]);
    for (std::size_t l = 0; l < N; ++l)
      CHECK(std::abs(inner(es.vectors[k], es.vectors[l]) - (k == l ? 1.0 : 0.0)) < 1e-12);

    std::size_t largest = 0;
    for (std::size_t i = 1; i < N; ++i)
      if (std::abs(es.vectors[k][i]) > std::abs(es.vectors[k][largest]) + 1e-12) largest = i;
    CHECK(es.vectors[k][largest].real() > 0.0);
    CHECK(std::abs(es.vectors[k][largest].imag()) < 1e-12);
  }
}

}  // namespace

TEST_SUITE("smallmat") {
  TEST_CASE("Pauli algebra: products and anticommutators") {
    const Complex i(0.0, 1.0);
    CHECK(max_abs_diff(pauli_x() * pauli_y(), i * pauli_z()) == 0.0);
    CHECK(max_abs_diff(pauli_y() * pauli_z(), i * pauli_x()) == 0.0);
    CHECK(max_abs_diff(pauli_z() * pauli_x(), i * pauli_y()) == 0.0);
    for (const auto& p : {pauli_x(), pauli_y(), pauli_z()}) CHECK(max_abs_diff(p * p, Matrix2::identity()) == 0.0);
  }

  TEST_CASE("kron follows the (row1*2 + row2, col1*2 + col2) index rule") {
    std::mt19937_64 gen(3);
    const auto a = random_hermitian<2>(gen);
    const auto b = random_hermitian<2>(gen);
    const auto k = kron(a, b);
    for (std::size_t i1 = 0; i1 < 2; ++i1)
      for (std::size_t i2 = 0; i2 < 2; ++i2)
        for (std::size_t j1 = 0; j1 < 2; ++j1)
          for (std::size_t j2 = 0; j2 < 2; ++j2) CHECK(k(2 * i1 + i2, 2 * j1 + j2) == a(i1, j1) * b(i2, j2));

    const Vector2 u{0.6, Complex(0.0, 0.8)};
    const Vector2 v{1.0, 0.0};
    const auto uv = kron(u, v);
    CHECK(uv[0] == u[0]);
    CHECK(uv[1] == Complex{});
    CHECK(uv[2] == u[1]);
  }

  TEST_CASE("eigendecomposition reconstructs random Hermitian matrices") {
    std::mt19937_64 gen(20240611);
    for (int trial = 0; trial < 1000; ++trial) {
      check_eigensystem(random_hermitian<4>(gen, trial % 2 ? 1.0 : 50.0));
      check_eigensystem(random_hermitian<2>(gen));
    }
  }

  TEST_CASE("eigendecomposition of structured matrices") {
    SUBCASE("diagonal input keeps canonical vectors, sorted") {
      const auto es = eig_hermitian(Matrix4::diagonal({3.0, -1.0, 2.0, 0.5}));
      CHECK(es.values == std::array<double, 4>{-1.0, 0.5, 2.0, 3.0});
      CHECK(es.vectors[0] == Vector4::basis(1));
      CHECK(es.vectors[3] == Vector4::basis(0));
    }
    SUBCASE("degenerate block is rebuilt from canonical vectors in index order") {
      const auto es = eig_hermitian(Matrix4::identity());
      for (std::size_t k = 0; k < 4; ++k) CHECK(max_abs_diff(es.vectors[k], Vector4::basis(k)) < 1e-15);
      const auto x = eig_hermitian(pauli_x());
      CHECK(x.values[0] == doctest::Approx(-1.0).epsilon(1e-15));
      CHECK(std::abs(x.vectors[0][0] - std::sqrt(0.5)) < 1e-15);
      CHECK(std::abs(x.vectors[0][1] + std::sqrt(0.5)) < 1e-15);
    }
    SUBCASE("exchange operator zz + yy") {
      const auto h = kron(pauli_z(), pauli_z()) + kron(pauli_y(), pauli_y());
      check_eigensystem(h);
      const auto es = eig_hermitian(h);
      CHECK(es.values[0] == doctest::Approx(-2.0));
      CHECK(es.values[3] == doctest::Approx(2.0));
    }
    SUBCASE("non-Hermitian input is rejected") {
      Matrix2 m = pauli_x();
      m(0, 1) = 2.0;
      CHECK_THROWS_AS(eig_hermitian(m), std::invalid_argument);
      CHECK_THROWS_AS(evolve(m, 1.0), std::invalid_argument);
    }
  }

  TEST_CASE("evolve agrees with a 40-term Taylor series") {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 200; ++trial) {
      const auto h = random_hermitian<4>(gen);
      const double angle = 0.05 * trial - 3.0;
      const auto u = evolve(h, angle);
      CHECK(max_abs_diff(u, taylor_exp(h, angle)) < 1e-11);
      CHECK(unitarity_defect(u) < 1e-13);
    }
    const auto h2 = random_hermitian<2>(gen);
    CHECK(max_abs_diff(evolve(h2, 0.7), taylor_exp(h2, 0.7)) < 1e-12);
  }

  TEST_CASE("evolve at angle zero is exactly the identity") {
    std::mt19937_64 gen(8);
    CHECK(evolve(random_hermitian<4>(gen), 0.0) == Matrix4::identity());
  }

  TEST_CASE("equal_up_to_global_phase") {
    std::mt19937_64 gen(9);
    const auto u = evolve(random_hermitian<4>(gen), 1.3);
    const Complex shift = std::polar(1.0, M_PI / 7.0);

    const auto forward = equal_up_to_global_phase(shift * u, u, 1e-12);
    CHECK(forward.equal);
    CHECK(forward.phase == doctest::Approx(M_PI / 7.0).epsilon(1e-12));

    const auto backward = equal_up_to_global_phase(u, shift * u, 1e-12);
    CHECK(backward.equal);
    CHECK(backward.phase == doctest::Approx(-M_PI / 7.0).epsilon(1e-12));

    CHECK_FALSE(equal_up_to_global_phase(u, evolve(random_hermitian<4>(gen), 1.3), 1e-6).equal);
    CHECK_FALSE(equal_up_to_global_phase(kron(pauli_z(), Matrix2::identity()), Matrix4::identity(), 1e-6).equal);
  }

  TEST_CASE("defect measures") {
    CHECK(hermiticity_defect(pauli_y()) == 0.0);
    Matrix2 m;
    m(0, 1) = 1.0;
    CHECK(hermiticity_defect(m) == 1.0);
    CHECK(unitarity_defect(Matrix2::identity()) == 0.0);
    CHECK(unitarity_defect(Complex(2.0) * Matrix2::identity()) == 3.0);
  }
}
