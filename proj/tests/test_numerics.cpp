#include <doctest.h>

#include <cmath>

#include "aubin/errors.hpp"
#include "aubin/numerics.hpp"
#include "support.hpp"

using namespace aubin;
using namespace aubin::testing;

namespace {

// Column-oriented accumulation in long double: a different evaluation order
// from the library's row loop.
Vector matvec_oracle(const Matrix& m, const Vector& v) {
  std::vector<long double> acc(m.rows(), 0.0L);
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) acc[i] += static_cast<long double>(m(i, j)) * v[j];
  Vector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = static_cast<double>(acc[i]);
  return out;
}

}  // namespace

TEST_CASE("vector basics") {
  const Vector a{1.0, -2.0, 2.0};
  CHECK(norm2(a) == doctest::Approx(3.0));
  CHECK(norm_inf(a) == 2.0);
  CHECK(dot(a, Vector{1.0, 1.0, 1.0}) == 1.0);
  CHECK(concat(a, Vector{4.0}) == Vector{1.0, -2.0, 2.0, 4.0});
  CHECK(slice(a, 1, 2) == Vector{-2.0, 2.0});
  CHECK(Vector::unit(3, 1) == Vector{0.0, 1.0, 0.0});
  CHECK_THROWS_AS(Vector({1.0, NAN}), Error);
  CHECK_THROWS_AS(Vector({INFINITY}), Error);
  CHECK_THROWS_AS(dot(a, Vector{1.0}), DimensionError);
}

TEST_CASE("matrix shape errors name both shapes") {
  const Matrix m(2, 3);
  try {
    matvec(m, Vector(2));
    FAIL("expected DimensionError");
  } catch (const DimensionError& e) {
    const std::string what = e.what();
    CHECK(what.find("2x3") != std::string::npos);
    CHECK(what.find('2') != std::string::npos);
  }
  CHECK_THROWS_AS(matvec_transposed(m, Vector(3)), DimensionError);
  CHECK_THROWS_AS(Matrix::from_rows({{1.0, 2.0}, {1.0}}), DimensionError);
}

TEST_CASE("matvec agrees with a long-double oracle") {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const auto r = static_cast<std::size_t>(uniform_int(rng, 1, 6));
    const auto c = static_cast<std::size_t>(uniform_int(rng, 1, 6));
    const Matrix m = random_matrix(rng, r, c);
    const Vector v = random_vector(rng, c);
    const Vector expect = matvec_oracle(m, v);
    const Vector got = matvec(m, v);
    for (std::size_t i = 0; i < r; ++i) CHECK(got[i] == doctest::Approx(expect[i]).epsilon(1e-12));
    // matvec_transposed is the matvec of the explicit transpose
    const Vector w = random_vector(rng, r);
    const Vector t1 = matvec_transposed(m, w);
    const Vector t2 = matvec_oracle(transpose(m), w);
    for (std::size_t j = 0; j < c; ++j) CHECK(t1[j] == doctest::Approx(t2[j]).epsilon(1e-12));
  }
}

TEST_CASE("adjoint identity and linearity") {
  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    const auto r = static_cast<std::size_t>(uniform_int(rng, 1, 5));
    const auto c = static_cast<std::size_t>(uniform_int(rng, 1, 5));
    const Matrix m = random_matrix(rng, r, c);
    const Vector x = random_vector(rng, c);
    const Vector y = random_vector(rng, c);
    const Vector w = random_vector(rng, r);
    CHECK(dot(matvec(m, x), w) == doctest::Approx(dot(x, matvec_transposed(m, w))).epsilon(1e-10));
    const Vector lhs = matvec(m, 2.0 * x + y);
    const Vector rhs = 2.0 * matvec(m, x) + matvec(m, y);
    CHECK(distance(lhs, rhs) <= 1e-10 * (1.0 + norm2(lhs)));
    CHECK(transpose(transpose(m)) == m);
  }
}

TEST_CASE("rank and kernel triviality") {
  CHECK(numerical_rank(Matrix{{1.0, 2.0}, {2.0, 4.0}}, 1e-12) == 1);
  CHECK(numerical_rank(Matrix{{1.0, 2.0}, {3.0, 4.0}}, 1e-12) == 2);
  CHECK(numerical_rank(Matrix(3, 2), 1e-12) == 0);
  CHECK(kernel_is_trivial(Matrix{{1.0, 2.0}, {3.0, 4.0}}, 1e-12));
  CHECK_FALSE(kernel_is_trivial(Matrix{{1.0, 1.0}, {1.0, 1.0}}, 1e-12));
  // wide matrices always have a kernel
  CHECK_FALSE(kernel_is_trivial(Matrix{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}}, 1e-12));
  CHECK(kernel_is_trivial(Matrix{{1.0}, {0.0}}, 1e-12));
  CHECK_FALSE(kernel_is_trivial(Matrix{{0.0}}, 1e-12));

  Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    // u vᵀ + w zᵀ has rank 2 generically
    const auto r = static_cast<std::size_t>(uniform_int(rng, 2, 5));
    const auto c = static_cast<std::size_t>(uniform_int(rng, 2, 5));
    const Vector u = random_vector(rng, r), v = random_vector(rng, c);
    const Vector w = random_vector(rng, r), z = random_vector(rng, c);
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = u[i] * v[j] + w[i] * z[j];
    CHECK(numerical_rank(m, 1e-9) == 2);
    CHECK(numerical_rank(transpose(m), 1e-9) == 2);
    CHECK(numerical_rank(3.0 * m, 1e-9) == 2);
  }
}

TEST_CASE("operator norm") {
  CHECK(operator_norm(Matrix{{3.0, 0.0}, {0.0, -5.0}}) == doctest::Approx(5.0));
  CHECK(operator_norm(Matrix{{1.0, 1.0}, {1.0, 1.0}}) == doctest::Approx(2.0));
  CHECK(operator_norm(Matrix(2, 2)) == 0.0);
  Rng rng(14);
  for (int t = 0; t < 100; ++t) {
    const auto r = static_cast<std::size_t>(uniform_int(rng, 1, 5));
    const auto c = static_cast<std::size_t>(uniform_int(rng, 1, 5));
    const Matrix m = random_matrix(rng, r, c);
    const double n = operator_norm(m, 200);
    // ‖M‖ <= ‖M‖_F and ‖Mx‖ <= ‖M‖‖x‖ for random x
    CHECK(n <= m.frobenius_norm() * (1.0 + 1e-12));
    CHECK(n >= m.frobenius_norm() / std::sqrt(static_cast<double>(std::min(r, c))) * (1.0 - 1e-9));
    for (int k = 0; k < 10; ++k) {
      const Vector x = random_vector(rng, c);
      CHECK(norm2(matvec(m, x)) <= n * norm2(x) * (1.0 + 1e-6));
    }
    CHECK(operator_norm(2.5 * m, 200) == doctest::Approx(2.5 * n).epsilon(1e-6));
  }
}
