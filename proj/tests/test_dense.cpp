#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fkz/dense.hpp"
#include "test_util.hpp"

using namespace fkz;

TEST_CASE("make_matrix caches norms") {
  const auto id = make_matrix(2, 2, {1, 0, 0, 1});
  CHECK(id.frob_sq() == 2.0);
  CHECK(id.row_sqnorm(0) == 1.0);
  CHECK(id.row_sqnorm(1) == 1.0);

  const auto a = make_matrix(1, 2, {3, 4});
  CHECK(a.row_sqnorm(0) == 25.0);
  CHECK(a.col_sqnorm(0) == 9.0);
  CHECK(a.col_sqnorm(1) == 16.0);
  CHECK(a.frob_sq() == 25.0);
}

TEST_CASE("make_matrix rejects bad input") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(make_matrix(2, 2, {1, nan, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(make_matrix(1, 1, {inf}), std::invalid_argument);
  CHECK_THROWS_AS(make_matrix(2, 2, {1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(make_matrix(0, 2, {}), std::invalid_argument);
}

TEST_CASE("row and col access") {
  const auto a = DenseMatrix::from_rows({{1, 2}, {3, 4}});
  const auto r = a.row(1);
  CHECK(r.size() == 2);
  CHECK(r[0] == 3.0);
  CHECK(r[1] == 4.0);
  CHECK(a.col(0) == Vector{1, 3});
  CHECK_THROWS_AS(a.row(2), std::out_of_range);
  CHECK_THROWS_AS(a.col(2), std::out_of_range);
  CHECK_THROWS_AS(a.at(0, 2), std::out_of_range);
}

TEST_CASE("kernels") {
  CHECK(matvec(DenseMatrix::identity(2), Vector{5, 7}) == Vector{5, 7});
  CHECK(dot(Vector{1, 2}, Vector{3, 4}) == 11.0);
  const auto a = DenseMatrix::from_rows({{1, 2}, {3, 4}});
  CHECK(matvec_adjoint(a, Vector{1, 0}) == Vector{1, 2});
  CHECK(axpy(2.0, Vector{1, 1}, Vector{0, 1}) == Vector{2, 3});
  CHECK(subtract(Vector{3, 3}, Vector{1, 2}) == Vector{2, 1});
  CHECK(distance_sq(Vector{0, 0}, Vector{3, 4}) == 25.0);
  CHECK(norm(Vector{3, 4}) == 5.0);
  CHECK_THROWS_AS(dot(Vector{1}, Vector{1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(matvec(a, Vector{1}), std::invalid_argument);
  CHECK_THROWS_AS(matvec_adjoint(a, Vector{1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(multiply(a, DenseMatrix::identity(3)), std::invalid_argument);
}

TEST_CASE("multiply and transpose") {
  const auto a = DenseMatrix::from_rows({{1, 2, 3}, {4, 5, 6}});
  const auto at = transpose(a);
  CHECK(at.rows() == 3);
  CHECK(at(2, 1) == 6.0);
  const auto g = multiply(a, at);
  CHECK(g == DenseMatrix::from_rows({{14, 32}, {32, 77}}));
}

TEST_CASE("norm caches agree on random matrices") {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t m = 1 + rng.next_u64() % 30, n = 1 + rng.next_u64() % 30;
    const auto a = test::random_matrix(m, n, rng);
    double rs = 0.0, cs = 0.0, direct = 0.0;
    for (double x : a.row_sqnorms()) rs += x;
    for (double x : a.col_sqnorms()) cs += x;
    for (double x : a.data()) direct += x * x;
    CHECK(std::abs(rs - a.frob_sq()) <= 1e-12 * a.frob_sq());
    CHECK(std::abs(cs - a.frob_sq()) <= 1e-12 * a.frob_sq());
    CHECK(std::abs(direct - a.frob_sq()) <= 1e-12 * a.frob_sq());

    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(a.row(i)[j] == a.data()[i * n + j]);
        CHECK(a.col(j)[i] == a.data()[i * n + j]);
      }

    const auto v = test::random_vector(n, rng);
    CHECK(dot(matvec_adjoint(a, matvec(a, v)), v) >= 0.0);
  }
}
