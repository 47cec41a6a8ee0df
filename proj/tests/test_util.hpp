#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "fkz/dense.hpp"
#include "fkz/sampling.hpp"

namespace fkz::test {

inline DenseMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  std::vector<double> v(rows * cols);
  for (double& x : v) x = rng.gaussian();
  return DenseMatrix(rows, cols, std::move(v));
}

inline Vector random_vector(std::size_t len, Rng& rng) {
  Vector v(len);
  for (double& x : v) x = rng.gaussian();
  return v;
}

inline double frob_sq_diff(const DenseMatrix& a, const DenseMatrix& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    const double d = a.data()[i] - b.data()[i];
    s += d * d;
  }
  return s;
}

inline double rel_frob(const DenseMatrix& a, const DenseMatrix& b) {
  return std::sqrt(frob_sq_diff(a, b) / b.frob_sq());
}

inline double rel_err_sq(const Vector& est, const Vector& ref) {
  return distance_sq(est, ref) / sqnorm(ref);
}

// Classical two-sided Jacobi on a symmetric matrix; eigenvalues only.
inline Vector symmetric_eigenvalues(std::vector<std::vector<double>> s) {
  const std::size_t n = s.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += s[p][q] * s[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (s[p][q] == 0.0) continue;
        const double theta = (s[q][q] - s[p][p]) / (2.0 * s[p][q]);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double a = s[k][p], b = s[k][q];
          s[k][p] = c * a - sn * b;
          s[k][q] = sn * a + c * b;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double a = s[p][k], b = s[q][k];
          s[p][k] = c * a - sn * b;
          s[q][k] = sn * a + c * b;
        }
      }
    }
  }
  Vector ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = s[i][i];
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

}  // namespace fkz::test
