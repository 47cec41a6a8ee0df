#pragma once

/// @file
/// Dense row-major real matrices with cached row/column norms, plus the
/// handful of vector kernels the row-action solvers are built from.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace fkz {

using Vector = std::vector<double>;

/// Immutable row-major real matrix.
///
/// Squared row norms, squared column norms and the squared Frobenius norm are
/// computed once at construction. Samplers and update rules read them on every
/// iteration, so the matrix is never mutated after it is built. Every entry
/// must be finite.
class DenseMatrix {
 public:
  /// Throws std::invalid_argument when rows or cols is zero, when
  /// values.size() != rows * cols, or when an entry is NaN/Inf.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  /// Convenience for small literals: {{1, 2}, {3, 4}}.
  static DenseMatrix from_rows(
      std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }

  /// Bounds-checked element access.
  double at(std::size_t i, std::size_t j) const;

  /// Contiguous view of row i. Throws std::out_of_range.
  std::span<const double> row(std::size_t i) const;

  /// Copy of column j (strided in row-major storage). Throws std::out_of_range.
  Vector col(std::size_t j) const;

  std::span<const double> data() const noexcept { return data_; }
  std::span<const double> row_sqnorms() const noexcept { return row_sqnorms_; }
  std::span<const double> col_sqnorms() const noexcept { return col_sqnorms_; }
  double row_sqnorm(std::size_t i) const noexcept { return row_sqnorms_[i]; }
  double col_sqnorm(std::size_t j) const noexcept { return col_sqnorms_[j]; }
  double frob_sq() const noexcept { return frob_sq_; }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
  std::vector<double> row_sqnorms_;
  std::vector<double> col_sqnorms_;
  double frob_sq_ = 0.0;
};

DenseMatrix make_matrix(std::size_t rows, std::size_t cols,
                        std::vector<double> values);

DenseMatrix transpose(const DenseMatrix& a);

/// Dense product a * b. Only oracle and test code should need this; the
/// solvers never form the product of two factors.
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);

/// A v
Vector matvec(const DenseMatrix& a, std::span<const double> v);

/// A^T v (adjoint == transpose, scalars are real)
Vector matvec_adjoint(const DenseMatrix& a, std::span<const double> v);

double dot(std::span<const double> u, std::span<const double> v);

/// alpha * u + v
Vector axpy(double alpha, std::span<const double> u, std::span<const double> v);

double sqnorm(std::span<const double> v);
double norm(std::span<const double> v);

/// u - v
Vector subtract(std::span<const double> u, std::span<const double> v);

/// Squared Euclidean distance ||u - v||^2.
double distance_sq(std::span<const double> u, std::span<const double> v);

/// Throws std::invalid_argument naming `what` if any entry is NaN/Inf.
void require_finite(std::span<const double> v, const char* what);

}  // namespace fkz
