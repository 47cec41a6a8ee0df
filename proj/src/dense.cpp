#include "fkz/dense.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <fmt/core.h>

namespace fkz {

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw std::invalid_argument(
        fmt::format("{}: dimension mismatch ({} vs {})", op, a, b));
  }
}

}  // namespace

void require_finite(std::span<const double> v, const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw std::invalid_argument(
          fmt::format("{}: non-finite entry at position {}", what, i));
    }
  }
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> values)
    : rows_(rows), cols_(cols), data_(std::move(values)) {
  if (rows_ == 0 || cols_ == 0) {
    throw std::invalid_argument("DenseMatrix: rows and cols must be positive");
  }
  if (data_.size() != rows_ * cols_) {
    throw std::invalid_argument(
        fmt::format("DenseMatrix: expected {}x{}={} values, got {}", rows_,
                    cols_, rows_ * cols_, data_.size()));
  }
  require_finite(data_, "DenseMatrix");

  row_sqnorms_.assign(rows_, 0.0);
  col_sqnorms_.assign(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double* r = data_.data() + i * cols_;
    double acc = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) {
      const double sq = r[j] * r[j];
      acc += sq;
      col_sqnorms_[j] += sq;
    }
    row_sqnorms_[i] = acc;
  }
  for (double s : row_sqnorms_) frob_sq_ += s;
}

DenseMatrix DenseMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> values;
  values.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) {
      throw std::invalid_argument("DenseMatrix::from_rows: ragged rows");
    }
    values.insert(values.end(), row.begin(), row.end());
  }
  return DenseMatrix(r, c, std::move(values));
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  std::vector<double> values(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) values[i * n + i] = 1.0;
  return DenseMatrix(n, n, std::move(values));
}

double DenseMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) {
    throw std::out_of_range(fmt::format(
        "DenseMatrix::at({}, {}) outside {}x{}", i, j, rows_, cols_));
  }
  return (*this)(i, j);
}

std::span<const double> DenseMatrix::row(std::size_t i) const {
  if (i >= rows_) {
    throw std::out_of_range(
        fmt::format("DenseMatrix::row({}) outside {} rows", i, rows_));
  }
  return {data_.data() + i * cols_, cols_};
}

Vector DenseMatrix::col(std::size_t j) const {
  if (j >= cols_) {
    throw std::out_of_range(
        fmt::format("DenseMatrix::col({}) outside {} cols", j, cols_));
  }
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = data_[i * cols_ + j];
  return out;
}

DenseMatrix make_matrix(std::size_t rows, std::size_t cols,
                        std::vector<double> values) {
  return DenseMatrix(rows, cols, std::move(values));
}

DenseMatrix transpose(const DenseMatrix& a) {
  std::vector<double> values(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      values[j * a.rows() + i] = a(i, j);
  return DenseMatrix(a.cols(), a.rows(), std::move(values));
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_length(a.cols(), b.rows(), "multiply");
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  std::vector<double> values(m * n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double* out = values.data() + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double s = a(i, p);
      const auto brow = b.row(p);
      for (std::size_t j = 0; j < n; ++j) out[j] += s * brow[j];
    }
  }
  return DenseMatrix(m, n, std::move(values));
}

Vector matvec(const DenseMatrix& a, std::span<const double> v) {
  require_same_length(a.cols(), v.size(), "matvec");
  Vector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(a.row(i), v);
  return out;
}

Vector matvec_adjoint(const DenseMatrix& a, std::span<const double> v) {
  require_same_length(a.rows(), v.size(), "matvec_adjoint");
  Vector out(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += v[i] * r[j];
  }
  return out;
}

double dot(std::span<const double> u, std::span<const double> v) {
  require_same_length(u.size(), v.size(), "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
  return acc;
}

Vector axpy(double alpha, std::span<const double> u,
            std::span<const double> v) {
  require_same_length(u.size(), v.size(), "axpy");
  Vector out(v.begin(), v.end());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] += alpha * u[i];
  return out;
}

double sqnorm(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return acc;
}

double norm(std::span<const double> v) { return std::sqrt(sqnorm(v)); }

Vector subtract(std::span<const double> u, std::span<const double> v) {
  require_same_length(u.size(), v.size(), "subtract");
  Vector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] - v[i];
  return out;
}

double distance_sq(std::span<const double> u, std::span<const double> v) {
  require_same_length(u.size(), v.size(), "distance_sq");
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - v[i];
    acc += d * d;
  }
  return acc;
}

}  // namespace fkz
