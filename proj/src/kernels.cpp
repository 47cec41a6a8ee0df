#include "fkz/kernels.hpp"

namespace fkz::kernels {

void row_projection(const DenseMatrix& a, std::size_t i, double rhs,
                    std::span<double> x) {
  const auto r = a.row(i);
  double acc = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) acc += r[j] * x[j];
  const double scale = (rhs - acc) / a.row_sqnorm(i);
  for (std::size_t j = 0; j < r.size(); ++j) x[j] += scale * r[j];
}

void column_projection(const DenseMatrix& a, std::size_t j,
                       std::span<double> z) {
  const auto data = a.data();
  const std::size_t stride = a.cols();
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) acc += data[i * stride + j] * z[i];
  const double scale = acc / a.col_sqnorm(j);
  for (std::size_t i = 0; i < a.rows(); ++i) z[i] -= scale * data[i * stride + j];
}

double coordinate_step(const DenseMatrix& a, std::size_t j,
                       std::span<double> residual) {
  const auto data = a.data();
  const std::size_t stride = a.cols();
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    acc += data[i * stride + j] * residual[i];
  const double gamma = acc / a.col_sqnorm(j);
  for (std::size_t i = 0; i < a.rows(); ++i)
    residual[i] -= gamma * data[i * stride + j];
  return gamma;
}

}  // namespace fkz::kernels
