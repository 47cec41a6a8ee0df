#pragma once

// Single-row / single-column update kernels shared by the plain and the
// interlaced solvers, together with the FLOP model charged for each.
//
// FLOP model (per kernel call, length-L row or column):
//   dot product          2L - 1
//   scalar work          3       (subtract, divide, and one extra op)
//   scale-and-add        2L
// giving 4L + 2 for every kernel below.

#include <cstddef>
#include <cstdint>
#include <span>

#include "fkz/dense.hpp"

namespace fkz::kernels {

constexpr std::uint64_t update_cost(std::size_t length) noexcept {
  return 4 * static_cast<std::uint64_t>(length) + 2;
}

/// x += ((rhs - A^i x) / ||A^i||^2) (A^i)^T
void row_projection(const DenseMatrix& a, std::size_t i, double rhs,
                    std::span<double> x);

/// z -= (<A_(j), z> / ||A_(j)||^2) A_(j)
void column_projection(const DenseMatrix& a, std::size_t j,
                       std::span<double> z);

/// gamma = <A_(j), residual> / ||A_(j)||^2; residual -= gamma A_(j).
/// Returns gamma, the increment of coordinate j.
double coordinate_step(const DenseMatrix& a, std::size_t j,
                       std::span<double> residual);

}  // namespace fkz::kernels
