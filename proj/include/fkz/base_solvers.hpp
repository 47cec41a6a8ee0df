#pragma once

/// @file
/// Randomized row/column-action solvers on a plain system A beta = y:
/// Kaczmarz (RK), extended Kaczmarz (REK), Gauss-Seidel (RGS) and extended
/// Gauss-Seidel (REGS).
///
/// Each method has an `*_update` taking explicit indices (deterministic, used
/// by tests and by the interlaced solvers' dispatch) and a `*_step` that draws
/// the indices from an Rng. Steps mutate a SolverState in place and charge
/// the FLOP model from kernels.hpp.

#include <cstdint>
#include <optional>
#include <string_view>

#include "fkz/dense.hpp"
#include "fkz/recorder.hpp"
#include "fkz/sampling.hpp"

namespace fkz {

enum class Method { rk, rek, rgs, regs };

std::string_view to_string(Method m);

/// A beta = y with its row and column samplers.
///
/// Samplers are built at construction. A zero row (column) only disables the
/// row (column) sampler; methods that need it throw when used.
class PlainSystem {
 public:
  PlainSystem(DenseMatrix a, Vector y);

  const DenseMatrix& matrix() const noexcept { return a_; }
  const Vector& rhs() const noexcept { return y_; }
  std::size_t rows() const noexcept { return a_.rows(); }
  std::size_t cols() const noexcept { return a_.cols(); }

  const NormSampler& row_sampler() const;
  const NormSampler& col_sampler() const;

 private:
  DenseMatrix a_;
  Vector y_;
  std::optional<NormSampler> rows_;
  std::optional<NormSampler> cols_;
};

/// Iterate plus the per-method auxiliaries.
///
///   RK    beta
///   REK   beta, z = residual estimate (starts at y)
///   RGS   beta, residual = y - A beta (maintained incrementally)
///   REGS  beta, z (starts at 0), residual = y - A beta; estimate beta - z
struct SolverState {
  Vector beta;
  std::optional<Vector> z;
  std::optional<Vector> residual;
  std::uint64_t t = 0;
  std::uint64_t flops = 0;
};

SolverState initial_state(Method method, const PlainSystem& sys);

/// Current solution estimate (beta, or beta - z for REGS).
Vector estimate(Method method, const SolverState& state);

/// Residual norm gating early stopping:
///   RK    ||y - A beta||
///   REK   ||y - z - A beta||
///   RGS   ||A^T (y - A beta)||
///   REGS  ||A^T (y - A (beta - z))||
/// Each tends to zero exactly when the method converges to its target.
double stopping_residual(Method method, const PlainSystem& sys,
                         const SolverState& state);

/// Per-step FLOP charge: RK 4n+2, REK (4n+2)+(4m+2), RGS 4m+2,
/// REGS (4m+2)+(4n+2).
std::uint64_t step_cost(Method method, std::size_t m, std::size_t n);

void rk_update(const PlainSystem& sys, SolverState& state, std::size_t row);
void rek_update(const PlainSystem& sys, SolverState& state, std::size_t row,
                std::size_t col);
void rgs_update(const PlainSystem& sys, SolverState& state, std::size_t col);
void regs_update(const PlainSystem& sys, SolverState& state, std::size_t row,
                 std::size_t col);

void rk_step(const PlainSystem& sys, SolverState& state, Rng& rng);
/// Draws the row, then the column, independently.
void rek_step(const PlainSystem& sys, SolverState& state, Rng& rng);
void rgs_step(const PlainSystem& sys, SolverState& state, Rng& rng);
/// Draws the row, then the column, independently.
void regs_step(const PlainSystem& sys, SolverState& state, Rng& rng);

void step(Method method, const PlainSystem& sys, SolverState& state, Rng& rng);

inline constexpr double kDefaultTolerance = 1e-12;

struct RunOptions {
  std::uint64_t budget = 1;
  /// Stop once stopping_residual <= tolerance (checked every check_interval).
  std::optional<double> tolerance;
  /// 0 means "number of rows", i.e. roughly once per sweep.
  std::uint64_t check_interval = 0;
};

/// Runs up to options.budget steps from the zero initial state.
/// Throws std::invalid_argument if budget == 0.
SolverState run(Method method, const PlainSystem& sys, const RunOptions& options,
                Rng& rng, Recorder* recorder = nullptr);

}  // namespace fkz
