#pragma once

/// @file
/// Interlaced solvers for U V beta = y that never form U V.
///
/// One interlaced iteration takes one step of a row/column-action method on
/// U x = y, then one step of a (possibly different) method on V b = x_t using
/// the x just produced. The supported pairs are RK-RK, REK-RK, REK-REK and
/// RGS-RGS; REK-RK is the one that handles inconsistent systems.

#include <cstdint>
#include <optional>
#include <string>

#include "fkz/base_solvers.hpp"
#include "fkz/factored_system.hpp"
#include "fkz/recorder.hpp"
#include "fkz/sampling.hpp"

namespace fkz {

struct Interlacing {
  Method first;   // acts on U x = y
  Method second;  // acts on V b = x_t

  friend bool operator==(const Interlacing&, const Interlacing&) = default;
};

inline constexpr Interlacing kRkRk{Method::rk, Method::rk};
inline constexpr Interlacing kRekRk{Method::rek, Method::rk};
inline constexpr Interlacing kRekRek{Method::rek, Method::rek};
inline constexpr Interlacing kRgsRgs{Method::rgs, Method::rgs};

bool is_supported(Interlacing pair) noexcept;
/// Throws std::invalid_argument naming the pair and the supported list.
void require_supported(Interlacing pair);
std::string to_string(Interlacing pair);

/// State of an interlaced run.
///
///   x           iterate for U x = y (length k), starts at 0
///   b           iterate for V b = x (length n), starts at 0; the estimate
///   z           REK residual estimate on U (length m), starts at y
///   residual_u  y - U x, maintained by RGS on U
///   z_v         REK residual estimate on V (length k), tracks x_t
///   residual_v  x - V b, maintained by RGS on V
struct InterlacedState {
  Vector x;
  Vector b;
  std::optional<Vector> z;
  std::optional<Vector> residual_u;
  std::optional<Vector> z_v;
  std::optional<Vector> residual_v;
  std::uint64_t t = 0;
  std::uint64_t flops = 0;
};

InterlacedState initial_interlaced_state(Interlacing pair,
                                         const FactoredSystem& sys);

/// Per-iteration FLOP charge: the U-side method on (m x k) plus the V-side
/// method on (k x n), using the plain-solver model.
std::uint64_t interlaced_cost(Interlacing pair, std::size_t m, std::size_t k,
                              std::size_t n);

/// Indices used by one interlaced iteration. Unused fields are ignored.
struct InterlacedDraw {
  std::size_t u_row = 0;
  std::size_t u_col = 0;
  std::size_t v_row = 0;
  std::size_t v_col = 0;
};

/// Draws in algorithm order: U row, U column, V row, V column, skipping the
/// ones the pair does not use.
InterlacedDraw draw_indices(Interlacing pair, const FactoredSystem& sys,
                            Rng& rng);

void interlaced_update(Interlacing pair, const FactoredSystem& sys,
                       InterlacedState& state, const InterlacedDraw& draw);

/// RK on U (row i), then RK on V (row p) against the updated x_t.
void rkrk_update(const FactoredSystem& sys, InterlacedState& state,
                 std::size_t i, std::size_t p);
/// Column projection of z on U (column j), row update of x with y_i - z_i,
/// then RK on V (row p).
void rekrk_update(const FactoredSystem& sys, InterlacedState& state,
                  std::size_t i, std::size_t j, std::size_t p);

void rkrk_step(const FactoredSystem& sys, InterlacedState& state, Rng& rng);
void rekrk_step(const FactoredSystem& sys, InterlacedState& state, Rng& rng);
void interlaced_step(Interlacing pair, const FactoredSystem& sys,
                     InterlacedState& state, Rng& rng);

/// Larger of the two subsystem residuals; the U side uses the same per-method
/// residual as stopping_residual, the V side measures against x_t.
double interlaced_stopping_residual(Interlacing pair, const FactoredSystem& sys,
                                    const InterlacedState& state);

/// Runs up to options.budget interlaced iterations. Early stopping (when a
/// tolerance is set) requires both subsystem residuals to be small, checked
/// every check_interval (default m) iterations.
InterlacedState run_interlaced(Interlacing pair, const FactoredSystem& sys,
                               const RunOptions& options, Rng& rng,
                               Recorder* recorder = nullptr);

}  // namespace fkz
