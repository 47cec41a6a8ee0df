#pragma once

// Expected-error upper bounds for the randomized methods, as closed-form
// curves in the iteration count t. All constants come from the oracle.

#include <cstdint>

namespace fkz {

/// RK on a consistent system from beta_0 = 0:
///   E||beta_t - beta*||^2 <= alpha^t ||beta*||^2
double rk_bound(double alpha, std::int64_t t, double beta_star_sq);

/// REK from beta_0 = 0, z_0 = y:
///   E||beta_t - beta*||^2 <= alpha^floor(t/2) (1 + 2 kappa^2) ||beta*||^2
double rek_bound(double alpha, double kappa_sq, std::int64_t t,
                 double beta_star_sq);

/// a: RK-RK on a consistent factored system; b: REK-RK on an inconsistent one.
enum class BoundVariant { a, b };

struct BoundInputs {
  double alpha_u = 0.0;
  double alpha_v = 0.0;
  double theta_v = 0.0;
  double kappa_sq_u = 0.0;
  double b_star_sq = 0.0;  // ||b*||^2, optimal solution of V b = x*
  double x_star_sq = 0.0;  // ||x*||^2, optimal solution of U x = y
};

/// Interlaced-method bound with b_0 = 0:
///   a: alpha_V^t ||b*||^2 + theta_V alpha_U^t ||x*||^2
///   b: alpha_V^t ||b*||^2 + theta_V alpha_U^floor(t/2) (1 + 2 kappa_U^2) ||x*||^2
/// Throws std::invalid_argument for t < 0.
double theorem_bound(BoundVariant variant, std::int64_t t,
                     const BoundInputs& in);

}  // namespace fkz
