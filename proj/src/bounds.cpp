#include "fkz/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace fkz {

namespace {

void require_nonnegative(std::int64_t t) {
  if (t < 0) throw std::invalid_argument("bound: iteration count must be >= 0");
}

double power(double base, std::int64_t e) {
  return std::pow(base, static_cast<double>(e));
}

}  // namespace

double rk_bound(double alpha, std::int64_t t, double beta_star_sq) {
  require_nonnegative(t);
  return power(alpha, t) * beta_star_sq;
}

double rek_bound(double alpha, double kappa_sq, std::int64_t t,
                 double beta_star_sq) {
  require_nonnegative(t);
  return power(alpha, t / 2) * (1.0 + 2.0 * kappa_sq) * beta_star_sq;
}

double theorem_bound(BoundVariant variant, std::int64_t t,
                     const BoundInputs& in) {
  require_nonnegative(t);
  const double v_term = power(in.alpha_v, t) * in.b_star_sq;
  const double u_factor =
      variant == BoundVariant::a
          ? power(in.alpha_u, t)
          : power(in.alpha_u, t / 2) * (1.0 + 2.0 * in.kappa_sq_u);
  return v_term + in.theta_v * u_factor * in.x_star_sq;
}

}  // namespace fkz
