#include "fkz/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <fmt/core.h>

namespace fkz {

namespace {

constexpr int kMaxSweeps = 80;

using Columns = std::vector<Vector>;

// Hestenes Jacobi on the columns of a tall (m >= n) matrix. On return the
// columns of w are mutually orthogonal and w = A * vr.
void orthogonalize_columns(Columns& w, Columns& vr) {
  const std::size_t n = w.size();
  const double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        auto& wp = w[p];
        auto& wq = w[q];
        const double alpha = sqnorm(wp);
        const double beta = sqnorm(wq);
        const double gamma = dot(wp, wq);
        if (alpha == 0.0 || beta == 0.0) continue;
        if (std::abs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < wp.size(); ++i) {
          const double a = wp[i], b = wq[i];
          wp[i] = c * a - s * b;
          wq[i] = s * a + c * b;
        }
        auto& vp = vr[p];
        auto& vq = vr[q];
        for (std::size_t i = 0; i < vp.size(); ++i) {
          const double a = vp[i], b = vq[i];
          vp[i] = c * a - s * b;
          vq[i] = s * a + c * b;
        }
      }
    }
    if (!rotated) return;
  }
}

// Replaces columns [from, end) of q with an orthonormal completion of the
// first `from` columns (which must already be orthonormal).
void complete_orthonormal(Columns& q, std::size_t from) {
  const std::size_t dim = q.empty() ? 0 : q[0].size();
  std::size_t next_candidate = 0;
  for (std::size_t c = from; c < q.size(); ++c) {
    while (true) {
      if (next_candidate >= dim) {
        throw std::logic_error("svd: orthonormal completion ran out of basis");
      }
      Vector e(dim, 0.0);
      e[next_candidate++] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < c; ++j) {
          const double proj = dot(q[j], e);
          for (std::size_t i = 0; i < dim; ++i) e[i] -= proj * q[j][i];
        }
      }
      const double len = norm(e);
      if (len > 0.5) {
        for (double& x : e) x /= len;
        q[c] = std::move(e);
        break;
      }
    }
  }
}

DenseMatrix from_columns(const Columns& cols, std::size_t rows) {
  std::vector<double> values(rows * cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) values[i * cols.size() + j] = cols[j][i];
  return DenseMatrix(rows, cols.size(), std::move(values));
}

}  // namespace

SvdFactors svd(const DenseMatrix& a, double rank_tol) {
  const bool wide = a.rows() < a.cols();
  const DenseMatrix tall = wide ? transpose(a) : a;
  const std::size_t m = tall.rows();
  const std::size_t n = tall.cols();

  Columns w(n);
  Columns vr(n, Vector(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    w[j] = tall.col(j);
    vr[j][j] = 1.0;
  }
  orthogonalize_columns(w, vr);

  Vector sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = norm(w[j]);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  Vector s(n);
  Columns left(n), right(n);
  for (std::size_t r = 0; r < n; ++r) {
    s[r] = sigma[order[r]];
    left[r] = std::move(w[order[r]]);
    right[r] = std::move(vr[order[r]]);
  }

  std::size_t rank = 0;
  const double cutoff = s.empty() ? 0.0 : rank_tol * s[0];
  while (rank < n && s[rank] > cutoff && s[rank] > 0.0) ++rank;

  for (std::size_t r = 0; r < rank; ++r)
    for (double& x : left[r]) x /= s[r];
  complete_orthonormal(left, rank);

  DenseMatrix lm = from_columns(left, m);
  DenseMatrix rm = from_columns(right, n);
  if (wide) {
    return SvdFactors{std::move(rm), std::move(s), std::move(lm), rank};
  }
  return SvdFactors{std::move(lm), std::move(s), std::move(rm), rank};
}

DenseMatrix pinv(const DenseMatrix& a, double rank_tol) {
  const SvdFactors f = svd(a, rank_tol);
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<double> values(n * m, 0.0);
  for (std::size_t r = 0; r < f.rank; ++r) {
    const double inv = 1.0 / f.singular_values[r];
    for (std::size_t i = 0; i < n; ++i) {
      const double vi = f.right(i, r) * inv;
      for (std::size_t j = 0; j < m; ++j) values[i * m + j] += vi * f.left(j, r);
    }
  }
  return DenseMatrix(n, m, std::move(values));
}

Vector pinv_solve(const SvdFactors& f, std::span<const double> y) {
  if (y.size() != f.left.rows()) {
    throw std::invalid_argument(fmt::format(
        "pinv_solve: rhs has length {}, matrix has {} rows", y.size(),
        f.left.rows()));
  }
  const std::size_t n = f.right.rows();
  Vector out(n, 0.0);
  for (std::size_t r = 0; r < f.rank; ++r) {
    double coeff = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) coeff += f.left(i, r) * y[i];
    coeff /= f.singular_values[r];
    for (std::size_t i = 0; i < n; ++i) out[i] += coeff * f.right(i, r);
  }
  return out;
}

Vector pinv_solve(const DenseMatrix& a, std::span<const double> y,
                  double rank_tol) {
  if (y.size() != a.rows()) {
    throw std::invalid_argument(fmt::format(
        "pinv_solve: rhs has length {}, matrix has {} rows", y.size(), a.rows()));
  }
  return pinv_solve(svd(a, rank_tol), y);
}

RateConstants rate_constants(const SvdFactors& f, double frob_sq) {
  if (f.rank == 0 || frob_sq <= 0.0) {
    throw std::invalid_argument("rate_constants: zero matrix");
  }
  RateConstants rc;
  const double smax = f.singular_values.front();
  const double smin = f.singular_values[f.rank - 1];
  rc.sigma_max_sq = smax * smax;
  rc.sigma_min_sq = smin * smin;
  rc.frob_sq = frob_sq;
  rc.alpha = 1.0 - rc.sigma_min_sq / frob_sq;
  rc.kappa_sq = rc.sigma_max_sq / rc.sigma_min_sq;
  rc.theta = 1.0 / rc.sigma_min_sq;
  return rc;
}

RateConstants rate_constants(const DenseMatrix& a, double rank_tol) {
  return rate_constants(svd(a, rank_tol), a.frob_sq());
}

RowSpaceProjector::RowSpaceProjector(SvdFactors factors)
    : f_(std::move(factors)) {
  if (f_.rank == 0) {
    throw std::invalid_argument("projector_rowspace: zero matrix");
  }
}

Vector RowSpaceProjector::operator()(std::span<const double> v) const {
  const std::size_t n = f_.right.rows();
  if (v.size() != n) {
    throw std::invalid_argument("RowSpaceProjector: dimension mismatch");
  }
  Vector out(n, 0.0);
  for (std::size_t r = 0; r < f_.rank; ++r) {
    double coeff = 0.0;
    for (std::size_t i = 0; i < n; ++i) coeff += f_.right(i, r) * v[i];
    for (std::size_t i = 0; i < n; ++i) out[i] += coeff * f_.right(i, r);
  }
  return out;
}

RowSpaceProjector projector_rowspace(const DenseMatrix& a, double rank_tol) {
  return RowSpaceProjector(svd(a, rank_tol));
}

Vector project_colspace(const SvdFactors& f, std::span<const double> v) {
  const std::size_t m = f.left.rows();
  if (v.size() != m) {
    throw std::invalid_argument("project_colspace: dimension mismatch");
  }
  Vector out(m, 0.0);
  for (std::size_t r = 0; r < f.rank; ++r) {
    double coeff = 0.0;
    for (std::size_t i = 0; i < m; ++i) coeff += f.left(i, r) * v[i];
    for (std::size_t i = 0; i < m; ++i) out[i] += coeff * f.left(i, r);
  }
  return out;
}

DenseMatrix materialize_product(const FactoredSystem& sys) {
  return multiply(sys.u(), sys.v());
}

BoundInputs FactoredReference::bound_inputs() const {
  BoundInputs in;
  in.alpha_u = u.alpha;
  in.alpha_v = v.alpha;
  in.theta_v = v.theta;
  in.kappa_sq_u = u.kappa_sq;
  in.b_star_sq = sqnorm(b_star);
  in.x_star_sq = sqnorm(x_star);
  return in;
}

FactoredReference factored_reference(const FactoredSystem& sys) {
  const DenseMatrix x = materialize_product(sys);
  const SvdFactors fu = svd(sys.u());
  const SvdFactors fv = svd(sys.v());
  const SvdFactors fx = svd(x);

  FactoredReference ref;
  ref.beta_star = pinv_solve(fx, sys.rhs());
  ref.x_star = pinv_solve(fu, sys.rhs());
  ref.b_star = pinv_solve(fv, ref.x_star);
  ref.u = rate_constants(fu, sys.u().frob_sq());
  ref.v = rate_constants(fv, sys.v().frob_sq());
  ref.x = rate_constants(fx, x.frob_sq());
  return ref;
}

}  // namespace fkz
