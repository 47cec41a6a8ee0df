#pragma once

/// @file
/// Reference direct solver: SVD, pseudo-inverse solutions and the spectral
/// rate constants that the convergence bounds are written in.
///
/// This is the ground truth the iterative solvers are measured against. It is
/// also the only place (besides tests) allowed to form the product U V of a
/// factored system.

#include <cstddef>

#include "fkz/bounds.hpp"
#include "fkz/dense.hpp"
#include "fkz/factored_system.hpp"

namespace fkz {

inline constexpr double kDefaultRankTol = 1e-10;

/// Thin SVD A = L diag(s) R^T with p = min(m, n) columns in L and R.
///
/// singular_values are non-negative and non-increasing. rank counts the
/// values strictly above rank_tol * s[0]. Left vectors belonging to
/// numerically zero singular values are an orthonormal completion, so L
/// always has orthonormal columns.
struct SvdFactors {
  DenseMatrix left;          // m x p
  Vector singular_values;    // p
  DenseMatrix right;         // n x p
  std::size_t rank = 0;
};

/// One-sided (Hestenes) Jacobi SVD.
SvdFactors svd(const DenseMatrix& a, double rank_tol = kDefaultRankTol);

/// Moore-Penrose pseudo-inverse (n x m) from the SVD.
DenseMatrix pinv(const DenseMatrix& a, double rank_tol = kDefaultRankTol);

/// A^+ y: the unique, least-squares, least-norm or least-norm least-squares
/// solution, whichever the shape and rank of A call for.
Vector pinv_solve(const DenseMatrix& a, std::span<const double> y,
                  double rank_tol = kDefaultRankTol);
Vector pinv_solve(const SvdFactors& f, std::span<const double> y);

/// alpha = 1 - s_min^2 / ||A||_F^2, kappa^2 = s_max^2 / s_min^2,
/// theta = 1 / s_min^2, where s_min is the smallest singular value above the
/// rank threshold.
struct RateConstants {
  double alpha = 0.0;
  double kappa_sq = 0.0;
  double theta = 0.0;
  double sigma_min_sq = 0.0;
  double sigma_max_sq = 0.0;
  double frob_sq = 0.0;
};

/// Throws std::invalid_argument for a (numerically) zero matrix.
RateConstants rate_constants(const DenseMatrix& a,
                             double rank_tol = kDefaultRankTol);
RateConstants rate_constants(const SvdFactors& f, double frob_sq);

/// v -> A^+ A v, the orthogonal projector onto range(A^T).
class RowSpaceProjector {
 public:
  explicit RowSpaceProjector(SvdFactors factors);
  Vector operator()(std::span<const double> v) const;
  std::size_t rank() const noexcept { return f_.rank; }

 private:
  SvdFactors f_;
};

/// Throws std::invalid_argument for a zero matrix.
RowSpaceProjector projector_rowspace(const DenseMatrix& a,
                                     double rank_tol = kDefaultRankTol);

/// v -> A A^+ v, the orthogonal projector onto range(A).
Vector project_colspace(const SvdFactors& f, std::span<const double> v);

/// U V, formed explicitly. Reference computations only.
DenseMatrix materialize_product(const FactoredSystem& sys);

/// Optimal solutions and constants of a factored system and its two
/// subsystems.
struct FactoredReference {
  Vector beta_star;  // X^+ y, X = U V
  Vector x_star;     // U^+ y
  Vector b_star;     // V^+ x*
  RateConstants u;
  RateConstants v;
  RateConstants x;

  BoundInputs bound_inputs() const;
};

FactoredReference factored_reference(const FactoredSystem& sys);

}  // namespace fkz
