#pragma once

/// @file
/// Synthetic factored systems for each (m, n, k) regime, and loading of
/// externally factored datasets.
///
/// Regimes (U is m x k, V is k x n, X = U V):
///   S1   U overdetermined and the full system consistent: k < min(m, n),
///        or n < k < m
///   S2   U underdetermined: k > m; consistent
///   S3a  X overdetermined and inconsistent, V overdetermined: n < k < m
///   S3b  X overdetermined and inconsistent, V underdetermined: k < n < m
/// The interlaced methods reach the full-system solution in S1 (RK-RK) and
/// S3b (REK-RK) only.

#include <cstdint>
#include <filesystem>

#include "fkz/dense.hpp"
#include "fkz/factored_system.hpp"
#include "fkz/sampling.hpp"

namespace fkz {

struct ScenarioSpec {
  Scenario scenario = Scenario::s1;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t seed = 0;

  bool consistent() const noexcept {
    return scenario == Scenario::s1 || scenario == Scenario::s2;
  }

  /// Throws std::invalid_argument if (m, n, k) does not fit the scenario.
  void validate() const;

  /// Reduced-scale defaults used by tests: S1 60/40/20, S2 40/60/50,
  /// S3a 120/50/75, S3b 120/75/50.
  static ScenarioSpec preset(Scenario s, std::uint64_t seed);
};

/// Share of ||U V beta|| given to the null-space residual in inconsistent
/// right-hand sides.
inline constexpr double kResidualRatio = 0.5;

struct GeneratedSystem {
  FactoredSystem system;
  Vector beta;             // generating coefficients
  double residual_ratio;   // ||r|| / ||U V beta||, 0 when consistent
};

/// Standard Gaussian U, V and beta; y = U (V beta), plus a residual in
/// null(X^T) for the inconsistent scenarios.
GeneratedSystem gen_gaussian_factored(const ScenarioSpec& spec, Rng& rng);

/// Same, drawing from Rng::stream(spec.seed, 0).
GeneratedSystem gen_gaussian_factored(const ScenarioSpec& spec);

/// Factors with prescribed squared condition numbers whose singular
/// directions line up, so that kappa^2(U V) = kappa^2(U) * kappa^2(V).
/// Singular values are geometrically spaced. Requires k <= min(m, n) and
/// a scenario of S1 or S3b.
GeneratedSystem gen_conditioned_factored(const ScenarioSpec& spec,
                                         double kappa_sq_u, double kappa_sq_v,
                                         Rng& rng);

/// y = U V beta + r with r the part of Gaussian w orthogonal to range(U V),
/// rescaled to ||r|| = kResidualRatio * ||U V beta||.
/// Throws std::invalid_argument when range(U V) is all of R^m.
Vector make_inconsistent_rhs(const DenseMatrix& u, const DenseMatrix& v,
                             std::span<const double> beta, Rng& rng);

/// Deterministic core of make_inconsistent_rhs with the Gaussian draw w
/// supplied. Throws if w has no component outside range(U V).
Vector make_inconsistent_rhs(const DenseMatrix& u, const DenseMatrix& v,
                             std::span<const double> beta,
                             std::span<const double> w);

/// Reads U, V and y in the matrix/vector text formats.
FactoredSystem load_factored(const std::filesystem::path& u_path,
                             const std::filesystem::path& v_path,
                             const std::filesystem::path& y_path);

/// Writes U.mat, V.mat and y.vec into dir (created if needed).
void save_factored(const std::filesystem::path& dir, const FactoredSystem& sys);

/// Random m x k matrix with orthonormal columns (k <= m).
DenseMatrix random_orthonormal(std::size_t m, std::size_t k, Rng& rng);

DenseMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);
Vector gaussian_vector(std::size_t len, Rng& rng);

}  // namespace fkz
