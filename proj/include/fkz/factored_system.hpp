#pragma once

#include <optional>
#include <string_view>

#include "fkz/dense.hpp"
#include "fkz/sampling.hpp"

namespace fkz {

/// Where a factored system came from. S1/S2/S3a/S3b are the (m, n, k)
/// regimes of the convergence taxonomy; custom is anything loaded from disk.
enum class Scenario { s1, s2, s3a, s3b, custom };

std::string_view to_string(Scenario s);
/// Accepts "S1", "s1", "S3b", ... Throws std::invalid_argument.
Scenario parse_scenario(std::string_view text);

/// U V beta = y with U (m x k), V (k x n), y (m), kept in factored form.
///
/// Row and column samplers for both factors are built up front. The product
/// U V is never formed by anything that takes a FactoredSystem, except the
/// oracle.
class FactoredSystem {
 public:
  /// Throws std::invalid_argument when cols(U) != rows(V) or len(y) != rows(U).
  FactoredSystem(DenseMatrix u, DenseMatrix v, Vector y,
                 Scenario scenario = Scenario::custom);

  const DenseMatrix& u() const noexcept { return u_; }
  const DenseMatrix& v() const noexcept { return v_; }
  const Vector& rhs() const noexcept { return y_; }
  Scenario scenario() const noexcept { return scenario_; }

  std::size_t m() const noexcept { return u_.rows(); }
  std::size_t k() const noexcept { return u_.cols(); }
  std::size_t n() const noexcept { return v_.cols(); }

  const NormSampler& u_rows() const;
  const NormSampler& u_cols() const;
  const NormSampler& v_rows() const;
  const NormSampler& v_cols() const;

 private:
  DenseMatrix u_;
  DenseMatrix v_;
  Vector y_;
  Scenario scenario_;
  std::optional<NormSampler> u_rows_, u_cols_, v_rows_, v_cols_;
};

}  // namespace fkz
