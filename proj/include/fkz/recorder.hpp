#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fkz/dense.hpp"

namespace fkz {

struct Sample {
  std::uint64_t iter = 0;
  double error_sq = 0.0;
  std::uint64_t flops = 0;

  friend bool operator==(const Sample&, const Sample&) = default;
};

/// Collects (iter, error, flops) samples from a solver run.
///
/// A sample is taken whenever iter is a positive multiple of the stride, and
/// once more for the final iterate if the run ends off-stride. With a
/// reference solution the recorded value is ||estimate - reference||^2;
/// without one it is the squared stopping residual supplied by the driver.
class Recorder {
 public:
  explicit Recorder(std::uint64_t stride,
                    std::optional<Vector> reference = std::nullopt);

  std::uint64_t stride() const noexcept { return stride_; }
  bool has_reference() const noexcept { return reference_.has_value(); }
  bool due(std::uint64_t iter) const noexcept {
    return iter > 0 && iter % stride_ == 0;
  }

  void record(std::uint64_t iter, std::span<const double> estimate,
              std::uint64_t flops, double residual_sq);

  /// Records the last iterate unless it was already sampled.
  void finish(std::uint64_t iter, std::span<const double> estimate,
              std::uint64_t flops, double residual_sq);

  const std::vector<Sample>& samples() const noexcept { return samples_; }
  std::vector<Sample> take() { return std::move(samples_); }

 private:
  std::uint64_t stride_;
  std::optional<Vector> reference_;
  std::vector<Sample> samples_;
};

}  // namespace fkz
