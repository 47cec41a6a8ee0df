#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "fkz/dense.hpp"

namespace fkz {

/// Seedable, portable random source.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Uniforms and Gaussians are derived here by hand instead of
/// through <random> distributions, whose algorithms are
/// implementation-defined, so a given seed yields the same bits on every
/// conforming toolchain.
///
/// Monte-Carlo trials get independent streams via Rng::stream(master, id):
/// the engine seed is splitmix64(master ^ splitmix64(id)).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng stream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal (Marsaglia polar method).
  double gaussian();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Discrete sampler with P(i) = weight_i / sum(weights).
///
/// Built from prefix sums; a draw inverts the CDF by binary search. Every
/// weight must be strictly positive: a zero row or column has no defined
/// selection probability in the row-action methods, so it is rejected here.
class NormSampler {
 public:
  /// Throws std::invalid_argument on empty input or any weight <= 0.
  explicit NormSampler(std::span<const double> weights);

  std::size_t size() const noexcept { return cumulative_.size(); }
  double total() const noexcept { return total_; }
  std::span<const double> cumulative() const noexcept { return cumulative_; }

  double probability(std::size_t i) const;

  /// Index for a uniform value u in [0, 1).
  std::size_t index_for(double u) const noexcept;

  std::size_t draw(Rng& rng) const { return index_for(rng.uniform()); }

 private:
  std::vector<double> cumulative_;
  double total_ = 0.0;
};

/// Rows drawn with probability ||A^i||^2 / ||A||_F^2.
NormSampler sampler_from_rows(const DenseMatrix& a);

/// Columns drawn with probability ||A_(j)||^2 / ||A||_F^2.
NormSampler sampler_from_cols(const DenseMatrix& a);

}  // namespace fkz
