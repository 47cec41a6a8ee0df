#include "fkz/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

namespace fkz {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::stream(std::uint64_t master_seed, std::uint64_t stream_id) {
  return Rng(splitmix64(master_seed ^ splitmix64(stream_id)));
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0, v = 0.0, s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

NormSampler::NormSampler(std::span<const double> weights) {
  if (weights.empty()) {
    throw std::invalid_argument("NormSampler: no indices to sample");
  }
  cumulative_.reserve(weights.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw std::invalid_argument(fmt::format(
          "NormSampler: index {} has zero (or invalid) squared norm", i));
    }
    acc += weights[i];
    cumulative_.push_back(acc);
  }
  total_ = acc;
}

double NormSampler::probability(std::size_t i) const {
  if (i >= cumulative_.size()) {
    throw std::out_of_range("NormSampler::probability: index out of range");
  }
  const double lo = i == 0 ? 0.0 : cumulative_[i - 1];
  return (cumulative_[i] - lo) / total_;
}

std::size_t NormSampler::index_for(double u) const noexcept {
  const double target = u * total_;
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  // u * total can round up to total itself
  if (it == cumulative_.end()) --it;
  return static_cast<std::size_t>(it - cumulative_.begin());
}

NormSampler sampler_from_rows(const DenseMatrix& a) {
  return NormSampler(a.row_sqnorms());
}

NormSampler sampler_from_cols(const DenseMatrix& a) {
  return NormSampler(a.col_sqnorms());
}

}  // namespace fkz
