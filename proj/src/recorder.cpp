#include "fkz/recorder.hpp"

#include <stdexcept>

namespace fkz {

Recorder::Recorder(std::uint64_t stride, std::optional<Vector> reference)
    : stride_(stride), reference_(std::move(reference)) {
  if (stride_ == 0) throw std::invalid_argument("Recorder: stride must be >= 1");
}

void Recorder::record(std::uint64_t iter, std::span<const double> estimate,
                      std::uint64_t flops, double residual_sq) {
  const double value =
      reference_ ? distance_sq(estimate, *reference_) : residual_sq;
  samples_.push_back({iter, value, flops});
}

void Recorder::finish(std::uint64_t iter, std::span<const double> estimate,
                      std::uint64_t flops, double residual_sq) {
  if (!samples_.empty() && samples_.back().iter == iter) return;
  record(iter, estimate, flops, residual_sq);
}

}  // namespace fkz
