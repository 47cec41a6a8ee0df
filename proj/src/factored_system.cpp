#include "fkz/factored_system.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

#include <fmt/core.h>

namespace fkz {

namespace {

std::optional<NormSampler> try_sampler(std::span<const double> weights) {
  try {
    return NormSampler(weights);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

const NormSampler& require(const std::optional<NormSampler>& s,
                           const char* what) {
  if (!s) throw std::invalid_argument(fmt::format("FactoredSystem: {}", what));
  return *s;
}

}  // namespace

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::s1: return "S1";
    case Scenario::s2: return "S2";
    case Scenario::s3a: return "S3a";
    case Scenario::s3b: return "S3b";
    case Scenario::custom: return "custom";
  }
  return "?";
}

Scenario parse_scenario(std::string_view text) {
  std::string t;
  for (char c : text) t.push_back(static_cast<char>(std::tolower(c)));
  if (t == "s1") return Scenario::s1;
  if (t == "s2") return Scenario::s2;
  if (t == "s3a") return Scenario::s3a;
  if (t == "s3b") return Scenario::s3b;
  if (t == "custom") return Scenario::custom;
  throw std::invalid_argument(fmt::format(
      "unknown scenario '{}' (expected S1, S2, S3a, S3b or custom)", text));
}

FactoredSystem::FactoredSystem(DenseMatrix u, DenseMatrix v, Vector y,
                               Scenario scenario)
    : u_(std::move(u)), v_(std::move(v)), y_(std::move(y)), scenario_(scenario) {
  if (u_.cols() != v_.rows()) {
    throw std::invalid_argument(fmt::format(
        "FactoredSystem: inner dimension mismatch, U is {}x{} but V is {}x{}",
        u_.rows(), u_.cols(), v_.rows(), v_.cols()));
  }
  if (y_.size() != u_.rows()) {
    throw std::invalid_argument(
        fmt::format("FactoredSystem: y has length {}, U has {} rows", y_.size(),
                    u_.rows()));
  }
  require_finite(y_, "FactoredSystem rhs");
  u_rows_ = try_sampler(u_.row_sqnorms());
  u_cols_ = try_sampler(u_.col_sqnorms());
  v_rows_ = try_sampler(v_.row_sqnorms());
  v_cols_ = try_sampler(v_.col_sqnorms());
}

const NormSampler& FactoredSystem::u_rows() const {
  return require(u_rows_, "U has a zero row");
}
const NormSampler& FactoredSystem::u_cols() const {
  return require(u_cols_, "U has a zero column");
}
const NormSampler& FactoredSystem::v_rows() const {
  return require(v_rows_, "V has a zero row");
}
const NormSampler& FactoredSystem::v_cols() const {
  return require(v_cols_, "V has a zero column");
}

}  // namespace fkz
