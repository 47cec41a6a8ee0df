#include "fkz/base_solvers.hpp"

#include <stdexcept>

#include <fmt/core.h>

#include "fkz/kernels.hpp"

namespace fkz {

namespace {

void require_state(const SolverState& state, const PlainSystem& sys,
                   bool needs_z, bool needs_residual, const char* who) {
  if (state.beta.size() != sys.cols()) {
    throw std::invalid_argument(fmt::format(
        "{}: iterate has length {}, system has {} unknowns", who,
        state.beta.size(), sys.cols()));
  }
  if (needs_z && !state.z) {
    throw std::invalid_argument(fmt::format("{}: state carries no z", who));
  }
  if (needs_residual && !state.residual) {
    throw std::invalid_argument(
        fmt::format("{}: state carries no residual", who));
  }
}

std::size_t require_index(std::size_t idx, std::size_t bound, const char* who) {
  if (idx >= bound) {
    throw std::out_of_range(
        fmt::format("{}: index {} out of range [0, {})", who, idx, bound));
  }
  return idx;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::rk: return "rk";
    case Method::rek: return "rek";
    case Method::rgs: return "rgs";
    case Method::regs: return "regs";
  }
  return "?";
}

PlainSystem::PlainSystem(DenseMatrix a, Vector y)
    : a_(std::move(a)), y_(std::move(y)) {
  if (y_.size() != a_.rows()) {
    throw std::invalid_argument(
        fmt::format("PlainSystem: rhs has length {}, matrix has {} rows",
                    y_.size(), a_.rows()));
  }
  require_finite(y_, "PlainSystem rhs");
  try {
    rows_.emplace(a_.row_sqnorms());
  } catch (const std::invalid_argument&) {
  }
  try {
    cols_.emplace(a_.col_sqnorms());
  } catch (const std::invalid_argument&) {
  }
}

const NormSampler& PlainSystem::row_sampler() const {
  if (!rows_) throw std::invalid_argument("PlainSystem: matrix has a zero row");
  return *rows_;
}

const NormSampler& PlainSystem::col_sampler() const {
  if (!cols_)
    throw std::invalid_argument("PlainSystem: matrix has a zero column");
  return *cols_;
}

SolverState initial_state(Method method, const PlainSystem& sys) {
  SolverState s;
  s.beta.assign(sys.cols(), 0.0);
  switch (method) {
    case Method::rk:
      break;
    case Method::rek:
      s.z = sys.rhs();
      break;
    case Method::rgs:
      s.residual = sys.rhs();
      break;
    case Method::regs:
      s.z = Vector(sys.cols(), 0.0);
      s.residual = sys.rhs();
      break;
  }
  return s;
}

Vector estimate(Method method, const SolverState& state) {
  if (method == Method::regs) return subtract(state.beta, *state.z);
  return state.beta;
}

double stopping_residual(Method method, const PlainSystem& sys,
                         const SolverState& state) {
  const auto& a = sys.matrix();
  switch (method) {
    case Method::rk:
      return norm(subtract(sys.rhs(), matvec(a, state.beta)));
    case Method::rek: {
      Vector r = subtract(sys.rhs(), matvec(a, state.beta));
      return norm(subtract(r, *state.z));
    }
    case Method::rgs:
    case Method::regs: {
      const Vector est = estimate(method, state);
      const Vector r = subtract(sys.rhs(), matvec(a, est));
      return norm(matvec_adjoint(a, r));
    }
  }
  return 0.0;
}

std::uint64_t step_cost(Method method, std::size_t m, std::size_t n) {
  switch (method) {
    case Method::rk: return kernels::update_cost(n);
    case Method::rek: return kernels::update_cost(n) + kernels::update_cost(m);
    case Method::rgs: return kernels::update_cost(m);
    case Method::regs: return kernels::update_cost(m) + kernels::update_cost(n);
  }
  return 0;
}

void rk_update(const PlainSystem& sys, SolverState& state, std::size_t row) {
  require_state(state, sys, false, false, "rk_update");
  require_index(row, sys.rows(), "rk_update");
  kernels::row_projection(sys.matrix(), row, sys.rhs()[row], state.beta);
  ++state.t;
  state.flops += step_cost(Method::rk, sys.rows(), sys.cols());
}

void rek_update(const PlainSystem& sys, SolverState& state, std::size_t row,
                std::size_t col) {
  require_state(state, sys, true, false, "rek_update");
  require_index(row, sys.rows(), "rek_update");
  require_index(col, sys.cols(), "rek_update");
  auto& z = *state.z;
  if (z.size() != sys.rows()) {
    throw std::invalid_argument("rek_update: z must have one entry per row");
  }
  // z first, then the row update sees z_t.
  kernels::column_projection(sys.matrix(), col, z);
  kernels::row_projection(sys.matrix(), row, sys.rhs()[row] - z[row],
                          state.beta);
  ++state.t;
  state.flops += step_cost(Method::rek, sys.rows(), sys.cols());
}

void rgs_update(const PlainSystem& sys, SolverState& state, std::size_t col) {
  require_state(state, sys, false, true, "rgs_update");
  require_index(col, sys.cols(), "rgs_update");
  if (state.residual->size() != sys.rows()) {
    throw std::invalid_argument("rgs_update: residual length != rows");
  }
  state.beta[col] +=
      kernels::coordinate_step(sys.matrix(), col, *state.residual);
  ++state.t;
  state.flops += step_cost(Method::rgs, sys.rows(), sys.cols());
}

void regs_update(const PlainSystem& sys, SolverState& state, std::size_t row,
                 std::size_t col) {
  require_state(state, sys, true, true, "regs_update");
  require_index(row, sys.rows(), "regs_update");
  require_index(col, sys.cols(), "regs_update");
  if (state.residual->size() != sys.rows() || state.z->size() != sys.cols()) {
    throw std::invalid_argument("regs_update: auxiliary vector length mismatch");
  }
  const double gamma =
      kernels::coordinate_step(sys.matrix(), col, *state.residual);
  state.beta[col] += gamma;
  // z_t = P_i (z_{t-1} + beta_t - beta_{t-1}); the difference is gamma e_col.
  auto& z = *state.z;
  z[col] += gamma;
  kernels::row_projection(sys.matrix(), row, 0.0, z);
  ++state.t;
  state.flops += step_cost(Method::regs, sys.rows(), sys.cols());
}

void rk_step(const PlainSystem& sys, SolverState& state, Rng& rng) {
  rk_update(sys, state, sys.row_sampler().draw(rng));
}

void rek_step(const PlainSystem& sys, SolverState& state, Rng& rng) {
  const std::size_t row = sys.row_sampler().draw(rng);
  const std::size_t col = sys.col_sampler().draw(rng);
  rek_update(sys, state, row, col);
}

void rgs_step(const PlainSystem& sys, SolverState& state, Rng& rng) {
  rgs_update(sys, state, sys.col_sampler().draw(rng));
}

void regs_step(const PlainSystem& sys, SolverState& state, Rng& rng) {
  const std::size_t row = sys.row_sampler().draw(rng);
  const std::size_t col = sys.col_sampler().draw(rng);
  regs_update(sys, state, row, col);
}

void step(Method method, const PlainSystem& sys, SolverState& state, Rng& rng) {
  switch (method) {
    case Method::rk: return rk_step(sys, state, rng);
    case Method::rek: return rek_step(sys, state, rng);
    case Method::rgs: return rgs_step(sys, state, rng);
    case Method::regs: return regs_step(sys, state, rng);
  }
}

SolverState run(Method method, const PlainSystem& sys, const RunOptions& options,
                Rng& rng, Recorder* recorder) {
  if (options.budget == 0) {
    throw std::invalid_argument("run: budget must be >= 1");
  }
  const std::uint64_t interval =
      options.check_interval == 0 ? sys.rows() : options.check_interval;

  auto residual_sq = [&](const SolverState& s) {
    const double r = stopping_residual(method, sys, s);
    return r * r;
  };
  auto observe = [&](const SolverState& s, bool final) {
    const Vector est = estimate(method, s);
    const double res = recorder->has_reference() ? 0.0 : residual_sq(s);
    if (final)
      recorder->finish(s.t, est, s.flops, res);
    else
      recorder->record(s.t, est, s.flops, res);
  };

  SolverState state = initial_state(method, sys);
  for (std::uint64_t t = 1; t <= options.budget; ++t) {
    step(method, sys, state, rng);
    if (recorder && recorder->due(t)) observe(state, false);
    if (options.tolerance && t % interval == 0 &&
        stopping_residual(method, sys, state) <= *options.tolerance) {
      break;
    }
  }
  if (recorder) observe(state, true);
  return state;
}

}  // namespace fkz
