#include "fkz/factored_solvers.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/core.h>

#include "fkz/kernels.hpp"

namespace fkz {

namespace {

void check_index(std::size_t idx, std::size_t bound, const char* what) {
  if (idx >= bound) {
    throw std::out_of_range(
        fmt::format("interlaced_update: {} index {} out of range [0, {})", what,
                    idx, bound));
  }
}

void check_state(Interlacing pair, const FactoredSystem& sys,
                 const InterlacedState& s) {
  if (s.x.size() != sys.k() || s.b.size() != sys.n()) {
    throw std::invalid_argument(fmt::format(
        "interlaced state has x:{} b:{}, system needs x:{} b:{}", s.x.size(),
        s.b.size(), sys.k(), sys.n()));
  }
  const bool ok =
      (pair.first != Method::rek || (s.z && s.z->size() == sys.m())) &&
      (pair.first != Method::rgs ||
       (s.residual_u && s.residual_u->size() == sys.m())) &&
      (pair.second != Method::rek || (s.z_v && s.z_v->size() == sys.k())) &&
      (pair.second != Method::rgs ||
       (s.residual_v && s.residual_v->size() == sys.k()));
  if (!ok) {
    throw std::invalid_argument(fmt::format(
        "interlaced state lacks the auxiliaries {} needs", to_string(pair)));
  }
}

}  // namespace

bool is_supported(Interlacing pair) noexcept {
  return pair == kRkRk || pair == kRekRk || pair == kRekRek ||
         pair == kRgsRgs;
}

std::string to_string(Interlacing pair) {
  return fmt::format("{}-{}", to_string(pair.first), to_string(pair.second));
}

void require_supported(Interlacing pair) {
  if (!is_supported(pair)) {
    throw std::invalid_argument(fmt::format(
        "unsupported interlacing {} (supported: rk-rk, rek-rk, rek-rek, "
        "rgs-rgs)",
        to_string(pair)));
  }
}

InterlacedState initial_interlaced_state(Interlacing pair,
                                         const FactoredSystem& sys) {
  require_supported(pair);
  InterlacedState s;
  s.x.assign(sys.k(), 0.0);
  s.b.assign(sys.n(), 0.0);
  if (pair.first == Method::rek) s.z = sys.rhs();
  if (pair.first == Method::rgs) s.residual_u = sys.rhs();
  // x_0 = 0, so both V-side auxiliaries start at zero.
  if (pair.second == Method::rek) s.z_v = Vector(sys.k(), 0.0);
  if (pair.second == Method::rgs) s.residual_v = Vector(sys.k(), 0.0);
  return s;
}

std::uint64_t interlaced_cost(Interlacing pair, std::size_t m, std::size_t k,
                              std::size_t n) {
  return step_cost(pair.first, m, k) + step_cost(pair.second, k, n);
}

InterlacedDraw draw_indices(Interlacing pair, const FactoredSystem& sys,
                            Rng& rng) {
  InterlacedDraw d;
  if (pair.first == Method::rk || pair.first == Method::rek)
    d.u_row = sys.u_rows().draw(rng);
  if (pair.first == Method::rek || pair.first == Method::rgs)
    d.u_col = sys.u_cols().draw(rng);
  if (pair.second == Method::rk || pair.second == Method::rek)
    d.v_row = sys.v_rows().draw(rng);
  if (pair.second == Method::rek || pair.second == Method::rgs)
    d.v_col = sys.v_cols().draw(rng);
  return d;
}

void interlaced_update(Interlacing pair, const FactoredSystem& sys,
                       InterlacedState& state, const InterlacedDraw& draw) {
  require_supported(pair);
  check_state(pair, sys, state);
  const auto& u = sys.u();
  const auto& v = sys.v();
  const auto& y = sys.rhs();

  // V-side auxiliaries follow the moving right-hand side x_t.
  const bool track_x = pair.second != Method::rk;
  Vector x_prev;
  if (track_x && pair.first != Method::rgs) x_prev = state.x;

  std::size_t moved_coord = 0;
  double moved_by = 0.0;
  switch (pair.first) {
    case Method::rk:
      check_index(draw.u_row, sys.m(), "U row");
      kernels::row_projection(u, draw.u_row, y[draw.u_row], state.x);
      break;
    case Method::rek: {
      check_index(draw.u_row, sys.m(), "U row");
      check_index(draw.u_col, sys.k(), "U column");
      auto& z = *state.z;
      kernels::column_projection(u, draw.u_col, z);
      kernels::row_projection(u, draw.u_row, y[draw.u_row] - z[draw.u_row],
                              state.x);
      break;
    }
    case Method::rgs:
      check_index(draw.u_col, sys.k(), "U column");
      moved_coord = draw.u_col;
      moved_by = kernels::coordinate_step(u, draw.u_col, *state.residual_u);
      state.x[moved_coord] += moved_by;
      break;
    case Method::regs:
      break;  // rejected by require_supported
  }

  auto add_dx = [&](Vector& target) {
    if (pair.first == Method::rgs) {
      target[moved_coord] += moved_by;
    } else {
      for (std::size_t p = 0; p < target.size(); ++p)
        target[p] += state.x[p] - x_prev[p];
    }
  };

  switch (pair.second) {
    case Method::rk:
      check_index(draw.v_row, sys.k(), "V row");
      kernels::row_projection(v, draw.v_row, state.x[draw.v_row], state.b);
      break;
    case Method::rek: {
      check_index(draw.v_row, sys.k(), "V row");
      check_index(draw.v_col, sys.n(), "V column");
      auto& zv = *state.z_v;
      add_dx(zv);
      kernels::column_projection(v, draw.v_col, zv);
      kernels::row_projection(v, draw.v_row, state.x[draw.v_row] - zv[draw.v_row],
                              state.b);
      break;
    }
    case Method::rgs: {
      check_index(draw.v_col, sys.n(), "V column");
      auto& rv = *state.residual_v;
      add_dx(rv);
      state.b[draw.v_col] += kernels::coordinate_step(v, draw.v_col, rv);
      break;
    }
    case Method::regs:
      break;
  }

  ++state.t;
  state.flops += interlaced_cost(pair, sys.m(), sys.k(), sys.n());
}

void rkrk_update(const FactoredSystem& sys, InterlacedState& state,
                 std::size_t i, std::size_t p) {
  interlaced_update(kRkRk, sys, state, {.u_row = i, .v_row = p});
}

void rekrk_update(const FactoredSystem& sys, InterlacedState& state,
                  std::size_t i, std::size_t j, std::size_t p) {
  interlaced_update(kRekRk, sys, state, {.u_row = i, .u_col = j, .v_row = p});
}

void interlaced_step(Interlacing pair, const FactoredSystem& sys,
                     InterlacedState& state, Rng& rng) {
  require_supported(pair);
  interlaced_update(pair, sys, state, draw_indices(pair, sys, rng));
}

void rkrk_step(const FactoredSystem& sys, InterlacedState& state, Rng& rng) {
  interlaced_step(kRkRk, sys, state, rng);
}

void rekrk_step(const FactoredSystem& sys, InterlacedState& state, Rng& rng) {
  interlaced_step(kRekRk, sys, state, rng);
}

double interlaced_stopping_residual(Interlacing pair, const FactoredSystem& sys,
                                    const InterlacedState& state) {
  // U x = y side
  Vector ru = subtract(sys.rhs(), matvec(sys.u(), state.x));
  double u_side = 0.0;
  switch (pair.first) {
    case Method::rk: u_side = norm(ru); break;
    case Method::rek: u_side = norm(subtract(ru, *state.z)); break;
    default: u_side = norm(matvec_adjoint(sys.u(), ru)); break;
  }
  // V b = x_t side
  Vector rv = subtract(state.x, matvec(sys.v(), state.b));
  double v_side = 0.0;
  switch (pair.second) {
    case Method::rk: v_side = norm(rv); break;
    case Method::rek: v_side = norm(subtract(rv, *state.z_v)); break;
    default: v_side = norm(matvec_adjoint(sys.v(), rv)); break;
  }
  return std::max(u_side, v_side);
}

InterlacedState run_interlaced(Interlacing pair, const FactoredSystem& sys,
                               const RunOptions& options, Rng& rng,
                               Recorder* recorder) {
  require_supported(pair);
  if (options.budget == 0) {
    throw std::invalid_argument("run_interlaced: budget must be >= 1");
  }
  const std::uint64_t interval =
      options.check_interval == 0 ? sys.m() : options.check_interval;

  auto observe = [&](const InterlacedState& s, bool final) {
    double res = 0.0;
    if (!recorder->has_reference()) {
      const double r = interlaced_stopping_residual(pair, sys, s);
      res = r * r;
    }
    if (final)
      recorder->finish(s.t, s.b, s.flops, res);
    else
      recorder->record(s.t, s.b, s.flops, res);
  };

  InterlacedState state = initial_interlaced_state(pair, sys);
  for (std::uint64_t t = 1; t <= options.budget; ++t) {
    interlaced_update(pair, sys, state, draw_indices(pair, sys, rng));
    if (recorder && recorder->due(t)) observe(state, false);
    if (options.tolerance && t % interval == 0 &&
        interlaced_stopping_residual(pair, sys, state) <= *options.tolerance) {
      break;
    }
  }
  if (recorder) observe(state, true);
  return state;
}

}  // namespace fkz
