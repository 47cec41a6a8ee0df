#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fkz/bounds.hpp"
#include "fkz/factored_solvers.hpp"
#include "fkz/oracle.hpp"
#include "fkz/systems.hpp"
#include "test_util.hpp"

using namespace fkz;

namespace {

// Mean of ||b_T - beta*||^2 / ||beta*||^2 over independent trials.
double mean_final_rel(Interlacing pair, const FactoredSystem& sys,
                      std::uint64_t budget, int trials, std::uint64_t seed) {
  const auto star = factored_reference(sys).beta_star;
  RunOptions opt;
  opt.budget = budget;
  double sum = 0.0;
  for (int k = 0; k < trials; ++k) {
    Rng rng = Rng::stream(seed, k + 1);
    const auto s = run_interlaced(pair, sys, opt, rng);
    sum += test::rel_err_sq(s.b, star);
  }
  return sum / trials;
}

FactoredSystem preset(Scenario s, std::uint64_t seed) {
  return gen_gaussian_factored(ScenarioSpec::preset(s, seed)).system;
}

}  // namespace

TEST_CASE("factored system shape checks") {
  Rng rng(1);
  const FactoredSystem sys(test::random_matrix(3, 2, rng),
                           DenseMatrix::identity(2), Vector{1, 2, 3});
  CHECK(sys.m() == 3);
  CHECK(sys.k() == 2);
  CHECK(sys.n() == 2);
  CHECK(sys.scenario() == Scenario::custom);
  CHECK_THROWS_AS(FactoredSystem(DenseMatrix::identity(3), DenseMatrix::identity(2),
                                 Vector{1, 2, 3}),
                  std::invalid_argument);
  CHECK_THROWS_AS(FactoredSystem(DenseMatrix::identity(2), DenseMatrix::identity(2),
                                 Vector{1, 2, 3}),
                  std::invalid_argument);
  CHECK(parse_scenario("s3b") == Scenario::s3b);
  CHECK(parse_scenario("S2") == Scenario::s2);
  CHECK(to_string(Scenario::s3a) == "S3a");
  CHECK_THROWS_AS(parse_scenario("S4"), std::invalid_argument);
}

TEST_CASE("rk-rk on identity factors") {
  const FactoredSystem sys(DenseMatrix::identity(2), DenseMatrix::identity(2),
                           Vector{1, 2});
  auto s = initial_interlaced_state(kRkRk, sys);
  rkrk_update(sys, s, 0, 0);
  CHECK(s.x == Vector{1, 0});
  CHECK(s.b == Vector{1, 0});
  rkrk_update(sys, s, 1, 1);
  CHECK(s.x == Vector{1, 2});
  CHECK(s.b == Vector{1, 2});
  CHECK(s.t == 2);
  CHECK(s.flops == 2 * interlaced_cost(kRkRk, 2, 2, 2));
}

TEST_CASE("inner step uses the updated x") {
  Rng rng(2);
  const FactoredSystem sys(test::random_matrix(6, 3, rng), test::random_matrix(3, 4, rng),
                           test::random_vector(6, rng));
  auto s = initial_interlaced_state(kRkRk, sys);
  rkrk_update(sys, s, 4, 1);
  CHECK(dot(sys.v().row(1), s.b) == doctest::Approx(s.x[1]).epsilon(1e-12));
  CHECK(dot(sys.u().row(4), s.x) == doctest::Approx(sys.rhs()[4]).epsilon(1e-12));
}

TEST_CASE("rek-rk reduces to rk-rk when z is zero") {
  const auto sys = preset(Scenario::s1, 3);
  auto a = initial_interlaced_state(kRkRk, sys);
  auto b = initial_interlaced_state(kRekRk, sys);
  Rng draws(4);
  for (int t = 0; t < 100; ++t) {
    const auto d = draw_indices(kRekRk, sys, draws);
    b.z = Vector(sys.m(), 0.0);
    rkrk_update(sys, a, d.u_row, d.v_row);
    rekrk_update(sys, b, d.u_row, d.u_col, d.v_row);
    CHECK(a.x == b.x);
    CHECK(a.b == b.b);
  }
}

TEST_CASE("generic dispatch matches the dedicated steps") {
  const auto sys = preset(Scenario::s3b, 5);
  for (Interlacing pair : {kRkRk, kRekRk}) {
    auto a = initial_interlaced_state(pair, sys);
    auto b = initial_interlaced_state(pair, sys);
    Rng r1(6), r2(6);
    for (int t = 0; t < 50; ++t) {
      if (pair == kRkRk)
        rkrk_step(sys, a, r1);
      else
        rekrk_step(sys, a, r1);
      interlaced_step(pair, sys, b, r2);
    }
    CHECK(a.b == b.b);
    CHECK(a.x == b.x);
  }
}

TEST_CASE("unsupported pairs are rejected") {
  const auto sys = preset(Scenario::s1, 7);
  const Interlacing bad{Method::rgs, Method::regs};
  CHECK_FALSE(is_supported(bad));
  CHECK_THROWS_AS(require_supported(bad), std::invalid_argument);
  CHECK_THROWS_AS(initial_interlaced_state(bad, sys), std::invalid_argument);
  Rng rng(1);
  RunOptions opt;
  CHECK_THROWS_AS(run_interlaced(Interlacing{Method::rk, Method::rek}, sys, opt, rng),
                  std::invalid_argument);
  opt.budget = 0;
  CHECK_THROWS_AS(run_interlaced(kRkRk, sys, opt, rng), std::invalid_argument);
  CHECK(to_string(kRekRk) == "rek-rk");
}

TEST_CASE("per-step cost ordering") {
  const std::size_t m = 120, k = 50, n = 75;
  CHECK(interlaced_cost(kRkRk, m, k, n) == (4 * k + 2) + (4 * n + 2));
  CHECK(interlaced_cost(kRekRk, m, k, n) == (4 * k + 2) + (4 * m + 2) + (4 * n + 2));
  CHECK(interlaced_cost(kRekRek, m, k, n) - interlaced_cost(kRekRk, m, k, n) ==
        4 * k + 2);
  CHECK(interlaced_cost(kRekRk, m, k, n) < interlaced_cost(kRekRek, m, k, n));
  CHECK(interlaced_cost(kRgsRgs, m, k, n) == (4 * m + 2) + (4 * k + 2));
}

TEST_CASE("b stays in the row space of V") {
  const auto sys = preset(Scenario::s3b, 8);
  const auto proj = projector_rowspace(sys.v());
  for (Interlacing pair : {kRkRk, kRekRk, kRekRek}) {
    auto s = initial_interlaced_state(pair, sys);
    Rng rng(9);
    for (int t = 1; t <= 3000; ++t) {
      interlaced_step(pair, sys, s, rng);
      if (t % 300 == 0) {
        CHECK(norm(subtract(s.b, proj(s.b))) <= 1e-10 * norm(s.b));
      }
    }
  }
}

TEST_CASE("white cells converge") {
  CHECK(mean_final_rel(kRkRk, preset(Scenario::s1, 11), 30000, 40, 1) < 1e-8);
  const auto s3b = preset(Scenario::s3b, 12);
  CHECK(mean_final_rel(kRekRk, s3b, 50000, 40, 2) < 1e-6);
  CHECK(mean_final_rel(kRekRek, s3b, 50000, 40, 3) < 1e-6);
}

TEST_CASE("gray cells do not reach the full-system solution") {
  const auto s2 = preset(Scenario::s2, 13);
  const double gap = mean_final_rel(kRkRk, s2, 30000, 10, 4);
  CHECK(gap > 1e-4);  // squared relative error, i.e. > 0.01 in norm
  const auto s3a = preset(Scenario::s3a, 14);
  CHECK(mean_final_rel(kRekRk, s3a, 30000, 10, 5) > 1e-4);
}

TEST_CASE("s2 iterates still settle") {
  const auto s2 = preset(Scenario::s2, 15);
  RunOptions opt;
  opt.budget = 30000;
  Rng rng(16);
  const auto s = run_interlaced(kRkRk, s2, opt, rng);
  auto more = s;
  for (int t = 0; t < 5000; ++t) interlaced_step(kRkRk, s2, more, rng);
  CHECK(distance_sq(s.b, more.b) <= 1e-9 * sqnorm(s.b));
}

TEST_CASE("early stop checks both subsystems") {
  const auto sys = preset(Scenario::s1, 17);
  RunOptions opt;
  opt.budget = 200000;
  opt.tolerance = kDefaultTolerance;
  Rng rng(18);
  const auto s = run_interlaced(kRkRk, sys, opt, rng);
  CHECK(s.t < opt.budget);
  CHECK(s.t % sys.m() == 0);
  CHECK(interlaced_stopping_residual(kRkRk, sys, s) <= 1e-12);
  CHECK(norm(subtract(sys.rhs(), matvec(sys.u(), s.x))) <= 1e-12);
  CHECK(norm(subtract(s.x, matvec(sys.v(), s.b))) <= 1e-12);
}

TEST_CASE("theorem bound formulas") {
  BoundInputs in;
  in.alpha_u = 0.9;
  in.alpha_v = 0.8;
  in.theta_v = 2.0;
  in.kappa_sq_u = 3.0;
  in.b_star_sq = 5.0;
  in.x_star_sq = 7.0;
  CHECK(theorem_bound(BoundVariant::a, 0, in) == doctest::Approx(5.0 + 2.0 * 7.0));
  CHECK(theorem_bound(BoundVariant::b, 0, in) ==
        doctest::Approx(5.0 + 2.0 * 7.0 * 7.0));
  const double b0 = theorem_bound(BoundVariant::b, 0, in);
  const double b1 = theorem_bound(BoundVariant::b, 1, in);
  CHECK(b1 - 0.8 * 5.0 == doctest::Approx(b0 - 5.0));
  CHECK(theorem_bound(BoundVariant::a, 3, in) ==
        doctest::Approx(0.512 * 5.0 + 2.0 * 0.729 * 7.0));
  for (std::int64_t t = 2; t < 60; ++t) {
    CHECK(theorem_bound(BoundVariant::a, t + 1, in) < theorem_bound(BoundVariant::a, t, in));
    CHECK(theorem_bound(BoundVariant::b, t + 1, in) < theorem_bound(BoundVariant::b, t, in));
  }
  CHECK_THROWS_AS(theorem_bound(BoundVariant::a, -1, in), std::invalid_argument);
}

TEST_CASE("recorder follows b") {
  const auto sys = preset(Scenario::s1, 19);
  const auto star = factored_reference(sys).beta_star;
  Recorder rec(7, star);
  RunOptions opt;
  opt.budget = 50;
  Rng rng(20);
  const auto s = run_interlaced(kRekRk, sys, opt, rng, &rec);
  CHECK(rec.samples().size() == 8);
  CHECK(rec.samples().back().iter == 50);
  CHECK(rec.samples().back().error_sq == distance_sq(s.b, star));
  CHECK(rec.samples().back().flops == s.flops);
}
