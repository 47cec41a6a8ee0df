#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "fkz/bounds.hpp"
#include "fkz/experiment.hpp"
#include "fkz/matrix_io.hpp"
#include "fkz/oracle.hpp"
#include "fkz/systems.hpp"

namespace fkz {

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

struct GenArgs {
  std::string scenario = "S1";
  std::optional<std::size_t> m, n, k;
  std::uint64_t seed = 0;
  std::string out_dir;
};

struct SolveArgs {
  std::string method;
  std::string dir;
  std::uint64_t trials = 40;
  std::uint64_t budget = 70000;
  std::uint64_t seed = 0;
  std::string out;
  std::optional<std::uint64_t> stride;
  std::optional<double> tol;
  unsigned threads = 0;
};

struct BoundArgs {
  std::string dir;
  std::string variant = "a";
  std::int64_t tmax = 0;
  std::optional<std::int64_t> stride;
};

void run_gen(const GenArgs& a, std::ostream& out) {
  ScenarioSpec spec = ScenarioSpec::preset(parse_scenario(a.scenario), a.seed);
  if (a.m) spec.m = *a.m;
  if (a.n) spec.n = *a.n;
  if (a.k) spec.k = *a.k;
  const GeneratedSystem g = gen_gaussian_factored(spec);
  const fs::path dir(a.out_dir);
  save_factored(dir, g.system);

  nlohmann::ordered_json j;
  j["scenario"] = std::string(to_string(spec.scenario));
  j["m"] = spec.m;
  j["n"] = spec.n;
  j["k"] = spec.k;
  j["seed"] = spec.seed;
  j["consistent"] = spec.consistent();
  j["residual_ratio"] = g.residual_ratio;
  std::ofstream mf(dir / "manifest.json");
  mf << j.dump(2) << '\n';
  if (!mf) throw std::runtime_error("cannot write manifest.json");
  out << fmt::format("wrote {} (scenario {}, m={} n={} k={})\n", dir.string(),
                     to_string(spec.scenario), spec.m, spec.n, spec.k);
}

Scenario scenario_from_manifest(const fs::path& dir) {
  const fs::path p = dir / "manifest.json";
  if (!fs::exists(p)) return Scenario::custom;
  std::ifstream in(p);
  const auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.contains("scenario") || !j["scenario"].is_string())
    return Scenario::custom;
  try {
    return parse_scenario(j["scenario"].get<std::string>());
  } catch (const std::invalid_argument&) {
    return Scenario::custom;
  }
}

FactoredSystem load_dir(const fs::path& dir) {
  FactoredSystem sys = load_factored(dir / "U.mat", dir / "V.mat", dir / "y.vec");
  const Scenario s = scenario_from_manifest(dir);
  if (s == Scenario::custom) return sys;
  return FactoredSystem(sys.u(), sys.v(), sys.rhs(), s);
}

void run_solve(const SolveArgs& a, std::ostream& out) {
  RunConfig cfg;
  cfg.method = parse_method(a.method);
  cfg.trials = a.trials;
  cfg.budget = a.budget;
  cfg.seed = a.seed;
  cfg.stride = a.stride;
  cfg.tolerance = a.tol;
  cfg.threads = a.threads;
  cfg.validate();

  const fs::path dir(a.dir);
  if (!fs::is_directory(dir))
    throw std::runtime_error(fmt::format("no such directory: {}", dir.string()));

  ExperimentResult result;
  if (fs::exists(dir / "A.mat")) {
    const PlainSystem sys(load_matrix(dir / "A.mat"), load_vector(dir / "y.vec"));
    result = run_experiment(cfg, sys);
  } else {
    result = run_experiment(cfg, load_dir(dir));
  }

  const fs::path csv(a.out);
  emit_csv(result, csv);
  fs::path manifest = csv;
  manifest.replace_filename(csv.stem().string() + "_manifest.jsonl");
  append_manifest(result, manifest);

  const auto& last = result.summary.back();
  out << fmt::format("{} trials of {}: final mean error_sq {:.6g} at iter {}\n",
                     cfg.trials, to_string(cfg.method), last.mean, last.iter);
}

void run_bound(const BoundArgs& a, std::ostream& out) {
  BoundVariant variant;
  if (a.variant == "a" || a.variant == "A")
    variant = BoundVariant::a;
  else if (a.variant == "b" || a.variant == "B")
    variant = BoundVariant::b;
  else
    throw std::invalid_argument(
        fmt::format("unknown variant '{}'; valid variants: a, b", a.variant));
  if (a.tmax < 0) throw std::invalid_argument("tmax must be >= 0");
  const std::int64_t stride =
      a.stride ? *a.stride : std::max<std::int64_t>(1, a.tmax / 500);
  if (stride <= 0) throw std::invalid_argument("stride must be >= 1");

  const FactoredReference ref = factored_reference(load_dir(fs::path(a.dir)));
  const BoundInputs in = ref.bound_inputs();
  out << fmt::format("# alpha_u={:.17g}\n", in.alpha_u);
  out << fmt::format("# alpha_v={:.17g}\n", in.alpha_v);
  out << fmt::format("# kappa_sq_u={:.17g}\n", in.kappa_sq_u);
  out << fmt::format("# theta_v={:.17g}\n", in.theta_v);
  out << fmt::format("# b_star_sq={:.17g}\n", in.b_star_sq);
  out << fmt::format("# x_star_sq={:.17g}\n", in.x_star_sq);
  out << fmt::format("# alpha_x={:.17g}\n", ref.x.alpha);
  out << fmt::format("# kappa_sq_x={:.17g}\n", ref.x.kappa_sq);
  out << "t,bound\n";
  for (std::int64_t t = 0;; t += stride) {
    const std::int64_t tt = std::min(t, a.tmax);
    out << fmt::format("{},{:.17g}\n", tt, theorem_bound(variant, tt, in));
    if (tt == a.tmax) break;
  }
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Randomized Kaczmarz solvers for factored linear systems"};
  app.name("fkz");
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a Gaussian factored system");
  gen_cmd->add_option("--scenario", gen.scenario, "S1, S2, S3a or S3b")->required();
  gen_cmd->add_option("--m", gen.m, "rows of U (default: scenario preset)");
  gen_cmd->add_option("--n", gen.n, "columns of V");
  gen_cmd->add_option("--k", gen.k, "inner dimension");
  gen_cmd->add_option("--seed", gen.seed, "master seed");
  gen_cmd->add_option("--out-dir", gen.out_dir, "output directory")->required();

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "run Monte-Carlo solver trials");
  solve_cmd->add_option("--method", solve.method, valid_methods())->required();
  solve_cmd->add_option("--dir", solve.dir,
                        "system directory (U.mat V.mat y.vec, or A.mat y.vec)")
      ->required();
  solve_cmd->add_option("--trials", solve.trials, "number of trials");
  solve_cmd->add_option("--budget", solve.budget, "iterations per trial");
  solve_cmd->add_option("--seed", solve.seed, "master seed");
  solve_cmd->add_option("--out", solve.out, "trajectory CSV path")->required();
  solve_cmd->add_option("--stride", solve.stride, "sampling interval");
  solve_cmd->add_option("--tol", solve.tol, "stopping residual tolerance");
  solve_cmd->add_option("--threads", solve.threads,
                        "worker threads (default: FKZ_THREADS or all cores)");

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "print rate constants and bound curve");
  bound_cmd->add_option("--dir", bound.dir, "factored system directory")->required();
  bound_cmd->add_option("--variant", bound.variant, "a (rk-rk) or b (rek-rk)");
  bound_cmd->add_option("--tmax", bound.tmax, "last iteration")->required();
  bound_cmd->add_option("--stride", bound.stride, "spacing of t values");

  auto* version_cmd = app.add_subcommand("version", "print the version");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands()[0];
    err << sub->help();
    return e.get_exit_code() == 0 ? 2 : e.get_exit_code();
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (active == gen_cmd) run_gen(gen, out);
    else if (active == solve_cmd) run_solve(solve, out);
    else if (active == bound_cmd) run_bound(bound, out);
    else if (active == version_cmd) out << "fkz " << kVersion << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n\n" << active->help();
    return 1;
  }
  return 0;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace fkz
