#include "fkz/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <fmt/core.h>
#include <fmt/format.h>
#include <json.hpp>

namespace fkz {

namespace {

struct MethodName {
  MethodTag tag;
  std::string_view name;
};

constexpr std::array<MethodName, 8> kMethodNames{{
    {MethodTag::rk, "rk"},
    {MethodTag::rek, "rek"},
    {MethodTag::rgs, "rgs"},
    {MethodTag::regs, "regs"},
    {MethodTag::rk_rk, "rk-rk"},
    {MethodTag::rek_rk, "rek-rk"},
    {MethodTag::rek_rek, "rek-rek"},
    {MethodTag::rgs_rgs, "rgs-rgs"},
}};

}  // namespace

std::string_view to_string(MethodTag m) {
  for (const auto& e : kMethodNames)
    if (e.tag == m) return e.name;
  return "?";
}

std::string valid_methods() {
  std::string out;
  for (const auto& e : kMethodNames) {
    if (!out.empty()) out += ", ";
    out += e.name;
  }
  return out;
}

MethodTag parse_method(std::string_view text) {
  std::string lower(text);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (const auto& e : kMethodNames)
    if (e.name == lower) return e.tag;
  throw std::invalid_argument(fmt::format("unknown method '{}'; valid methods: {}",
                                          text, valid_methods()));
}

bool is_interlaced(MethodTag m) noexcept {
  return m == MethodTag::rk_rk || m == MethodTag::rek_rk ||
         m == MethodTag::rek_rek || m == MethodTag::rgs_rgs;
}

Method plain_method(MethodTag m) {
  switch (m) {
    case MethodTag::rk: return Method::rk;
    case MethodTag::rek: return Method::rek;
    case MethodTag::rgs: return Method::rgs;
    case MethodTag::regs: return Method::regs;
    default: break;
  }
  throw std::invalid_argument(
      fmt::format("{} is an interlaced method", to_string(m)));
}

Interlacing interlacing(MethodTag m) {
  switch (m) {
    case MethodTag::rk_rk: return kRkRk;
    case MethodTag::rek_rk: return kRekRk;
    case MethodTag::rek_rek: return kRekRek;
    case MethodTag::rgs_rgs: return kRgsRgs;
    default: break;
  }
  throw std::invalid_argument(
      fmt::format("{} is not an interlaced method", to_string(m)));
}

std::uint64_t RunConfig::effective_stride() const noexcept {
  if (stride) return *stride;
  return std::max<std::uint64_t>(1, budget / 500);
}

void RunConfig::validate() const {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (budget == 0) throw std::invalid_argument("budget must be >= 1");
  if (stride && *stride == 0) throw std::invalid_argument("stride must be >= 1");
  if (tolerance && !(*tolerance >= 0.0))
    throw std::invalid_argument("tolerance must be >= 0");
}

unsigned resolve_threads(const RunConfig& config) {
  unsigned n = config.threads;
  if (n == 0) {
    if (const char* env = std::getenv(kThreadsEnv)) {
      const long v = std::strtol(env, nullptr, 10);
      if (v > 0) n = static_cast<unsigned>(v);
    }
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(
      std::min<std::uint64_t>(n, std::max<std::uint64_t>(1, config.trials)));
}

namespace {

template <class TrialFn>
std::vector<Trajectory> run_trials(const RunConfig& config, TrialFn&& trial) {
  std::vector<Trajectory> out(config.trials);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::uint64_t id = next.fetch_add(1);
      if (id >= config.trials) return;
      try {
        Rng rng = Rng::stream(config.seed, id + 1);
        out[id] = Trajectory{id, trial(rng)};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(config.trials);
      }
    }
  };

  const unsigned threads = resolve_threads(config);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

RunOptions options_for(const RunConfig& config) {
  RunOptions opt;
  opt.budget = config.budget;
  opt.tolerance = config.tolerance;
  return opt;
}

std::vector<Trajectory> plain_trials(const RunConfig& config, Method method,
                                     const PlainSystem& sys,
                                     const Vector& beta_star) {
  const RunOptions opt = options_for(config);
  return run_trials(config, [&](Rng& rng) {
    Recorder rec(config.effective_stride(), beta_star);
    run(method, sys, opt, rng, &rec);
    return rec.take();
  });
}

}  // namespace

ExperimentResult run_experiment(const RunConfig& config, const PlainSystem& sys) {
  config.validate();
  if (is_interlaced(config.method)) {
    throw std::invalid_argument(fmt::format(
        "method {} needs a factored system (U.mat, V.mat), got a plain one",
        to_string(config.method)));
  }
  ExperimentResult r;
  r.method = config.method;
  r.config = config;
  r.m = sys.rows();
  r.n = sys.cols();
  r.beta_star = pinv_solve(sys.matrix(), sys.rhs());
  r.trajectories = plain_trials(config, plain_method(config.method), sys, r.beta_star);
  r.summary = summarize(r.trajectories);
  return r;
}

ExperimentResult run_experiment(const RunConfig& config,
                                const FactoredSystem& sys) {
  return run_experiment(config, sys, factored_reference(sys));
}

ExperimentResult run_experiment(const RunConfig& config,
                                const FactoredSystem& sys,
                                const FactoredReference& ref) {
  config.validate();
  ExperimentResult r;
  r.method = config.method;
  r.scenario = sys.scenario();
  r.config = config;
  r.m = sys.m();
  r.n = sys.n();
  r.k = sys.k();
  r.beta_star = ref.beta_star;
  r.reference = ref;

  if (is_interlaced(config.method)) {
    const Interlacing pair = interlacing(config.method);
    require_supported(pair);
    const RunOptions opt = options_for(config);
    r.trajectories = run_trials(config, [&](Rng& rng) {
      Recorder rec(config.effective_stride(), r.beta_star);
      run_interlaced(pair, sys, opt, rng, &rec);
      return rec.take();
    });
  } else {
    const PlainSystem full(materialize_product(sys), sys.rhs());
    r.trajectories =
        plain_trials(config, plain_method(config.method), full, r.beta_star);
  }
  r.summary = summarize(r.trajectories);
  attach_bounds(r);
  return r;
}

std::vector<SummaryRow> summarize(const std::vector<Trajectory>& trajectories) {
  std::vector<std::uint64_t> iters;
  for (const auto& tr : trajectories)
    for (const auto& s : tr.samples) iters.push_back(s.iter);
  std::sort(iters.begin(), iters.end());
  iters.erase(std::unique(iters.begin(), iters.end()), iters.end());

  std::vector<SummaryRow> rows;
  rows.reserve(iters.size());
  std::vector<std::size_t> cursor(trajectories.size(), 0);
  std::vector<double> values;
  for (const std::uint64_t it : iters) {
    values.clear();
    for (std::size_t t = 0; t < trajectories.size(); ++t) {
      const auto& s = trajectories[t].samples;
      if (s.empty()) continue;
      std::size_t& c = cursor[t];
      while (c + 1 < s.size() && s[c + 1].iter <= it) ++c;
      values.push_back(s[c].error_sq);
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    if (values.size() > 1) {
      for (double v : values) var += (v - mean) * (v - mean);
      var /= static_cast<double>(values.size() - 1);
    }
    rows.push_back(SummaryRow{it, mean, std::sqrt(var), std::nullopt});
  }
  return rows;
}

void attach_bounds(ExperimentResult& result) {
  if (!result.reference) return;
  std::optional<BoundVariant> variant;
  if (result.method == MethodTag::rk_rk) variant = BoundVariant::a;
  if (result.method == MethodTag::rek_rk) variant = BoundVariant::b;
  if (!variant) return;
  const BoundInputs in = result.reference->bound_inputs();
  for (auto& row : result.summary)
    row.bound = theorem_bound(*variant, static_cast<std::int64_t>(row.iter), in);
}

void write_trajectories(std::ostream& out,
                        const std::vector<Trajectory>& trajectories) {
  out << "trial,iter,error_sq,flops\n";
  for (const auto& tr : trajectories)
    for (const auto& s : tr.samples)
      out << fmt::format("{},{},{:.17g},{}\n", tr.trial, s.iter, s.error_sq,
                         s.flops);
}

void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "iter,mean_error_sq,std_error_sq,bound\n";
  for (const auto& r : rows) {
    out << fmt::format("{},{:.17g},{:.17g},", r.iter, r.mean, r.std);
    if (r.bound) out << fmt::format("{:.17g}", *r.bound);
    out << '\n';
  }
}

std::filesystem::path summary_path(const std::filesystem::path& csv_path) {
  std::filesystem::path p = csv_path;
  p.replace_filename(csv_path.stem().string() + "_summary.csv");
  return p;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path,
                       std::ios::openmode mode = std::ios::trunc) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::out | mode);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  return out;
}

void close_checked(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw std::runtime_error(fmt::format("write to {} failed", path.string()));
}

}  // namespace

void emit_csv(const ExperimentResult& result, const std::filesystem::path& path) {
  const bool any = std::any_of(result.trajectories.begin(), result.trajectories.end(),
                               [](const Trajectory& t) { return !t.samples.empty(); });
  if (!any) throw std::invalid_argument("emit_csv: no trajectories to write");

  auto traj = open_out(path);
  write_trajectories(traj, result.trajectories);
  close_checked(traj, path);

  const auto spath = summary_path(path);
  auto summ = open_out(spath);
  write_summary(summ, result.summary);
  close_checked(summ, spath);
}

std::string manifest_line(const ExperimentResult& result) {
  nlohmann::ordered_json j;
  j["scenario"] = std::string(to_string(result.scenario));
  j["m"] = result.m;
  j["n"] = result.n;
  j["k"] = result.k;
  j["seed"] = result.config.seed;
  j["method"] = std::string(to_string(result.method));
  j["budget"] = result.config.budget;
  j["trials"] = result.config.trials;
  j["stride"] = result.config.effective_stride();
  if (result.reference) {
    j["alpha_u"] = result.reference->u.alpha;
    j["alpha_v"] = result.reference->v.alpha;
    j["kappa_sq_u"] = result.reference->u.kappa_sq;
    j["theta_v"] = result.reference->v.theta;
  }
  return j.dump();
}

void append_manifest(const ExperimentResult& result,
                     const std::filesystem::path& path) {
  auto out = open_out(path, std::ios::app);
  out << manifest_line(result) << '\n';
  close_checked(out, path);
}

}  // namespace fkz
