#pragma once

/// @file
/// Monte-Carlo driver: repeated independent trials of one method on one
/// system, per-sample error against the oracle solution, a mean/std summary
/// and CSV/JSON output.
///
/// Trial k draws from Rng::stream(seed, k + 1); stream 0 is left to the
/// generators. Trials may run on several threads but results are collected
/// by trial index, so output depends only on (config, system).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "fkz/base_solvers.hpp"
#include "fkz/factored_solvers.hpp"
#include "fkz/factored_system.hpp"
#include "fkz/oracle.hpp"
#include "fkz/recorder.hpp"

namespace fkz {

enum class MethodTag { rk, rek, rgs, regs, rk_rk, rek_rk, rek_rek, rgs_rgs };

std::string_view to_string(MethodTag m);

/// Accepts "rk", "rek-rk", ... Throws std::invalid_argument listing the
/// valid names.
MethodTag parse_method(std::string_view text);

/// "rk, rek, rgs, regs, rk-rk, rek-rk, rek-rek, rgs-rgs"
std::string valid_methods();

bool is_interlaced(MethodTag m) noexcept;
Method plain_method(MethodTag m);       // throws for interlaced tags
Interlacing interlacing(MethodTag m);   // throws for plain tags

/// Environment variable read when RunConfig::threads is 0.
inline constexpr const char* kThreadsEnv = "FKZ_THREADS";

struct RunConfig {
  MethodTag method = MethodTag::rk_rk;
  std::uint64_t trials = 40;
  std::uint64_t budget = 70000;
  std::optional<std::uint64_t> stride;  // default max(1, budget / 500)
  std::uint64_t seed = 0;
  std::optional<double> tolerance;
  unsigned threads = 0;  // 0: FKZ_THREADS, else hardware concurrency

  std::uint64_t effective_stride() const noexcept;
  /// Throws std::invalid_argument when trials, budget or stride is 0.
  void validate() const;
};

struct Trajectory {
  std::uint64_t trial = 0;
  std::vector<Sample> samples;
};

/// std is the sample standard deviation across trials (0 for one trial).
struct SummaryRow {
  std::uint64_t iter = 0;
  double mean = 0.0;
  double std = 0.0;
  std::optional<double> bound;
};

struct ExperimentResult {
  MethodTag method = MethodTag::rk;
  Scenario scenario = Scenario::custom;
  std::size_t m = 0, n = 0, k = 0;   // k = 0 for plain systems
  RunConfig config;
  Vector beta_star;
  std::optional<FactoredReference> reference;  // factored systems only
  std::vector<Trajectory> trajectories;
  std::vector<SummaryRow> summary;
};

/// Plain methods only; interlaced tags throw std::invalid_argument.
ExperimentResult run_experiment(const RunConfig& config, const PlainSystem& sys);

/// Any method. A plain method is run on the materialized product U V.
ExperimentResult run_experiment(const RunConfig& config,
                                const FactoredSystem& sys);
ExperimentResult run_experiment(const RunConfig& config,
                                const FactoredSystem& sys,
                                const FactoredReference& ref);

/// Mean and std per recorded iteration. A trial that stopped early
/// contributes its last sample to every later iteration.
std::vector<SummaryRow> summarize(const std::vector<Trajectory>& trajectories);

/// Fills the bound column for rk-rk (variant a) and rek-rk (variant b).
void attach_bounds(ExperimentResult& result);

void write_trajectories(std::ostream& out,
                        const std::vector<Trajectory>& trajectories);
void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows);

/// "<dir>/<stem>_summary.csv" for "<dir>/<stem>.csv".
std::filesystem::path summary_path(const std::filesystem::path& csv_path);

/// Writes the trajectory CSV at path and the summary next to it.
/// Throws std::invalid_argument on an empty result, std::runtime_error on
/// I/O failure.
void emit_csv(const ExperimentResult& result, const std::filesystem::path& path);

/// One-line JSON record of the run: scenario, dims, seed, method, budget,
/// trials and the oracle constants when available.
std::string manifest_line(const ExperimentResult& result);

/// Appends manifest_line to path.
void append_manifest(const ExperimentResult& result,
                     const std::filesystem::path& path);

/// Thread count used for config (never 0, never more than trials).
unsigned resolve_threads(const RunConfig& config);

}  // namespace fkz
