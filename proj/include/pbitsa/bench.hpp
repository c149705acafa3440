#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pbitsa/diagnostics.hpp"
#include "pbitsa/engines.hpp"
#include "pbitsa/ising.hpp"
#include "pbitsa/rng.hpp"
#include "pbitsa/schedule.hpp"

namespace pbitsa {

inline constexpr int kResultSchemaVersion = 1;

struct BenchmarkOptions {
  Algorithm algorithm = Algorithm::psa;
  std::optional<std::size_t> alpha;
  std::optional<double> p_stall;
  std::size_t trials = 100;
  std::size_t cycles = 1000;
  std::uint64_t seed = 0;
  double gamma = kDefaultGamma;
  double delta = kDefaultDelta;
  SignalKind signal = SignalKind::uniform;
  double lambda = kDefaultPoissonLambda;
  std::size_t threads = 0;  // 0: hardware concurrency
  OscillationCriteria oscillation;
  bool keep_runs = false;  // retain per-trial RunResults (traces)
};

struct TrialOutcome {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::optional<double> cut;
  double energy = 0.0;
  OscillationReport oscillation;
  double wall_seconds = 0.0;
};

struct BenchmarkStats {
  std::string graph_name;
  std::size_t n_nodes = 0;
  std::size_t n_edges = 0;
  Algorithm algorithm = Algorithm::psa;
  std::optional<std::size_t> alpha;
  std::optional<double> p_stall;
  std::size_t trials = 0;
  std::size_t cycles = 0;
  std::uint64_t seed = 0;
  SignalKind signal = SignalKind::uniform;
  double lambda = kDefaultPoissonLambda;
  double gamma = kDefaultGamma;
  double delta = kDefaultDelta;

  // Cut statistics exist only when a graph was supplied.
  std::optional<double> min_cut, mean_cut, max_cut;
  std::optional<double> best_known;
  std::optional<double> normalized_min, normalized_mean, normalized_max;
  double min_energy = 0.0, mean_energy = 0.0, max_energy = 0.0;

  OscillationCriteria oscillation_criteria;
  std::size_t oscillating_trials = 0;
  std::vector<TrialOutcome> outcomes;
  Schedule schedule;
  std::vector<std::string> warnings;
};

struct BenchmarkResult {
  BenchmarkStats stats;
  std::vector<RunResult> runs;  // filled when keep_runs is set
};

// Runs `trials` independent trials with seeds derive_seed(seed, k). Cut
// statistics are normalized against the registry entry for `name` when it
// exists; otherwise a warning is recorded and normalized fields stay empty.
BenchmarkResult run_benchmark(const IsingModel& model, const Graph* graph,
                              const std::string& name, const BenchmarkOptions& options);

// Loads a G-set file; the benchmark name defaults to the file stem.
BenchmarkResult run_benchmark(const std::filesystem::path& graph_file,
                              const BenchmarkOptions& options,
                              std::optional<std::string> name = std::nullopt);

// Result document. Wall-clock times are left out unless requested so that
// repeated invocations produce byte-identical output.
std::string benchmark_json(const BenchmarkStats& stats, bool include_timing = false);
BenchmarkStats parse_benchmark_json(std::string_view text);

// CSV "cycle,i0,energy,mean_spin", one row per cycle, shortest round-trip
// decimals.
std::string traces_csv(const RunResult& result);
void emit_traces(const RunResult& result, const std::filesystem::path& path);

struct TraceTable {
  std::vector<double> i0;
  std::vector<double> energy;
  std::vector<double> mean_spin;
};
TraceTable parse_traces_csv(std::string_view text);

struct SummaryRow {
  std::string graph;
  std::optional<double> best_known;
  // Indexed like SummaryReport::algorithms; empty when not run.
  std::vector<std::optional<double>> mean_cut;
  std::vector<std::optional<double>> normalized_mean;
  std::vector<std::string> params;
};

struct SummaryReport {
  std::vector<std::string> algorithms;
  std::vector<SummaryRow> rows;
  // Average normalized mean cut per algorithm over the graphs that have one.
  std::vector<std::optional<double>> average_normalized_mean;
  std::vector<std::string> warnings;
  std::string text;
};

SummaryReport summarize_table(std::span<const BenchmarkStats> results);

void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace pbitsa
