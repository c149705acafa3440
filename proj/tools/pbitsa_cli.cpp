// Command-line front end. Talks to the library only through pbitsa.h.

#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pbitsa.h"

namespace {

struct CliError {
  pbitsa_status status;
};

void check(pbitsa_status status) {
  if (status != PBITSA_OK) throw CliError{status};
}

struct GraphDeleter {
  void operator()(pbitsa_graph* g) const { pbitsa_graph_free(g); }
};
struct ModelDeleter {
  void operator()(pbitsa_model* m) const { pbitsa_model_free(m); }
};
struct BenchDeleter {
  void operator()(pbitsa_benchmark* b) const { pbitsa_benchmark_free(b); }
};
struct TuneDeleter {
  void operator()(pbitsa_tune_result* t) const { pbitsa_tune_result_free(t); }
};
struct StringDeleter {
  void operator()(char* s) const { pbitsa_string_free(s); }
};

using GraphHandle = std::unique_ptr<pbitsa_graph, GraphDeleter>;
using ModelHandle = std::unique_ptr<pbitsa_model, ModelDeleter>;
using BenchHandle = std::unique_ptr<pbitsa_benchmark, BenchDeleter>;
using TuneHandle = std::unique_ptr<pbitsa_tune_result, TuneDeleter>;
using StringHandle = std::unique_ptr<char, StringDeleter>;

struct Problem {
  GraphHandle graph;
  ModelHandle model;
  std::string name;
};

std::string stem_of(const std::string& path) {
  const auto slash = path.find_last_of("/\\");
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = base.find_last_of('.');
  return dot == std::string::npos || dot == 0 ? base : base.substr(0, dot);
}

Problem load_problem(const std::string& graph_path, const std::string& instance_path,
                     const std::string& name) {
  Problem p;
  if (!graph_path.empty()) {
    pbitsa_graph* g = nullptr;
    check(pbitsa_graph_load(graph_path.c_str(), &g));
    p.graph.reset(g);
    pbitsa_model* m = nullptr;
    check(pbitsa_model_from_graph(g, &m));
    p.model.reset(m);
    p.name = name.empty() ? stem_of(graph_path) : name;
  } else {
    pbitsa_model* m = nullptr;
    check(pbitsa_model_load_instance(instance_path.c_str(), &m));
    p.model.reset(m);
    p.name = name.empty() ? stem_of(instance_path) : name;
  }
  return p;
}

pbitsa_algorithm algorithm_code(const std::string& name) {
  if (name == "psa") return PBITSA_ALGO_PSA;
  if (name == "tapsa") return PBITSA_ALGO_TAPSA;
  if (name == "spsa") return PBITSA_ALGO_SPSA;
  return PBITSA_ALGO_SA;
}

pbitsa_signal signal_code(const std::string& name) {
  return name == "poisson" ? PBITSA_SIGNAL_POISSON : PBITSA_SIGNAL_UNIFORM;
}

struct AnnealArgs {
  std::string graph, instance, name, algo = "psa", out, trace;
  std::optional<unsigned> alpha;
  std::optional<double> p;
  unsigned cycles = 1000, trials = 100, threads = 0;
  std::uint64_t seed = 0;
  double gamma = 0.1, delta = 10.0, lambda = 10.0;
  std::string signal = "uniform";
  unsigned osc_window = 50;
  double osc_alternation = 0.9, osc_amplitude = 0.5;
  bool timing = false;
};

int run_anneal(const AnnealArgs& a) {
  Problem problem = load_problem(a.graph, a.instance, a.name);
  pbitsa_bench_config config;
  pbitsa_bench_config_init(&config);
  config.algorithm = algorithm_code(a.algo);
  if (a.alpha) config.alpha = *a.alpha;
  if (a.p) config.p_stall = *a.p;
  config.cycles = a.cycles;
  config.trials = a.trials;
  config.seed = a.seed;
  config.gamma = a.gamma;
  config.delta = a.delta;
  config.signal = signal_code(a.signal);
  config.lambda = a.lambda;
  config.threads = a.threads;
  config.osc_window = a.osc_window;
  config.osc_min_alternation = a.osc_alternation;
  config.osc_min_amplitude = a.osc_amplitude;
  config.keep_traces = a.trace.empty() ? 0 : 1;

  pbitsa_benchmark* b = nullptr;
  check(pbitsa_benchmark_run(problem.model.get(), problem.graph.get(), problem.name.c_str(),
                             &config, &b));
  BenchHandle bench(b);
  check(pbitsa_benchmark_write_json(b, a.out.c_str(), a.timing ? 1 : 0));
  if (!a.trace.empty()) check(pbitsa_benchmark_write_traces(b, a.trace.c_str()));

  for (size_t k = 0; k < pbitsa_benchmark_warning_count(b); ++k) {
    std::fprintf(stderr, "warning: %s\n", pbitsa_benchmark_warning(b, k));
  }
  pbitsa_stats stats;
  check(pbitsa_benchmark_stats(b, &stats));
  std::printf("%s %s: %zu trials\n", problem.name.c_str(), a.algo.c_str(), stats.trials);
  if (stats.has_cut) {
    std::printf("  cut min/mean/max: %.2f / %.2f / %.2f\n", stats.min_cut, stats.mean_cut,
                stats.max_cut);
  }
  if (stats.has_best_known) {
    std::printf("  normalized min/mean/max: %.4f / %.4f / %.4f (best known %.0f)\n",
                stats.normalized_min, stats.normalized_mean, stats.normalized_max,
                stats.best_known);
  }
  std::printf("  energy min/mean/max: %.2f / %.2f / %.2f\n", stats.min_energy, stats.mean_energy,
              stats.max_energy);
  std::printf("  oscillating trials: %zu\n", stats.oscillating_trials);
  return 0;
}

struct TuneArgs {
  std::string graph, name, algo = "tapsa", grid, out;
  unsigned tune_cycles = 100, tune_trials = 5, threads = 0;
  std::uint64_t seed = 0;
  double gamma = 0.1, delta = 10.0, lambda = 10.0;
  std::string signal = "uniform";
};

int run_tune(const TuneArgs& a) {
  Problem problem = load_problem(a.graph, "", a.name);
  size_t count = 0;
  check(pbitsa_parse_grid(a.grid.c_str(), nullptr, 0, &count));
  std::vector<double> candidates(count);
  check(pbitsa_parse_grid(a.grid.c_str(), candidates.data(), candidates.size(), &count));

  pbitsa_tune_config config;
  pbitsa_tune_config_init(&config);
  config.algorithm = algorithm_code(a.algo);
  config.tuning_cycles = a.tune_cycles;
  config.tuning_trials = a.tune_trials;
  config.seed = a.seed;
  config.gamma = a.gamma;
  config.delta = a.delta;
  config.signal = signal_code(a.signal);
  config.lambda = a.lambda;
  config.threads = a.threads;

  pbitsa_tune_result* t = nullptr;
  check(pbitsa_tune(problem.model.get(), problem.graph.get(), &config, candidates.data(),
                    candidates.size(), &t));
  TuneHandle result(t);
  char* json = nullptr;
  check(pbitsa_tune_json(t, &json));
  StringHandle text(json);
  if (a.out.empty()) {
    std::fputs(json, stdout);
  } else {
    std::FILE* f = std::fopen(a.out.c_str(), "wb");
    if (!f) {
      std::fprintf(stderr, "error: cannot open '%s' for writing\n", a.out.c_str());
      return PBITSA_ERR_IO;
    }
    std::fputs(json, f);
    std::fclose(f);
    std::printf("best %s parameter: %g\n", a.algo.c_str(), pbitsa_tune_best(t));
  }
  return 0;
}

int run_summarize(const std::vector<std::string>& files) {
  std::vector<const char*> paths;
  for (const auto& f : files) paths.push_back(f.c_str());
  char* text = nullptr;
  check(pbitsa_summarize_files(paths.data(), paths.size(), &text));
  StringHandle owned(text);
  std::fputs(text, stdout);
  return 0;
}

struct ScheduleArgs {
  std::string graph, instance;
  unsigned cycles = 1000;
  double gamma = 0.1, delta = 10.0;
};

int run_schedule(const ScheduleArgs& a) {
  Problem problem = load_problem(a.graph, a.instance, "");
  pbitsa_schedule s;
  check(pbitsa_derive_schedule(problem.model.get(), a.gamma, a.delta, a.cycles, &s));
  std::printf("mean_scale %.6g\ni0_min %.6g\ni0_max %.6g\nbeta %.6g\ncycles %zu\n", s.mean_scale,
              s.i0_min, s.i0_max, s.beta, s.cycles);
  if (s.zero_scale_fraction > 0.1) {
    std::fprintf(stderr, "warning: %.1f%% of nodes have zero coupling scale\n",
                 100.0 * s.zero_scale_fraction);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-bit simulated annealing benchmarks (pSA, TApSA, SpSA, classic SA)"};
  app.set_version_flag("--version", std::string(pbitsa_version()));
  app.require_subcommand(1);

  const std::vector<std::string> algos{"psa", "tapsa", "spsa", "sa"};
  const std::vector<std::string> signals{"uniform", "poisson"};

  AnnealArgs anneal;
  auto* anneal_cmd = app.add_subcommand("anneal", "Run repeated annealing trials and write JSON stats");
  auto* graph_opt = anneal_cmd->add_option("--graph", anneal.graph, "G-set edge-list file")
                        ->check(CLI::ExistingFile);
  auto* inst_opt = anneal_cmd->add_option("--instance", anneal.instance, "h/J instance file")
                       ->check(CLI::ExistingFile);
  graph_opt->excludes(inst_opt);
  anneal_cmd->add_option("--name", anneal.name, "Benchmark name for normalization (default: file stem)");
  anneal_cmd->add_option("--algo", anneal.algo, "Algorithm")->required()->check(CLI::IsMember(algos));
  anneal_cmd->add_option("--alpha", anneal.alpha, "TApSA window size")->check(CLI::PositiveNumber);
  anneal_cmd->add_option("--p", anneal.p, "SpSA stall probability")->check(CLI::Range(0.0, 1.0));
  anneal_cmd->add_option("--cycles", anneal.cycles, "Annealing cycles")->capture_default_str();
  anneal_cmd->add_option("--trials", anneal.trials, "Independent trials")->capture_default_str();
  anneal_cmd->add_option("--seed", anneal.seed, "Master seed")->capture_default_str();
  anneal_cmd->add_option("--gamma", anneal.gamma, "I0min numerator")->capture_default_str();
  anneal_cmd->add_option("--delta", anneal.delta, "I0max numerator")->capture_default_str();
  anneal_cmd->add_option("--signal", anneal.signal, "Random signal kind")
      ->check(CLI::IsMember(signals))->capture_default_str();
  anneal_cmd->add_option("--lambda", anneal.lambda, "Poisson lambda")->capture_default_str();
  anneal_cmd->add_option("--threads", anneal.threads, "Worker threads (0: all cores)");
  anneal_cmd->add_option("--osc-window", anneal.osc_window, "Oscillation window")->capture_default_str();
  anneal_cmd->add_option("--osc-alternation", anneal.osc_alternation, "Oscillation alternation threshold")
      ->capture_default_str();
  anneal_cmd->add_option("--osc-amplitude", anneal.osc_amplitude, "Oscillation amplitude threshold")
      ->capture_default_str();
  anneal_cmd->add_option("--out", anneal.out, "Result JSON path")->required();
  anneal_cmd->add_option("--trace", anneal.trace, "Directory for per-trial CSV traces");
  anneal_cmd->add_flag("--timing", anneal.timing, "Include per-trial wall times in the JSON");

  TuneArgs tune;
  auto* tune_cmd = app.add_subcommand("tune", "Pick alpha or p by short tuning runs");
  tune_cmd->add_option("--graph", tune.graph, "G-set edge-list file")->required()->check(CLI::ExistingFile);
  tune_cmd->add_option("--name", tune.name, "Benchmark name");
  tune_cmd->add_option("--algo", tune.algo, "tapsa or spsa")->required()
      ->check(CLI::IsMember({"tapsa", "spsa"}));
  tune_cmd->add_option("--grid", tune.grid, "Candidates, e.g. 1:10 or 0:0.9:0.1 or 2,3,4")->required();
  tune_cmd->add_option("--tune-cycles", tune.tune_cycles, "Cycles per tuning run")->capture_default_str();
  tune_cmd->add_option("--tune-trials", tune.tune_trials, "Trials per candidate")->capture_default_str();
  tune_cmd->add_option("--seed", tune.seed, "Master seed")->capture_default_str();
  tune_cmd->add_option("--gamma", tune.gamma, "I0min numerator")->capture_default_str();
  tune_cmd->add_option("--delta", tune.delta, "I0max numerator")->capture_default_str();
  tune_cmd->add_option("--signal", tune.signal, "Random signal kind")
      ->check(CLI::IsMember(signals))->capture_default_str();
  tune_cmd->add_option("--lambda", tune.lambda, "Poisson lambda")->capture_default_str();
  tune_cmd->add_option("--threads", tune.threads, "Worker threads (0: all cores)");
  tune_cmd->add_option("--out", tune.out, "Write the tuning JSON here instead of stdout");

  std::vector<std::string> summary_files;
  auto* summarize_cmd = app.add_subcommand("summarize", "Table of mean cuts from result JSON files");
  summarize_cmd->add_option("files", summary_files, "Result JSON files")->required()
      ->check(CLI::ExistingFile);

  ScheduleArgs schedule;
  auto* schedule_cmd = app.add_subcommand("schedule", "Print the derived I0 schedule");
  auto* sg = schedule_cmd->add_option("--graph", schedule.graph, "G-set edge-list file")
                 ->check(CLI::ExistingFile);
  auto* si = schedule_cmd->add_option("--instance", schedule.instance, "h/J instance file")
                 ->check(CLI::ExistingFile);
  sg->excludes(si);
  schedule_cmd->add_option("--cycles", schedule.cycles)->capture_default_str();
  schedule_cmd->add_option("--gamma", schedule.gamma)->capture_default_str();
  schedule_cmd->add_option("--delta", schedule.delta)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*anneal_cmd) {
      if (anneal.graph.empty() && anneal.instance.empty()) {
        std::fprintf(stderr, "error: one of --graph or --instance is required\n");
        return 2;
      }
      return run_anneal(anneal);
    }
    if (*tune_cmd) return run_tune(tune);
    if (*summarize_cmd) return run_summarize(summary_files);
    if (*schedule_cmd) {
      if (schedule.graph.empty() && schedule.instance.empty()) {
        std::fprintf(stderr, "error: one of --graph or --instance is required\n");
        return 2;
      }
      return run_schedule(schedule);
    }
  } catch (const CliError& e) {
    std::fprintf(stderr, "error: %s: %s\n", pbitsa_status_string(e.status), pbitsa_last_error());
    return static_cast<int>(e.status);
  }
  return 0;
}
