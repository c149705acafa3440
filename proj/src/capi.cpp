#include "pbitsa.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <string>
#include <vector>

#include "pbitsa/bench.hpp"
#include "pbitsa/error.hpp"
#include "pbitsa/graph_io.hpp"
#include "pbitsa/tuner.hpp"

struct pbitsa_graph {
  pbitsa::Graph graph;
};

struct pbitsa_model {
  pbitsa::IsingModel model;
};

struct pbitsa_benchmark {
  pbitsa::BenchmarkResult result;
};

struct pbitsa_tune_result {
  pbitsa::TuneResult result;
};

namespace {

thread_local std::string last_error;

pbitsa_status status_of(pbitsa::ErrorKind kind) {
  using pbitsa::ErrorKind;
  switch (kind) {
    case ErrorKind::invalid_input: return PBITSA_ERR_INVALID_INPUT;
    case ErrorKind::parse: return PBITSA_ERR_PARSE;
    case ErrorKind::config: return PBITSA_ERR_CONFIG;
    case ErrorKind::degenerate_model: return PBITSA_ERR_DEGENERATE_MODEL;
    case ErrorKind::lookup: return PBITSA_ERR_LOOKUP;
    case ErrorKind::io: return PBITSA_ERR_IO;
  }
  return PBITSA_ERR_INTERNAL;
}

// Runs fn, translating exceptions into status codes and last_error.
template <typename Fn>
pbitsa_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return PBITSA_OK;
  } catch (const pbitsa::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return PBITSA_ERR_INTERNAL;
}

void require(const void* pointer, const char* what) {
  if (!pointer) pbitsa::fail(pbitsa::ErrorKind::invalid_input, std::string(what) + " is null");
}

char* duplicate(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

pbitsa::SpinState spins_from(const int8_t* spins, size_t n) {
  require(spins, "spins");
  return pbitsa::SpinState(std::vector<pbitsa::Spin>(spins, spins + n));
}

pbitsa::Algorithm algorithm_of(pbitsa_algorithm a) {
  switch (a) {
    case PBITSA_ALGO_PSA: return pbitsa::Algorithm::psa;
    case PBITSA_ALGO_TAPSA: return pbitsa::Algorithm::tapsa;
    case PBITSA_ALGO_SPSA: return pbitsa::Algorithm::spsa;
    case PBITSA_ALGO_SA: return pbitsa::Algorithm::sa;
  }
  pbitsa::fail(pbitsa::ErrorKind::config, "unknown algorithm code");
}

pbitsa::SignalKind signal_of(pbitsa_signal s) {
  switch (s) {
    case PBITSA_SIGNAL_UNIFORM: return pbitsa::SignalKind::uniform;
    case PBITSA_SIGNAL_POISSON: return pbitsa::SignalKind::poisson;
  }
  pbitsa::fail(pbitsa::ErrorKind::config, "unknown signal code");
}

}  // namespace

extern "C" {

const char* pbitsa_version(void) { return PBITSA_VERSION; }

const char* pbitsa_status_string(pbitsa_status status) {
  switch (status) {
    case PBITSA_OK: return "ok";
    case PBITSA_ERR_INVALID_INPUT: return "invalid input";
    case PBITSA_ERR_PARSE: return "parse error";
    case PBITSA_ERR_CONFIG: return "config error";
    case PBITSA_ERR_DEGENERATE_MODEL: return "degenerate model";
    case PBITSA_ERR_LOOKUP: return "lookup error";
    case PBITSA_ERR_IO: return "I/O error";
    case PBITSA_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* pbitsa_last_error(void) { return last_error.c_str(); }

void pbitsa_string_free(char* text) { std::free(text); }

pbitsa_status pbitsa_graph_load(const char* path, pbitsa_graph** out) {
  return guarded([&] {
    if (out) *out = nullptr;
    require(path, "path");
    require(out, "out");
    *out = new pbitsa_graph{pbitsa::read_gset_file(path)};
  });
}

pbitsa_status pbitsa_graph_parse(const char* text, size_t length, pbitsa_graph** out) {
  return guarded([&] {
    if (out) *out = nullptr;
    require(text, "text");
    require(out, "out");
    *out = new pbitsa_graph{pbitsa::parse_gset(std::string_view(text, length))};
  });
}

void pbitsa_graph_free(pbitsa_graph* graph) { delete graph; }

size_t pbitsa_graph_node_count(const pbitsa_graph* graph) { return graph ? graph->graph.n : 0; }

size_t pbitsa_graph_edge_count(const pbitsa_graph* graph) {
  return graph ? graph->graph.edges.size() : 0;
}

pbitsa_status pbitsa_graph_cut_value(const pbitsa_graph* graph, const int8_t* spins, size_t n,
                                     double* out) {
  return guarded([&] {
    require(graph, "graph");
    require(out, "out");
    *out = pbitsa::cut_value(graph->graph, spins_from(spins, n));
  });
}

pbitsa_status pbitsa_model_from_graph(const pbitsa_graph* graph, pbitsa_model** out) {
  return guarded([&] {
    if (out) *out = nullptr;
    require(graph, "graph");
    require(out, "out");
    *out = new pbitsa_model{pbitsa::build_ising(graph->graph)};
  });
}

pbitsa_status pbitsa_model_load_instance(const char* path, pbitsa_model** out) {
  return guarded([&] {
    if (out) *out = nullptr;
    require(path, "path");
    require(out, "out");
    *out = new pbitsa_model{pbitsa::read_instance_file(path)};
  });
}

pbitsa_status pbitsa_model_parse_instance(const char* text, size_t length, pbitsa_model** out) {
  return guarded([&] {
    if (out) *out = nullptr;
    require(text, "text");
    require(out, "out");
    *out = new pbitsa_model{pbitsa::load_instance(std::string_view(text, length))};
  });
}

void pbitsa_model_free(pbitsa_model* model) { delete model; }

size_t pbitsa_model_node_count(const pbitsa_model* model) {
  return model ? model->model.size() : 0;
}

pbitsa_status pbitsa_model_energy(const pbitsa_model* model, const int8_t* spins, size_t n,
                                  double* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = pbitsa::energy(model->model, spins_from(spins, n));
  });
}

pbitsa_status pbitsa_derive_schedule(const pbitsa_model* model, double gamma, double delta,
                                     size_t cycles, pbitsa_schedule* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const auto s = pbitsa::derive_schedule(model->model, gamma, delta, cycles);
    *out = {s.i0_min, s.i0_max, s.beta, s.mean_scale, s.zero_scale_fraction, s.cycles};
  });
}

pbitsa_status pbitsa_best_known(const char* name, double* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    *out = pbitsa::best_known(name);
  });
}

void pbitsa_bench_config_init(pbitsa_bench_config* config) {
  if (!config) return;
  const pbitsa::BenchmarkOptions defaults;
  *config = {};
  config->algorithm = PBITSA_ALGO_PSA;
  config->alpha = 0;
  config->p_stall = -1.0;
  config->trials = static_cast<uint32_t>(defaults.trials);
  config->cycles = static_cast<uint32_t>(defaults.cycles);
  config->seed = defaults.seed;
  config->gamma = defaults.gamma;
  config->delta = defaults.delta;
  config->signal = PBITSA_SIGNAL_UNIFORM;
  config->lambda = defaults.lambda;
  config->threads = 0;
  config->osc_window = static_cast<uint32_t>(defaults.oscillation.window);
  config->osc_min_alternation = defaults.oscillation.min_alternation;
  config->osc_min_amplitude = defaults.oscillation.min_amplitude;
  config->keep_traces = 0;
}

pbitsa_status pbitsa_benchmark_run(const pbitsa_model* model, const pbitsa_graph* graph,
                                   const char* name, const pbitsa_bench_config* config,
                                   pbitsa_benchmark** out) {
  return guarded([&] {
    if (out) *out = nullptr;
    require(model, "model");
    require(config, "config");
    require(out, "out");
    pbitsa::BenchmarkOptions options;
    options.algorithm = algorithm_of(config->algorithm);
    if (config->alpha > 0) options.alpha = config->alpha;
    if (config->p_stall >= 0.0) options.p_stall = config->p_stall;
    options.trials = config->trials;
    options.cycles = config->cycles;
    options.seed = config->seed;
    options.gamma = config->gamma;
    options.delta = config->delta;
    options.signal = signal_of(config->signal);
    options.lambda = config->lambda;
    options.threads = config->threads;
    options.oscillation.window = config->osc_window;
    options.oscillation.min_alternation = config->osc_min_alternation;
    options.oscillation.min_amplitude = config->osc_min_amplitude;
    options.keep_runs = config->keep_traces != 0;
    auto result = pbitsa::run_benchmark(model->model, graph ? &graph->graph : nullptr,
                                        name ? name : "", options);
    *out = new pbitsa_benchmark{std::move(result)};
  });
}

void pbitsa_benchmark_free(pbitsa_benchmark* benchmark) { delete benchmark; }

pbitsa_status pbitsa_benchmark_stats(const pbitsa_benchmark* benchmark, pbitsa_stats* out) {
  return guarded([&] {
    require(benchmark, "benchmark");
    require(out, "out");
    const auto& s = benchmark->result.stats;
    *out = {};
    out->trials = s.trials;
    out->has_cut = s.mean_cut.has_value();
    out->min_cut = s.min_cut.value_or(0.0);
    out->mean_cut = s.mean_cut.value_or(0.0);
    out->max_cut = s.max_cut.value_or(0.0);
    out->has_best_known = s.normalized_mean.has_value();
    out->best_known = s.best_known.value_or(0.0);
    out->normalized_min = s.normalized_min.value_or(0.0);
    out->normalized_mean = s.normalized_mean.value_or(0.0);
    out->normalized_max = s.normalized_max.value_or(0.0);
    out->min_energy = s.min_energy;
    out->mean_energy = s.mean_energy;
    out->max_energy = s.max_energy;
    out->oscillating_trials = s.oscillating_trials;
  });
}

size_t pbitsa_benchmark_warning_count(const pbitsa_benchmark* benchmark) {
  return benchmark ? benchmark->result.stats.warnings.size() : 0;
}

const char* pbitsa_benchmark_warning(const pbitsa_benchmark* benchmark, size_t index) {
  if (!benchmark || index >= benchmark->result.stats.warnings.size()) return nullptr;
  return benchmark->result.stats.warnings[index].c_str();
}

pbitsa_status pbitsa_benchmark_json(const pbitsa_benchmark* benchmark, int include_timing,
                                    char** out) {
  return guarded([&] {
    if (out) *out = nullptr;
    require(benchmark, "benchmark");
    require(out, "out");
    *out = duplicate(pbitsa::benchmark_json(benchmark->result.stats, include_timing != 0));
  });
}

pbitsa_status pbitsa_benchmark_write_json(const pbitsa_benchmark* benchmark, const char* path,
                                          int include_timing) {
  return guarded([&] {
    require(benchmark, "benchmark");
    require(path, "path");
    pbitsa::write_text_file(path, pbitsa::benchmark_json(benchmark->result.stats, include_timing != 0));
  });
}

pbitsa_status pbitsa_benchmark_write_traces(const pbitsa_benchmark* benchmark,
                                            const char* directory) {
  return guarded([&] {
    require(benchmark, "benchmark");
    require(directory, "directory");
    const auto& runs = benchmark->result.runs;
    if (runs.empty()) {
      pbitsa::fail(pbitsa::ErrorKind::config, "traces were not kept for this benchmark");
    }
    const std::filesystem::path dir(directory);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) pbitsa::fail(pbitsa::ErrorKind::io, "cannot create '" + dir.string() + "': " + ec.message());
    for (std::size_t k = 0; k < runs.size(); ++k) {
      char name[32];
      std::snprintf(name, sizeof name, "trial_%03zu.csv", k);
      pbitsa::emit_traces(runs[k], dir / name);
    }
  });
}

void pbitsa_tune_config_init(pbitsa_tune_config* config) {
  if (!config) return;
  const pbitsa::TuneOptions defaults;
  *config = {};
  config->algorithm = PBITSA_ALGO_TAPSA;
  config->tuning_cycles = static_cast<uint32_t>(defaults.tuning_cycles);
  config->tuning_trials = static_cast<uint32_t>(defaults.tuning_trials);
  config->seed = defaults.seed;
  config->gamma = defaults.gamma;
  config->delta = defaults.delta;
  config->signal = PBITSA_SIGNAL_UNIFORM;
  config->lambda = defaults.lambda;
  config->threads = 0;
}

pbitsa_status pbitsa_parse_grid(const char* spec, double* values, size_t capacity, size_t* count) {
  return guarded([&] {
    require(spec, "spec");
    require(count, "count");
    const auto grid = pbitsa::parse_grid(spec);
    *count = grid.size();
    if (!values) return;
    if (capacity < grid.size()) {
      pbitsa::fail(pbitsa::ErrorKind::invalid_input, "grid buffer too small");
    }
    std::copy(grid.begin(), grid.end(), values);
  });
}

pbitsa_status pbitsa_tune(const pbitsa_model* model, const pbitsa_graph* graph,
                          const pbitsa_tune_config* config, const double* candidates,
                          size_t count, pbitsa_tune_result** out) {
  return guarded([&] {
    if (out) *out = nullptr;
    require(model, "model");
    require(graph, "graph");
    require(config, "config");
    require(out, "out");
    if (count > 0) require(candidates, "candidates");
    pbitsa::TuneOptions options;
    options.tuning_cycles = config->tuning_cycles;
    options.tuning_trials = config->tuning_trials;
    options.seed = config->seed;
    options.gamma = config->gamma;
    options.delta = config->delta;
    options.signal = signal_of(config->signal);
    options.lambda = config->lambda;
    options.threads = config->threads;
    pbitsa::TuneResult result;
    const auto algorithm = algorithm_of(config->algorithm);
    if (algorithm == pbitsa::Algorithm::tapsa) {
      std::vector<std::size_t> alphas;
      for (size_t k = 0; k < count; ++k) {
        const double a = candidates[k];
        if (!(a >= 1.0) || a != static_cast<double>(static_cast<std::size_t>(a))) {
          pbitsa::fail(pbitsa::ErrorKind::config, "alpha candidates must be positive integers");
        }
        alphas.push_back(static_cast<std::size_t>(a));
      }
      result = pbitsa::tune_alpha(model->model, graph->graph, alphas, options);
    } else if (algorithm == pbitsa::Algorithm::spsa) {
      result = pbitsa::tune_p(model->model, graph->graph, {candidates, count}, options);
    } else {
      pbitsa::fail(pbitsa::ErrorKind::config, "tuning supports tapsa and spsa only");
    }
    *out = new pbitsa_tune_result{std::move(result)};
  });
}

void pbitsa_tune_result_free(pbitsa_tune_result* result) { delete result; }

double pbitsa_tune_best(const pbitsa_tune_result* result) {
  return result ? result->result.best_param : 0.0;
}

pbitsa_status pbitsa_tune_json(const pbitsa_tune_result* result, char** out) {
  return guarded([&] {
    if (out) *out = nullptr;
    require(result, "result");
    require(out, "out");
    *out = duplicate(pbitsa::tune_result_json(result->result));
  });
}

pbitsa_status pbitsa_summarize_files(const char* const* paths, size_t count, char** out) {
  return guarded([&] {
    if (out) *out = nullptr;
    require(out, "out");
    if (count > 0) require(paths, "paths");
    std::vector<pbitsa::BenchmarkStats> stats;
    for (size_t k = 0; k < count; ++k) {
      require(paths[k], "path");
      stats.push_back(pbitsa::parse_benchmark_json(pbitsa::read_text_file(paths[k])));
    }
    *out = duplicate(pbitsa::summarize_table(stats).text);
  });
}

}  // extern "C"
