/*
 * C interface to the pbitsa annealing library.
 *
 * All functions returning pbitsa_status set a thread-local message readable
 * through pbitsa_last_error() when they fail. Handles are opaque and owned by
 * the caller; release them with the matching *_free function. Strings handed
 * out through char** parameters are released with pbitsa_string_free.
 */
#ifndef PBITSA_H
#define PBITSA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PBITSA_BUILDING)
#    define PBITSA_API __declspec(dllexport)
#  else
#    define PBITSA_API __declspec(dllimport)
#  endif
#else
#  define PBITSA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pbitsa_status {
  PBITSA_OK = 0,
  PBITSA_ERR_INVALID_INPUT = 1,
  PBITSA_ERR_PARSE = 2,
  PBITSA_ERR_CONFIG = 3,
  PBITSA_ERR_DEGENERATE_MODEL = 4,
  PBITSA_ERR_LOOKUP = 5,
  PBITSA_ERR_IO = 6,
  PBITSA_ERR_INTERNAL = 7
} pbitsa_status;

typedef enum pbitsa_algorithm {
  PBITSA_ALGO_PSA = 0,
  PBITSA_ALGO_TAPSA = 1,
  PBITSA_ALGO_SPSA = 2,
  PBITSA_ALGO_SA = 3
} pbitsa_algorithm;

typedef enum pbitsa_signal {
  PBITSA_SIGNAL_UNIFORM = 0,
  PBITSA_SIGNAL_POISSON = 1
} pbitsa_signal;

typedef struct pbitsa_graph pbitsa_graph;
typedef struct pbitsa_model pbitsa_model;
typedef struct pbitsa_benchmark pbitsa_benchmark;
typedef struct pbitsa_tune_result pbitsa_tune_result;

/* Benchmark configuration. Fill with pbitsa_bench_config_init first. */
typedef struct pbitsa_bench_config {
  pbitsa_algorithm algorithm;
  uint32_t alpha;   /* TApSA window; 0 = not set */
  double p_stall;   /* SpSA stall probability; negative = not set */
  uint32_t trials;
  uint32_t cycles;
  uint64_t seed;
  double gamma;
  double delta;
  pbitsa_signal signal;
  double lambda;
  uint32_t threads; /* 0 = hardware concurrency */
  uint32_t osc_window;
  double osc_min_alternation;
  double osc_min_amplitude;
  int keep_traces;  /* nonzero: retain per-trial traces for writing */
} pbitsa_bench_config;

typedef struct pbitsa_stats {
  size_t trials;
  int has_cut;
  double min_cut;
  double mean_cut;
  double max_cut;
  int has_best_known;
  double best_known;
  double normalized_min;
  double normalized_mean;
  double normalized_max;
  double min_energy;
  double mean_energy;
  double max_energy;
  size_t oscillating_trials;
} pbitsa_stats;

typedef struct pbitsa_schedule {
  double i0_min;
  double i0_max;
  double beta;
  double mean_scale;
  double zero_scale_fraction;
  size_t cycles;
} pbitsa_schedule;

typedef struct pbitsa_tune_config {
  pbitsa_algorithm algorithm; /* PBITSA_ALGO_TAPSA or PBITSA_ALGO_SPSA */
  uint32_t tuning_cycles;
  uint32_t tuning_trials;
  uint64_t seed;
  double gamma;
  double delta;
  pbitsa_signal signal;
  double lambda;
  uint32_t threads;
} pbitsa_tune_config;

PBITSA_API const char* pbitsa_version(void);
PBITSA_API const char* pbitsa_status_string(pbitsa_status status);
/* Message of the last failure on the calling thread, "" if none. */
PBITSA_API const char* pbitsa_last_error(void);
PBITSA_API void pbitsa_string_free(char* text);

/* Graphs (G-set edge lists) */
PBITSA_API pbitsa_status pbitsa_graph_load(const char* path, pbitsa_graph** out);
PBITSA_API pbitsa_status pbitsa_graph_parse(const char* text, size_t length, pbitsa_graph** out);
PBITSA_API void pbitsa_graph_free(pbitsa_graph* graph);
PBITSA_API size_t pbitsa_graph_node_count(const pbitsa_graph* graph);
PBITSA_API size_t pbitsa_graph_edge_count(const pbitsa_graph* graph);
PBITSA_API pbitsa_status pbitsa_graph_cut_value(const pbitsa_graph* graph, const int8_t* spins,
                                                size_t n, double* out);

/* Ising models */
PBITSA_API pbitsa_status pbitsa_model_from_graph(const pbitsa_graph* graph, pbitsa_model** out);
PBITSA_API pbitsa_status pbitsa_model_load_instance(const char* path, pbitsa_model** out);
PBITSA_API pbitsa_status pbitsa_model_parse_instance(const char* text, size_t length,
                                                     pbitsa_model** out);
PBITSA_API void pbitsa_model_free(pbitsa_model* model);
PBITSA_API size_t pbitsa_model_node_count(const pbitsa_model* model);
PBITSA_API pbitsa_status pbitsa_model_energy(const pbitsa_model* model, const int8_t* spins,
                                             size_t n, double* out);
PBITSA_API pbitsa_status pbitsa_derive_schedule(const pbitsa_model* model, double gamma,
                                                double delta, size_t cycles,
                                                pbitsa_schedule* out);

PBITSA_API pbitsa_status pbitsa_best_known(const char* name, double* out);

/* Benchmarks. `graph` may be NULL for plain h/J instances; cut statistics are
 * then absent. `name` selects the best-known value used for normalization. */
PBITSA_API void pbitsa_bench_config_init(pbitsa_bench_config* config);
PBITSA_API pbitsa_status pbitsa_benchmark_run(const pbitsa_model* model, const pbitsa_graph* graph,
                                              const char* name, const pbitsa_bench_config* config,
                                              pbitsa_benchmark** out);
PBITSA_API void pbitsa_benchmark_free(pbitsa_benchmark* benchmark);
PBITSA_API pbitsa_status pbitsa_benchmark_stats(const pbitsa_benchmark* benchmark, pbitsa_stats* out);
PBITSA_API size_t pbitsa_benchmark_warning_count(const pbitsa_benchmark* benchmark);
PBITSA_API const char* pbitsa_benchmark_warning(const pbitsa_benchmark* benchmark, size_t index);
PBITSA_API pbitsa_status pbitsa_benchmark_json(const pbitsa_benchmark* benchmark, int include_timing,
                                               char** out);
PBITSA_API pbitsa_status pbitsa_benchmark_write_json(const pbitsa_benchmark* benchmark,
                                                     const char* path, int include_timing);
/* Writes trial_NNN.csv per trial into `directory` (created if missing).
 * Requires keep_traces. */
PBITSA_API pbitsa_status pbitsa_benchmark_write_traces(const pbitsa_benchmark* benchmark,
                                                       const char* directory);

/* Parameter tuning */
PBITSA_API void pbitsa_tune_config_init(pbitsa_tune_config* config);
/* Expands a grid such as "1:10" or "0:0.9:0.1" or "2,4". Sets *count to the
 * number of values; pass values = NULL to query it. */
PBITSA_API pbitsa_status pbitsa_parse_grid(const char* spec, double* values, size_t capacity,
                                           size_t* count);
PBITSA_API pbitsa_status pbitsa_tune(const pbitsa_model* model, const pbitsa_graph* graph,
                                     const pbitsa_tune_config* config, const double* candidates,
                                     size_t count, pbitsa_tune_result** out);
PBITSA_API void pbitsa_tune_result_free(pbitsa_tune_result* result);
PBITSA_API double pbitsa_tune_best(const pbitsa_tune_result* result);
PBITSA_API pbitsa_status pbitsa_tune_json(const pbitsa_tune_result* result, char** out);

/* Table-shaped report over previously written result JSON files. */
PBITSA_API pbitsa_status pbitsa_summarize_files(const char* const* paths, size_t count, char** out);

#ifdef __cplusplus
}
#endif

#endif /* PBITSA_H */
