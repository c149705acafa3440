#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pbitsa/engines.hpp"
#include "pbitsa/ising.hpp"
#include "pbitsa/rng.hpp"
#include "pbitsa/schedule.hpp"

namespace pbitsa {

struct TuneOptions {
  std::size_t tuning_cycles = 100;
  std::size_t tuning_trials = 5;
  double gamma = kDefaultGamma;
  double delta = kDefaultDelta;
  SignalKind signal = SignalKind::uniform;
  double lambda = kDefaultPoissonLambda;
  std::uint64_t seed = 0;
  std::size_t threads = 0;  // 0: hardware concurrency
};

struct TuneResult {
  Algorithm algorithm = Algorithm::tapsa;
  std::vector<double> candidates;
  // Mean final cut over the tuning trials, one per candidate.
  std::vector<double> scores;
  double best_param = 0.0;
  std::size_t tuning_cycles = 0;
  std::size_t tuning_trials = 0;
  std::uint64_t seed = 0;
  AnnealSchedule schedule;
};

// Every candidate is scored on the same trial seeds, so duplicate candidates
// receive identical scores. Ties go to the smallest parameter.
TuneResult tune_alpha(const IsingModel& model, const Graph& graph,
                      std::span<const std::size_t> candidates, const TuneOptions& options);
TuneResult tune_p(const IsingModel& model, const Graph& graph,
                  std::span<const double> candidates, const TuneOptions& options);

// Grid syntax: comma-separated values and/or ranges "lo:hi[:step]" with
// inclusive upper bound, e.g. "1:10" or "0:0.9:0.1" or "2,4,8".
std::vector<double> parse_grid(std::string_view spec);

std::string tune_result_json(const TuneResult& result);

}  // namespace pbitsa
