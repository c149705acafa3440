#include "pbitsa/tuner.hpp"

#include <cmath>
#include <cstdio>
#include "json.hpp"

#include "pbitsa/error.hpp"
#include "pbitsa/format.hpp"
#include "pbitsa/parallel.hpp"

namespace pbitsa {

namespace {

TuneResult tune(const IsingModel& model, const Graph& graph, Algorithm algorithm,
                std::vector<double> candidates, const TuneOptions& options) {
  if (candidates.empty()) fail(ErrorKind::config, "tuning needs at least one candidate");
  if (options.tuning_trials < 1) fail(ErrorKind::config, "tuning needs at least one trial");

  TuneResult result;
  result.algorithm = algorithm;
  result.tuning_cycles = options.tuning_cycles;
  result.tuning_trials = options.tuning_trials;
  result.seed = options.seed;
  result.schedule = derive_schedule(model, options.gamma, options.delta, options.tuning_cycles);

  const std::size_t trials = options.tuning_trials;
  std::vector<double> cuts(candidates.size() * trials);
  parallel_for(cuts.size(), options.threads, [&](std::size_t job) {
    const std::size_t c = job / trials;
    const std::size_t k = job % trials;
    EngineConfig config;
    config.algorithm = algorithm;
    if (algorithm == Algorithm::tapsa) {
      config.alpha = static_cast<std::size_t>(candidates[c]);
    } else {
      config.p_stall = candidates[c];
    }
    config.cycles = options.tuning_cycles;
    config.schedule = result.schedule;
    config.signal = options.signal;
    config.lambda = options.lambda;
    config.seed = derive_seed(options.seed, k);
    cuts[job] = *run(model, &graph, config).final_cut;
  });

  result.scores.resize(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    double sum = 0.0;
    for (std::size_t k = 0; k < trials; ++k) sum += cuts[c * trials + k];
    result.scores[c] = sum / static_cast<double>(trials);
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < candidates.size(); ++c) {
    const bool better = result.scores[c] > result.scores[best];
    const bool tie_smaller = result.scores[c] == result.scores[best] && candidates[c] < candidates[best];
    if (better || tie_smaller) best = c;
  }
  result.best_param = candidates[best];
  result.candidates = std::move(candidates);
  return result;
}

double tidy(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return parse_double(buffer);
}

}  // namespace

TuneResult tune_alpha(const IsingModel& model, const Graph& graph,
                      std::span<const std::size_t> candidates, const TuneOptions& options) {
  std::vector<double> values;
  for (std::size_t alpha : candidates) {
    if (alpha < 1) fail(ErrorKind::config, "alpha candidates must be at least 1");
    values.push_back(static_cast<double>(alpha));
  }
  return tune(model, graph, Algorithm::tapsa, std::move(values), options);
}

TuneResult tune_p(const IsingModel& model, const Graph& graph,
                  std::span<const double> candidates, const TuneOptions& options) {
  for (double p : candidates) {
    if (!(p >= 0.0 && p < 1.0)) fail(ErrorKind::config, "p candidates must lie in [0, 1)");
  }
  return tune(model, graph, Algorithm::spsa, {candidates.begin(), candidates.end()}, options);
}

std::vector<double> parse_grid(std::string_view spec) {
  std::vector<double> out;
  auto bad = [&] { fail(ErrorKind::config, "malformed grid '" + std::string(spec) + "'"); };
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t comma = spec.find(',', pos);
    if (comma == std::string_view::npos) comma = spec.size();
    const std::string_view item = spec.substr(pos, comma - pos);
    if (item.empty()) bad();
    std::vector<double> parts;
    std::size_t p = 0;
    while (p <= item.size()) {
      std::size_t colon = item.find(':', p);
      if (colon == std::string_view::npos) colon = item.size();
      try {
        parts.push_back(parse_double(item.substr(p, colon - p)));
      } catch (const Error&) {
        bad();
      }
      p = colon + 1;
    }
    if (parts.size() == 1) {
      out.push_back(parts[0]);
    } else if (parts.size() == 2 || parts.size() == 3) {
      const double lo = parts[0];
      const double hi = parts[1];
      const double step = parts.size() == 3 ? parts[2] : 1.0;
      if (!(step > 0.0) || hi < lo) bad();
      const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
      for (std::size_t k = 0; k < count; ++k) out.push_back(tidy(lo + static_cast<double>(k) * step));
    } else {
      bad();
    }
    pos = comma + 1;
  }
  return out;
}

std::string tune_result_json(const TuneResult& result) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["algorithm"] = to_string(result.algorithm);
  auto& candidates = j["candidates"] = nlohmann::ordered_json::array();
  for (double c : result.candidates) {
    if (result.algorithm == Algorithm::tapsa) {
      candidates.push_back(static_cast<std::uint64_t>(c));
    } else {
      candidates.push_back(c);
    }
  }
  j["scores"] = result.scores;
  if (result.algorithm == Algorithm::tapsa) {
    j["best_param"] = static_cast<std::uint64_t>(result.best_param);
  } else {
    j["best_param"] = result.best_param;
  }
  j["tuning_cycles"] = result.tuning_cycles;
  j["tuning_trials"] = result.tuning_trials;
  j["seed"] = result.seed;
  j["schedule"] = {{"i0_min", result.schedule.i0_min},
                   {"i0_max", result.schedule.i0_max},
                   {"beta", result.schedule.beta},
                   {"mean_scale", result.schedule.mean_scale}};
  return j.dump(2) + "\n";
}

}  // namespace pbitsa
