#include "pbitsa/diagnostics.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "pbitsa/error.hpp"

namespace pbitsa {

double mean_spin(const SpinState& state) {
  if (state.size() == 0) fail(ErrorKind::invalid_input, "mean spin of an empty state");
  long long sum = 0;
  for (Spin s : state.spins()) sum += s;
  return static_cast<double>(sum) / static_cast<double>(state.size());
}

OscillationReport detect_oscillation(std::span<const double> trace,
                                     const OscillationCriteria& criteria) {
  const std::size_t window = criteria.window;
  if (window < 10) fail(ErrorKind::invalid_input, "oscillation window must be at least 10");
  if (trace.size() < window) {
    fail(ErrorKind::invalid_input, "trace of length " + std::to_string(trace.size()) +
                                       " is shorter than the window " + std::to_string(window));
  }

  // Prefix counts: flips[k] = sign changes among pairs (t, t+1) with t < k;
  // amplitude[k] = sum of |m(t)| for t < k.
  const std::size_t len = trace.size();
  std::vector<std::size_t> flips(len, 0);
  std::vector<double> amplitude(len + 1, 0.0);
  for (std::size_t t = 0; t < len; ++t) {
    amplitude[t + 1] = amplitude[t] + std::abs(trace[t]);
    if (t + 1 < len) {
      const bool alternates = trace[t] * trace[t + 1] < 0.0;
      flips[t + 1] = flips[t] + (alternates ? 1 : 0);
    }
  }

  const double pairs = static_cast<double>(window - 1);
  auto stats_at = [&](std::size_t start) {
    OscillationReport r;
    const std::size_t end = start + window;
    r.alternation_fraction = static_cast<double>(flips[end - 1] - flips[start]) / pairs;
    r.mean_amplitude = (amplitude[end] - amplitude[start]) / static_cast<double>(window);
    r.detected = r.alternation_fraction >= criteria.min_alternation &&
                 r.mean_amplitude >= criteria.min_amplitude;
    return r;
  };

  const std::size_t last = len - window;
  OscillationReport report = stats_at(last);
  if (report.detected) {
    std::size_t onset = last;
    while (onset > 0 && stats_at(onset - 1).detected) --onset;
    report.onset_cycle = onset;
  }
  return report;
}

}  // namespace pbitsa
