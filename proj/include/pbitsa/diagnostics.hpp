#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "pbitsa/ising.hpp"

namespace pbitsa {

double mean_spin(const SpinState& state);

// Period-2 oscillation of the mean spin: consecutive values change sign and
// stay far from zero.
struct OscillationCriteria {
  std::size_t window = 50;
  double min_alternation = 0.9;
  double min_amplitude = 0.5;
};

struct OscillationReport {
  bool detected = false;
  std::optional<std::size_t> onset_cycle;
  double alternation_fraction = 0.0;
  double mean_amplitude = 0.0;
};

// Statistics over the final `window` cycles of the trace. onset_cycle is the
// earliest window start from which every later window also meets the
// criteria.
OscillationReport detect_oscillation(std::span<const double> trace,
                                     const OscillationCriteria& criteria = {});

}  // namespace pbitsa
