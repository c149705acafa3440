#include "pbitsa/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pbitsa/error.hpp"

namespace pbitsa {

namespace {

void check_cycle(std::size_t t, std::size_t cycles) {
  if (t >= cycles) {
    fail(ErrorKind::invalid_input, "cycle " + std::to_string(t) + " outside [0, " +
                                       std::to_string(cycles) + ")");
  }
}

double ramp_beta(double i0_min, double i0_max, std::size_t cycles) {
  return std::pow(i0_min / i0_max, 1.0 / static_cast<double>(cycles - 1));
}

}  // namespace

double spin_scale(const IsingModel& model, NodeIndex i) {
  const std::size_t n = model.size();
  if (n < 2) fail(ErrorKind::invalid_input, "spin scale needs at least two nodes");
  if (i >= n) fail(ErrorKind::invalid_input, "node index " + std::to_string(i) + " out of range");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& c : model.neighbors(i)) {
    sum += c.value;
    sum_sq += c.value * c.value;
  }
  // (n-1) * Var = sum_sq - sum^2 / (n-1)
  const double row = static_cast<double>(n - 1);
  const double scaled_var = sum_sq - sum * sum / row;
  return std::sqrt(std::max(scaled_var, 0.0));
}

std::vector<double> spin_scales(const IsingModel& model) {
  std::vector<double> out(model.size());
  for (NodeIndex i = 0; i < model.size(); ++i) out[i] = spin_scale(model, i);
  return out;
}

AnnealSchedule derive_schedule(const IsingModel& model, double gamma, double delta,
                               std::size_t cycles) {
  if (cycles < 2) fail(ErrorKind::config, "annealing needs at least two cycles");
  if (!(gamma > 0.0) || !(delta > 0.0)) fail(ErrorKind::config, "gamma and delta must be positive");
  if (gamma > delta) fail(ErrorKind::config, "gamma must not exceed delta");

  const auto scales = spin_scales(model);
  const double mean = std::accumulate(scales.begin(), scales.end(), 0.0) /
                      static_cast<double>(scales.size());
  if (!(mean > 0.0)) fail(ErrorKind::degenerate_model, "mean coupling scale is zero");
  const auto zeros = std::count(scales.begin(), scales.end(), 0.0);

  AnnealSchedule s;
  s.i0_min = gamma / mean;
  s.i0_max = delta / mean;
  s.cycles = cycles;
  s.beta = ramp_beta(s.i0_min, s.i0_max, cycles);
  s.mean_scale = mean;
  s.gamma = gamma;
  s.delta = delta;
  s.zero_scale_fraction = static_cast<double>(zeros) / static_cast<double>(scales.size());
  return s;
}

AnnealSchedule rescale_cycles(const AnnealSchedule& schedule, std::size_t cycles) {
  if (cycles < 2) fail(ErrorKind::config, "annealing needs at least two cycles");
  AnnealSchedule s = schedule;
  s.cycles = cycles;
  s.beta = ramp_beta(s.i0_min, s.i0_max, cycles);
  return s;
}

double i0_at(const AnnealSchedule& schedule, std::size_t t) {
  check_cycle(t, schedule.cycles);
  return schedule.i0_min * std::pow(schedule.beta, -static_cast<double>(t));
}

double SaTempSchedule::delta_it() const {
  return (1.0 / t_final - 1.0 / t_init) / static_cast<double>(cycles - 1);
}

SaTempSchedule make_sa_schedule(std::size_t cycles, double t_init, double t_final) {
  if (cycles < 2) fail(ErrorKind::config, "annealing needs at least two cycles");
  if (!(t_init > 0.0) || !(t_final > 0.0) || !(t_final < t_init)) {
    fail(ErrorKind::config, "temperatures must satisfy 0 < T_final < T_init");
  }
  return {t_init, t_final, cycles};
}

double sa_temp_at(const SaTempSchedule& schedule, std::size_t t) {
  check_cycle(t, schedule.cycles);
  return 1.0 / (1.0 / schedule.t_init + static_cast<double>(t) * schedule.delta_it());
}

}  // namespace pbitsa
