#pragma once

#include <cstddef>
#include <vector>

#include "pbitsa/ising.hpp"

namespace pbitsa {

inline constexpr double kDefaultGamma = 0.1;
inline constexpr double kDefaultDelta = 10.0;

// Geometric pseudo-inverse-temperature ramp, I0(t) = I0min * beta^-t.
struct AnnealSchedule {
  double i0_min = 0.0;
  double i0_max = 0.0;
  double beta = 1.0;
  std::size_t cycles = 0;
  double mean_scale = 0.0;
  double gamma = kDefaultGamma;
  double delta = kDefaultDelta;
  // Fraction of nodes whose coupling scale is exactly zero.
  double zero_scale_fraction = 0.0;
};

// Classic SA temperature, 1/T(t) = 1/T_init + t * delta_it.
struct SaTempSchedule {
  double t_init = 1.0;
  double t_final = 1.0 / 1000.0;
  std::size_t cycles = 0;

  double delta_it() const;
};

// s_i = sqrt((n-1) * Var(J_i,:)), population variance over the full
// length-(n-1) row including absent couplings.
double spin_scale(const IsingModel& model, NodeIndex i);
std::vector<double> spin_scales(const IsingModel& model);

AnnealSchedule derive_schedule(const IsingModel& model, double gamma = kDefaultGamma,
                               double delta = kDefaultDelta, std::size_t cycles = 1000);

// Same I0 endpoints, beta recomputed for a different cycle count.
AnnealSchedule rescale_cycles(const AnnealSchedule& schedule, std::size_t cycles);

double i0_at(const AnnealSchedule& schedule, std::size_t t);

SaTempSchedule make_sa_schedule(std::size_t cycles, double t_init = 1.0,
                                double t_final = 1.0 / 1000.0);
double sa_temp_at(const SaTempSchedule& schedule, std::size_t t);

}  // namespace pbitsa
