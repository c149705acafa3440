#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "pbitsa/ising.hpp"
#include "pbitsa/rng.hpp"
#include "pbitsa/schedule.hpp"

namespace pbitsa {

enum class Algorithm { psa, tapsa, spsa, sa };

const char* to_string(Algorithm algorithm) noexcept;
Algorithm parse_algorithm(std::string_view name);

// monostate means "derive the default schedule for the model".
using Schedule = std::variant<std::monostate, AnnealSchedule, SaTempSchedule>;

struct EngineConfig {
  Algorithm algorithm = Algorithm::psa;
  std::optional<std::size_t> alpha;  // TApSA window
  std::optional<double> p_stall;     // SpSA stall probability
  std::size_t cycles = 1000;
  Schedule schedule;
  SignalKind signal = SignalKind::uniform;
  double lambda = kDefaultPoissonLambda;
  std::uint64_t seed = 0;

  void validate() const;
};

struct RunResult {
  SpinState final_state;
  double final_energy = 0.0;
  std::optional<double> final_cut;
  std::vector<double> energy_trace;
  std::vector<double> mean_spin_trace;
  // I0 for the p-bit engines, temperature for classic SA.
  std::vector<double> i0_trace;
  std::uint64_t seed = 0;
  EngineConfig config;
};

// Last `alpha` raw inputs TI_i of every spin. All spins are pushed together
// once per cycle, so a single head/count pair serves the whole buffer.
class TapsaBuffer {
 public:
  TapsaBuffer(std::size_t spins, std::size_t alpha);

  std::size_t alpha() const noexcept { return alpha_; }
  std::size_t spins() const noexcept { return spins_; }
  // Number of values currently held per spin, at most alpha.
  std::size_t available() const noexcept { return count_; }

  void push(std::span<const double> values);
  // Mean of the min(alpha, available) most recent values of spin i.
  double mean(std::size_t i) const;

 private:
  std::size_t spins_;
  std::size_t alpha_;
  std::size_t head_ = 0;  // slot that receives the next push
  std::size_t count_ = 0;
  std::vector<double> values_;  // slot-major: values_[slot * spins_ + i]
};

// Previous p-bit inputs I_i(t) retained for SpSA.
struct SpsaInputState {
  std::vector<double> inputs;
  bool initialized = false;
  std::uint64_t stalls = 0;
  std::uint64_t decisions = 0;
};

enum class EvalOrder { forward, reverse };

// Test hook for SpSA: force every spin past the first cycle to stall.
enum class StallMode { random, force };

// fields[i] = h_i + sum_j J_ij s_j for every i, from one snapshot.
void compute_fields(const IsingModel& model, std::span<const Spin> spins,
                    std::span<double> fields, EvalOrder order = EvalOrder::forward);

// H from precomputed fields: -sum h_i s_i - 1/2 sum_i s_i (field_i - h_i).
double energy_from_fields(const IsingModel& model, std::span<const Spin> spins,
                          std::span<const double> fields);

// sgn(r + tanh(input)), with sgn(0) = +1.
Spin pbit_update(double input, double r) noexcept;

SpinState psa_sweep(const IsingModel& model, const SpinState& state, double i0,
                    const SignalSource& source, std::uint64_t cycle,
                    EvalOrder order = EvalOrder::forward);

SpinState tapsa_sweep(const IsingModel& model, const SpinState& state, TapsaBuffer& buffer,
                      std::size_t alpha, double i0, const SignalSource& source,
                      std::uint64_t cycle, EvalOrder order = EvalOrder::forward);

SpinState spsa_sweep(const IsingModel& model, const SpinState& state, SpsaInputState& prev,
                     double p_stall, double i0, const SignalSource& source,
                     std::uint64_t cycle, EvalOrder order = EvalOrder::forward,
                     StallMode mode = StallMode::random);

bool metropolis_accept(double delta_h, double temperature, double u) noexcept;

// n sequential single-flip Metropolis attempts in a shuffled node order.
SpinState classic_sa_sweep(const IsingModel& model, SpinState state, double temperature,
                           const SignalSource& source, std::uint64_t cycle);

// Uniform random +/-1 configuration derived from the source's seed.
SpinState initial_state(std::size_t n, const SignalSource& source);

// `graph` may be null; final_cut is then left empty.
RunResult run(const IsingModel& model, const Graph* graph, const EngineConfig& config);

}  // namespace pbitsa
