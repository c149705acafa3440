#include "pbitsa/engines.hpp"

#include <cmath>
#include <string>

#include "pbitsa/error.hpp"
#include "pbitsa/ising.hpp"

namespace pbitsa {

namespace {

std::vector<Spin> copy_spins(const SpinState& state) {
  return {state.spins().begin(), state.spins().end()};
}

void check_state(const IsingModel& model, const SpinState& state) {
  if (model.size() != state.size()) {
    fail(ErrorKind::invalid_input, "state has " + std::to_string(state.size()) +
                                       " spins, model has " + std::to_string(model.size()));
  }
}

template <typename Fn>
void for_each_index(std::size_t n, EvalOrder order, Fn&& fn) {
  if (order == EvalOrder::forward) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
  } else {
    for (std::size_t i = n; i-- > 0;) fn(i);
  }
}

double field_at(const IsingModel& model, std::span<const Spin> spins, NodeIndex i) {
  double sum = model.bias(i);
  for (const auto& c : model.neighbors(i)) sum += c.value * spins[c.j];
  return sum;
}

// Per-algorithm input rules. Each maps the cycle's fields (h + J s(t)) to the
// p-bit inputs I(t+1).
void psa_inputs(std::span<const double> fields, double i0, std::span<double> inputs,
                EvalOrder order) {
  for_each_index(fields.size(), order, [&](std::size_t i) { inputs[i] = i0 * fields[i]; });
}

void tapsa_inputs(std::span<const double> fields, TapsaBuffer& buffer, double i0,
                  std::span<double> inputs, EvalOrder order) {
  buffer.push(fields);
  for_each_index(fields.size(), order,
                 [&](std::size_t i) { inputs[i] = i0 * buffer.mean(i); });
}

void spsa_inputs(std::span<const double> fields, SpsaInputState& prev, double p_stall,
                 double i0, const SignalSource& source, std::uint64_t cycle,
                 std::span<double> inputs, EvalOrder order, StallMode mode) {
  const std::size_t n = fields.size();
  if (!prev.initialized) {
    prev.inputs.assign(n, 0.0);
    for_each_index(n, order, [&](std::size_t i) { prev.inputs[i] = i0 * fields[i]; });
    prev.initialized = true;
  } else {
    std::uint64_t stalls = 0;
    for_each_index(n, order, [&](std::size_t i) {
      const bool stalled = mode == StallMode::force || source.stall_uniform(i, cycle) < p_stall;
      if (stalled) {
        ++stalls;
      } else {
        prev.inputs[i] = i0 * fields[i];
      }
    });
    prev.stalls += stalls;
    prev.decisions += n;
  }
  std::copy(prev.inputs.begin(), prev.inputs.end(), inputs.begin());
}

void apply_pbits(std::span<const double> inputs, const SignalSource& source,
                 std::uint64_t cycle, std::span<Spin> spins, EvalOrder order) {
  for_each_index(inputs.size(), order, [&](std::size_t i) {
    spins[i] = pbit_update(inputs[i], source.signal(i, cycle));
  });
}

std::size_t bounded(std::uint64_t word, std::size_t range) {
  return static_cast<std::size_t>(
      (static_cast<unsigned __int128>(word) * static_cast<unsigned __int128>(range)) >> 64);
}

void sa_sweep_in_place(const IsingModel& model, std::vector<Spin>& spins,
                       std::vector<NodeIndex>& order, double temperature,
                       const SignalSource& source, std::uint64_t cycle) {
  const std::size_t n = spins.size();
  order.resize(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<NodeIndex>(i);
  for (std::size_t k = n; k > 1; --k) {
    const std::size_t j = bounded(source.shuffle_word(cycle, k), k);
    std::swap(order[k - 1], order[j]);
  }
  for (std::size_t attempt = 0; attempt < n; ++attempt) {
    const NodeIndex i = order[attempt];
    const double delta_h = 2.0 * spins[i] * field_at(model, spins, i);
    if (metropolis_accept(delta_h, temperature, source.acceptance_uniform(cycle, attempt))) {
      spins[i] = static_cast<Spin>(-spins[i]);
    }
  }
}

double mean_of(std::span<const Spin> spins) {
  long long sum = 0;
  for (Spin s : spins) sum += s;
  return static_cast<double>(sum) / static_cast<double>(spins.size());
}

}  // namespace

const char* to_string(Algorithm algorithm) noexcept {
  switch (algorithm) {
    case Algorithm::psa: return "psa";
    case Algorithm::tapsa: return "tapsa";
    case Algorithm::spsa: return "spsa";
    case Algorithm::sa: return "sa";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "psa") return Algorithm::psa;
  if (name == "tapsa") return Algorithm::tapsa;
  if (name == "spsa") return Algorithm::spsa;
  if (name == "sa") return Algorithm::sa;
  fail(ErrorKind::config, "unknown algorithm '" + std::string(name) + "'");
}

void EngineConfig::validate() const {
  if (cycles < 2) fail(ErrorKind::config, "cycles must be at least 2");
  if (algorithm == Algorithm::tapsa) {
    if (!alpha) fail(ErrorKind::config, "tapsa requires a window size alpha");
    if (*alpha < 1) fail(ErrorKind::config, "alpha must be at least 1");
  }
  if (algorithm == Algorithm::spsa) {
    if (!p_stall) fail(ErrorKind::config, "spsa requires a stall probability p");
    if (!(*p_stall >= 0.0 && *p_stall < 1.0)) fail(ErrorKind::config, "p must lie in [0, 1)");
  }
  if (!(lambda > 0.0)) fail(ErrorKind::config, "Poisson lambda must be positive");
  if (const auto* s = std::get_if<AnnealSchedule>(&schedule)) {
    if (algorithm == Algorithm::sa) fail(ErrorKind::config, "classic SA needs a temperature schedule");
    if (s->cycles != cycles) fail(ErrorKind::config, "schedule cycle count differs from config");
  }
  if (const auto* s = std::get_if<SaTempSchedule>(&schedule)) {
    if (algorithm != Algorithm::sa) fail(ErrorKind::config, "p-bit engines need an I0 schedule");
    if (s->cycles != cycles) fail(ErrorKind::config, "schedule cycle count differs from config");
  }
}

TapsaBuffer::TapsaBuffer(std::size_t spins, std::size_t alpha)
    : spins_(spins), alpha_(alpha), values_(spins * alpha, 0.0) {
  if (alpha < 1) fail(ErrorKind::config, "alpha must be at least 1");
}

void TapsaBuffer::push(std::span<const double> values) {
  if (values.size() != spins_) fail(ErrorKind::invalid_input, "TApSA buffer size mismatch");
  std::copy(values.begin(), values.end(), values_.begin() + static_cast<std::ptrdiff_t>(head_ * spins_));
  head_ = (head_ + 1) % alpha_;
  if (count_ < alpha_) ++count_;
}

double TapsaBuffer::mean(std::size_t i) const {
  if (count_ == 0) fail(ErrorKind::invalid_input, "TApSA buffer is empty");
  double sum = 0.0;
  // Newest first.
  std::size_t slot = head_;
  for (std::size_t k = 0; k < count_; ++k) {
    slot = (slot == 0 ? alpha_ : slot) - 1;
    sum += values_[slot * spins_ + i];
  }
  return sum / static_cast<double>(count_);
}

void compute_fields(const IsingModel& model, std::span<const Spin> spins,
                    std::span<double> fields, EvalOrder order) {
  for_each_index(model.size(), order, [&](std::size_t i) {
    fields[i] = field_at(model, spins, static_cast<NodeIndex>(i));
  });
}

double energy_from_fields(const IsingModel& model, std::span<const Spin> spins,
                          std::span<const double> fields) {
  double bias_term = 0.0;
  double coupling_term = 0.0;
  for (std::size_t i = 0; i < spins.size(); ++i) {
    const double h = model.bias(static_cast<NodeIndex>(i));
    bias_term += h * spins[i];
    coupling_term += spins[i] * (fields[i] - h);
  }
  return -bias_term - 0.5 * coupling_term;
}

Spin pbit_update(double input, double r) noexcept {
  return r + std::tanh(input) >= 0.0 ? Spin{1} : Spin{-1};
}

SpinState psa_sweep(const IsingModel& model, const SpinState& state, double i0,
                    const SignalSource& source, std::uint64_t cycle, EvalOrder order) {
  check_state(model, state);
  std::vector<double> fields(model.size());
  std::vector<double> inputs(model.size());
  compute_fields(model, state.spins(), fields, order);
  psa_inputs(fields, i0, inputs, order);
  auto spins = copy_spins(state);
  apply_pbits(inputs, source, cycle, spins, order);
  return SpinState(std::move(spins));
}

SpinState tapsa_sweep(const IsingModel& model, const SpinState& state, TapsaBuffer& buffer,
                      std::size_t alpha, double i0, const SignalSource& source,
                      std::uint64_t cycle, EvalOrder order) {
  check_state(model, state);
  if (buffer.alpha() != alpha || buffer.spins() != model.size()) {
    fail(ErrorKind::config, "TApSA buffer does not match alpha or model size");
  }
  std::vector<double> fields(model.size());
  std::vector<double> inputs(model.size());
  compute_fields(model, state.spins(), fields, order);
  tapsa_inputs(fields, buffer, i0, inputs, order);
  auto spins = copy_spins(state);
  apply_pbits(inputs, source, cycle, spins, order);
  return SpinState(std::move(spins));
}

SpinState spsa_sweep(const IsingModel& model, const SpinState& state, SpsaInputState& prev,
                     double p_stall, double i0, const SignalSource& source,
                     std::uint64_t cycle, EvalOrder order, StallMode mode) {
  check_state(model, state);
  if (!(p_stall >= 0.0 && p_stall < 1.0)) fail(ErrorKind::config, "p must lie in [0, 1)");
  if (prev.initialized && prev.inputs.size() != model.size()) {
    fail(ErrorKind::invalid_input, "SpSA input state size mismatch");
  }
  std::vector<double> fields(model.size());
  std::vector<double> inputs(model.size());
  compute_fields(model, state.spins(), fields, order);
  spsa_inputs(fields, prev, p_stall, i0, source, cycle, inputs, order, mode);
  auto spins = copy_spins(state);
  apply_pbits(inputs, source, cycle, spins, order);
  return SpinState(std::move(spins));
}

bool metropolis_accept(double delta_h, double temperature, double u) noexcept {
  return delta_h <= 0.0 || u < std::exp(-delta_h / temperature);
}

SpinState classic_sa_sweep(const IsingModel& model, SpinState state, double temperature,
                           const SignalSource& source, std::uint64_t cycle) {
  check_state(model, state);
  if (!(temperature > 0.0)) fail(ErrorKind::invalid_input, "temperature must be positive");
  auto spins = copy_spins(state);
  std::vector<NodeIndex> order;
  sa_sweep_in_place(model, spins, order, temperature, source, cycle);
  return SpinState(std::move(spins));
}

SpinState initial_state(std::size_t n, const SignalSource& source) {
  std::vector<Spin> spins(n);
  for (std::size_t i = 0; i < n; ++i) spins[i] = source.init_uniform(i) < 0.5 ? Spin{-1} : Spin{1};
  return SpinState(std::move(spins));
}

RunResult run(const IsingModel& model, const Graph* graph, const EngineConfig& config) {
  config.validate();
  const std::size_t n = model.size();
  if (graph && graph->n != n) {
    fail(ErrorKind::invalid_input, "graph and model node counts differ");
  }

  RunResult result;
  result.config = config;
  result.seed = config.seed;
  if (std::holds_alternative<std::monostate>(config.schedule)) {
    if (config.algorithm == Algorithm::sa) {
      result.config.schedule = make_sa_schedule(config.cycles);
    } else {
      result.config.schedule = derive_schedule(model, kDefaultGamma, kDefaultDelta, config.cycles);
    }
  }

  const SignalSource source(config.signal, config.seed, config.lambda);
  auto spins = copy_spins(initial_state(n, source));
  const std::size_t cycles = config.cycles;
  result.energy_trace.reserve(cycles);
  result.mean_spin_trace.reserve(cycles);
  result.i0_trace.reserve(cycles);

  if (config.algorithm == Algorithm::sa) {
    const auto& schedule = std::get<SaTempSchedule>(result.config.schedule);
    std::vector<NodeIndex> order;
    for (std::size_t t = 0; t < cycles; ++t) {
      const double temperature = sa_temp_at(schedule, t);
      sa_sweep_in_place(model, spins, order, temperature, source, t);
      result.energy_trace.push_back(energy(model, SpinState(spins)));
      result.mean_spin_trace.push_back(mean_of(spins));
      result.i0_trace.push_back(temperature);
    }
  } else {
    const auto& schedule = std::get<AnnealSchedule>(result.config.schedule);
    std::vector<double> fields(n);
    std::vector<double> inputs(n);
    std::optional<TapsaBuffer> buffer;
    if (config.algorithm == Algorithm::tapsa) buffer.emplace(n, *config.alpha);
    SpsaInputState prev;
    compute_fields(model, spins, fields);
    for (std::size_t t = 0; t < cycles; ++t) {
      const double i0 = i0_at(schedule, t);
      switch (config.algorithm) {
        case Algorithm::psa:
          psa_inputs(fields, i0, inputs, EvalOrder::forward);
          break;
        case Algorithm::tapsa:
          tapsa_inputs(fields, *buffer, i0, inputs, EvalOrder::forward);
          break;
        case Algorithm::spsa:
          spsa_inputs(fields, prev, *config.p_stall, i0, source, t, inputs, EvalOrder::forward,
                      StallMode::random);
          break;
        case Algorithm::sa:
          break;
      }
      apply_pbits(inputs, source, t, spins, EvalOrder::forward);
      compute_fields(model, spins, fields);
      result.energy_trace.push_back(energy_from_fields(model, spins, fields));
      result.mean_spin_trace.push_back(mean_of(spins));
      result.i0_trace.push_back(i0);
    }
  }

  result.final_state = SpinState(std::move(spins));
  result.final_energy = energy(model, result.final_state);
  if (graph) result.final_cut = cut_value(*graph, result.final_state);
  return result;
}

}  // namespace pbitsa
