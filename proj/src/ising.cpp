#include "pbitsa/ising.hpp"

#include <algorithm>
#include <string>

#include "pbitsa/error.hpp"

namespace pbitsa {

namespace {

void check_size(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    fail(ErrorKind::invalid_input, std::string(what) + ": expected " +
                                       std::to_string(expected) +
                                       " spins, got " + std::to_string(got));
  }
}

void check_index(std::size_t n, NodeIndex i) {
  if (i >= n) {
    fail(ErrorKind::invalid_input, "node index " + std::to_string(i) +
                                       " out of range [0, " +
                                       std::to_string(n) + ")");
  }
}

}  // namespace

void Graph::validate() const {
  std::vector<std::pair<NodeIndex, NodeIndex>> keys;
  keys.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) {
      fail(ErrorKind::invalid_input, "edge (" + std::to_string(e.u) + ", " +
                                         std::to_string(e.v) +
                                         ") out of range");
    }
    if (e.u == e.v) fail(ErrorKind::invalid_input, "self-loop on node " + std::to_string(e.u));
    if (e.u > e.v) fail(ErrorKind::invalid_input, "edge endpoints not normalized (u > v)");
    keys.emplace_back(e.u, e.v);
  }
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) {
    fail(ErrorKind::invalid_input, "duplicate edge");
  }
}

double Graph::total_weight() const {
  double total = 0.0;
  for (const auto& e : edges) total += e.w;
  return total;
}

IsingModel::IsingModel(std::size_t n, std::vector<double> bias,
                       std::span<const CouplingTriple> couplings)
    : bias_(std::move(bias)) {
  if (n == 0) fail(ErrorKind::invalid_input, "model needs at least one node");
  if (bias_.empty()) bias_.assign(n, 0.0);
  check_size(n, bias_.size(), "bias vector");

  std::vector<std::size_t> degree(n, 0);
  for (const auto& c : couplings) {
    check_index(n, c.i);
    check_index(n, c.j);
    if (c.i == c.j) fail(ErrorKind::invalid_input, "self-coupling on node " + std::to_string(c.i));
    ++degree[c.i];
    ++degree[c.j];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& c : couplings) {
    adjacency_[cursor[c.i]++] = {c.j, c.value};
    adjacency_[cursor[c.j]++] = {c.i, c.value};
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
    auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
    std::sort(first, last, [](const Coupling& a, const Coupling& b) { return a.j < b.j; });
    auto dup = std::adjacent_find(first, last, [](const Coupling& a, const Coupling& b) {
      return a.j == b.j;
    });
    if (dup != last) {
      fail(ErrorKind::invalid_input, "duplicate coupling (" + std::to_string(i) +
                                         ", " + std::to_string(dup->j) + ")");
    }
  }
}

double IsingModel::coupling(NodeIndex i, NodeIndex j) const {
  check_index(size(), i);
  check_index(size(), j);
  const auto row = neighbors(i);
  auto it = std::lower_bound(row.begin(), row.end(), j,
                             [](const Coupling& c, NodeIndex key) { return c.j < key; });
  return (it != row.end() && it->j == j) ? it->value : 0.0;
}

std::vector<CouplingTriple> IsingModel::upper_couplings() const {
  std::vector<CouplingTriple> out;
  out.reserve(coupling_count());
  for (NodeIndex i = 0; i < size(); ++i) {
    for (const auto& c : neighbors(i)) {
      if (c.j > i) out.push_back({i, c.j, c.value});
    }
  }
  return out;
}

bool IsingModel::has_bias() const noexcept {
  return std::any_of(bias_.begin(), bias_.end(), [](double b) { return b != 0.0; });
}

bool operator==(const IsingModel& a, const IsingModel& b) {
  if (a.bias_ != b.bias_ || a.offsets_ != b.offsets_) return false;
  return std::equal(a.adjacency_.begin(), a.adjacency_.end(), b.adjacency_.begin(),
                    b.adjacency_.end(), [](const Coupling& x, const Coupling& y) {
                      return x.j == y.j && x.value == y.value;
                    });
}

SpinState::SpinState(std::vector<Spin> spins) : spins_(std::move(spins)) {
  for (std::size_t i = 0; i < spins_.size(); ++i) {
    if (spins_[i] != 1 && spins_[i] != -1) {
      fail(ErrorKind::invalid_input, "spin " + std::to_string(i) + " is not +1 or -1");
    }
  }
}

SpinState SpinState::uniform(std::size_t n, Spin value) {
  return SpinState(std::vector<Spin>(n, value));
}

void SpinState::set(std::size_t i, Spin value) {
  if (value != 1 && value != -1) fail(ErrorKind::invalid_input, "spin value must be +1 or -1");
  spins_.at(i) = value;
  cached_energy.reset();
}

double energy(const IsingModel& model, const SpinState& state) {
  check_size(model.size(), state.size(), "energy");
  double field_term = 0.0;
  double coupling_term = 0.0;
  for (NodeIndex i = 0; i < model.size(); ++i) {
    const double si = state[i];
    field_term += model.bias(i) * si;
    for (const auto& c : model.neighbors(i)) {
      if (c.j > i) coupling_term += c.value * si * state[c.j];
    }
  }
  return -field_term - coupling_term;
}

double local_field(const IsingModel& model, const SpinState& state, NodeIndex i) {
  check_size(model.size(), state.size(), "local_field");
  check_index(model.size(), i);
  double sum = model.bias(i);
  for (const auto& c : model.neighbors(i)) sum += c.value * state[c.j];
  return sum;
}

double delta_energy(const IsingModel& model, const SpinState& state, NodeIndex i) {
  const double field = local_field(model, state, i);
  return 2.0 * state[i] * field;
}

double cut_value(const Graph& graph, const SpinState& state) {
  check_size(graph.n, state.size(), "cut_value");
  double cut = 0.0;
  for (const auto& e : graph.edges) {
    if (state[e.u] != state[e.v]) cut += e.w;
  }
  return cut;
}

double cut_energy_identity_check(const Graph& graph, const IsingModel& model,
                                 const SpinState& state) {
  if (graph.n != model.size()) {
    fail(ErrorKind::invalid_input, "graph has " + std::to_string(graph.n) +
                                       " nodes but model has " +
                                       std::to_string(model.size()));
  }
  return cut_value(graph, state) - (graph.total_weight() - energy(model, state)) / 2.0;
}

}  // namespace pbitsa
