#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pbitsa {

using Spin = std::int8_t;
using NodeIndex = std::uint32_t;

struct Edge {
  NodeIndex u = 0;
  NodeIndex v = 0;
  double w = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Weighted undirected graph. Edges are stored with u < v.
struct Graph {
  std::size_t n = 0;
  std::vector<Edge> edges;

  // Throws invalid_input on self-loops, duplicates, u > v or out-of-range
  // indices.
  void validate() const;
  double total_weight() const;
};

struct Coupling {
  NodeIndex j;
  double value;
};

struct CouplingTriple {
  NodeIndex i;
  NodeIndex j;
  double value;
};

// Ising model H(s) = -sum_i h_i s_i - sum_{i<j} J_ij s_i s_j with J stored as
// symmetric adjacency lists (CSR).
class IsingModel {
 public:
  IsingModel() = default;

  // Each unordered pair may appear once, in either orientation.
  IsingModel(std::size_t n, std::vector<double> bias,
             std::span<const CouplingTriple> couplings);

  std::size_t size() const noexcept { return bias_.size(); }
  double bias(NodeIndex i) const { return bias_[i]; }
  std::span<const double> biases() const noexcept { return bias_; }

  std::span<const Coupling> neighbors(NodeIndex i) const {
    return {adjacency_.data() + offsets_[i], adjacency_.data() + offsets_[i + 1]};
  }

  // Number of unordered coupled pairs.
  std::size_t coupling_count() const noexcept { return adjacency_.size() / 2; }

  // Value of J_ij, 0 when the pair is not coupled. O(degree(i)).
  double coupling(NodeIndex i, NodeIndex j) const;

  // Unordered pairs with i < j, sorted by (i, j).
  std::vector<CouplingTriple> upper_couplings() const;

  bool has_bias() const noexcept;

  friend bool operator==(const IsingModel& a, const IsingModel& b);

 private:
  std::vector<double> bias_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Coupling> adjacency_;
};

class SpinState {
 public:
  SpinState() = default;
  explicit SpinState(std::vector<Spin> spins);
  static SpinState uniform(std::size_t n, Spin value);

  std::size_t size() const noexcept { return spins_.size(); }
  Spin operator[](std::size_t i) const { return spins_[i]; }
  std::span<const Spin> spins() const noexcept { return spins_; }

  void set(std::size_t i, Spin value);
  void flip(std::size_t i) {
    spins_[i] = static_cast<Spin>(-spins_[i]);
    cached_energy.reset();
  }
  SpinState flipped(std::size_t i) const {
    SpinState out = *this;
    out.flip(i);
    return out;
  }

  // Optional cache; callers that mutate spins through set()/flip() lose it.
  std::optional<double> cached_energy;

  friend bool operator==(const SpinState& a, const SpinState& b) {
    return a.spins_ == b.spins_;
  }

 private:
  std::vector<Spin> spins_;
};

double energy(const IsingModel& model, const SpinState& state);

// h_i + sum_j J_ij s_j, read from the supplied snapshot.
double local_field(const IsingModel& model, const SpinState& state, NodeIndex i);

// H(s with s_i flipped) - H(s).
double delta_energy(const IsingModel& model, const SpinState& state, NodeIndex i);

// Sum of weights of edges whose endpoints carry opposite spins.
double cut_value(const Graph& graph, const SpinState& state);

// cut - (W - H)/2; zero (up to rounding) when `model` was built from `graph`.
double cut_energy_identity_check(const Graph& graph, const IsingModel& model,
                                 const SpinState& state);

}  // namespace pbitsa
