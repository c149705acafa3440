#pragma once

// Test-only helpers: random instances, stand-in benchmark graphs and naive
// oracles that do not share code paths with the library.

#include <algorithm>
#include <cmath>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "pbitsa/ising.hpp"

namespace pbitsa::testing {

inline std::vector<std::vector<double>> dense_couplings(const IsingModel& model) {
  const std::size_t n = model.size();
  std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
  for (const auto& c : model.upper_couplings()) {
    dense[c.i][c.j] = c.value;
    dense[c.j][c.i] = c.value;
  }
  return dense;
}

// Term-by-term evaluation of H = -sum h s - sum_{i<j} J s s over a dense J.
inline double naive_energy(const std::vector<double>& h,
                           const std::vector<std::vector<double>>& J,
                           const std::vector<int>& s) {
  double e = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    e -= h[i] * s[i];
    for (std::size_t j = i + 1; j < s.size(); ++j) e -= J[i][j] * s[i] * s[j];
  }
  return e;
}

inline std::vector<int> as_ints(const SpinState& state) {
  return {state.spins().begin(), state.spins().end()};
}

inline IsingModel random_model(std::size_t n, double density, std::uint64_t seed,
                               bool with_bias = true, bool integer_weights = false) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> real(-2.0, 2.0);
  std::uniform_int_distribution<int> sign(0, 1);
  std::bernoulli_distribution keep(density);
  std::vector<double> h(n, 0.0);
  if (with_bias) {
    for (auto& b : h) b = integer_weights ? (sign(rng) ? 1.0 : -1.0) : real(rng);
  }
  std::vector<CouplingTriple> couplings;
  for (NodeIndex i = 0; i < n; ++i) {
    for (NodeIndex j = i + 1; j < n; ++j) {
      if (!keep(rng)) continue;
      const double v = integer_weights ? (sign(rng) ? 1.0 : -1.0) : real(rng);
      couplings.push_back({i, j, v});
    }
  }
  return IsingModel(n, h, couplings);
}

inline SpinState random_state(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Spin> s(n);
  for (auto& x : s) x = (rng() & 1) ? Spin{1} : Spin{-1};
  return SpinState(std::move(s));
}

inline SpinState state_from_bits(std::size_t n, std::uint64_t bits) {
  std::vector<Spin> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = (bits >> i) & 1 ? Spin{1} : Spin{-1};
  return SpinState(std::move(s));
}

// Uniform random graph with exactly m distinct edges.
inline Graph random_graph(std::size_t n, std::size_t m, std::uint64_t seed, bool signed_weights) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<NodeIndex> node(0, static_cast<NodeIndex>(n - 1));
  std::set<std::pair<NodeIndex, NodeIndex>> edges;
  while (edges.size() < m) {
    NodeIndex u = node(rng);
    NodeIndex v = node(rng);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    edges.emplace(u, v);
  }
  Graph g;
  g.n = n;
  for (const auto& [u, v] : edges) {
    const double w = signed_weights ? ((rng() & 1) ? 1.0 : -1.0) : 1.0;
    g.edges.push_back({u, v, w});
  }
  return g;
}

// rows x cols torus, every node with degree 4, +/-1 weights.
inline Graph torus_graph(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::set<std::pair<NodeIndex, NodeIndex>> edges;
  auto id = [&](std::size_t r, std::size_t c) { return static_cast<NodeIndex>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      for (auto [a, b] : {std::pair{id(r, c), id(r, (c + 1) % cols)},
                          std::pair{id(r, c), id((r + 1) % rows, c)}}) {
        edges.emplace(std::min(a, b), std::max(a, b));
      }
    }
  }
  Graph g;
  g.n = rows * cols;
  for (const auto& [u, v] : edges) g.edges.push_back({u, v, (rng() & 1) ? 1.0 : -1.0});
  return g;
}

inline Graph complete_graph(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Graph g;
  g.n = n;
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v = u + 1; v < n; ++v) g.edges.push_back({u, v, (rng() & 1) ? 1.0 : -1.0});
  }
  return g;
}

inline bool rel_close(double a, double b, double tol) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tol * scale;
}

// Benchmark files are looked up in $PBITSA_BENCHMARK_DIR, falling back to the
// directory configured at build time.
inline std::filesystem::path benchmark_dir() {
  if (const char* env = std::getenv("PBITSA_BENCHMARK_DIR"); env && *env) return env;
#ifdef PBITSA_BENCHMARK_DIR
  return PBITSA_BENCHMARK_DIR;
#else
  return "benchmarks";
#endif
}

inline std::optional<std::filesystem::path> find_benchmark_file(const std::string& name) {
  std::string lower = name;
  for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const auto dir = benchmark_dir();
  for (const auto& stem : {name, lower}) {
    for (const char* ext : {"", ".txt", ".gset", ".rud"}) {
      const auto candidate = dir / (stem + ext);
      std::error_code ec;
      if (std::filesystem::is_regular_file(candidate, ec)) return candidate;
    }
  }
  return std::nullopt;
}

}  // namespace pbitsa::testing
