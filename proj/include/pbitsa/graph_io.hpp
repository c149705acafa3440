#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "pbitsa/ising.hpp"

namespace pbitsa {

// G-set edge list: first line "n m", then m lines "u v [w]" with 1-based
// node indices. A missing weight means +1.
Graph parse_gset(std::string_view text);
Graph read_gset_file(const std::filesystem::path& path);
std::string write_gset(const Graph& graph);

// MAX-CUT encoding: h = 0, J_uv = -w_uv, so minimizing H maximizes the cut.
IsingModel build_ising(const Graph& graph);

// Direct h/J instance: header "n", then "B i b" bias lines and "C i j v"
// coupling lines, 1-based.
IsingModel load_instance(std::string_view text);
IsingModel read_instance_file(const std::filesystem::path& path);
std::string write_instance(const IsingModel& model);

std::string read_text_file(const std::filesystem::path& path);

enum class GraphStructure { random, toroidal, planar, full };
enum class WeightSet { plus_one, plus_minus_one };

struct BenchmarkEntry {
  std::string_view name;
  std::size_t n_nodes;
  std::size_t n_edges;
  double best_known;
  GraphStructure structure;
  WeightSet weights;
};

std::span<const BenchmarkEntry> benchmark_registry();

// nullptr when the name is not registered. Matching is case-sensitive.
const BenchmarkEntry* find_benchmark(std::string_view name);

// Throws ErrorKind::lookup for unknown names.
double best_known(std::string_view name);

}  // namespace pbitsa
