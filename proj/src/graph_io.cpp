#include "pbitsa/graph_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "pbitsa/error.hpp"
#include "pbitsa/format.hpp"

namespace pbitsa {

namespace {

// Splits text into lines and whitespace-delimited tokens, tracking 1-based
// line numbers. Blank lines are skipped.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::vector<std::string_view>& tokens) {
    tokens.clear();
    while (pos_ < text_.size()) {
      std::size_t end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      const std::string_view line = text_.substr(pos_, end - pos_);
      pos_ = end < text_.size() ? end + 1 : end;
      ++line_;
      split(line, tokens);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  std::size_t line() const noexcept { return line_; }

 private:
  static bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
  }

  static void split(std::string_view line, std::vector<std::string_view>& tokens) {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && is_space(line[i])) ++i;
      std::size_t j = i;
      while (j < line.size() && !is_space(line[j])) ++j;
      if (j > i) tokens.push_back(line.substr(i, j - i));
      i = j;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

template <typename T>
T parse_number(std::string_view token, std::size_t line, const char* what) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  T value{};
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || token.empty()) {
    throw ParseError(line, std::string("malformed ") + what + " '" + std::string(token) + "'");
  }
  return value;
}

NodeIndex parse_node(std::string_view token, std::size_t n, std::size_t line) {
  const auto index = parse_number<long long>(token, line, "node index");
  if (index < 1 || static_cast<std::size_t>(index) > n) {
    throw ParseError(line, "node index " + std::string(token) + " outside [1, " +
                               std::to_string(n) + "]");
  }
  return static_cast<NodeIndex>(index - 1);
}

std::size_t parse_count(std::string_view token, std::size_t line, const char* what) {
  const auto value = parse_number<long long>(token, line, what);
  if (value < 0) throw ParseError(line, std::string("negative ") + what);
  return static_cast<std::size_t>(value);
}

}  // namespace

Graph parse_gset(std::string_view text) {
  LineReader reader(text);
  std::vector<std::string_view> tokens;
  if (!reader.next(tokens)) throw ParseError(1, "empty input, expected header 'n m'");
  if (tokens.size() != 2) throw ParseError(reader.line(), "header must be 'n m'");

  Graph graph;
  graph.n = parse_count(tokens[0], reader.line(), "node count");
  const std::size_t m = parse_count(tokens[1], reader.line(), "edge count");
  if (graph.n == 0) throw ParseError(reader.line(), "node count must be positive");
  graph.edges.reserve(m);

  std::set<std::pair<NodeIndex, NodeIndex>> seen;
  while (reader.next(tokens)) {
    const std::size_t line = reader.line();
    if (tokens.size() != 2 && tokens.size() != 3) {
      throw ParseError(line, "expected 'u v [w]'");
    }
    if (graph.edges.size() == m) {
      throw ParseError(line, "more edges than the declared " + std::to_string(m));
    }
    NodeIndex u = parse_node(tokens[0], graph.n, line);
    NodeIndex v = parse_node(tokens[1], graph.n, line);
    const double w = tokens.size() == 3 ? parse_number<double>(tokens[2], line, "weight") : 1.0;
    if (u == v) throw ParseError(line, "self-loop on node " + std::string(tokens[0]));
    if (u > v) std::swap(u, v);
    if (!seen.emplace(u, v).second) {
      throw ParseError(line, "duplicate edge " + std::to_string(u + 1) + " " +
                                 std::to_string(v + 1));
    }
    graph.edges.push_back({u, v, w});
  }
  if (graph.edges.size() != m) {
    throw ParseError(reader.line(), "declared " + std::to_string(m) + " edges, found " +
                                        std::to_string(graph.edges.size()));
  }
  return graph;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) fail(ErrorKind::io, "failed reading '" + path.string() + "'");
  return std::move(buffer).str();
}

Graph read_gset_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_gset(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string(), e.line(), e.detail());
  }
}

std::string write_gset(const Graph& graph) {
  std::string out = std::to_string(graph.n) + " " + std::to_string(graph.edges.size()) + "\n";
  for (const auto& e : graph.edges) {
    out += std::to_string(e.u + 1);
    out += ' ';
    out += std::to_string(e.v + 1);
    out += ' ';
    out += format_double(e.w);
    out += '\n';
  }
  return out;
}

IsingModel build_ising(const Graph& graph) {
  graph.validate();
  std::vector<CouplingTriple> couplings;
  couplings.reserve(graph.edges.size());
  for (const auto& e : graph.edges) couplings.push_back({e.u, e.v, -e.w});
  return IsingModel(graph.n, std::vector<double>(graph.n, 0.0), couplings);
}

IsingModel load_instance(std::string_view text) {
  LineReader reader(text);
  std::vector<std::string_view> tokens;
  if (!reader.next(tokens)) throw ParseError(1, "empty input, expected header 'n'");
  if (tokens.size() != 1) throw ParseError(reader.line(), "header must be 'n'");
  const std::size_t n = parse_count(tokens[0], reader.line(), "node count");
  if (n == 0) throw ParseError(reader.line(), "node count must be positive");

  std::vector<double> bias(n, 0.0);
  std::vector<bool> has_bias(n, false);
  std::vector<CouplingTriple> couplings;
  std::set<std::pair<NodeIndex, NodeIndex>> seen;
  while (reader.next(tokens)) {
    const std::size_t line = reader.line();
    if (tokens[0] == "B") {
      if (tokens.size() != 3) throw ParseError(line, "expected 'B i b'");
      const NodeIndex i = parse_node(tokens[1], n, line);
      if (has_bias[i]) throw ParseError(line, "duplicate bias for node " + std::string(tokens[1]));
      has_bias[i] = true;
      bias[i] = parse_number<double>(tokens[2], line, "bias");
    } else if (tokens[0] == "C") {
      if (tokens.size() != 4) throw ParseError(line, "expected 'C i j v'");
      NodeIndex i = parse_node(tokens[1], n, line);
      NodeIndex j = parse_node(tokens[2], n, line);
      const double v = parse_number<double>(tokens[3], line, "coupling");
      if (i == j) throw ParseError(line, "self-coupling on node " + std::string(tokens[1]));
      if (i > j) std::swap(i, j);
      if (!seen.emplace(i, j).second) {
        throw ParseError(line, "duplicate coupling " + std::to_string(i + 1) + " " +
                                   std::to_string(j + 1));
      }
      couplings.push_back({i, j, v});
    } else {
      throw ParseError(line, "unknown record '" + std::string(tokens[0]) + "'");
    }
  }
  return IsingModel(n, std::move(bias), couplings);
}

IsingModel read_instance_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return load_instance(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string(), e.line(), e.detail());
  }
}

std::string write_instance(const IsingModel& model) {
  std::string out = std::to_string(model.size()) + "\n";
  for (NodeIndex i = 0; i < model.size(); ++i) {
    if (model.bias(i) == 0.0) continue;
    out += "B " + std::to_string(i + 1) + " " + format_double(model.bias(i)) + "\n";
  }
  for (const auto& c : model.upper_couplings()) {
    out += "C " + std::to_string(c.i + 1) + " " + std::to_string(c.j + 1) + " " +
           format_double(c.value) + "\n";
  }
  return out;
}

namespace {

using enum GraphStructure;
using enum WeightSet;

constexpr std::array<BenchmarkEntry, 16> kRegistry{{
    {"G1", 800, 19176, 11624, random, plus_one},
    {"G6", 800, 19176, 2178, random, plus_minus_one},
    {"G11", 800, 1600, 564, toroidal, plus_minus_one},
    {"G14", 800, 4694, 3064, planar, plus_one},
    {"G18", 800, 4694, 992, planar, plus_minus_one},
    {"G22", 2000, 19990, 13359, random, plus_one},
    {"G34", 2000, 4000, 1384, toroidal, plus_minus_one},
    {"G38", 2000, 11779, 7688, planar, plus_one},
    {"G39", 2000, 11778, 2408, planar, plus_minus_one},
    {"G47", 1000, 9990, 6657, random, plus_one},
    {"G48", 3000, 6000, 6000, toroidal, plus_minus_one},
    {"G54", 1000, 5916, 3852, random, plus_one},
    {"G55", 5000, 12498, 10299, random, plus_one},
    {"G56", 5000, 12498, 4017, random, plus_minus_one},
    {"G58", 5000, 29570, 19293, planar, plus_one},
    {"K2000", 2000, 1999000, 33337, full, plus_minus_one},
}};

}  // namespace

std::span<const BenchmarkEntry> benchmark_registry() { return kRegistry; }

const BenchmarkEntry* find_benchmark(std::string_view name) {
  const auto it = std::find_if(kRegistry.begin(), kRegistry.end(),
                               [&](const BenchmarkEntry& e) { return e.name == name; });
  return it == kRegistry.end() ? nullptr : &*it;
}

double best_known(std::string_view name) {
  const auto* entry = find_benchmark(name);
  if (!entry) fail(ErrorKind::lookup, "unknown benchmark '" + std::string(name) + "'");
  return entry->best_known;
}

}  // namespace pbitsa
