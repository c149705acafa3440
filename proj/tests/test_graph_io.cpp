#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "pbitsa/error.hpp"
#include "pbitsa/graph_io.hpp"
#include "support.hpp"

using namespace pbitsa;
using namespace pbitsa::testing;

namespace {

std::size_t parse_error_line(std::string_view text) {
  try {
    parse_gset(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

std::size_t instance_error_line(std::string_view text) {
  try {
    load_instance(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

std::vector<Edge> sorted_edges(std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  return edges;
}

}  // namespace

TEST_CASE("parse minimal G-set files") {
  const auto g = parse_gset("2 1\n1 2 1\n");
  CHECK(g.n == 2);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0] == Edge{0, 1, 1.0});

  const auto mixed = parse_gset("3 2\n1 2 1\n2 3 -1\n");
  CHECK(mixed.n == 3);
  CHECK(mixed.edges == std::vector<Edge>{{0, 1, 1.0}, {1, 2, -1.0}});
}

TEST_CASE("edge endpoints are normalized and whitespace is flexible") {
  const auto g = parse_gset("  4   2 \n\n3\t1  +1\r\n4 2 -1\n\n");
  CHECK(g.edges == std::vector<Edge>{{0, 2, 1.0}, {1, 3, -1.0}});
}

TEST_CASE("missing weight defaults to +1") {
  const auto g = parse_gset("3 2\n1 2\n2 3 -1\n");
  CHECK(g.edges[0].w == 1.0);
  CHECK(g.edges[1].w == -1.0);
}

TEST_CASE("parse errors name the offending line") {
  CHECK(parse_error_line("") == 1);
  CHECK(parse_error_line("2\n") == 1);
  CHECK(parse_error_line("2 1\n1 x 1\n") == 2);
  CHECK(parse_error_line("2 1\n1 3 1\n") == 2);
  CHECK(parse_error_line("2 1\n0 2 1\n") == 2);
  CHECK(parse_error_line("3 2\n1 2 1\n2 1 1\n") == 3);
  CHECK(parse_error_line("3 2\n1 2 1\n3 3 1\n") == 3);
  CHECK(parse_error_line("3 1\n1 2 1\n2 3 1\n") == 3);
  CHECK(parse_error_line("3 3\n1 2 1\n2 3 1\n") == 3);
  CHECK(parse_error_line("3 1\n1 2 1 9\n") == 2);
  CHECK(parse_error_line("3 1\n1 2 abc\n") == 2);

  try {
    parse_gset("2 1\n1 2 z\n");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("build_ising maps weights to negated couplings") {
  const auto plus = build_ising(Graph{2, {{0, 1, 1.0}}});
  CHECK(plus.bias(0) == 0.0);
  CHECK(plus.bias(1) == 0.0);
  CHECK(plus.coupling(0, 1) == -1.0);
  CHECK(plus.coupling(1, 0) == -1.0);

  const auto minus = build_ising(Graph{2, {{0, 1, -1.0}}});
  CHECK(minus.coupling(0, 1) == 1.0);

  const auto g = random_graph(50, 200, 9, true);
  const auto model = build_ising(g);
  CHECK(model.size() == 50);
  CHECK(model.coupling_count() == 200);
  CHECK_FALSE(model.has_bias());
  for (const auto& e : g.edges) CHECK(model.coupling(e.u, e.v) == -e.w);
}

TEST_CASE("load direct instances") {
  const auto one = load_instance("1\nB 1 0.5\n");
  CHECK(one.size() == 1);
  CHECK(one.bias(0) == 0.5);
  CHECK(one.coupling_count() == 0);

  const auto two = load_instance("2\nC 1 2 -1\n");
  CHECK(two.coupling(0, 1) == -1.0);
  CHECK(two.coupling(1, 0) == -1.0);
  CHECK(two.bias(0) == 0.0);
  CHECK(two.bias(1) == 0.0);
}

TEST_CASE("instance errors") {
  CHECK(instance_error_line("") == 1);
  CHECK(instance_error_line("2 3\n") == 1);
  CHECK(instance_error_line("2\nC 1 2 -1\nC 2 1 1\n") == 3);
  CHECK(instance_error_line("2\nB 1 1\nB 1 2\n") == 3);
  CHECK(instance_error_line("2\nC 1 1 1\n") == 2);
  CHECK(instance_error_line("2\nC 1 3 1\n") == 2);
  CHECK(instance_error_line("2\nX 1 2\n") == 2);
  CHECK(instance_error_line("2\nB 1\n") == 2);
  CHECK(instance_error_line("2\nC 1 2 q\n") == 2);
}

TEST_CASE("instance round trip is the identity") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto model = random_model(25, 0.3, seed, seed % 2 == 0);
    CHECK(load_instance(write_instance(model)) == model);
  }
  const auto from_graph = build_ising(random_graph(40, 100, 3, true));
  CHECK(load_instance(write_instance(from_graph)) == from_graph);
}

TEST_CASE("G-set round trip is the identity up to edge order") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = random_graph(30, 60, seed, seed % 2 == 1);
    std::reverse(g.edges.begin(), g.edges.end());
    const auto back = parse_gset(write_gset(g));
    CHECK(back.n == g.n);
    CHECK(sorted_edges(back.edges) == sorted_edges(g.edges));
  }
  Graph fractional{3, {{0, 1, 0.1}, {1, 2, -2.5e-7}}};
  CHECK(parse_gset(write_gset(fractional)).edges == fractional.edges);
}

TEST_CASE("file helpers report io and parse errors") {
  const auto dir = std::filesystem::temp_directory_path() / "pbitsa_graph_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "bad.txt";
  {
    std::ofstream out(path);
    out << "3 1\n1 2 1\n2 2 1\n";
  }
  try {
    read_gset_file(path);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("bad.txt:3:") != std::string::npos);
  }
  try {
    read_gset_file(dir / "missing.txt");
    FAIL("expected an io error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::io);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("registry values") {
  CHECK(best_known("G1") == 11624);
  CHECK(best_known("K2000") == 33337);
  CHECK(best_known("G48") == 6000);
  CHECK_THROWS_AS(best_known("G999"), Error);
  try {
    best_known("nope");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::lookup);
  }

  CHECK(benchmark_registry().size() == 16);
  for (const auto& entry : benchmark_registry()) {
    CHECK(entry.best_known > 0);
    CHECK(find_benchmark(entry.name) == &entry);
  }
  CHECK(find_benchmark("g1") == nullptr);

  const auto* g1 = find_benchmark("G1");
  REQUIRE(g1 != nullptr);
  CHECK(g1->n_nodes == 800);
  CHECK(g1->n_edges == 19176);
  CHECK(g1->weights == WeightSet::plus_one);
  const auto* g11 = find_benchmark("G11");
  REQUIRE(g11 != nullptr);
  CHECK(g11->n_edges == 1600);
  CHECK(g11->structure == GraphStructure::toroidal);
}

TEST_CASE("registered benchmark files match the registry") {
  std::size_t checked = 0;
  for (const auto& entry : benchmark_registry()) {
    const auto path = find_benchmark_file(std::string(entry.name));
    if (!path) continue;
    ++checked;
    CAPTURE(entry.name);
    const auto g = read_gset_file(*path);
    CHECK(g.n == entry.n_nodes);
    CHECK(g.edges.size() == entry.n_edges);
  }
  if (checked == 0) MESSAGE("no benchmark files under " << benchmark_dir().string());
}
