#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "pbitsa/error.hpp"
#include "pbitsa/graph_io.hpp"
#include "pbitsa/tuner.hpp"
#include "support.hpp"

using namespace pbitsa;
using namespace pbitsa::testing;

namespace {

struct Fixture {
  Graph graph = random_graph(80, 400, 12, false);
  IsingModel model = build_ising(graph);
  TuneOptions options = [] {
    TuneOptions o;
    o.tuning_cycles = 60;
    o.tuning_trials = 3;
    o.seed = 9;
    o.threads = 2;
    return o;
  }();
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "a single candidate is returned") {
  const std::vector<std::size_t> alpha{3};
  const auto r = tune_alpha(model, graph, alpha, options);
  CHECK(r.best_param == 3.0);
  CHECK(r.scores.size() == 1);
  CHECK(r.algorithm == Algorithm::tapsa);
  CHECK(r.tuning_cycles == 60);
  CHECK(r.tuning_trials == 3);
  CHECK(r.schedule.cycles == 60);

  const std::vector<double> p{0.4};
  CHECK(tune_p(model, graph, p, options).best_param == 0.4);
}

TEST_CASE_FIXTURE(Fixture, "duplicates score identically and ties go to the smaller value") {
  const std::vector<std::size_t> alpha{4, 2, 4, 2};
  const auto r = tune_alpha(model, graph, alpha, options);
  CHECK(r.scores[0] == r.scores[2]);
  CHECK(r.scores[1] == r.scores[3]);
  const double best = *std::max_element(r.scores.begin(), r.scores.end());
  double expected = 1e9;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    if (r.scores[k] == best) expected = std::min(expected, static_cast<double>(alpha[k]));
  }
  CHECK(r.best_param == expected);

  const std::vector<double> same{0.3, 0.3};
  const auto tie = tune_p(model, graph, same, options);
  CHECK(tie.scores[0] == tie.scores[1]);
  CHECK(tie.best_param == 0.3);
}

TEST_CASE_FIXTURE(Fixture, "scores are the mean cut of independent runs") {
  const std::vector<double> p{0.2, 0.6};
  const auto r = tune_p(model, graph, p, options);
  for (std::size_t k = 0; k < p.size(); ++k) {
    double sum = 0.0;
    for (std::size_t trial = 0; trial < options.tuning_trials; ++trial) {
      EngineConfig cfg;
      cfg.algorithm = Algorithm::spsa;
      cfg.p_stall = p[k];
      cfg.cycles = options.tuning_cycles;
      cfg.schedule = r.schedule;
      cfg.seed = derive_seed(options.seed, trial);
      sum += *run(model, &graph, cfg).final_cut;
    }
    CHECK(r.scores[k] == doctest::Approx(sum / static_cast<double>(options.tuning_trials)));
  }
  const auto full = derive_schedule(model);
  CHECK(r.schedule.i0_min == full.i0_min);
  CHECK(r.schedule.i0_max == full.i0_max);
}

TEST_CASE_FIXTURE(Fixture, "tuning is deterministic and independent of thread count") {
  const std::vector<std::size_t> alpha{1, 2, 3, 4, 5};
  const auto a = tune_alpha(model, graph, alpha, options);
  auto single = options;
  single.threads = 1;
  const auto b = tune_alpha(model, graph, alpha, single);
  CHECK(a.scores == b.scores);
  CHECK(a.best_param == b.best_param);
  CHECK(tune_result_json(a) == tune_result_json(b));
}

TEST_CASE_FIXTURE(Fixture, "invalid candidates") {
  const auto expect_config = [](auto&& fn) {
    try {
      fn();
      FAIL("expected config error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::config);
    }
  };
  expect_config([&] { tune_alpha(model, graph, std::vector<std::size_t>{}, options); });
  expect_config([&] { tune_p(model, graph, std::vector<double>{}, options); });
  expect_config([&] { tune_alpha(model, graph, std::vector<std::size_t>{0, 1}, options); });
  expect_config([&] { tune_p(model, graph, std::vector<double>{0.5, 1.0}, options); });
}

TEST_CASE("grid parsing") {
  CHECK(parse_grid("1:10") == std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  CHECK(parse_grid("2,4,8") == std::vector<double>{2, 4, 8});
  const auto p = parse_grid("0:0.9:0.1");
  REQUIRE(p.size() == 10);
  CHECK(p[3] == 0.3);
  CHECK(p[6] == 0.6);
  CHECK(p[9] == 0.9);
  CHECK(parse_grid("1:3,7") == std::vector<double>{1, 2, 3, 7});
  CHECK_THROWS_AS(parse_grid(""), Error);
  CHECK_THROWS_AS(parse_grid("a:b"), Error);
  CHECK_THROWS_AS(parse_grid("5:1"), Error);
  CHECK_THROWS_AS(parse_grid("0:1:0"), Error);
}

TEST_CASE_FIXTURE(Fixture, "tune result JSON") {
  const std::vector<std::size_t> alpha{1, 2};
  const auto r = tune_alpha(model, graph, alpha, options);
  const auto j = nlohmann::json::parse(tune_result_json(r));
  CHECK(j["algorithm"] == "tapsa");
  CHECK(j["best_param"].is_number_integer());
  CHECK(j["best_param"].get<double>() == r.best_param);
  CHECK(j["candidates"].size() == 2);
}
