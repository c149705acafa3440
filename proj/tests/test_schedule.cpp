#include <cmath>

#include "doctest.h"
#include "pbitsa/error.hpp"
#include "pbitsa/graph_io.hpp"
#include "pbitsa/schedule.hpp"
#include "support.hpp"

using namespace pbitsa;
using namespace pbitsa::testing;

namespace {

// Variance of the materialized dense row, two-pass.
double dense_row_scale(const IsingModel& model, NodeIndex i) {
  const auto dense = dense_couplings(model);
  std::vector<double> row;
  for (NodeIndex j = 0; j < model.size(); ++j) {
    if (j != i) row.push_back(dense[i][j]);
  }
  double mean = 0.0;
  for (double v : row) mean += v;
  mean /= static_cast<double>(row.size());
  double var = 0.0;
  for (double v : row) var += (v - mean) * (v - mean);
  var /= static_cast<double>(row.size());
  return std::sqrt(static_cast<double>(row.size()) * var);
}

IsingModel scaled(const IsingModel& model, double c) {
  auto couplings = model.upper_couplings();
  for (auto& t : couplings) t.value *= c;
  return IsingModel(model.size(), {model.biases().begin(), model.biases().end()}, couplings);
}

}  // namespace

TEST_CASE("spin scale of a single-element row is zero") {
  const auto model = build_ising(Graph{2, {{0, 1, 1.0}}});
  CHECK(spin_scale(model, 0) == 0.0);
  CHECK(spin_scale(model, 1) == 0.0);
  CHECK_THROWS_AS(spin_scale(IsingModel(1, {}, {}), 0), Error);
  CHECK_THROWS_AS(spin_scale(model, 2), Error);
}

TEST_CASE("spin scale matches the dense-row variance") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto model = random_model(30, 0.15 + 0.1 * static_cast<double>(seed), seed);
    for (NodeIndex i = 0; i < 30; ++i) {
      CHECK(rel_close(spin_scale(model, i), dense_row_scale(model, i), 1e-12));
    }
  }
  const auto g = random_graph(200, 1000, 4, false);
  const auto model = build_ising(g);
  const auto scales = spin_scales(model);
  for (NodeIndex i = 0; i < 200; i += 17) CHECK(rel_close(scales[i], dense_row_scale(model, i), 1e-12));
}

TEST_CASE("derive schedule endpoints and ratio") {
  const auto model = build_ising(random_graph(100, 500, 1, true));
  const auto s = derive_schedule(model, 0.1, 10.0, 1000);
  double mean = 0.0;
  for (double v : spin_scales(model)) mean += v;
  mean /= 100.0;
  CHECK(rel_close(s.mean_scale, mean, 1e-12));
  CHECK(rel_close(s.i0_min, 0.1 / mean, 1e-12));
  CHECK(rel_close(s.i0_max, 10.0 / mean, 1e-12));
  CHECK(rel_close(s.beta, std::pow(s.i0_min / s.i0_max, 1.0 / 999.0), 1e-12));
  CHECK(s.i0_min < s.i0_max);
  CHECK(s.beta > 0.0);
  CHECK(s.beta < 1.0);
  CHECK(s.cycles == 1000);
  CHECK(i0_at(s, 0) == s.i0_min);
  CHECK(rel_close(i0_at(s, 999), s.i0_max, 1e-9));
}

TEST_CASE("equal gamma and delta give a constant schedule") {
  const auto s = derive_schedule(random_model(20, 0.5, 2), 1.0, 1.0, 50);
  CHECK(s.i0_min == s.i0_max);
  CHECK(s.beta == 1.0);
  for (std::size_t t = 0; t < 50; ++t) CHECK(i0_at(s, t) == s.i0_min);
}

TEST_CASE("degenerate and invalid configurations") {
  try {
    derive_schedule(IsingModel(5, {1, 1, 1, 1, 1}, {}));
    FAIL("expected degenerate-model error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::degenerate_model);
  }
  const auto model = random_model(10, 0.5, 3);
  CHECK_THROWS_AS(derive_schedule(model, 0.1, 10.0, 1), Error);
  CHECK_THROWS_AS(derive_schedule(model, 0.0, 10.0, 10), Error);
  CHECK_THROWS_AS(derive_schedule(model, 10.0, 0.1, 10), Error);
  const auto s = derive_schedule(model, 0.1, 10.0, 10);
  CHECK_THROWS_AS(i0_at(s, 10), Error);
}

TEST_CASE("geometric ramp") {
  const auto s = derive_schedule(random_model(40, 0.3, 5));
  for (std::size_t t = 0; t + 1 < s.cycles; ++t) {
    CHECK(rel_close(i0_at(s, t + 1) / i0_at(s, t), 1.0 / s.beta, 1e-12));
  }
}

TEST_CASE("closed form agrees with the iterated recurrence") {
  // A G1-shaped stand-in; the recurrence I0 <- I0 / beta is iterated 500 times.
  const auto s = derive_schedule(build_ising(random_graph(800, 19176, 1, false)));
  double iterated = s.i0_min;
  for (int t = 0; t < 500; ++t) iterated /= s.beta;
  CHECK(rel_close(i0_at(s, 500), iterated, 1e-9));
  CHECK(rel_close(i0_at(s, 500), s.i0_min * std::pow(s.beta, -500.0), 1e-12));
}

TEST_CASE("rescaled schedules keep the endpoints") {
  const auto s = derive_schedule(random_model(40, 0.3, 6));
  const auto short_s = rescale_cycles(s, 100);
  CHECK(short_s.cycles == 100);
  CHECK(short_s.i0_min == s.i0_min);
  CHECK(short_s.i0_max == s.i0_max);
  CHECK(rel_close(short_s.beta, std::pow(s.i0_min / s.i0_max, 1.0 / 99.0), 1e-12));
  CHECK(rel_close(i0_at(short_s, 99), s.i0_max, 1e-9));
}

TEST_CASE("scale covariance") {
  const auto model = random_model(30, 0.4, 7, false);
  const auto base = derive_schedule(model);
  for (double c : {0.25, 3.0, 17.5}) {
    const auto sc = derive_schedule(scaled(model, c));
    for (NodeIndex i = 0; i < 30; i += 3) {
      CHECK(rel_close(spin_scale(scaled(model, c), i), c * spin_scale(model, i), 1e-12));
    }
    CHECK(rel_close(sc.beta, base.beta, 1e-12));
    for (std::size_t t : {0u, 250u, 999u}) {
      CHECK(rel_close(i0_at(sc, t) * sc.mean_scale, i0_at(base, t) * base.mean_scale, 1e-9));
      CHECK(rel_close(i0_at(sc, t) * c, i0_at(base, t), 1e-9));
    }
  }
}

TEST_CASE("classic SA temperature") {
  const auto sa = make_sa_schedule(1000);
  CHECK(sa_temp_at(sa, 0) == 1.0);
  CHECK(rel_close(sa_temp_at(sa, 999), 1.0 / 1000.0, 1e-9));

  double inv = 1.0 / sa.t_init;
  inv += sa.delta_it();
  CHECK(rel_close(sa_temp_at(sa, 1), 1.0 / inv, 1e-12));
  // delta_it = (1000 - 1) / (1000 - 1) = 1, so T(1) = 1/2.
  CHECK(sa.delta_it() == 1.0);
  CHECK(sa_temp_at(sa, 1) == 0.5);

  for (std::size_t t = 0; t + 1 < 1000; ++t) CHECK(sa_temp_at(sa, t + 1) < sa_temp_at(sa, t));
  for (std::size_t t = 0; t < 1000; t += 37) {
    CHECK(std::abs(1.0 / sa_temp_at(sa, t) - (1.0 + static_cast<double>(t) * sa.delta_it())) < 1e-9);
  }
  CHECK_THROWS_AS(sa_temp_at(sa, 1000), Error);
  CHECK_THROWS_AS(make_sa_schedule(1), Error);
}
