#include <doctest.h>

#include "scmeta/meta.hpp"
#include "scmeta/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

using namespace scmeta;

namespace {

ProblemConstants constants(double G, double D, long long T, int d) {
  ProblemConstants pc;
  pc.G = G;
  pc.D = D;
  pc.lambda_sc = 1.0;
  pc.T = T;
  pc.d = d;
  return pc;
}

}  // namespace

TEST_CASE("grid size is the smallest k with 4^k >= T") {
  CHECK(build_grid(1.0, 1.0, 1).k == 0);
  CHECK(build_grid(1.0, 1.0, 2).k == 1);
  CHECK(build_grid(1.0, 1.0, 4).k == 1);
  CHECK(build_grid(1.0, 1.0, 5).k == 2);
  CHECK(build_grid(1.0, 1.0, 256).k == 4);
  CHECK(build_grid(1.0, 1.0, 257).k == 5);
  CHECK(build_grid(1.0, 1.0, 1024).k == 5);
  CHECK(build_grid(1.0, 1.0, 4096).k == 6);
}

TEST_CASE("grid for T=256, G=1, D=1 matches the dyadic construction") {
  const GridConfig grid = build_grid(1.0, 1.0, 256);
  REQUIRE(grid.etas.size() == 5);
  CHECK(grid.etas[0] == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(grid.etas[1] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(grid.etas[2] == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(grid.etas[3] == doctest::Approx(0.025).epsilon(1e-15));
  CHECK(grid.etas[4] == doctest::Approx(0.0125).epsilon(1e-15));

  // c = 1 + 1/(k+1) = 1.2; priors c/(3 (i+1)(i+2)).
  CHECK(grid.priors[0] == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(grid.priors[4] == doctest::Approx(1.2 / 90.0).epsilon(1e-15));
}

TEST_CASE("priors telescope to exactly one third") {
  for (long long T : {1LL, 2LL, 7LL, 256LL, 1024LL, 4096LL, 1LL << 20}) {
    const GridConfig grid = build_grid(2.3, 1.7, T);
    double sum = 0.0;
    for (double p : grid.priors) sum += p;
    CHECK(std::abs(sum - 1.0 / 3.0) <= 1e-12);
  }
}

TEST_CASE("grid covers every tuned rate within a factor of two") {
  const GridConfig grid = build_grid(2.3, 1.7, 4096);
  const double lo = grid.etas.back();
  const double hi = grid.etas.front();
  for (int j = 0; j <= 400; ++j) {
    const double target = lo * std::pow(hi / lo, j / 400.0);
    bool covered = false;
    for (double eta : grid.etas) {
      if (eta >= target / 2.0 - 1e-15 && eta <= target * (1.0 + 1e-12)) {
        covered = true;
        break;
      }
    }
    CHECK(covered);
  }
}

TEST_CASE("build_grid validates inputs") {
  CHECK_THROWS_AS(build_grid(0.0, 1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(1.0, -1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(1.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("aggregation regret bound formula") {
  // 2 ln(sqrt(3) (log2(T)/2 + 3)).
  CHECK(aggregation_regret_bound(256) ==
        doctest::Approx(2.0 * std::log(std::sqrt(3.0) * 7.0)).epsilon(1e-15));
  CHECK(aggregation_regret_bound(256) == doctest::Approx(4.9904).epsilon(1e-4));
  CHECK(aggregation_regret_bound(1) ==
        doctest::Approx(3.0 * std::log(3.0)).epsilon(1e-12));
  // Grows with the horizon, slowly.
  CHECK(aggregation_regret_bound(1 << 20) <
        aggregation_regret_bound(1 << 22));
  CHECK_THROWS_AS(aggregation_regret_bound(0), std::invalid_argument);
}

TEST_CASE("log_sum_exp is shift-stable") {
  CHECK(log_sum_exp({0.0, 0.0}) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(log_sum_exp({-1000.0, -1000.0}) ==
        doctest::Approx(-1000.0 + std::log(2.0)).epsilon(1e-12));
  CHECK(log_sum_exp({-1e300}) == doctest::Approx(-1e300));
  CHECK_THROWS_AS(log_sum_exp({}), std::invalid_argument);
}

TEST_CASE("make_meta builds k+1 experts with normalized weights") {
  const DecisionSet C = DecisionSet::ball(Vec::Zero(2), 0.5);
  const MetaState state = make_meta(constants(1.0, 1.0, 1024, 2), C, 1e-8);
  CHECK(state.experts.size() == 6);
  CHECK(state.grid.k == 5);

  double weight_sum = 0.0;
  double prior_sum = 0.0;
  for (size_t i = 0; i < state.experts.size(); ++i) {
    weight_sum += std::exp(state.log_weights[i]);
    prior_sum += std::exp(state.log_priors[i]);
    CHECK(state.experts[i].eta() == state.grid.etas[i]);
  }
  CHECK(weight_sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(prior_sum == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  CHECK_THROWS_AS(make_meta(constants(1.0, 1.0, 1024, 3), C, 1e-8),
                  std::invalid_argument);
}

TEST_CASE("aggregate is the tilted convex combination of expert plays") {
  // Two experts (T=2, G=D=1 gives etas 0.2 and 0.1) driven to the exact
  // corners (1,0) and (0,1) of the box; with equal weights the play is
  // (0.5*0.2*(1,0) + 0.5*0.1*(0,1)) / 0.15 = (2/3, 1/3).
  const DecisionSet C = DecisionSet::box(Vec::Zero(2), Vec::Ones(2));
  MetaState state = make_meta(constants(1.0, 1.0, 2, 2), C, 1e-8);
  REQUIRE(state.experts.size() == 2);

  Vec g0(2), g1(2);
  g0 << -5e-4, 0.0;
  g1 << 0.0, -1e-3;
  // A single tiny-gradient step overshoots the box, so the clamp lands the
  // iterates exactly on the corners.
  state.experts[0].step(SurrogateContext{0.2, 1.0, Vec::Zero(2), g0}, C);
  state.experts[1].step(SurrogateContext{0.1, 1.0, Vec::Zero(2), g1}, C);
  REQUIRE(state.experts[0].iterate()[0] == 1.0);
  REQUIRE(state.experts[0].iterate()[1] == 0.0);
  REQUIRE(state.experts[1].iterate()[1] == 1.0);

  state.log_weights = {std::log(0.5), std::log(0.5)};
  const Vec x = aggregate(state);
  CHECK(x[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("aggregate at the start plays the common origin") {
  const DecisionSet C = DecisionSet::ball(Vec::Zero(3), 1.0);
  const MetaState state = make_meta(constants(1.0, 2.0, 64, 3), C, 1e-8);
  CHECK(aggregate(state).norm() == 0.0);
}

TEST_CASE("update_weights applies the multiplicative rule") {
  const DecisionSet C = DecisionSet::box(Vec::Zero(2), Vec::Ones(2));
  MetaState state = make_meta(constants(1.0, 1.0, 2, 2), C, 1e-8);
  state.log_weights = {std::log(0.5), std::log(0.5)};

  update_weights(state, {0.1, 0.0});
  const double w0 = std::exp(state.log_weights[0]);
  const double w1 = std::exp(state.log_weights[1]);
  // 0.5 e^{-0.1} / (0.5 e^{-0.1} + 0.5).
  const double expected0 =
      0.5 * std::exp(-0.1) / (0.5 * std::exp(-0.1) + 0.5);
  CHECK(w0 == doctest::Approx(expected0).epsilon(1e-14));
  CHECK(w0 == doctest::Approx(0.47502).epsilon(1e-4));
  CHECK(w1 == doctest::Approx(0.52498).epsilon(1e-4));
  CHECK(w0 + w1 == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(update_weights(state, {0.1}), std::invalid_argument);
  CHECK_THROWS_AS(
      update_weights(state,
                     {std::numeric_limits<double>::quiet_NaN(), 0.0}),
      std::runtime_error);
}

TEST_CASE("potential starts at one third and meta rounds never raise it") {
  const double G = 1.0;
  const double D = 2.0;
  const DecisionSet C = DecisionSet::ball(Vec::Zero(2), D / 2.0);
  MetaState state = make_meta(constants(G, D, 128, 2), C, 1e-8);

  const std::vector<double> zeros(state.experts.size(), 0.0);
  double phi_prev = potential(state.grid, zeros);
  CHECK(std::abs(phi_prev - 1.0 / 3.0) <= 1e-12);

  Rng rng(53);
  for (int t = 0; t < 128; ++t) {
    const Vec g = rng.in_ball(2, G);
    const MetaRoundData data = meta_round(state, g, C);
    CHECK(data.phi <= phi_prev + 1e-12);
    CHECK(data.phi == doctest::Approx(std::exp(data.log_phi)).epsilon(1e-14));
    phi_prev = data.phi;

    double weight_sum = 0.0;
    for (double w : data.weights) weight_sum += w;
    CHECK(weight_sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(contains(data.x_meta, C, 1e-9));
  }
  CHECK(phi_prev > 0.0);
}

TEST_CASE("single-expert grid scores a vanishing surrogate at its own play") {
  // With one expert the aggregate equals that expert's iterate, so the
  // surrogate at the expert's own play is zero and the potential is frozen
  // at 1/3.
  const DecisionSet C = DecisionSet::ball(Vec::Zero(1), 1.0);
  MetaState state = make_meta(constants(1.0, 2.0, 1, 1), C, 1e-8);
  REQUIRE(state.experts.size() == 1);

  Rng rng(59);
  for (int t = 0; t < 10; ++t) {
    Vec g(1);
    g << rng.uniform(-1.0, 1.0);
    const MetaRoundData data = meta_round(state, g, C);
    CHECK(std::abs(data.surrogates[0]) <= 1e-15);
    CHECK(std::abs(data.phi - 1.0 / 3.0) <= 1e-12);
    CHECK(data.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("meta_round rejects a mismatched gradient") {
  const DecisionSet C = DecisionSet::ball(Vec::Zero(2), 1.0);
  MetaState state = make_meta(constants(1.0, 2.0, 16, 2), C, 1e-8);
  CHECK_THROWS_AS(meta_round(state, Vec::Zero(3), C), std::invalid_argument);
}
