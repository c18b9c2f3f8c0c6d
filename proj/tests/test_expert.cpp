#include <doctest.h>

#include "scmeta/expert.hpp"
#include "scmeta/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace scmeta;

namespace {

Vec vec1(double a) {
  Vec v(1);
  v << a;
  return v;
}

// Random surrogate round on a centered ball of radius D/2 with gradient
// bound G: the exact regime the meta level feeds its experts.
SurrogateContext random_ctx(Rng& rng, int d, double eta, double G, double D) {
  return SurrogateContext{eta, G, rng.in_ball(d, D / 2.0), rng.in_ball(d, G)};
}

}  // namespace

TEST_CASE("expert step scale is 1/(4 eta^2)") {
  const DecisionSet C = DecisionSet::ball(Vec::Zero(2), 1.0);
  CHECK(Expert(0.1, 2, 1e-8, C).alpha() == doctest::Approx(25.0));
  CHECK(Expert(0.2, 2, 1e-8, C).alpha() == doctest::Approx(6.25));
}

TEST_CASE("expert construction validates and projects the start point") {
  const DecisionSet C = DecisionSet::ball(Vec::Zero(2), 1.0);
  CHECK_THROWS_AS(Expert(0.0, 2, 1e-8, C), std::invalid_argument);
  CHECK_THROWS_AS(Expert(-0.1, 2, 1e-8, C), std::invalid_argument);
  CHECK_THROWS_AS(Expert(0.1, 2, 0.0, C), std::invalid_argument);
  CHECK_THROWS_AS(Expert(0.1, 3, 1e-8, C), std::invalid_argument);

  CHECK(Expert(0.1, 2, 1e-8, C).iterate().norm() == 0.0);

  // Infeasible origin: start at its projection onto the set.
  Vec center(2);
  center << 2.0, 0.0;
  const DecisionSet off = DecisionSet::ball(center, 1.0);
  const Vec x0 = Expert(0.1, 2, 1e-8, off).iterate();
  CHECK(x0[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(x0[1] == 0.0);
}

TEST_CASE("expert hand step in one dimension") {
  // eta=0.1, G=1, delta=1e-2, box [-1,1], start x=0, x_meta=0, g=1:
  // grad s = 0.1, v = 0.01, A = 0.02, candidate = -25 * (0.1/0.02) = -125,
  // clamped to the box at -1.
  const DecisionSet C = DecisionSet::box(vec1(-1.0), vec1(1.0));
  Expert e(0.1, 1, 1e-2, C);
  const SurrogateContext ctx{0.1, 1.0, vec1(0.0), vec1(1.0)};
  const ExpertStepInfo info = e.step(ctx, C);

  CHECK(info.grad_s[0] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(info.a_prev_diag[0] == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(info.a_diag[0] == doctest::Approx(0.02).epsilon(1e-15));
  CHECK(info.x_before[0] == 0.0);
  CHECK(info.x_after[0] == -1.0);
  CHECK(info.projection_active);
  CHECK(e.iterate()[0] == -1.0);
  CHECK(e.grad_sq_sum()[0] == doctest::Approx(0.01).epsilon(1e-15));

  // The realized energy term: grad^2 / A = 0.01 / 0.02.
  CHECK(preconditioned_energy(info.grad_s, info.a_diag) ==
        doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("interior step is the exact preconditioned gradient step") {
  // Large delta keeps the candidate inside the ball, so no projection.
  const DecisionSet C = DecisionSet::ball(Vec::Zero(1), 1.0);
  Expert e(0.1, 1, 100.0, C);
  const SurrogateContext ctx{0.1, 1.0, vec1(0.0), vec1(1.0)};
  const ExpertStepInfo info = e.step(ctx, C);
  CHECK_FALSE(info.projection_active);
  // x' = 0 - 25 * 0.1 / (0.01 + 100).
  CHECK(info.x_after[0] ==
        doctest::Approx(-2.5 / 100.01).epsilon(1e-14));
}

TEST_CASE("growth bound slack discriminates the step scale") {
  // An increment of exactly G^2 saturates the bound with the canonical
  // alpha = 1/(4 eta^2) (cap 2 alpha mu = G^2) and violates it with the
  // halved scale alpha = 1/(8 eta^2) (cap G^2/2).
  const double eta = 0.5;
  const double G = 1.0;
  const double mu = surrogate_modulus(eta, G);
  const Vec a_prev = vec1(1e-2);
  const Vec a = vec1(1e-2 + G * G);

  const double good = growth_bound_slack(a_prev, a, 1.0 / (4.0 * eta * eta), mu);
  CHECK(good == doctest::Approx(0.0));
  CHECK(good >= -1e-9);

  const double bad = growth_bound_slack(a_prev, a, 1.0 / (8.0 * eta * eta), mu);
  CHECK(bad < 0.0);
  CHECK(bad == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("growth bound holds on every round of a random run") {
  const double G = 1.5;
  const double D = 2.0;
  const DecisionSet C = DecisionSet::ball(Vec::Zero(3), D / 2.0);
  Rng rng(37);
  for (double eta : {1.0 / (5.0 * G * D), 0.5 / (5.0 * G * D)}) {
    Expert e(eta, 3, 1e-8, C);
    const double mu = surrogate_modulus(eta, G);
    for (int t = 0; t < 300; ++t) {
      const ExpertStepInfo info = e.step(random_ctx(rng, 3, eta, G, D), C);
      CHECK(growth_bound_slack(info.a_prev_diag, info.a_diag, e.alpha(), mu) >=
            -1e-9);
    }
    // First-round form: A_1 <= 2 alpha mu + delta, i.e. every diagonal
    // entry stays below G^2 + delta. Covered by seeding a_prev with delta.
    CHECK(e.grad_sq_sum().maxCoeff() <= 300.0 * G * G);
  }
}

TEST_CASE("descent inequality slack is zero for a null gradient") {
  ExpertStepInfo info;
  info.grad_s = Vec::Zero(2);
  info.a_prev_diag = Vec::Ones(2);
  info.a_diag = Vec::Ones(2);
  info.x_before = Vec::Zero(2);
  info.x_after = Vec::Zero(2);
  Vec x_star(2);
  x_star << 0.3, -0.2;
  CHECK(descent_inequality_slack(info, x_star, 25.0) == 0.0);
}

TEST_CASE("descent inequality holds on random rounds") {
  const double G = 1.0;
  const double D = 2.0;
  const double eta = 1.0 / (5.0 * G * D);
  const DecisionSet C = DecisionSet::ball(Vec::Zero(2), D / 2.0);
  Rng rng(41);
  Expert e(eta, 2, 1e-8, C);
  int interior_rounds = 0;
  for (int t = 0; t < 1000; ++t) {
    const ExpertStepInfo info = e.step(random_ctx(rng, 2, eta, G, D), C);
    const Vec x_star = rng.in_ball(2, D / 2.0);
    const double slack = descent_inequality_slack(info, x_star, e.alpha());
    CHECK(slack >= -1e-9);
    if (!info.projection_active) {
      // Unconstrained steps make the inequality an identity.
      CHECK(std::abs(slack) <= 1e-10);
      ++interior_rounds;
    }
  }
  // The run must exercise both branches to mean anything.
  CHECK(interior_rounds > 0);
  CHECK(interior_rounds < 1000);
}

TEST_CASE("preconditioned energy telescopes into the log bound") {
  // Sum_t <grad, A_t^{-1} grad> <= sum_i log((v_T,i + delta)/delta):
  // the concavity of log turns each increment into a log difference.
  const double G = 2.0;
  const double D = 1.0;
  const double delta = 1e-6;
  const DecisionSet C = DecisionSet::ball(Vec::Zero(4), D / 2.0);
  Rng rng(43);
  for (double eta : {1.0 / (5.0 * G * D), 0.25 / (5.0 * G * D)}) {
    Expert e(eta, 4, delta, C);
    double energy = 0.0;
    for (int t = 0; t < 500; ++t) {
      const ExpertStepInfo info = e.step(random_ctx(rng, 4, eta, G, D), C);
      energy += preconditioned_energy(info.grad_s, info.a_diag);
    }
    double log_cap = 0.0;
    for (int i = 0; i < 4; ++i) {
      log_cap += std::log((e.grad_sq_sum()[i] + delta) / delta);
    }
    CHECK(energy <= log_cap + 1e-6);
    CHECK(energy > 0.0);
  }
}

TEST_CASE("preconditioned energy hand value and validation") {
  Vec g(2), a(2);
  g << 1.0, 2.0;
  a << 1.0, 4.0;
  CHECK(preconditioned_energy(g, a) == doctest::Approx(2.0).epsilon(1e-15));
  Vec bad(2);
  bad << 1.0, 0.0;
  CHECK_THROWS_AS(preconditioned_energy(g, bad), std::invalid_argument);
  CHECK_THROWS_AS(preconditioned_energy(Vec::Ones(3), a),
                  std::invalid_argument);
}

TEST_CASE("expert iterates stay feasible forever") {
  const double G = 1.0;
  const double D = 2.0;
  const double eta = 1.0 / (5.0 * G * D);
  const DecisionSet C = DecisionSet::ball(Vec::Zero(2), 1.0);
  Rng rng(47);
  Expert e(eta, 2, 1e-8, C);
  for (int t = 0; t < 500; ++t) {
    e.step(random_ctx(rng, 2, eta, G, D), C);
    CHECK(contains(e.iterate(), C, 1e-9));
  }
}
