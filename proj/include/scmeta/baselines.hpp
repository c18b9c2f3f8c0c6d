#pragma once

#include "scmeta/core.hpp"

namespace scmeta {

// Projected online gradient descent for lambda-strongly convex losses, with
// the classical step size 1/(lambda t).
class OgdSc {
 public:
  OgdSc(int d, double lambda, const DecisionSet& C);

  const Vec& iterate() const { return x_; }
  void observe(const Vec& g, const DecisionSet& C);

 private:
  double lambda_;
  long long t_ = 0;
  Vec x_;
};

// Adaptive diagonal preconditioning on the true losses: A_t = diag(v_t) +
// delta I with v_t the running squared-gradient sums, fixed step alpha.
class ScAdagradBaseline {
 public:
  ScAdagradBaseline(int d, double alpha, double delta, const DecisionSet& C);

  const Vec& iterate() const { return x_; }
  void observe(const Vec& g, const DecisionSet& C);

 private:
  double alpha_;
  double delta_;
  Vec x_;
  Vec v_;
};

// Square-root preconditioner variant: A_t = diag(sqrt(v_t)) + delta I with
// step scale tuned to the set diameter.
class AdagradBaseline {
 public:
  AdagradBaseline(int d, double step_scale, double delta,
                  const DecisionSet& C);

  const Vec& iterate() const { return x_; }
  void observe(const Vec& g, const DecisionSet& C);

 private:
  double step_scale_;
  double delta_;
  Vec x_;
  Vec v_;
};

}  // namespace scmeta
