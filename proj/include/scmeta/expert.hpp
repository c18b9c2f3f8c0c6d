#pragma once

#include "scmeta/core.hpp"
#include "scmeta/surrogate.hpp"

namespace scmeta {

// Telemetry for one expert step, enough to evaluate the per-round
// certificates without retaining the expert's internal state.
struct ExpertStepInfo {
  Vec grad_s;       // surrogate gradient at the pre-step iterate
  Vec a_prev_diag;  // preconditioner diagonal before this round (delta*I at t=1)
  Vec a_diag;       // preconditioner diagonal used by this step
  Vec x_before;
  Vec x_after;
  bool projection_active = false;  // step candidate left the set
};

// One grid expert: adaptive diagonal preconditioning on the surrogate
// losses with fixed step scale alpha = 1/(4 eta^2).
class Expert {
 public:
  // Starts at the origin, projected onto C if the origin is infeasible.
  Expert(double eta, int d, double delta, const DecisionSet& C);

  // x_{t+1} = Pi_C^{A_t}(x_t - alpha A_t^{-1} grad s_t(x_t)) with
  // A_t = diag(sum of squared surrogate gradients) + delta I.
  ExpertStepInfo step(const SurrogateContext& ctx, const DecisionSet& C);

  const Vec& iterate() const { return x_; }
  const Vec& grad_sq_sum() const { return v_; }
  double eta() const { return eta_; }
  double alpha() const { return alpha_; }
  double delta() const { return delta_; }

 private:
  double eta_;
  double alpha_;
  double delta_;
  Vec x_;
  Vec v_;
};

// Coordinate-wise growth bound on the preconditioner: every increment of A
// (and at t=1, every entry above the delta floor) stays below 2*alpha*mu.
// Returns the minimum slack 2*alpha*mu - increment over coordinates; the
// bound holds when the slack is >= -1e-9.
double growth_bound_slack(const Vec& a_prev_diag, const Vec& a_diag,
                          double alpha, double mu);

// Per-round descent inequality for the preconditioned projected step:
// <x - x*, grad> <= (||x - x*||_A^2 - ||x' - x*||_A^2)/(2 alpha)
//                   + (alpha/2) <grad, A^{-1} grad>.
// Returns RHS - LHS; nonnegative (up to rounding) for every x* in the set,
// and zero when the projection was inactive.
double descent_inequality_slack(const ExpertStepInfo& info, const Vec& x_star,
                                double alpha);

// One term of the gradient-energy series, <grad, A^{-1} grad>.
double preconditioned_energy(const Vec& grad, const Vec& a_diag);

}  // namespace scmeta
