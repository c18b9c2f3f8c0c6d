#pragma once

#include "scmeta/environments.hpp"
#include "scmeta/experiment_config.hpp"
#include "scmeta/meta.hpp"

#include <string>
#include <vector>

namespace scmeta {

// Everything observed in one round: the play and its losses, the per-expert
// surrogate data, the potential, and the per-round certificate slacks.
struct RoundRecord {
  long long t = 0;
  Vec x;
  double loss = 0.0;
  double loss_star = 0.0;
  double regret = 0.0;  // cumulative
  std::vector<double> weights;
  std::vector<double> surrogates;
  double phi = 0.0;
  double log_phi = 0.0;
  double growth_slack = 0.0;                  // min over experts (L2)
  std::vector<double> descent_slacks;         // per expert (L4)
  std::vector<uint8_t> projection_inactive;   // per expert
  std::vector<Vec> expert_before;
  std::vector<Vec> expert_after;
  double v_ts = 0.0;  // cumulative sum_t G^2 ||x_t - x*||^2
};

// Per-expert certificate data. E_T is the certified bound on the expert's
// surrogate regret (L5); A_T adds the aggregation bound (L3); the final
// bound multiplies A_T by (G^2/lambda + 10 G D).
struct ExpertBound {
  double eta = 0.0;
  double alpha = 0.0;
  double E_T = 0.0;
  double A_T = 0.0;
  double energy_lhs = 0.0;   // sum_t <grad s, A_t^{-1} grad s>   (L1 lhs)
  double energy_rhs = 0.0;   // sum_i log((v_T,i + delta)/delta)  (L1 rhs)
  double meta_regret = 0.0;    // -sum_t s_t(x_t^eta), certified by L3
  double expert_regret = 0.0;  // sum_t [s_t(x_t^eta) - s_t(x*)], by L5
  double final_bound = 0.0;
};

struct CertificateOutcome {
  bool energy = false;        // L1
  bool growth = false;        // L2
  bool aggregation = false;   // L3
  bool descent = false;       // L4
  bool expert_bound = false;  // L5
  bool potential = false;     // Phi(0) = 1/3 and non-increasing
  bool total_regret = false;  // R_T <= min final bound

  bool all() const {
    return energy && growth && aggregation && descent && expert_bound &&
           potential && total_regret;
  }
};

struct BoundReport {
  double aggregation_bound = 0.0;  // L3 RHS, shared by all experts
  std::vector<ExpertBound> experts;
  double final_bound = 0.0;     // min over the grid
  double observed_regret = 0.0;
  double v_ts = 0.0;            // V_T^S
  double eta_hat = 0.0;         // sqrt(A_T/V_T^S) clipped to the grid max
  bool eta_hat_clipped = false;
  double sqrt_regime_bound = 0.0;    // 3 sqrt(V_T^S A_T)
  double capped_regime_bound = 0.0;  // 10 G D A_T
  double combined_regime_bound = 0.0;
  double phi_initial = 0.0;
  double phi_final = 0.0;
  double max_phi_increase = 0.0;  // max over t of Phi(t+1) - Phi(t)
  double min_growth_slack = 0.0;
  double min_descent_slack = 0.0;
  int grad_bound_violations = 0;
  double max_grad_norm = 0.0;
  double max_abs_surrogate = 0.0;
  double delta = 0.0;
  CertificateOutcome certs;
  ProblemConstants constants;
};

struct BaselineTrace {
  std::string name;
  std::vector<double> regret;  // cumulative, one entry per round
};

struct ExperimentResult {
  std::vector<RoundRecord> records;
  BoundReport report;
  Vec x_star;
  ComparatorResult comparator_info;
  ProblemConstants constants;
  std::vector<BaselineTrace> baselines;
  std::string label;
};

// Tuned learning rate sqrt(A_T / V_T^S), clipped to eta_max = 1/(5GD).
double eta_hat(double A_T, double v_ts, double eta_max);

// Evaluates every certificate from the run's telemetry. cum_star[i] is
// sum_t s_t^i(x*), energy_lhs[i] the accumulated preconditioned gradient
// energy of expert i.
BoundReport evaluate_bounds(const std::vector<RoundRecord>& records,
                            const MetaState& state,
                            const std::vector<double>& cum_star,
                            const std::vector<double>& energy_lhs,
                            double delta);

// Full online loop: build the stream and set, solve for the offline
// comparator, run the aggregated learner (and any enabled baselines) over
// all T rounds, then evaluate the certificates.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Certificate tolerances, shared by the harness, the CLI and the tests.
inline constexpr double kSumTol = 1e-6;     // accumulated inequalities
inline constexpr double kSlackTol = 1e-9;   // per-round slacks
inline constexpr double kPhiTol = 1e-12;    // potential identities

}  // namespace scmeta
