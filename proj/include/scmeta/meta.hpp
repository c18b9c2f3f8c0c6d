#pragma once

#include "scmeta/core.hpp"
#include "scmeta/expert.hpp"

#include <vector>

namespace scmeta {

// Learning-rate grid eta_i = 2^-i / (5 G D), i = 0..k, with k the smallest
// integer such that 2^(2k) >= T. Priors c/(3 (i+1)(i+2)) with
// c = 1 + 1/(1+k) telescope to exactly 1/3.
struct GridConfig {
  int k = 0;
  std::vector<double> etas;
  std::vector<double> priors;
};

GridConfig build_grid(double G, double D, long long T);

// Certified bound on the aggregation (meta) regret against any grid expert:
// 2 * ln(sqrt(3) * (log2(T)/2 + 3)).
double aggregation_regret_bound(long long T);

// Full state of the tilted exponentially weighted aggregation: the grid, one
// expert per grid point, normalized log-weights for aggregation, and the
// cumulative surrogate losses that drive both the weights and the potential.
struct MetaState {
  GridConfig grid;
  std::vector<Expert> experts;
  std::vector<double> log_priors;     // fixed, sum of exp = 1/3
  std::vector<double> log_weights;    // normalized, sum of exp = 1
  std::vector<double> cum_surrogate;  // per expert, at the expert's own plays
  ProblemConstants constants;
};

MetaState make_meta(const ProblemConstants& constants, const DecisionSet& C,
                    double delta);

// Play x_t = sum_i w_i eta_i x_i / sum_i w_i eta_i: a convex combination of
// the expert iterates, so feasibility is inherited from the experts.
Vec aggregate(const MetaState& state);

// Multiplicative update pi <- pi * exp(-s) in log domain, renormalized.
void update_weights(MetaState& state, const std::vector<double>& surrogates);

// Potential Phi = sum_i prior_i * exp(-cum_i), evaluated by log-sum-exp.
// Phi(0) = 1/3 and Phi is non-increasing round over round.
double potential(const GridConfig& grid,
                 const std::vector<double>& cum_surrogate);

// Everything the meta level knows about one round; the harness combines it
// with true-loss data into the full round record.
struct MetaRoundData {
  Vec x_meta;
  std::vector<double> weights;     // normalized weights used for this play
  std::vector<double> surrogates;  // s_t^i at each expert's own iterate
  double phi = 0.0;
  double log_phi = 0.0;
  std::vector<ExpertStepInfo> steps;
};

// One full round: aggregate, score surrogates, update the potential and the
// weights, then advance every expert. g is the true-loss gradient at the
// aggregated play.
MetaRoundData meta_round(MetaState& state, const Vec& g, const DecisionSet& C);

double log_sum_exp(const std::vector<double>& vals);

}  // namespace scmeta
