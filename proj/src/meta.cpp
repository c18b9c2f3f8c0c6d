#include "scmeta/meta.hpp"

#include <cmath>
#include <stdexcept>

namespace scmeta {

GridConfig build_grid(double G, double D, long long T) {
  if (!(G > 0.0) || !std::isfinite(G)) {
    throw std::invalid_argument("build_grid: G must be positive and finite");
  }
  if (!(D > 0.0) || !std::isfinite(D)) {
    throw std::invalid_argument("build_grid: D must be positive and finite");
  }
  if (T < 1) throw std::invalid_argument("build_grid: T must be >= 1");

  GridConfig grid;
  int k = 0;
  while ((1LL << (2 * k)) < T) ++k;
  grid.k = k;

  const double five_gd = 5.0 * G * D;
  grid.etas.resize(k + 1);
  grid.priors.resize(k + 1);
  const double c = 1.0 + 1.0 / (1.0 + k);
  for (int i = 0; i <= k; ++i) {
    grid.etas[i] = std::ldexp(1.0, -i) / five_gd;
    grid.priors[i] = c / (3.0 * (i + 1) * (i + 2));
  }
  return grid;
}

double aggregation_regret_bound(long long T) {
  if (T < 1) {
    throw std::invalid_argument(
        "aggregation_regret_bound: T must be >= 1");
  }
  return 2.0 * std::log(std::sqrt(3.0) *
                        (0.5 * std::log2(static_cast<double>(T)) + 3.0));
}

double log_sum_exp(const std::vector<double>& vals) {
  if (vals.empty()) throw std::invalid_argument("log_sum_exp: empty input");
  double m = vals[0];
  for (double v : vals) m = std::max(m, v);
  double s = 0.0;
  for (double v : vals) s += std::exp(v - m);
  return m + std::log(s);
}

MetaState make_meta(const ProblemConstants& constants, const DecisionSet& C,
                    double delta) {
  if (constants.d != C.dim()) {
    throw std::invalid_argument("make_meta: constants.d != set dimension");
  }
  MetaState state;
  state.constants = constants;
  state.grid = build_grid(constants.G, constants.D, constants.T);
  const int n = state.grid.k + 1;
  state.experts.reserve(n);
  state.log_priors.resize(n);
  state.log_weights.resize(n);
  state.cum_surrogate.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    state.experts.emplace_back(state.grid.etas[i], constants.d, delta, C);
    state.log_priors[i] = std::log(state.grid.priors[i]);
    state.log_weights[i] = state.log_priors[i];
  }
  const double z = log_sum_exp(state.log_weights);
  for (double& lw : state.log_weights) lw -= z;
  return state;
}

Vec aggregate(const MetaState& state) {
  Vec num = Vec::Zero(state.constants.d);
  double den = 0.0;
  for (size_t i = 0; i < state.experts.size(); ++i) {
    const double w = std::exp(state.log_weights[i]);
    const double we = w * state.grid.etas[i];
    num += we * state.experts[i].iterate();
    den += we;
  }
  if (!(den > 0.0) || !std::isfinite(den)) {
    throw std::runtime_error("aggregate: degenerate weight normalization");
  }
  return num / den;
}

void update_weights(MetaState& state, const std::vector<double>& surrogates) {
  if (surrogates.size() != state.log_weights.size()) {
    throw std::invalid_argument("update_weights: dimension mismatch");
  }
  for (size_t i = 0; i < surrogates.size(); ++i) {
    if (!std::isfinite(surrogates[i])) {
      throw std::runtime_error("update_weights: non-finite surrogate loss");
    }
    state.log_weights[i] -= surrogates[i];
  }
  const double z = log_sum_exp(state.log_weights);
  for (double& lw : state.log_weights) lw -= z;
}

double potential(const GridConfig& grid,
                 const std::vector<double>& cum_surrogate) {
  if (cum_surrogate.size() != grid.priors.size()) {
    throw std::invalid_argument("potential: dimension mismatch");
  }
  std::vector<double> terms(cum_surrogate.size());
  for (size_t i = 0; i < terms.size(); ++i) {
    terms[i] = std::log(grid.priors[i]) - cum_surrogate[i];
  }
  return std::exp(log_sum_exp(terms));
}

MetaRoundData meta_round(MetaState& state, const Vec& g,
                         const DecisionSet& C) {
  if (g.size() != state.constants.d) {
    throw std::invalid_argument("meta_round: gradient dimension mismatch");
  }
  const size_t n = state.experts.size();
  MetaRoundData data;
  data.x_meta = aggregate(state);

  data.weights.resize(n);
  for (size_t i = 0; i < n; ++i) {
    data.weights[i] = std::exp(state.log_weights[i]);
  }

  data.surrogates.resize(n);
  std::vector<SurrogateContext> ctxs(n);
  for (size_t i = 0; i < n; ++i) {
    ctxs[i] = SurrogateContext{state.grid.etas[i], state.constants.G,
                               data.x_meta, g};
    data.surrogates[i] =
        surrogate_loss(ctxs[i], state.experts[i].iterate());
    if (!std::isfinite(data.surrogates[i])) {
      throw std::runtime_error("meta_round: non-finite surrogate loss");
    }
    state.cum_surrogate[i] += data.surrogates[i];
  }

  std::vector<double> terms(n);
  for (size_t i = 0; i < n; ++i) {
    terms[i] = state.log_priors[i] - state.cum_surrogate[i];
  }
  data.log_phi = log_sum_exp(terms);
  data.phi = std::exp(data.log_phi);

  update_weights(state, data.surrogates);

  data.steps.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    data.steps.push_back(state.experts[i].step(ctxs[i], C));
  }
  return data;
}

}  // namespace scmeta
