#include "scmeta/harness.hpp"

#include "scmeta/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace scmeta {

double eta_hat(double A_T, double v_ts, double eta_max) {
  if (!(A_T > 0.0) || !(eta_max > 0.0)) {
    throw std::invalid_argument("eta_hat: A_T and eta_max must be positive");
  }
  if (!(v_ts > 0.0)) return eta_max;
  return std::min(std::sqrt(A_T / v_ts), eta_max);
}

BoundReport evaluate_bounds(const std::vector<RoundRecord>& records,
                            const MetaState& state,
                            const std::vector<double>& cum_star,
                            const std::vector<double>& energy_lhs,
                            double delta) {
  const size_t n = state.experts.size();
  if (cum_star.size() != n || energy_lhs.size() != n) {
    throw std::invalid_argument("evaluate_bounds: per-expert data mismatch");
  }
  const ProblemConstants& pc = state.constants;

  BoundReport rep;
  rep.constants = pc;
  rep.delta = delta;
  rep.aggregation_bound = aggregation_regret_bound(pc.T);

  rep.final_bound = std::numeric_limits<double>::infinity();
  const double final_scale = pc.G * pc.G / pc.lambda_sc + 10.0 * pc.G * pc.D;
  double a_t_min = std::numeric_limits<double>::infinity();

  bool energy_ok = true;
  bool aggregation_ok = true;
  bool expert_ok = true;

  for (size_t i = 0; i < n; ++i) {
    const Expert& e = state.experts[i];
    ExpertBound eb;
    eb.eta = e.eta();
    eb.alpha = e.alpha();

    double log_cap = 0.0;
    const Vec& v = e.grad_sq_sum();
    for (Eigen::Index j = 0; j < v.size(); ++j) {
      log_cap += std::log((v[j] + delta) / delta);
    }
    eb.energy_rhs = log_cap;
    eb.energy_lhs = energy_lhs[i];
    eb.E_T = pc.D * pc.D * pc.d * delta / (2.0 * eb.alpha) +
             0.5 * eb.alpha * log_cap;
    eb.A_T = rep.aggregation_bound + eb.E_T;
    eb.meta_regret = -state.cum_surrogate[i];
    eb.expert_regret = state.cum_surrogate[i] - cum_star[i];
    eb.final_bound = final_scale * eb.A_T;

    energy_ok = energy_ok && eb.energy_lhs <= eb.energy_rhs + kSumTol;
    aggregation_ok =
        aggregation_ok && eb.meta_regret <= rep.aggregation_bound + kSumTol;
    expert_ok = expert_ok && eb.expert_regret <= eb.E_T + kSumTol;

    rep.final_bound = std::min(rep.final_bound, eb.final_bound);
    a_t_min = std::min(a_t_min, eb.A_T);
    rep.experts.push_back(eb);
  }

  rep.phi_initial = potential(state.grid, std::vector<double>(n, 0.0));
  rep.phi_final = records.empty() ? rep.phi_initial : records.back().phi;
  double prev_phi = rep.phi_initial;
  rep.max_phi_increase = -std::numeric_limits<double>::infinity();
  rep.min_growth_slack = std::numeric_limits<double>::infinity();
  rep.min_descent_slack = std::numeric_limits<double>::infinity();
  for (const RoundRecord& r : records) {
    rep.max_phi_increase = std::max(rep.max_phi_increase, r.phi - prev_phi);
    prev_phi = r.phi;
    rep.min_growth_slack = std::min(rep.min_growth_slack, r.growth_slack);
    for (double s : r.descent_slacks) {
      rep.min_descent_slack = std::min(rep.min_descent_slack, s);
    }
    for (double s : r.surrogates) {
      rep.max_abs_surrogate = std::max(rep.max_abs_surrogate, std::abs(s));
    }
  }
  if (records.empty()) {
    rep.max_phi_increase = 0.0;
    rep.min_growth_slack = 0.0;
    rep.min_descent_slack = 0.0;
  }

  rep.observed_regret = records.empty() ? 0.0 : records.back().regret;
  rep.v_ts = records.empty() ? 0.0 : records.back().v_ts;

  const double eta_max = state.grid.etas[0];
  const double raw =
      rep.v_ts > 0.0 ? std::sqrt(a_t_min / rep.v_ts)
                     : std::numeric_limits<double>::infinity();
  rep.eta_hat = eta_hat(a_t_min, rep.v_ts, eta_max);
  rep.eta_hat_clipped = raw > eta_max;
  rep.sqrt_regime_bound = 3.0 * std::sqrt(rep.v_ts * a_t_min);
  rep.capped_regime_bound = 10.0 * pc.G * pc.D * a_t_min;
  rep.combined_regime_bound = rep.sqrt_regime_bound + rep.capped_regime_bound;

  rep.certs.energy = energy_ok;
  rep.certs.growth = rep.min_growth_slack >= -kSlackTol;
  rep.certs.aggregation = aggregation_ok;
  rep.certs.descent = rep.min_descent_slack >= -kSlackTol;
  rep.certs.expert_bound = expert_ok;
  rep.certs.potential = std::abs(rep.phi_initial - 1.0 / 3.0) <= kPhiTol &&
                        rep.max_phi_increase <= kPhiTol;
  rep.certs.total_regret = rep.observed_regret <= rep.final_bound + kSumTol;
  return rep;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const DecisionSet C = make_decision_set(cfg);
  const std::unique_ptr<LossStream> stream = make_stream(cfg);

  ProblemConstants pc;
  pc.G = stream->gradient_bound(C);
  pc.D = C.diameter();
  pc.lambda_sc = stream->lambda_sc();
  pc.T = cfg.T;
  pc.d = cfg.d;

  ExperimentResult result;
  result.label = cfg.label;
  result.constants = pc;
  result.comparator_info = comparator(*stream, C);
  result.x_star = result.comparator_info.x;
  const Vec& x_star = result.x_star;

  MetaState state = make_meta(pc, C, cfg.delta);
  const size_t n = state.experts.size();

  struct BaselineRun {
    std::string name;
    OgdSc* ogd = nullptr;
    ScAdagradBaseline* sc = nullptr;
    AdagradBaseline* ada = nullptr;
    std::unique_ptr<OgdSc> ogd_s;
    std::unique_ptr<ScAdagradBaseline> sc_s;
    std::unique_ptr<AdagradBaseline> ada_s;
    double regret = 0.0;
  };
  std::vector<BaselineRun> baselines;
  for (const std::string& a : cfg.algos) {
    if (a == "meta") continue;
    BaselineRun run;
    run.name = a;
    if (a == "ogd_sc") {
      run.ogd_s = std::make_unique<OgdSc>(cfg.d, cfg.stream.lambda, C);
      run.ogd = run.ogd_s.get();
    } else if (a == "sc_adagrad") {
      run.sc_s = std::make_unique<ScAdagradBaseline>(
          cfg.d, default_sc_adagrad_alpha(cfg), cfg.delta, C);
      run.sc = run.sc_s.get();
    } else {
      run.ada_s = std::make_unique<AdagradBaseline>(
          cfg.d, default_adagrad_step_scale(C), cfg.delta, C);
      run.ada = run.ada_s.get();
    }
    baselines.push_back(std::move(run));
  }
  result.baselines.reserve(baselines.size());
  for (const BaselineRun& b : baselines) {
    result.baselines.push_back(BaselineTrace{b.name, {}});
    result.baselines.back().regret.reserve(cfg.T);
  }

  std::vector<double> cum_star(n, 0.0);
  std::vector<double> energy_lhs(n, 0.0);
  double regret = 0.0;
  double v_ts = 0.0;
  int grad_violations = 0;
  double max_grad_norm = 0.0;

  result.records.reserve(cfg.T);
  for (long long t = 1; t <= cfg.T; ++t) {
    MetaState& st = state;
    const Vec x_t = aggregate(st);
    if (!contains(x_t, C, 1e-9)) {
      throw std::runtime_error("harness: aggregated play left the set");
    }
    const Vec g = stream->gradient(t, x_t);
    if (!g.allFinite()) {
      throw std::runtime_error("harness: non-finite gradient at round " +
                               std::to_string(t));
    }
    const double gn = g.norm();
    max_grad_norm = std::max(max_grad_norm, gn);
    if (gn > pc.G + 1e-9) ++grad_violations;

    MetaRoundData data = meta_round(st, g, C);

    RoundRecord rec;
    rec.t = t;
    rec.x = data.x_meta;
    rec.loss = stream->loss(t, x_t);
    rec.loss_star = stream->loss(t, x_star);
    regret += rec.loss - rec.loss_star;
    rec.regret = regret;
    rec.weights = std::move(data.weights);
    rec.surrogates = std::move(data.surrogates);
    rec.phi = data.phi;
    rec.log_phi = data.log_phi;
    v_ts += pc.G * pc.G * (x_t - x_star).squaredNorm();
    rec.v_ts = v_ts;

    rec.growth_slack = std::numeric_limits<double>::infinity();
    rec.descent_slacks.resize(n);
    rec.projection_inactive.resize(n);
    rec.expert_before.reserve(n);
    rec.expert_after.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      const ExpertStepInfo& info = data.steps[i];
      const double mu =
          surrogate_modulus(st.grid.etas[i], pc.G);
      rec.growth_slack = std::min(
          rec.growth_slack,
          growth_bound_slack(info.a_prev_diag, info.a_diag,
                             st.experts[i].alpha(), mu));
      rec.descent_slacks[i] =
          descent_inequality_slack(info, x_star, st.experts[i].alpha());
      rec.projection_inactive[i] = info.projection_active ? 0 : 1;
      energy_lhs[i] += preconditioned_energy(info.grad_s, info.a_diag);
      const SurrogateContext ctx{st.grid.etas[i], pc.G, rec.x, g};
      cum_star[i] += surrogate_loss(ctx, x_star);
      rec.expert_before.push_back(info.x_before);
      rec.expert_after.push_back(info.x_after);
    }

    for (size_t bi = 0; bi < baselines.size(); ++bi) {
      BaselineRun& b = baselines[bi];
      const Vec& xb = b.ogd ? b.ogd->iterate()
                            : (b.sc ? b.sc->iterate() : b.ada->iterate());
      const double lb = stream->loss(t, xb);
      const Vec gb = stream->gradient(t, xb);
      b.regret += lb - rec.loss_star;
      result.baselines[bi].regret.push_back(b.regret);
      if (b.ogd) {
        b.ogd->observe(gb, C);
      } else if (b.sc) {
        b.sc->observe(gb, C);
      } else {
        b.ada->observe(gb, C);
      }
    }

    result.records.push_back(std::move(rec));
  }

  result.report =
      evaluate_bounds(result.records, state, cum_star, energy_lhs, cfg.delta);
  result.report.grad_bound_violations = grad_violations;
  result.report.max_grad_norm = max_grad_norm;
  return result;
}

}  // namespace scmeta
