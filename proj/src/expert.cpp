#include "scmeta/expert.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace scmeta {

Expert::Expert(double eta, int d, double delta, const DecisionSet& C)
    : eta_(eta), alpha_(1.0 / (4.0 * eta * eta)), delta_(delta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("expert: eta must be positive and finite");
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("expert: delta must be positive and finite");
  }
  if (d < 1) throw std::invalid_argument("expert: d must be >= 1");
  if (C.dim() != d) throw std::invalid_argument("expert: set dimension != d");
  x_ = Vec::Zero(d);
  if (!contains(x_, C, 0.0)) x_ = project_euclidean(x_, C);
  v_ = Vec::Zero(d);
}

ExpertStepInfo Expert::step(const SurrogateContext& ctx,
                            const DecisionSet& C) {
  ExpertStepInfo info;
  info.x_before = x_;
  info.a_prev_diag = (v_.array() + delta_).matrix();

  info.grad_s = surrogate_grad(ctx, x_);
  if (!info.grad_s.allFinite()) {
    throw std::runtime_error("expert step: non-finite surrogate gradient");
  }

  v_ += info.grad_s.cwiseProduct(info.grad_s);
  info.a_diag = (v_.array() + delta_).matrix();

  const Vec candidate =
      x_ - alpha_ * info.grad_s.cwiseQuotient(info.a_diag);
  if (contains(candidate, C, 0.0)) {
    x_ = candidate;
    info.projection_active = false;
  } else {
    x_ = project_weighted(candidate, C, DiagMatrix(info.a_diag));
    info.projection_active = true;
  }
  info.x_after = x_;
  return info;
}

double growth_bound_slack(const Vec& a_prev_diag, const Vec& a_diag,
                          double alpha, double mu) {
  if (a_prev_diag.size() != a_diag.size()) {
    throw std::invalid_argument("growth_bound_slack: dimension mismatch");
  }
  const double cap = 2.0 * alpha * mu;
  double slack = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < a_diag.size(); ++i) {
    slack = std::min(slack, cap - (a_diag[i] - a_prev_diag[i]));
  }
  return slack;
}

double preconditioned_energy(const Vec& grad, const Vec& a_diag) {
  if (grad.size() != a_diag.size()) {
    throw std::invalid_argument("preconditioned_energy: dimension mismatch");
  }
  double s = 0.0;
  for (Eigen::Index i = 0; i < grad.size(); ++i) {
    if (!(a_diag[i] > 0.0)) {
      throw std::invalid_argument(
          "preconditioned_energy: preconditioner entries must be positive");
    }
    s += grad[i] * grad[i] / a_diag[i];
  }
  return s;
}

double descent_inequality_slack(const ExpertStepInfo& info, const Vec& x_star,
                                double alpha) {
  const DiagMatrix A(info.a_diag);
  const double lhs = (info.x_before - x_star).dot(info.grad_s);
  const double dist_before = weighted_norm_sq(info.x_before - x_star, A);
  const double dist_after = weighted_norm_sq(info.x_after - x_star, A);
  const double rhs = (dist_before - dist_after) / (2.0 * alpha) +
                     0.5 * alpha * preconditioned_energy(info.grad_s, A.diag);
  return rhs - lhs;
}

}  // namespace scmeta
