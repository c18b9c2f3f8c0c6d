#include "scmeta/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace scmeta {

namespace {

Vec feasible_origin(int d, const DecisionSet& C) {
  if (d < 1) throw std::invalid_argument("baseline: d must be >= 1");
  if (C.dim() != d) {
    throw std::invalid_argument("baseline: set dimension != d");
  }
  Vec x = Vec::Zero(d);
  if (!contains(x, C, 0.0)) x = project_euclidean(x, C);
  return x;
}

void check_gradient(const Vec& g, const Vec& x) {
  if (g.size() != x.size()) {
    throw std::invalid_argument("baseline: gradient dimension mismatch");
  }
  if (!g.allFinite()) {
    throw std::runtime_error("baseline: non-finite gradient");
  }
}

}  // namespace

OgdSc::OgdSc(int d, double lambda, const DecisionSet& C) : lambda_(lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("ogd_sc: lambda must be positive");
  }
  x_ = feasible_origin(d, C);
}

void OgdSc::observe(const Vec& g, const DecisionSet& C) {
  check_gradient(g, x_);
  ++t_;
  const double step = 1.0 / (lambda_ * static_cast<double>(t_));
  x_ = project_euclidean(x_ - step * g, C);
}

ScAdagradBaseline::ScAdagradBaseline(int d, double alpha, double delta,
                                     const DecisionSet& C)
    : alpha_(alpha), delta_(delta) {
  if (!(alpha > 0.0) || !(delta > 0.0)) {
    throw std::invalid_argument("sc_adagrad: alpha and delta must be positive");
  }
  x_ = feasible_origin(d, C);
  v_ = Vec::Zero(d);
}

void ScAdagradBaseline::observe(const Vec& g, const DecisionSet& C) {
  check_gradient(g, x_);
  v_ += g.cwiseProduct(g);
  const Vec a = (v_.array() + delta_).matrix();
  const Vec candidate = x_ - alpha_ * g.cwiseQuotient(a);
  x_ = contains(candidate, C, 0.0)
           ? candidate
           : project_weighted(candidate, C, DiagMatrix(a));
}

AdagradBaseline::AdagradBaseline(int d, double step_scale, double delta,
                                 const DecisionSet& C)
    : step_scale_(step_scale), delta_(delta) {
  if (!(step_scale > 0.0) || !(delta > 0.0)) {
    throw std::invalid_argument(
        "adagrad: step scale and delta must be positive");
  }
  x_ = feasible_origin(d, C);
  v_ = Vec::Zero(d);
}

void AdagradBaseline::observe(const Vec& g, const DecisionSet& C) {
  check_gradient(g, x_);
  v_ += g.cwiseProduct(g);
  const Vec a = (v_.array().sqrt() + delta_).matrix();
  const Vec candidate = x_ - step_scale_ * g.cwiseQuotient(a);
  x_ = contains(candidate, C, 0.0)
           ? candidate
           : project_weighted(candidate, C, DiagMatrix(a));
}

}  // namespace scmeta
