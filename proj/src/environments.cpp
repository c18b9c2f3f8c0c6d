#include "scmeta/environments.hpp"

#include "scmeta/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace scmeta {

LossStream::LossStream(int d, long long T, double lambda)
    : d_(d), T_(T), lambda_(lambda) {
  if (d < 1) throw std::invalid_argument("stream: d must be >= 1");
  if (T < 1) throw std::invalid_argument("stream: T must be >= 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument(
        "stream: strong convexity modulus lambda must be positive");
  }
}

void LossStream::check_round(long long t) const {
  if (t < 1 || t > T_) {
    throw std::invalid_argument("stream: round " + std::to_string(t) +
                                " outside 1.." + std::to_string(T_));
  }
}

void LossStream::check_point(const Vec& x) const {
  if (x.size() != d_) {
    throw std::invalid_argument("stream: point dimension mismatch");
  }
}

double LossStream::loss(long long t, const Vec& x) const {
  check_round(t);
  check_point(x);
  return loss_impl(t, x);
}

Vec LossStream::gradient(long long t, const Vec& x) const {
  check_round(t);
  check_point(x);
  return gradient_impl(t, x);
}

QuadraticTracking::QuadraticTracking(int d, long long T, double lambda,
                                     double target_radius, std::uint64_t seed)
    : LossStream(d, T, lambda), target_radius_(target_radius) {
  if (!(target_radius > 0.0) || !std::isfinite(target_radius)) {
    throw std::invalid_argument(
        "quadratic tracking: target radius must be positive");
  }
  Rng rng(seed);
  targets_.reserve(T);
  for (long long t = 0; t < T; ++t) {
    targets_.push_back(rng.in_ball(d, target_radius));
  }
}

QuadraticTracking::QuadraticTracking(int d, long long T, double lambda,
                                     Vec fixed_target, double target_radius)
    : LossStream(d, T, lambda),
      target_radius_(target_radius),
      fixed_(true) {
  if (fixed_target.size() != d) {
    throw std::invalid_argument("quadratic tracking: target dimension != d");
  }
  if (fixed_target.norm() > target_radius + 1e-12) {
    throw std::invalid_argument(
        "quadratic tracking: fixed target outside the target ball");
  }
  targets_.assign(T, std::move(fixed_target));
}

const Vec& QuadraticTracking::target(long long t) const {
  check_round(t);
  return targets_[t - 1];
}

Vec QuadraticTracking::target_mean() const {
  Vec m = Vec::Zero(d_);
  for (const Vec& u : targets_) m += u;
  return m / static_cast<double>(T_);
}

double QuadraticTracking::loss_impl(long long t, const Vec& x) const {
  return 0.5 * lambda_ * (x - targets_[t - 1]).squaredNorm();
}

Vec QuadraticTracking::gradient_impl(long long t, const Vec& x) const {
  return lambda_ * (x - targets_[t - 1]);
}

double QuadraticTracking::gradient_bound(const DecisionSet& C) const {
  // max ||lambda (x - u)|| <= lambda (D/2 + max distance from the set's
  // center to any realizable target).
  Vec center;
  if (const Ball* b = std::get_if<Ball>(&C.shape())) {
    center = b->center;
  } else {
    const Box& bx = std::get<Box>(C.shape());
    center = 0.5 * (bx.lower + bx.upper);
  }
  double reach;
  if (fixed_) {
    reach = (center - targets_[0]).norm();
  } else {
    reach = center.norm() + target_radius_;
  }
  return lambda_ * (C.diameter() * 0.5 + reach);
}

Vec QuadraticTracking::sum_gradient(const Vec& x) const {
  check_point(x);
  return static_cast<double>(T_) * lambda_ * (x - target_mean());
}

double QuadraticTracking::sum_smoothness() const {
  return static_cast<double>(T_) * lambda_;
}

SparseRidge::SparseRidge(int d, long long T, double lambda, int sparsity,
                         double feature_scale, double label_scale,
                         std::uint64_t seed)
    : LossStream(d, T, lambda) {
  if (sparsity < 1 || sparsity > d) {
    throw std::invalid_argument("sparse ridge: sparsity must be in 1..d");
  }
  if (!(feature_scale > 0.0) || !(label_scale >= 0.0)) {
    throw std::invalid_argument("sparse ridge: scales must be positive");
  }
  Rng rng(seed);
  features_.reserve(T);
  labels_.reserve(T);
  gram_ = Eigen::MatrixXd::Zero(d, d);
  moment_ = Vec::Zero(d);
  for (long long t = 0; t < T; ++t) {
    Vec a = Vec::Zero(d);
    for (int i : rng.subset(d, sparsity)) {
      a[i] = rng.uniform(-feature_scale, feature_scale);
    }
    const double b = rng.uniform(-label_scale, label_scale);
    a_max_ = std::max(a_max_, a.norm());
    b_max_ = std::max(b_max_, std::abs(b));
    gram_.noalias() += a * a.transpose();
    moment_ += b * a;
    features_.push_back(std::move(a));
    labels_.push_back(b);
  }
}

double SparseRidge::loss_impl(long long t, const Vec& x) const {
  const double r = features_[t - 1].dot(x) - labels_[t - 1];
  return 0.5 * r * r + 0.5 * lambda_ * x.squaredNorm();
}

Vec SparseRidge::gradient_impl(long long t, const Vec& x) const {
  const double r = features_[t - 1].dot(x) - labels_[t - 1];
  return r * features_[t - 1] + lambda_ * x;
}

double SparseRidge::gradient_bound(const DecisionSet& C) const {
  const double X = C.max_norm();
  return a_max_ * (a_max_ * X + b_max_) + lambda_ * X;
}

const Vec& SparseRidge::feature(long long t) const {
  check_round(t);
  return features_[t - 1];
}

double SparseRidge::label(long long t) const {
  check_round(t);
  return labels_[t - 1];
}

Vec SparseRidge::sum_gradient(const Vec& x) const {
  check_point(x);
  return gram_ * x - moment_ + static_cast<double>(T_) * lambda_ * x;
}

double SparseRidge::sum_smoothness() const {
  // trace(gram) >= largest eigenvalue; cheap and sufficient for a step size.
  return gram_.trace() + static_cast<double>(T_) * lambda_;
}

ComparatorResult comparator_pgd(const LossStream& stream, const DecisionSet& C,
                                double tol, long long max_iters) {
  if (C.dim() != stream.dim()) {
    throw std::invalid_argument("comparator: set dimension mismatch");
  }
  const double step = 1.0 / stream.sum_smoothness();
  ComparatorResult res;
  res.x = project_euclidean(Vec::Zero(stream.dim()), C);
  for (long long it = 1; it <= max_iters; ++it) {
    const Vec g = stream.sum_gradient(res.x);
    const Vec next = project_euclidean(res.x - step * g, C);
    const double mapping_norm = (res.x - next).norm() / step;
    res.x = next;
    res.iterations = it;
    res.achieved_tol = mapping_norm;
    if (mapping_norm < tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

ComparatorResult comparator(const LossStream& stream, const DecisionSet& C) {
  if (const auto* qt = dynamic_cast<const QuadraticTracking*>(&stream)) {
    ComparatorResult res = comparator_pgd(stream, C);
    const Vec closed = project_euclidean(qt->target_mean(), C);
    if ((closed - res.x).norm() > 1e-7) {
      throw std::runtime_error(
          "comparator: closed form and solver disagree on quadratic "
          "tracking");
    }
    res.x = closed;
    res.converged = true;
    return res;
  }
  return comparator_pgd(stream, C);
}

}  // namespace scmeta
