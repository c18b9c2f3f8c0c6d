#include "scmeta/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace scmeta {

namespace {

void check_dim(Eigen::Index got, Eigen::Index want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(got) + " vs " +
                                std::to_string(want) + ")");
  }
}

void check_preconditioner(const DiagMatrix& A) {
  for (Eigen::Index i = 0; i < A.diag.size(); ++i) {
    if (!(A.diag[i] > 0.0) || !std::isfinite(A.diag[i])) {
      throw std::invalid_argument(
          "preconditioner entries must be strictly positive and finite");
    }
  }
}

}  // namespace

DecisionSet DecisionSet::ball(Vec center, double radius) {
  if (center.size() == 0) {
    throw std::invalid_argument("ball: center must be non-empty");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("ball: radius must be positive and finite");
  }
  const double diameter = 2.0 * radius;
  return DecisionSet(Ball{std::move(center), radius}, diameter);
}

DecisionSet DecisionSet::box(Vec lower, Vec upper) {
  if (lower.size() == 0 || lower.size() != upper.size()) {
    throw std::invalid_argument("box: bounds must be non-empty, equal length");
  }
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (!(lower[i] < upper[i]) || !std::isfinite(lower[i]) ||
        !std::isfinite(upper[i])) {
      throw std::invalid_argument(
          "box: every lower bound must be finite and strictly below its "
          "upper bound");
    }
  }
  const double diameter = (upper - lower).norm();
  return DecisionSet(Box{std::move(lower), std::move(upper)}, diameter);
}

Eigen::Index DecisionSet::dim() const {
  if (const Ball* b = std::get_if<Ball>(&shape_)) return b->center.size();
  return std::get<Box>(shape_).lower.size();
}

double DecisionSet::max_norm() const {
  if (const Ball* b = std::get_if<Ball>(&shape_)) {
    return b->center.norm() + b->radius;
  }
  const Box& bx = std::get<Box>(shape_);
  double sq = 0.0;
  for (Eigen::Index i = 0; i < bx.lower.size(); ++i) {
    sq += std::max(bx.lower[i] * bx.lower[i], bx.upper[i] * bx.upper[i]);
  }
  return std::sqrt(sq);
}

double weighted_norm_sq(const Vec& x, const DiagMatrix& A) {
  check_dim(x.size(), A.dim(), "weighted_norm_sq");
  check_preconditioner(A);
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    s += A.diag[i] * x[i] * x[i];
  }
  return s;
}

double distance_to_set(const Vec& x, const DecisionSet& C) {
  check_dim(x.size(), C.dim(), "distance_to_set");
  if (const Ball* b = std::get_if<Ball>(&C.shape())) {
    return std::max(0.0, (x - b->center).norm() - b->radius);
  }
  const Box& bx = std::get<Box>(C.shape());
  double sq = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double below = bx.lower[i] - x[i];
    const double above = x[i] - bx.upper[i];
    const double v = std::max({0.0, below, above});
    sq += v * v;
  }
  return std::sqrt(sq);
}

bool contains(const Vec& x, const DecisionSet& C, double tol) {
  if (tol < 0.0) throw std::invalid_argument("contains: tol must be >= 0");
  return distance_to_set(x, C) <= tol;
}

Vec project_euclidean(const Vec& y, const DecisionSet& C) {
  check_dim(y.size(), C.dim(), "project_euclidean");
  if (const Ball* b = std::get_if<Ball>(&C.shape())) {
    const Vec w = y - b->center;
    const double n = w.norm();
    if (n <= b->radius) return y;
    return b->center + (b->radius / n) * w;
  }
  const Box& bx = std::get<Box>(C.shape());
  return y.cwiseMax(bx.lower).cwiseMin(bx.upper);
}

namespace {

// Weighted projection onto a ball. With w = y - center, the minimizer is
// z_i = A_i w_i / (A_i + theta) for the unique theta >= 0 with ||z|| = r
// (theta = 0 when y is already feasible). ||z(theta)|| is strictly
// decreasing, so bisection on theta converges unconditionally.
Vec project_ball_weighted(const Vec& y, const Ball& b, const DiagMatrix& A) {
  const Vec w = y - b.center;
  const double n = w.norm();
  if (n <= b.radius) return y;

  const Eigen::Index d = w.size();
  Vec z(d);
  const auto radius_at = [&](double theta) {
    for (Eigen::Index i = 0; i < d; ++i) {
      z[i] = A.diag[i] * w[i] / (A.diag[i] + theta);
    }
    return z.norm();
  };

  // ||z(theta)|| <= (A_max / (A_max + theta)) ||w||, so this theta already
  // lands inside the ball; grow defensively in case of rounding.
  const double a_max = A.diag.maxCoeff();
  double lo = 0.0;
  double hi = a_max * (n - b.radius) / b.radius * 1.0000001 + 1e-30;
  while (radius_at(hi) > b.radius) hi *= 2.0;

  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double r = radius_at(mid);
    if (std::abs(r - b.radius) < 1e-12) break;
    if (r > b.radius) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // Snap exactly onto the sphere; the correction is at the residual scale.
  const double zn = z.norm();
  if (zn > 0.0) z *= b.radius / zn;
  return b.center + z;
}

}  // namespace

Vec project_weighted(const Vec& y, const DecisionSet& C, const DiagMatrix& A) {
  check_dim(y.size(), C.dim(), "project_weighted");
  check_dim(A.dim(), C.dim(), "project_weighted");
  check_preconditioner(A);
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (!std::isfinite(y[i])) {
      throw std::runtime_error("project_weighted: non-finite input point");
    }
  }
  if (const Ball* b = std::get_if<Ball>(&C.shape())) {
    return project_ball_weighted(y, *b, A);
  }
  // Separable objective: the diagonal weights do not move box coordinates.
  const Box& bx = std::get<Box>(C.shape());
  return y.cwiseMax(bx.lower).cwiseMin(bx.upper);
}

}  // namespace scmeta
