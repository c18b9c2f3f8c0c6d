#pragma once

#include "scmeta/core.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace scmeta {

// A finite, seeded, replayable sequence of strongly convex losses. All
// per-round data is generated at construction, so evaluation is pure and
// every run over the stream sees identical losses.
class LossStream {
 public:
  virtual ~LossStream() = default;

  int dim() const { return d_; }
  long long horizon() const { return T_; }
  // Strong convexity modulus shared by every round.
  double lambda_sc() const { return lambda_; }

  double loss(long long t, const Vec& x) const;
  Vec gradient(long long t, const Vec& x) const;

  // Analytic bound on ||grad f_t(x)|| over the set, from stream parameters.
  virtual double gradient_bound(const DecisionSet& C) const = 0;

  // Gradient of the summed objective F(x) = sum_t f_t(x), in O(d^2).
  virtual Vec sum_gradient(const Vec& x) const = 0;
  // Smoothness constant of F, for the offline solver's step size.
  virtual double sum_smoothness() const = 0;

 protected:
  LossStream(int d, long long T, double lambda);
  void check_round(long long t) const;
  void check_point(const Vec& x) const;

  virtual double loss_impl(long long t, const Vec& x) const = 0;
  virtual Vec gradient_impl(long long t, const Vec& x) const = 0;

  int d_;
  long long T_;
  double lambda_;
};

// f_t(x) = (lambda/2) ||x - u_t||^2 with targets u_t in a centered ball.
// Targets are either drawn uniformly at construction or fixed to a constant.
class QuadraticTracking : public LossStream {
 public:
  QuadraticTracking(int d, long long T, double lambda, double target_radius,
                    std::uint64_t seed);
  QuadraticTracking(int d, long long T, double lambda, Vec fixed_target,
                    double target_radius);

  double gradient_bound(const DecisionSet& C) const override;
  Vec sum_gradient(const Vec& x) const override;
  double sum_smoothness() const override;

  const Vec& target(long long t) const;
  // Mean of the targets; the unconstrained offline minimizer.
  Vec target_mean() const;

 protected:
  double loss_impl(long long t, const Vec& x) const override;
  Vec gradient_impl(long long t, const Vec& x) const override;

 private:
  std::vector<Vec> targets_;
  double target_radius_;
  bool fixed_ = false;
};

// f_t(x) = 0.5 (<a_t, x> - b_t)^2 + (lambda/2) ||x||^2 with sparse feature
// vectors (s active coordinates per round) and bounded labels.
class SparseRidge : public LossStream {
 public:
  SparseRidge(int d, long long T, double lambda, int sparsity,
              double feature_scale, double label_scale, std::uint64_t seed);

  double gradient_bound(const DecisionSet& C) const override;
  Vec sum_gradient(const Vec& x) const override;
  double sum_smoothness() const override;

  double max_feature_norm() const { return a_max_; }
  double max_label() const { return b_max_; }

  const Vec& feature(long long t) const;
  double label(long long t) const;

 protected:
  double loss_impl(long long t, const Vec& x) const override;
  Vec gradient_impl(long long t, const Vec& x) const override;

 private:
  std::vector<Vec> features_;
  std::vector<double> labels_;
  Eigen::MatrixXd gram_;  // sum_t a_t a_t^T
  Vec moment_;            // sum_t b_t a_t
  double a_max_ = 0.0;
  double b_max_ = 0.0;
};

struct ComparatorResult {
  Vec x;
  bool converged = false;
  double achieved_tol = 0.0;
  long long iterations = 0;
};

// Offline minimizer of sum_t f_t over C by projected gradient descent with
// constant step 1/L, stopping when the gradient-mapping norm falls below
// tol. Strong convexity makes this linearly convergent.
ComparatorResult comparator_pgd(const LossStream& stream, const DecisionSet& C,
                                double tol = 1e-10,
                                long long max_iters = 1000000);

// Offline comparator x*. Quadratic tracking admits the closed form
// Pi_C(mean target), cross-checked against the iterative solver; other
// streams use the solver directly.
ComparatorResult comparator(const LossStream& stream, const DecisionSet& C);

}  // namespace scmeta
