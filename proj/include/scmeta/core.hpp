#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <variant>

namespace scmeta {

using Vec = Eigen::VectorXd;

// Diagonal preconditioner. Entries must be strictly positive; every routine
// that consumes one validates this and throws std::invalid_argument.
struct DiagMatrix {
  Vec diag;

  explicit DiagMatrix(Vec d) : diag(std::move(d)) {}
  Eigen::Index dim() const { return diag.size(); }
};

struct Ball {
  Vec center;
  double radius;
};

struct Box {
  Vec lower;
  Vec upper;
};

// Compact convex feasible region with a precomputed Euclidean diameter.
class DecisionSet {
 public:
  static DecisionSet ball(Vec center, double radius);
  static DecisionSet box(Vec lower, Vec upper);

  const std::variant<Ball, Box>& shape() const { return shape_; }
  double diameter() const { return diameter_; }
  Eigen::Index dim() const;
  // Largest Euclidean norm over the set, used for analytic gradient bounds.
  double max_norm() const;

 private:
  DecisionSet(std::variant<Ball, Box> shape, double diameter)
      : shape_(std::move(shape)), diameter_(diameter) {}

  std::variant<Ball, Box> shape_;
  double diameter_;
};

// Problem-level constants shared by the learner and the certificates.
struct ProblemConstants {
  double G = 0.0;          // bound on ||grad f_t|| over the set
  double D = 0.0;          // Euclidean diameter of the set
  double lambda_sc = 0.0;  // strong convexity modulus of the true losses
  long long T = 0;         // horizon
  int d = 0;               // dimension
};

// ||x||_A^2 = sum_i A_ii x_i^2.
double weighted_norm_sq(const Vec& x, const DiagMatrix& A);

// Euclidean distance from x to the set (0 when x is a member).
double distance_to_set(const Vec& x, const DecisionSet& C);

// Membership within additive Euclidean tolerance tol >= 0.
bool contains(const Vec& x, const DecisionSet& C, double tol);

// argmin_{z in C} ||z - y||_A^2. Feasible y is returned unchanged. Boxes
// project coordinate-wise (exact for any diagonal A); balls solve the KKT
// system for the radial multiplier by bisection.
Vec project_weighted(const Vec& y, const DecisionSet& C, const DiagMatrix& A);

// Euclidean projection (A = I), with closed forms for both shapes.
Vec project_euclidean(const Vec& y, const DecisionSet& C);

}  // namespace scmeta
