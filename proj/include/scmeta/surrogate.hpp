#pragma once

#include "scmeta/core.hpp"

#include <stdexcept>

namespace scmeta {

// Frozen per-round data the surrogate losses close over: the learning rate,
// the gradient bound, the point the meta-learner played, and the true-loss
// gradient observed there. s(x_meta) = 0 by construction.
struct SurrogateContext {
  double eta = 0.0;
  double G = 0.0;
  Vec x_meta;
  Vec g;
};

// s(x) = -eta <x_meta - x, g> + eta^2 G^2 ||x_meta - x||^2.
inline double surrogate_loss(const SurrogateContext& ctx, const Vec& x) {
  if (x.size() != ctx.x_meta.size() || ctx.g.size() != ctx.x_meta.size()) {
    throw std::invalid_argument("surrogate_loss: dimension mismatch");
  }
  const Vec diff = ctx.x_meta - x;
  return -ctx.eta * diff.dot(ctx.g) +
         (ctx.eta * ctx.eta * ctx.G * ctx.G) * diff.squaredNorm();
}

// grad s(x) = eta g + 2 eta^2 G^2 (x - x_meta).
inline Vec surrogate_grad(const SurrogateContext& ctx, const Vec& x) {
  if (x.size() != ctx.x_meta.size() || ctx.g.size() != ctx.x_meta.size()) {
    throw std::invalid_argument("surrogate_grad: dimension mismatch");
  }
  return ctx.eta * ctx.g +
         (2.0 * ctx.eta * ctx.eta * ctx.G * ctx.G) * (x - ctx.x_meta);
}

// Exact strong convexity modulus of the quadratic surrogate:
// s(y) - s(x) = <grad s(x), y - x> + eta^2 G^2 ||y - x||^2.
inline double surrogate_modulus(double eta, double G) {
  return 2.0 * eta * eta * G * G;
}

inline double surrogate_modulus(const SurrogateContext& ctx) {
  return surrogate_modulus(ctx.eta, ctx.G);
}

}  // namespace scmeta
