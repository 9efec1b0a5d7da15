#pragma once

#include <random>

#include <Eigen/Dense>

#include "reldiff/expr.hpp"

namespace reldiff::oracle {

// Random expression trees whose every ln/sqrt/abs/division argument is bounded
// away from its singular set, so jets and finite differences are both valid
// on a neighbourhood of any centre in [-1, 1]^2.
class RandomExpr {
 public:
  explicit RandomExpr(std::uint64_t seed) : rng_(seed) {}

  Expr operator()(int depth = 3) { return node(depth); }

  Eigen::Vector2d centre() {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return {u(rng_), u(rng_)};
  }

 private:
  Expr leaf() {
    std::uniform_int_distribution<int> pick(0, 2);
    std::uniform_real_distribution<double> c(-2.0, 2.0);
    switch (pick(rng_)) {
      case 0: return Expr::variable(1);
      case 1: return Expr::variable(2);
      default: return Expr::constant(c(rng_));
    }
  }

  Expr node(int depth) {
    if (depth == 0) return leaf();
    std::uniform_int_distribution<int> pick(0, 12);
    const Expr a = node(depth - 1);
    switch (pick(rng_)) {
      case 0: return a + node(depth - 1);
      case 1: return a - node(depth - 1);
      case 2: return a * node(depth - 1);
      case 3: return a / (Expr::constant(1.5) + cos(node(depth - 1)));
      case 4: return sin(a);
      case 5: return cos(a);
      case 6: return exp(Expr::constant(0.5) * sin(a));
      case 7: return ln(Expr::constant(1.5) + sin(a));
      case 8: return sqrt(Expr::constant(2.0) + cos(a));
      case 9: return abs(Expr::constant(1.25) + sin(a));
      case 10: return pow(a, Expr::constant(2.0));
      case 11: return pow(Expr::constant(2.0) + sin(a), Expr::constant(1.5));
      default: return -a;
    }
  }

  std::mt19937_64 rng_;
};

}  // namespace reldiff::oracle
