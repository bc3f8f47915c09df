#ifndef FRAMELIFT_TESTS_SUPPORT_HPP
#define FRAMELIFT_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "framelift/expr.hpp"
#include "framelift/geometry.hpp"

namespace fltest {

// Platform-stable uniform double in [0, 1).
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

inline framelift::Point random_point(std::mt19937_64& rng,
                                     const std::vector<std::pair<double, double>>& box) {
  framelift::Point p(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) p[i] = uniform(rng, box[i].first, box[i].second);
  return p;
}

// Central finite difference: the only derivative approximation in the suite,
// used as an independent oracle against the exact paths.
inline double central_fd(const framelift::Expr& e, int i, const framelift::Point& p, double h) {
  framelift::Point hi = p, lo = p;
  hi[i] += h;
  lo[i] -= h;
  return (e.evaluate(hi) - e.evaluate(lo)) / (2.0 * h);
}

// Random expression over coordinates 0..dim-1 with depth <= depth.
inline framelift::Expr random_expr(std::mt19937_64& rng, int dim, int depth) {
  using framelift::Expr;
  using framelift::ExprFn;
  if (depth == 0 || uniform01(rng) < 0.25) {
    if (uniform01(rng) < 0.4) return Expr::constant(uniform(rng, -2.0, 2.0));
    return Expr::coordinate(static_cast<int>(uniform01(rng) * dim) % dim);
  }
  double pick = uniform01(rng);
  Expr a = random_expr(rng, dim, depth - 1);
  if (pick < 0.18) return a + random_expr(rng, dim, depth - 1);
  if (pick < 0.36) return a - random_expr(rng, dim, depth - 1);
  if (pick < 0.58) return a * random_expr(rng, dim, depth - 1);
  if (pick < 0.66) {
    // Keep denominators away from zero on [0.5, 2]^m.
    return a / (Expr::constant(3.0) + Expr::coordinate(static_cast<int>(uniform01(rng) * dim) % dim));
  }
  if (pick < 0.74) return pow(a, Expr::constant(2.0 + static_cast<int>(uniform01(rng) * 3)));
  double f = uniform01(rng);
  if (f < 0.3) return Expr::call(ExprFn::Sin, a);
  if (f < 0.6) return Expr::call(ExprFn::Cos, a);
  if (f < 0.8) return Expr::call(ExprFn::Exp, a * Expr::constant(0.3));
  return Expr::call(ExprFn::Sqrt, a * a + Expr::constant(1.0));
}

// Random polynomial of total degree <= 2 in dim variables.
inline framelift::Expr random_poly2(std::mt19937_64& rng, int dim) {
  using framelift::Expr;
  Expr e = Expr::constant(uniform(rng, -1.0, 1.0));
  for (int i = 0; i < dim; ++i) {
    e = e + Expr::constant(uniform(rng, -1.0, 1.0)) * Expr::coordinate(i);
    for (int j = i; j < dim; ++j)
      e = e + Expr::constant(uniform(rng, -1.0, 1.0)) * (Expr::coordinate(i) * Expr::coordinate(j));
  }
  return e;
}

}  // namespace fltest

#endif
