#include <cmath>

#include "doctest.h"
#include "framelift/expr.hpp"
#include "framelift/jet.hpp"
#include "support.hpp"

using namespace framelift;

namespace {

std::vector<Jet> seeds(const Point& p, int order) {
  std::vector<Jet> xs;
  for (std::size_t i = 0; i < p.size(); ++i)
    xs.push_back(Jet::coordinate(static_cast<int>(p.size()), order, static_cast<int>(i), p[i]));
  return xs;
}

}  // namespace

TEST_CASE("jet gradient and hessian agree with symbolic derivatives") {
  std::mt19937_64 rng(424242);
  std::vector<std::pair<double, double>> box(3, {0.5, 2.0});
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Expr e = fltest::random_expr(rng, 3, 5);
    Point p = fltest::random_point(rng, box);
    Jet j;
    try {
      j = e.evaluate(std::span<const Jet>(seeds(p, 3)));
    } catch (const DomainError&) {
      continue;
    }
    double scale = std::max(1.0, std::fabs(j.v));
    CHECK(std::fabs(e.evaluate(p) - j.v) <= 1e-13 * scale);
    for (int i = 0; i < 3; ++i) {
      double sym = e.differentiate(i).simplified().evaluate(p);
      CHECK(std::fabs(sym - j.g1(i)) <= 1e-11 * std::max(1.0, std::fabs(sym)));
      for (int k = 0; k < 3; ++k) {
        double sym2 = e.differentiate(i).differentiate(k).simplified().evaluate(p);
        CHECK(std::fabs(sym2 - j.g2(i, k)) <= 1e-10 * std::max(1.0, std::fabs(sym2)));
      }
    }
    ++checked;
  }
  CHECK(checked > 30);
}

TEST_CASE("jet third derivatives on a closed form") {
  // f = x^3 y + sin(x y): all third partials known in closed form.
  Expr x = Expr::coordinate(0), y = Expr::coordinate(1);
  Expr f = pow(x, Expr::constant(3.0)) * y + Expr::call(ExprFn::Sin, x * y);
  Point p = {1.3, 0.6};
  Jet j = f.evaluate(std::span<const Jet>(seeds(p, 3)));
  double X = p[0], Y = p[1];
  // d3f/dx3 = 6y - y^3 cos(xy)
  CHECK(j.g3(0, 0, 0) == doctest::Approx(6 * Y - Y * Y * Y * std::cos(X * Y)).epsilon(1e-12));
  // d3f/dx2dy = 6x - (2 y sin + x y^2 cos)(xy) derivative check:
  // d2f/dx2 = 6xy - y^2 sin(xy); d/dy of that = 6x - 2y sin(xy) - x y^2 cos(xy)
  CHECK(j.g3(0, 0, 1) ==
        doctest::Approx(6 * X - 2 * Y * std::sin(X * Y) - X * Y * Y * std::cos(X * Y)).epsilon(1e-12));
  // symmetry of mixed partials
  CHECK(j.g3(0, 0, 1) == doctest::Approx(j.g3(0, 1, 0)).epsilon(1e-13));
  CHECK(j.g3(0, 0, 1) == doctest::Approx(j.g3(1, 0, 0)).epsilon(1e-13));
}

TEST_CASE("jet_derivative lowers one slot") {
  Expr x = Expr::coordinate(0), y = Expr::coordinate(1);
  Expr f = Expr::call(ExprFn::Exp, x * y) / (x + Expr::constant(2.0));
  Point p = {0.9, 1.4};
  Jet j = f.evaluate(std::span<const Jet>(seeds(p, 3)));
  Jet dx = jet_derivative(j, 0);
  CHECK(dx.order == 2);
  CHECK(dx.v == doctest::Approx(j.g1(0)).epsilon(1e-15));
  CHECK(dx.g1(1) == doctest::Approx(j.g2(0, 1)).epsilon(1e-15));
  CHECK(dx.g2(1, 1) == doctest::Approx(j.g3(0, 1, 1)).epsilon(1e-15));
}

TEST_CASE("jet domain errors mirror evaluation") {
  Point p = {-1.0, 1.0};
  auto xs = seeds(p, 2);
  Expr x = Expr::coordinate(0);
  CHECK_THROWS_AS(Expr::call(ExprFn::Sqrt, x).evaluate(std::span<const Jet>(xs)), DomainError);
  CHECK_THROWS_AS(Expr::call(ExprFn::Log, x).evaluate(std::span<const Jet>(xs)), DomainError);
  // integer powers of negative bases stay legal
  CHECK(pow(x, Expr::constant(3.0)).evaluate(std::span<const Jet>(xs)).v == doctest::Approx(-1.0));
}
