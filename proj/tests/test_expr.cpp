#include <cmath>

#include "doctest.h"
#include "framelift/expr.hpp"
#include "support.hpp"

using namespace framelift;

TEST_CASE("tokenize basics") {
  auto ts = tokenize("x0^2");
  REQUIRE(ts.size() == 3);
  CHECK(ts[0].kind == Token::Kind::Identifier);
  CHECK(ts[0].lexeme == "x0");
  CHECK(ts[1].kind == Token::Kind::Operator);
  CHECK(ts[2].kind == Token::Kind::Number);

  // sin ( x1 ) + 3.5e-2: the exponent form is a single number token
  ts = tokenize("sin(x1)+3.5e-2");
  REQUIRE(ts.size() == 6);
  CHECK(ts.back().kind == Token::Kind::Number);
  CHECK(ts.back().lexeme == "3.5e-2");

  // positions strictly increasing, lexemes non-empty
  for (std::size_t i = 0; i < ts.size(); ++i) {
    CHECK(!ts[i].lexeme.empty());
    if (i) CHECK(ts[i].position > ts[i - 1].position);
  }

  CHECK_THROWS_AS(tokenize("x0 @ x1"), LexError);
  try {
    tokenize("x0 @ x1");
  } catch (const LexError& e) {
    CHECK(e.position == 3);
  }
}

TEST_CASE("tokenize reconstructs source modulo whitespace") {
  std::string src = "1 - 2*M / r + sin( x0 )^2";
  std::string packed;
  for (char c : src)
    if (!std::isspace(static_cast<unsigned char>(c))) packed += c;
  std::string joined;
  for (const auto& t : tokenize(src)) joined += t.lexeme;
  CHECK(joined == packed);
}

TEST_CASE("parse precedence and scope") {
  ParseScope scope = ParseScope::cartesian(4);
  scope.coordinates["r"] = 1;
  scope.constants["M"] = 1.0;

  Expr e = parse("1 - 2*M/r", scope);
  Point p = {0.0, 4.0, 0.0, 0.0};
  CHECK(e.evaluate(p) == doctest::Approx(0.5).epsilon(1e-15));

  // unary minus binds looser than ^
  Expr f = parse("-x0^2", scope);
  CHECK(f.kind() == ExprKind::Neg);
  Point q = {3.0, 0.0, 0.0, 0.0};
  CHECK(f.evaluate(q) == -9.0);

  // and tighter than *
  CHECK(parse("-2*x0", scope).evaluate(q) == -6.0);
  // signed exponent
  CHECK(parse("x0^-2", scope).evaluate(q) == doctest::Approx(1.0 / 9.0));
  // right associativity: 2^3^2 = 2^9
  CHECK(parse("2^3^2", scope).evaluate(q) == 512.0);

  CHECK_THROWS_AS(parse("sin()", scope), ParseError);
  CHECK_THROWS_AS(parse("nope + 1", scope), UnknownIdentifier);
  CHECK_THROWS_AS(parse("x0 +", scope), ParseError);
  CHECK_THROWS_AS(parse("(x0", scope), ParseError);
}

TEST_CASE("evaluate domain errors") {
  ParseScope scope = ParseScope::cartesian(2);
  Point neg = {0.0, -1.0};
  CHECK_THROWS_AS(parse("sqrt(x1)", scope).evaluate(neg), DomainError);
  CHECK_THROWS_AS(parse("log(x1)", scope).evaluate(neg), DomainError);
  Point z = {1.0, 0.0};
  CHECK_THROWS_AS(parse("x0/x1", scope).evaluate(z), DomainError);
  CHECK(parse("x0^2", scope).evaluate(Point{3.0, 0.0}) == 9.0);
  // non-integer power of a negative base is rejected
  CHECK_THROWS_AS(parse("x1^0.5", scope).evaluate(neg), DomainError);
}

TEST_CASE("differentiate simple forms") {
  ParseScope scope = ParseScope::cartesian(2);
  Expr e = parse("x0^2", scope).differentiate(0).simplified();
  CHECK(e.evaluate(Point{5.0, 0.0}) == 10.0);

  Expr s = parse("sin(x1^2)", scope).differentiate(1).simplified();
  double x = 0.7;
  CHECK(s.evaluate(Point{0.0, x}) == doctest::Approx(std::cos(x * x) * 2.0 * x).epsilon(1e-14));

  // d/dx0 (x0*x1) simplifies to the bare coordinate x1
  Expr m = (Expr::coordinate(0) * Expr::coordinate(1)).differentiate(0).simplified();
  CHECK(m.kind() == ExprKind::Coordinate);
  CHECK(m.coordinate_index() == 1);
}

TEST_CASE("differentiate matches central finite differences at order >= 1.8") {
  std::mt19937_64 rng(20260810);
  std::vector<std::pair<double, double>> box(3, {0.5, 2.0});
  int measured = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Expr e = fltest::random_expr(rng, 3, 6);
    int i = static_cast<int>(fltest::uniform01(rng) * 3) % 3;
    Point p = fltest::random_point(rng, box);
    Expr de = e.differentiate(i).simplified();
    double sym = 0.0;
    try {
      sym = de.evaluate(p);
    } catch (const DomainError&) {
      continue;  // e.g. |.|-kink in a derivative expression
    }
    double scale = std::max(1.0, std::fabs(sym));
    double h1 = 1e-3, h2 = 5e-4;
    double e1 = std::fabs(fltest::central_fd(e, i, p, h1) - sym);
    double e2 = std::fabs(fltest::central_fd(e, i, p, h2) - sym);
    if (e1 < 1e-10 * scale || e2 < 1e-12 * scale) continue;  // below the FD noise floor
    double order = std::log(e1 / e2) / std::log(h1 / h2);
    CHECK(order >= 1.8);
    ++measured;
  }
  CHECK(measured > 20);
}

TEST_CASE("simplify identities and evaluation equality") {
  Expr zero = Expr::constant(0.0);
  Expr e = (zero * Expr::call(ExprFn::Sin, Expr::coordinate(0))).simplified();
  CHECK(e.is_constant(0.0));

  CHECK((Expr::constant(2.0) + Expr::constant(3.0)).simplified().is_constant(5.0));

  std::mt19937_64 rng(7);
  std::vector<std::pair<double, double>> box(3, {0.5, 2.0});
  for (int trial = 0; trial < 200; ++trial) {
    Expr r = fltest::random_expr(rng, 3, 5);
    Expr s = r.simplified();
    Point p = fltest::random_point(rng, box);
    double a, b;
    try {
      a = r.evaluate(p);
      b = s.evaluate(p);
    } catch (const DomainError&) {
      continue;
    }
    CHECK(std::fabs(a - b) <= 1e-14 * std::max(1.0, std::fabs(a)));
  }
}

TEST_CASE("print / parse round-trip is evaluation-equal") {
  std::mt19937_64 rng(99);
  ParseScope scope = ParseScope::cartesian(3);
  std::vector<std::pair<double, double>> box(3, {0.5, 2.0});
  for (int trial = 0; trial < 100; ++trial) {
    Expr e = fltest::random_expr(rng, 3, 5);
    Expr back = parse(e.str(), scope);
    Point p = fltest::random_point(rng, box);
    double a, b;
    try {
      a = e.evaluate(p);
      b = back.evaluate(p);
    } catch (const DomainError&) {
      continue;
    }
    CHECK(a == doctest::Approx(b).epsilon(1e-15));
  }
}

TEST_CASE("compiled field gradient and hessian") {
  ParseScope scope = ParseScope::cartesian(2);
  CompiledField f(parse("x0^2 * x1 + sin(x1)", scope), 2);
  Point p = {1.5, 0.8};
  auto grad = f.gradient_at(p);
  CHECK(grad[0] == doctest::Approx(2 * 1.5 * 0.8).epsilon(1e-14));
  CHECK(grad[1] == doctest::Approx(1.5 * 1.5 + std::cos(0.8)).epsilon(1e-14));
  auto hess = f.hessian_at(p);
  CHECK(hess[0 * 2 + 1] == doctest::Approx(hess[1 * 2 + 0]).epsilon(1e-14));
  CHECK(hess[0 * 2 + 1] == doctest::Approx(2 * 1.5).epsilon(1e-14));
  CHECK(hess[1 * 2 + 1] == doctest::Approx(-std::sin(0.8)).epsilon(1e-14));
}
