#include <cmath>

#include "doctest.h"
#include "framelift/geometry.hpp"
#include "support.hpp"

using namespace framelift;

namespace {

ParseScope schw_scope() {
  ParseScope s = ParseScope::cartesian(4);
  s.coordinates["t"] = 0;
  s.coordinates["r"] = 1;
  s.coordinates["theta"] = 2;
  s.coordinates["phi"] = 3;
  s.constants["M"] = 1.0;
  return s;
}

// Diagonal Schwarzschild tetrad, M = 1.
FrameField schwarzschild_frame() {
  auto sc = schw_scope();
  std::vector<Expr> c(16, Expr::constant(0.0));
  c[ix2(4, 0, 0)] = parse("sqrt(1 - 2*M/r)", sc);
  c[ix2(4, 1, 1)] = parse("1 / sqrt(1 - 2*M/r)", sc);
  c[ix2(4, 2, 2)] = parse("r", sc);
  c[ix2(4, 3, 3)] = parse("r * sin(theta)", sc);
  return FrameField({1, 3}, c);
}

FrameField polar_frame() {
  // e^1 = dr, e^2 = r dtheta on the Euclidean plane (coords r, theta).
  std::vector<Expr> c(4, Expr::constant(0.0));
  c[ix2(2, 0, 0)] = Expr::constant(1.0);
  c[ix2(2, 1, 1)] = Expr::coordinate(0);
  return FrameField({2, 0}, c);
}

const Point kSchwP = {0.3, 5.0, 1.1, 0.7};

}  // namespace

TEST_CASE("induced metric: identity and scaled frames") {
  Signature lor{1, 3};
  auto mink = FrameField::identity(lor);
  auto g = induced_metric_at(mink, {0, 0, 0, 0});
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      CHECK(g.g[mu][nu] == doctest::Approx(mu == nu ? lor.eta(mu) : 0.0));

  std::vector<Expr> c(16, Expr::constant(0.0));
  for (int a = 0; a < 4; ++a) c[ix2(4, a, a)] = Expr::constant(2.0);
  auto scaled = FrameField(lor, c);
  auto g4 = induced_metric_at(scaled, {0.1, 0.2, 0.3, 0.4});
  for (int mu = 0; mu < 4; ++mu) CHECK(g4.g[mu][mu] == doctest::Approx(4.0 * lor.eta(mu)));
}

TEST_CASE("induced metric: Schwarzschild tetrad against the matrix-product oracle") {
  auto frame = schwarzschild_frame();
  auto g = induced_metric_at(frame, kSchwP);
  double r = kSchwP[1], th = kSchwP[2];
  double f = 1.0 - 2.0 / r;
  CHECK(g.g[0][0] == doctest::Approx(f).epsilon(1e-14));
  CHECK(g.g[1][1] == doctest::Approx(-1.0 / f).epsilon(1e-14));
  CHECK(g.g[2][2] == doctest::Approx(-r * r).epsilon(1e-14));
  CHECK(g.g[3][3] == doctest::Approx(-r * r * std::sin(th) * std::sin(th)).epsilon(1e-14));

  // g^{mu alpha} g_{alpha nu} = delta
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      double s = 0;
      for (int al = 0; al < 4; ++al) s += g.ginv[mu][al] * g.g[al][nu];
      CHECK(std::fabs(s - (mu == nu ? 1.0 : 0.0)) < 1e-12);
    }

  auto [plus, minus] = symmetric_signature(g.g, 4);
  CHECK(plus == 1);
  CHECK(minus == 3);
}

TEST_CASE("singular frame rejected") {
  std::vector<Expr> c(4, Expr::constant(0.0));
  c[ix2(2, 0, 0)] = Expr::constant(1.0);
  c[ix2(2, 1, 1)] = Expr::coordinate(0);  // vanishes at r = 0
  FrameField f({2, 0}, c);
  CHECK_THROWS_AS(induced_metric_at(f, {0.0, 1.0}), SingularFrame);
}

TEST_CASE("christoffel: flat, polar, Schwarzschild") {
  auto mink = FrameField::identity({1, 3});
  auto flat = christoffel_at(mink, {0.4, -0.2, 0.9, 0.0});
  CHECK(max_abs(flat.gamma, 4) == 0.0);

  auto pol = christoffel_at(polar_frame(), {2.0, 0.7});
  CHECK(pol.gamma[0][1][1] == doctest::Approx(-2.0).epsilon(1e-12));  // Gamma^r_{theta theta} = -r
  CHECK(pol.gamma[1][0][1] == doctest::Approx(0.5).epsilon(1e-12));   // Gamma^theta_{r theta} = 1/r
  CHECK(pol.gamma[1][1][0] == doctest::Approx(0.5).epsilon(1e-12));   // symmetric in lower indices

  auto frame = schwarzschild_frame();
  auto ch = christoffel_at(frame, kSchwP);
  double r = kSchwP[1], f = 1.0 - 2.0 / r;
  CHECK(ch.gamma[0][0][1] == doctest::Approx(1.0 / (r * r * f)).epsilon(1e-12));  // M/(r^2 f)
  for (int al = 0; al < 4; ++al)
    for (int be = 0; be < 4; ++be)
      for (int mu = 0; mu < 4; ++mu)
        CHECK(ch.gamma[al][be][mu] == doctest::Approx(ch.gamma[al][mu][be]).epsilon(1e-12));
}

TEST_CASE("metric compatibility: nabla g vanishes") {
  auto frame = schwarzschild_frame();
  // Build g_{mu nu} symbolically from the frame and take one covariant derivative.
  CoordTensorField g;
  g.p = 0;
  g.q = 2;
  g.m = 4;
  g.comp.assign(16, Expr::constant(0.0));
  Signature sig{1, 3};
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      Expr s = Expr::constant(0.0);
      for (int a = 0; a < 4; ++a)
        s = s + Expr::constant(sig.eta(a)) * frame.at(a, mu) * frame.at(a, nu);
      g.comp[ix2(4, mu, nu)] = s.simplified();
    }
  auto grad = covariant_derivative_at(g, frame, kSchwP);
  double res = 0;
  for (double v : grad) res = std::max(res, std::fabs(v));
  CHECK(res < 1e-10);
}

TEST_CASE("covariant derivative: constants and the identity tensor") {
  auto mink = FrameField::identity({1, 3});
  CoordTensorField t;
  t.p = 1;
  t.q = 1;
  t.m = 4;
  t.comp.assign(16, Expr::constant(0.0));
  for (int i = 0; i < 4; ++i) t.comp[ix2(4, i, i)] = Expr::constant(1.0);

  auto flat = covariant_derivative_rank11_at(t, mink, {0, 0, 0, 0});
  CHECK(max_abs(flat, 4) == 0.0);

  // delta^alpha_beta is covariantly constant for any connection
  auto schw = covariant_derivative_rank11_at(t, schwarzschild_frame(), kSchwP);
  CHECK(max_abs(schw, 4) < 1e-13);
}

TEST_CASE("spin connection: Minkowski, flat polar, Schwarzschild") {
  auto mink = FrameField::identity({1, 3});
  auto w0 = spin_connection_at(mink, {0.1, 0.2, 0.3, 0.4});
  CHECK(max_abs(w0.omega, 4) == 0.0);
  CHECK(w0.presym_residual < 1e-15);

  auto wp = spin_connection_at(polar_frame(), {1.7, 0.4});
  CHECK(wp.omega[0][1][1] == doctest::Approx(-1.0).epsilon(1e-12));  // omega^{12}_theta = -1
  CHECK(wp.omega[1][0][1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(wp.omega[0][1][0] == doctest::Approx(0.0));
  CHECK(wp.presym_residual < 1e-12);

  // Schwarzschild: omega^{10}_t = +M/r^2, i.e. omega^{01}_t = -M/r^2 for this
  // tetrad; the compatibility identity below pins the sign.
  auto frame = schwarzschild_frame();
  auto ws = spin_connection_at(frame, kSchwP);
  double r = kSchwP[1];
  CHECK(ws.omega[0][1][0] == doctest::Approx(-1.0 / (r * r)).epsilon(1e-11));
  CHECK(ws.omega[1][0][0] == doctest::Approx(1.0 / (r * r)).epsilon(1e-11));
  CHECK(ws.presym_residual < 1e-11);

  // antisymmetry is exact by construction
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int mu = 0; mu < 4; ++mu)
        CHECK(ws.omega[a][b][mu] == -ws.omega[b][a][mu]);
}

TEST_CASE("frame compatibility residual") {
  auto frame = schwarzschild_frame();
  std::mt19937_64 rng(2024);
  std::vector<std::pair<double, double>> box = {{-1, 1}, {3.2, 19}, {0.4, 2.7}, {0.1, 6.1}};
  for (int k = 0; k < 20; ++k) {
    Point p = fltest::random_point(rng, box);
    CHECK(frame_compatibility_residual(frame, p) < 1e-9);
  }

  auto mink = FrameField::identity({1, 3});
  CHECK(frame_compatibility_residual(mink, {0, 0, 0, 0}) == 0.0);

  // perturbing omega by 0.1 in one component must show up
  Point p = kSchwP;
  auto gam = christoffel_at(frame, p);
  auto om = spin_connection_at(frame, p);
  om.omega[0][1][2] += 0.1;
  om.omega[1][0][2] -= 0.1;
  CHECK(frame_compatibility_residual(frame, gam, om, p) >= 0.09);
}

TEST_CASE("curvature: flat, Schwarzschild vacuum, sphere scalar") {
  auto mink = FrameField::identity({1, 3});
  auto c0 = curvature_at(mink, {0.3, 0.1, -0.4, 0.8});
  CHECK(max_abs(c0.riemann, 4) == 0.0);

  auto frame = schwarzschild_frame();
  auto cs = curvature_at(frame, kSchwP);
  CHECK(std::fabs(cs.scalar) < 1e-7);
  CHECK(max_abs(cs.ricci_frame, 4) < 1e-7);
  // the full Riemann tensor itself is far from zero
  CHECK(max_abs(cs.riemann, 4) > 1e-4);
  // antisymmetries exact
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
          CHECK(cs.riemann[a][b][mu][nu] == -cs.riemann[b][a][mu][nu]);
          CHECK(cs.riemann[a][b][mu][nu] == -cs.riemann[a][b][nu][mu]);
        }

  // 2-sphere of radius a: R = 2/a^2
  double rad = 3.0;
  std::vector<Expr> c(4, Expr::constant(0.0));
  c[ix2(2, 0, 0)] = Expr::constant(rad);
  c[ix2(2, 1, 1)] = Expr::constant(rad) * Expr::call(ExprFn::Sin, Expr::coordinate(0));
  FrameField sphere({2, 0}, c);
  auto csph = curvature_at(sphere, {1.0, 0.5});
  CHECK(csph.scalar == doctest::Approx(2.0 / (rad * rad)).epsilon(1e-10));
}

TEST_CASE("first Bianchi contraction on shell") {
  auto frame = schwarzschild_frame();
  auto cs = curvature_at(frame, kSchwP);
  double res = 0;
  for (int a = 0; a < 4; ++a)
    for (int rho = 0; rho < 4; ++rho)
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
          auto low = [&](int r_, int m_, int n_) {
            double s = 0;
            for (int b = 0; b < 4; ++b) {
              double eb_r = frame.sig.eta(b) * frame.at(b, r_).evaluate(kSchwP);
              s += cs.riemann[a][b][m_][n_] * eb_r;
            }
            return s;
          };
          double tot = low(rho, mu, nu) + low(mu, nu, rho) + low(nu, rho, mu) -
                       low(rho, nu, mu) - low(nu, mu, rho) - low(mu, rho, nu);
          res = std::max(res, std::fabs(tot / 6.0));
        }
  CHECK(res < 1e-7);
}

TEST_CASE("epsilon symbol") {
  CHECK(epsilon4(0, 1, 2, 3) == 1);
  CHECK(epsilon4(1, 0, 2, 3) == -1);
  CHECK(epsilon4(0, 0, 2, 3) == 0);
  CHECK(epsilon4(3, 2, 1, 0) == 1);
  CHECK_THROWS_AS(epsilon4(0, 1, 2, 4), DimensionError);
}
