#include "framelift/lifts.hpp"

#include <algorithm>
#include <cmath>

namespace framelift {

std::vector<Jet> vector_jets(const VectorField& xi, const Point& p, int order) {
  auto xs = point_jets(p, order);
  std::vector<Jet> out(xi.dim());
  for (int mu = 0; mu < xi.dim(); ++mu) out[mu] = xi.at(mu).evaluate(xs);
  return out;
}

namespace {

// nabla_mu xi^nu = d_mu xi^nu + Gamma^nu_{lambda mu} xi^lambda, as jets.
std::vector<Jet> nabla_vector_jets(const std::vector<Jet>& xi_j, const FrameJets& fj) {
  const int m = fj.m;
  std::vector<Jet> out(m * m);
  for (int mu = 0; mu < m; ++mu)
    for (int nu = 0; nu < m; ++nu) {
      Jet s = jet_derivative(xi_j[nu], mu);
      for (int lam = 0; lam < m; ++lam) s += fj.Gamma(nu, lam, mu) * xi_j[lam];
      out[ix2(m, mu, nu)] = s;
    }
  return out;
}

}  // namespace

NaturalLiftAt natural_lift_at(const VectorField& xi, const Point& p) {
  const int m = xi.dim();
  auto xj = vector_jets(xi, p, 1);
  NaturalLiftAt out;
  out.m = m;
  out.xi = zero_vec();
  out.dxi = zero_mat();
  for (int nu = 0; nu < m; ++nu) {
    out.xi[nu] = xj[nu].v;
    for (int mu = 0; mu < m; ++mu) out.dxi[mu][nu] = xj[nu].g1(mu);
  }
  return out;
}

std::vector<Jet> kosmann_generator_jets(const VectorField& xi, const FrameJets& fj) {
  const int m = fj.m;
  auto xi_j = vector_jets(xi, fj.point, fj.order);
  auto nab = nabla_vector_jets(xi_j, fj);

  // T^{ab} = e^a_nu nabla_mu xi^nu e^{b mu}
  std::vector<Jet> T(m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      Jet s = Jet::constant(m, fj.order - 1, 0.0);
      for (int mu = 0; mu < m; ++mu)
        for (int nu = 0; nu < m; ++nu) s += fj.E(a, nu) * nab[ix2(m, mu, nu)] * fj.Eup(b, mu);
      T[ix2(m, a, b)] = s;
    }

  std::vector<Jet> out(m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      Jet s = (T[ix2(m, a, b)] - T[ix2(m, b, a)]) * 0.5;
      for (int mu = 0; mu < m; ++mu) s -= fj.Omega(a, b, mu) * xi_j[mu];
      out[ix2(m, a, b)] = s;
    }
  return out;
}

std::vector<Jet> kosmann_vertical_jets(const VectorField& xi, const FrameJets& fj) {
  const int m = fj.m;
  auto xi_j = vector_jets(xi, fj.point, fj.order);
  auto nab = nabla_vector_jets(xi_j, fj);

  // nabla_b xi^a = e^a_nu nabla_mu xi^nu e^mu_b, then raise b with eta.
  std::vector<Jet> D(m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      Jet s = Jet::constant(m, fj.order - 1, 0.0);
      for (int mu = 0; mu < m; ++mu)
        for (int nu = 0; nu < m; ++nu) s += fj.E(a, nu) * nab[ix2(m, mu, nu)] * fj.Einv(mu, b);
      D[ix2(m, a, b)] = s;
    }
  std::vector<Jet> out(m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      Jet up_ab = D[ix2(m, a, b)] * fj.sig.eta(b);  // nabla^b xi^a
      Jet up_ba = D[ix2(m, b, a)] * fj.sig.eta(a);  // nabla^a xi^b
      out[ix2(m, a, b)] = (up_ab - up_ba) * 0.5;
    }
  return out;
}

KosmannLiftAt kosmann_lift_at(const VectorField& xi, const FrameField& frame, const Point& p) {
  auto fj = frame_jets(frame, p, 1);
  const int m = fj.m;
  auto hat = kosmann_generator_jets(xi, fj);
  auto vert = kosmann_vertical_jets(xi, fj);
  auto xi_j = vector_jets(xi, p, 0);

  KosmannLiftAt out;
  out.m = m;
  out.xi = zero_vec();
  out.xi_hat = zero_mat();
  out.xi_hat_vertical = zero_mat();
  for (int mu = 0; mu < m; ++mu) out.xi[mu] = xi_j[mu].v;
  double res = 0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      out.xi_hat[a][b] = hat[ix2(m, a, b)].v;
      out.xi_hat_vertical[a][b] = vert[ix2(m, a, b)].v;
      double wxi = 0;
      for (int mu = 0; mu < m; ++mu) wxi += fj.Omega(a, b, mu).v * xi_j[mu].v;
      res = std::max(res, std::fabs(out.xi_hat_vertical[a][b] - (out.xi_hat[a][b] + wxi)));
    }
  out.consistency_residual = res;
  return out;
}

std::vector<Jet> lie_metric_jets(const VectorField& xi, const FrameJets& fj) {
  const int m = fj.m;
  auto xi_j = vector_jets(xi, fj.point, fj.order);
  std::vector<Jet> out(m * m);
  for (int mu = 0; mu < m; ++mu)
    for (int nu = 0; nu < m; ++nu) {
      Jet s = Jet::constant(m, fj.order - 1, 0.0);
      for (int lam = 0; lam < m; ++lam) {
        s += xi_j[lam] * jet_derivative(fj.G(mu, nu), lam);
        s += jet_derivative(xi_j[lam], mu) * fj.G(lam, nu);
        s += jet_derivative(xi_j[lam], nu) * fj.G(mu, lam);
      }
      out[ix2(m, mu, nu)] = s;
    }
  return out;
}

LieMetricAt lie_derivative_metric_at(const VectorField& xi, const FrameField& frame,
                                     const Point& p) {
  auto fj = frame_jets(frame, p, 1);
  const int m = fj.m;
  auto lg = lie_metric_jets(xi, fj);

  LieMetricAt out;
  out.m = m;
  out.value = zero_mat();
  for (int mu = 0; mu < m; ++mu)
    for (int nu = 0; nu < m; ++nu) out.value[mu][nu] = lg[ix2(m, mu, nu)].v;

  // Independent route: 2 nabla_(mu xi_nu) with xi_nu = g_{nu lambda} xi^lambda.
  auto xi_j = vector_jets(xi, p, 1);
  Mat second = zero_mat();
  for (int mu = 0; mu < m; ++mu)
    for (int nu = 0; nu < m; ++nu) {
      auto cov = [&](int m1, int n1) {
        double s = 0;
        for (int lam = 0; lam < m; ++lam) {
          // d_{m1} xi_{n1} = d_{m1}(g_{n1 lam} xi^lam)
          s += jet_derivative(fj.G(n1, lam), m1).v * xi_j[lam].v +
               fj.G(n1, lam).v * xi_j[lam].g1(m1);
          double xlow = 0;
          for (int rho = 0; rho < m; ++rho) xlow += fj.G(lam, rho).v * xi_j[rho].v;
          s -= fj.Gamma(lam, n1, m1).v * xlow;
        }
        return s;
      };
      second[mu][nu] = cov(mu, nu) + cov(nu, mu);
    }
  out.cross_residual = max_abs_diff(out.value, second, m);
  return out;
}

double killing_residual(const VectorField& xi, const FrameField& frame,
                        const std::vector<Point>& pts) {
  double res = 0;
  for (const auto& p : pts) {
    auto lie = lie_derivative_metric_at(xi, frame, p);
    res = std::max(res, max_abs(lie.value, lie.m));
  }
  return res;
}

VectorField vector_commutator(const VectorField& xi, const VectorField& zeta) {
  const int m = xi.dim();
  if (zeta.dim() != m) throw DimensionError("commutator of fields with different dimensions");
  std::vector<Expr> out;
  out.reserve(m);
  for (int mu = 0; mu < m; ++mu) {
    Expr s = Expr::constant(0.0);
    for (int lam = 0; lam < m; ++lam)
      s = s + xi.at(lam) * zeta.at(mu).differentiate(lam) -
          zeta.at(lam) * xi.at(mu).differentiate(lam);
    out.push_back(s.simplified());
  }
  return VectorField(std::move(out));
}

Mat so_commutator(const Mat& a, const Mat& b, int m, Signature sig) {
  Mat out = zero_mat();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double s = 0;
      for (int c = 0; c < m; ++c) s += sig.eta(c) * (a[i][c] * b[c][j] - b[i][c] * a[c][j]);
      out[i][j] = s;
    }
  return out;
}

KosmannDefectAt kosmann_defect_residual(const VectorField& xi, const VectorField& zeta,
                                        const FrameField& frame, const Point& p) {
  auto fj = frame_jets(frame, p, 2);
  const int m = fj.m;

  auto xi_hat = kosmann_generator_jets(xi, fj);    // order 1
  auto zeta_hat = kosmann_generator_jets(zeta, fj);
  auto xi_j = vector_jets(xi, p, 0);
  auto zeta_j = vector_jets(zeta, p, 0);

  // Lift of the commutator field.
  auto comm = vector_commutator(xi, zeta);
  auto comm_hat = kosmann_generator_jets(comm, fj);

  Mat hat_xi = zero_mat(), hat_zeta = zero_mat();
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      hat_xi[a][b] = xi_hat[ix2(m, a, b)].v;
      hat_zeta[a][b] = zeta_hat[ix2(m, a, b)].v;
    }
  Mat fiber_quad = so_commutator(hat_xi, hat_zeta, m, frame.sig);

  KosmannDefectAt out;
  out.m = m;
  out.lhs = zero_mat();
  out.rhs = zero_mat();
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      double transport = 0;
      for (int mu = 0; mu < m; ++mu)
        transport += xi_j[mu].v * zeta_hat[ix2(m, a, b)].g1(mu) -
                     zeta_j[mu].v * xi_hat[ix2(m, a, b)].g1(mu);
      double bracket = transport - fiber_quad[a][b];
      out.lhs[a][b] = comm_hat[ix2(m, a, b)].v - bracket;
    }

  // rhs: 1/2 skew of e (Lie_xi g^{-1}) (Lie_zeta g) e, indices raised by g/eta.
  auto lgx = lie_metric_jets(xi, fj);    // Lie_xi g (lower indices)
  auto lgz = lie_metric_jets(zeta, fj);  // Lie_zeta g
  Mat lgx_up = zero_mat();               // Lie_xi g^{alpha lambda}
  for (int al = 0; al < m; ++al)
    for (int lam = 0; lam < m; ++lam) {
      double s = 0;
      for (int mu = 0; mu < m; ++mu)
        for (int nu = 0; nu < m; ++nu)
          s -= fj.Ginv(al, mu).v * fj.Ginv(lam, nu).v * lgx[ix2(m, mu, nu)].v;
      lgx_up[al][lam] = s;
    }
  Mat pre = zero_mat();
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      double s = 0;
      for (int al = 0; al < m; ++al)
        for (int lam = 0; lam < m; ++lam)
          for (int be = 0; be < m; ++be)
            s += fj.E(a, al).v * lgx_up[al][lam] * lgz[ix2(m, lam, be)].v * fj.Eup(b, be).v;
      pre[a][b] = 0.5 * s;
    }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) out.rhs[a][b] = 0.5 * (pre[a][b] - pre[b][a]);

  Mat diff = zero_mat();
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) diff[a][b] = out.lhs[a][b] - out.rhs[a][b];
  out.residual = max_abs(diff, m);
  out.rhs_norm = max_abs(out.rhs, m);
  return out;
}

GaugeGenerator::GaugeGenerator(std::vector<Expr> base, const std::vector<Expr>& lorentz_full)
    : xi(std::move(base)) {
  const int m = dim();
  if (static_cast<int>(lorentz_full.size()) != m * m)
    throw DimensionError("gauge generator Lorentz part needs m*m entries");
  xi_ab.assign(m * m, Expr::constant(0.0));
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      xi_ab[ix2(m, a, b)] = lorentz_full[ix2(m, a, b)];
      xi_ab[ix2(m, b, a)] = (-lorentz_full[ix2(m, a, b)]).simplified();
    }
}

GaugeGenerator GaugeGenerator::pure_translation(std::vector<Expr> base) {
  int m = static_cast<int>(base.size());
  return GaugeGenerator(std::move(base), std::vector<Expr>(m * m, Expr::constant(0.0)));
}

GaugeGenerator GaugeGenerator::pure_gauge(int m, const std::vector<Expr>& lorentz_full) {
  return GaugeGenerator(std::vector<Expr>(m, Expr::constant(0.0)), lorentz_full);
}

GaugeGenerator gauge_commutator(const GaugeGenerator& a, const GaugeGenerator& b, Signature sig) {
  const int m = a.dim();
  VectorField base = vector_commutator(VectorField(a.xi), VectorField(b.xi));
  std::vector<Expr> fiber(m * m, Expr::constant(0.0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Expr s = Expr::constant(0.0);
      for (int mu = 0; mu < m; ++mu)
        s = s + a.xi[mu] * b.xi_ab[ix2(m, i, j)].differentiate(mu) -
            b.xi[mu] * a.xi_ab[ix2(m, i, j)].differentiate(mu);
      for (int c = 0; c < m; ++c)
        s = s - Expr::constant(sig.eta(c)) *
                    (a.xi_ab[ix2(m, i, c)] * b.xi_ab[ix2(m, c, j)] -
                     b.xi_ab[ix2(m, i, c)] * a.xi_ab[ix2(m, c, j)]);
      fiber[ix2(m, i, j)] = s.simplified();
    }
  return GaugeGenerator(base.comp, fiber);
}

}  // namespace framelift
