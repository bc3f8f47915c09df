#include "framelift/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace framelift {

FrameField::FrameField(Signature s, std::vector<Expr> c) : sig(s), comp(std::move(c)) {
  int m = dim();
  if (m < 2) throw DimensionError("frame dimension must be >= 2");
  if (m > kMaxDim) throw DimensionError("frame dimension exceeds supported maximum (4)");
  if (static_cast<int>(comp.size()) != m * m)
    throw DimensionError("frame needs m*m components");
}

FrameField FrameField::identity(Signature s) {
  int m = s.dim();
  std::vector<Expr> c(m * m, Expr::constant(0.0));
  for (int a = 0; a < m; ++a) c[ix2(m, a, a)] = Expr::constant(1.0);
  return FrameField(s, std::move(c));
}

LorentzConnectionField::LorentzConnectionField(Signature s,
                                               const std::vector<Expr>& upper_triangle_by_mu)
    : sig(s) {
  int m = dim();
  int pairs = m * (m - 1) / 2;
  if (static_cast<int>(upper_triangle_by_mu.size()) != pairs * m)
    throw DimensionError("connection needs m*(m-1)/2 * m upper-triangle components");
  comp.assign(m * m * m, Expr::constant(0.0));
  int k = 0;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      for (int mu = 0; mu < m; ++mu) {
        const Expr& v = upper_triangle_by_mu[k * m + mu];
        comp[ix3(m, a, b, mu)] = v;
        comp[ix3(m, b, a, mu)] = (-v).simplified();
      }
      ++k;
    }
}

std::vector<Jet> point_jets(const Point& p, int order) {
  int m = static_cast<int>(p.size());
  std::vector<Jet> xs;
  xs.reserve(m);
  for (int i = 0; i < m; ++i) xs.push_back(Jet::coordinate(m, order, i, p[i]));
  return xs;
}

std::vector<Jet> jet_matrix_inverse(const std::vector<Jet>& a, int n, Jet* det_out) {
  // Gauss-Jordan with partial pivoting on jet values.
  std::vector<Jet> w = a;
  std::vector<Jet> inv(n * n);
  int dim = a[0].dim, ord = a[0].order;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[ix2(n, i, j)] = Jet::constant(dim, ord, i == j ? 1.0 : 0.0);
  Jet det = Jet::constant(dim, ord, 1.0);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(w[ix2(n, r, col)].v) > std::fabs(w[ix2(n, piv, col)].v)) piv = r;
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(w[ix2(n, col, j)], w[ix2(n, piv, j)]);
        std::swap(inv[ix2(n, col, j)], inv[ix2(n, piv, j)]);
      }
      det = det * -1.0;
    }
    Jet pivot = w[ix2(n, col, col)];
    if (pivot.v == 0.0) throw SingularFrame(0.0);
    det = det * pivot;
    Jet ip = jet_recip(pivot);
    for (int j = 0; j < n; ++j) {
      w[ix2(n, col, j)] = w[ix2(n, col, j)] * ip;
      inv[ix2(n, col, j)] = inv[ix2(n, col, j)] * ip;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Jet f = w[ix2(n, r, col)];
      if (f.v == 0.0 && jet_is_constant(f)) continue;
      for (int j = 0; j < n; ++j) {
        w[ix2(n, r, j)] = w[ix2(n, r, j)] - f * w[ix2(n, col, j)];
        inv[ix2(n, r, j)] = inv[ix2(n, r, j)] - f * inv[ix2(n, col, j)];
      }
    }
  }
  if (det_out) *det_out = det;
  return inv;
}

FrameJets frame_jets(const FrameField& frame, const Point& p, int order) {
  const int m = frame.dim();
  if (static_cast<int>(p.size()) != m) throw DimensionError("point dimension != frame dimension");

  FrameJets out;
  out.m = m;
  out.order = order;
  out.sig = frame.sig;
  out.point = p;

  auto xs = point_jets(p, order);
  out.e.resize(m * m);
  for (int a = 0; a < m; ++a)
    for (int mu = 0; mu < m; ++mu) out.e[ix2(m, a, mu)] = frame.at(a, mu).evaluate(xs);

  // einv as e_a^mu: invert the matrix with rows = a, columns = mu, then
  // transpose into [mu][a] layout.
  Jet det;
  auto inv_am = jet_matrix_inverse(out.e, m, &det);  // inv_am[mu? ...]
  out.det = det;
  if (std::fabs(det.v) < 1e-12) throw SingularFrame(std::fabs(det.v));
  out.einv.resize(m * m);
  for (int mu = 0; mu < m; ++mu)
    for (int a = 0; a < m; ++a) out.einv[ix2(m, mu, a)] = inv_am[ix2(m, mu, a)];

  out.eup.resize(m * m);
  for (int b = 0; b < m; ++b)
    for (int mu = 0; mu < m; ++mu)
      out.eup[ix2(m, b, mu)] = out.Einv(mu, b) * frame.sig.eta(b);

  out.g.resize(m * m);
  for (int mu = 0; mu < m; ++mu)
    for (int nu = 0; nu < m; ++nu) {
      Jet s = Jet::constant(m, order, 0.0);
      for (int a = 0; a < m; ++a) s += out.E(a, mu) * out.E(a, nu) * frame.sig.eta(a);
      out.g[ix2(m, mu, nu)] = s;
    }

  out.ginv.resize(m * m);
  for (int mu = 0; mu < m; ++mu)
    for (int nu = 0; nu < m; ++nu) {
      Jet s = Jet::constant(m, order, 0.0);
      for (int a = 0; a < m; ++a) s += out.Einv(mu, a) * out.Einv(nu, a) * frame.sig.eta(a);
      out.ginv[ix2(m, mu, nu)] = s;
    }

  // sqrt|det g| = |det e| (eta is unimodular)
  out.sqrt_abs_det_g = abs(det);

  if (order >= 1) {
    // Christoffel symbols of the induced metric, order-1 jets.
    std::vector<Jet> dg(m * m * m);  // [rho][mu][nu]
    for (int rho = 0; rho < m; ++rho)
      for (int mu = 0; mu < m; ++mu)
        for (int nu = 0; nu < m; ++nu)
          dg[ix3(m, rho, mu, nu)] = jet_derivative(out.G(mu, nu), rho);

    out.gamma.resize(m * m * m);
    for (int al = 0; al < m; ++al)
      for (int be = 0; be < m; ++be)
        for (int mu = 0; mu < m; ++mu) {
          Jet s = Jet::constant(m, order - 1, 0.0);
          for (int lam = 0; lam < m; ++lam)
            s += out.Ginv(al, lam) * (dg[ix3(m, be, lam, mu)] + dg[ix3(m, mu, lam, be)] -
                                      dg[ix3(m, lam, be, mu)]);
          out.gamma[ix3(m, al, be, mu)] = s * 0.5;
        }

    // Spin connection of the frame, then explicit antisymmetrization.
    std::vector<Jet> pre(m * m * m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int mu = 0; mu < m; ++mu) {
          Jet s = Jet::constant(m, order - 1, 0.0);
          for (int al = 0; al < m; ++al) {
            Jet inner = jet_derivative(out.Eup(b, al), mu);
            for (int be = 0; be < m; ++be)
              inner += out.Gamma(al, be, mu) * out.Eup(b, be);
            s += out.E(a, al) * inner;
          }
          pre[ix3(m, a, b, mu)] = s;
        }
    out.omega.resize(m * m * m);
    double presym = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int mu = 0; mu < m; ++mu) {
          out.omega[ix3(m, a, b, mu)] =
              (pre[ix3(m, a, b, mu)] - pre[ix3(m, b, a, mu)]) * 0.5;
          presym = std::max(presym,
                            std::fabs(0.5 * (pre[ix3(m, a, b, mu)].v + pre[ix3(m, b, a, mu)].v)));
        }
    out.omega_presym_residual = presym;
  }

  return out;
}

std::vector<Jet> connection_jets(const LorentzConnectionField& conn, const Point& p, int order) {
  int m = conn.dim();
  auto xs = point_jets(p, order);
  std::vector<Jet> out(m * m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int mu = 0; mu < m; ++mu) out[ix3(m, a, b, mu)] = conn.at(a, b, mu).evaluate(xs);
  return out;
}

std::vector<Jet> connection_curvature_jets(const std::vector<Jet>& conn, int m, Signature sig) {
  int ord = conn[0].order;
  std::vector<Jet> R(m * m * m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int mu = 0; mu < m; ++mu)
        for (int nu = 0; nu < m; ++nu) {
          Jet s = jet_derivative(conn[ix3(m, a, b, nu)], mu) -
                  jet_derivative(conn[ix3(m, a, b, mu)], nu);
          for (int c = 0; c < m; ++c) {
            double et = sig.eta(c);
            s += (conn[ix3(m, a, c, mu)] * conn[ix3(m, c, b, nu)] -
                  conn[ix3(m, a, c, nu)] * conn[ix3(m, c, b, mu)]) *
                 et;
          }
          R[ix4(m, a, b, mu, nu)] = s;
        }
  (void)ord;
  return R;
}

// ---------------------------------------------------------------------------

MetricAt induced_metric_at(const FrameField& frame, const Point& p) {
  auto fj = frame_jets(frame, p, 0);
  MetricAt out;
  out.m = fj.m;
  out.sig = frame.sig;
  out.g = zero_mat();
  out.ginv = zero_mat();
  for (int mu = 0; mu < fj.m; ++mu)
    for (int nu = 0; nu < fj.m; ++nu) {
      out.g[mu][nu] = fj.G(mu, nu).v;
      out.ginv[mu][nu] = fj.Ginv(mu, nu).v;
    }
  out.sqrt_abs_det = fj.sqrt_abs_det_g.v;
  return out;
}

ChristoffelAt christoffel_at(const FrameField& frame, const Point& p) {
  auto fj = frame_jets(frame, p, 1);
  ChristoffelAt out;
  out.m = fj.m;
  out.gamma = zero_ten3();
  for (int al = 0; al < fj.m; ++al)
    for (int be = 0; be < fj.m; ++be)
      for (int mu = 0; mu < fj.m; ++mu) out.gamma[al][be][mu] = fj.Gamma(al, be, mu).v;
  return out;
}

SpinConnectionAt spin_connection_at(const FrameField& frame, const Point& p) {
  auto fj = frame_jets(frame, p, 1);
  SpinConnectionAt out;
  out.m = fj.m;
  out.omega = zero_ten3();
  for (int a = 0; a < fj.m; ++a)
    for (int b = 0; b < fj.m; ++b)
      for (int mu = 0; mu < fj.m; ++mu) out.omega[a][b][mu] = fj.Omega(a, b, mu).v;
  out.presym_residual = fj.omega_presym_residual;
  return out;
}

namespace {

CurvatureAt curvature_from_jets(const FrameJets& fj, const std::vector<Jet>& conn) {
  auto R = connection_curvature_jets(conn, fj.m, fj.sig);
  CurvatureAt out;
  out.m = fj.m;
  out.riemann = zero_ten4();
  out.ricci_frame = zero_mat();
  out.scalar = 0.0;
  int m = fj.m;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int mu = 0; mu < m; ++mu)
        for (int nu = 0; nu < m; ++nu) out.riemann[a][b][mu][nu] = R[ix4(m, a, b, mu, nu)].v;
  for (int a = 0; a < m; ++a)
    for (int mu = 0; mu < m; ++mu) {
      double s = 0;
      for (int b = 0; b < m; ++b)
        for (int nu = 0; nu < m; ++nu) s += out.riemann[a][b][mu][nu] * fj.Einv(nu, b).v;
      out.ricci_frame[a][mu] = s;
    }
  for (int a = 0; a < m; ++a)
    for (int mu = 0; mu < m; ++mu) out.scalar += out.ricci_frame[a][mu] * fj.Einv(mu, a).v;
  return out;
}

}  // namespace

CurvatureAt curvature_at(const FrameField& frame, const Point& p) {
  auto fj = frame_jets(frame, p, 2);
  return curvature_from_jets(fj, fj.omega);
}

CurvatureAt curvature_at(const FrameField& frame, const LorentzConnectionField& conn,
                         const Point& p) {
  auto fj = frame_jets(frame, p, 2);
  auto cj = connection_jets(conn, p, 1);
  return curvature_from_jets(fj, cj);
}

double frame_compatibility_residual(const FrameField& frame, const ChristoffelAt& gamma,
                                    const SpinConnectionAt& omega, const Point& p) {
  auto fj = frame_jets(frame, p, 1);
  int m = fj.m;
  double res = 0.0;
  for (int mu = 0; mu < m; ++mu)
    for (int nu = 0; nu < m; ++nu)
      for (int a = 0; a < m; ++a) {
        double s = jet_derivative(fj.Einv(nu, a), mu).v;
        for (int lam = 0; lam < m; ++lam) s += gamma.gamma[nu][lam][mu] * fj.Einv(lam, a).v;
        for (int c = 0; c < m; ++c) {
          // omega^c_{a mu} = omega^{cb}_mu eta_{ba} = eta(a) * omega^{ca}_mu
          s -= frame.sig.eta(a) * omega.omega[c][a][mu] * fj.Einv(nu, c).v;
        }
        res = std::max(res, std::fabs(s));
      }
  return res;
}

double frame_compatibility_residual(const FrameField& frame, const Point& p) {
  return frame_compatibility_residual(frame, christoffel_at(frame, p), spin_connection_at(frame, p),
                                      p);
}

// ---------------------------------------------------------------------------

int CoordTensorField::size() const {
  int s = 1;
  for (int i = 0; i < slots(); ++i) s *= m;
  return s;
}

std::vector<double> covariant_derivative_at(const CoordTensorField& t, const FrameField& frame,
                                            const Point& p) {
  const int m = t.m;
  const int n_slots = t.slots();
  const int size = t.size();
  auto xs = point_jets(p, 1);
  std::vector<Jet> tj(size);
  for (int A = 0; A < size; ++A) tj[A] = t.comp[A].evaluate(xs);
  auto fj = frame_jets(frame, p, 1);

  auto decompose = [&](int A, std::vector<int>& idx) {
    for (int s = n_slots - 1; s >= 0; --s) {
      idx[s] = A % m;
      A /= m;
    }
  };
  auto compose = [&](const std::vector<int>& idx) {
    int A = 0;
    for (int s = 0; s < n_slots; ++s) A = A * m + idx[s];
    return A;
  };

  std::vector<double> out(m * size, 0.0);
  std::vector<int> idx(n_slots), jdx(n_slots);
  for (int mu = 0; mu < m; ++mu)
    for (int A = 0; A < size; ++A) {
      decompose(A, idx);
      double s = tj[A].g1(mu);
      for (int slot = 0; slot < n_slots; ++slot) {
        bool contra = slot < t.p;
        for (int c = 0; c < m; ++c) {
          jdx = idx;
          jdx[slot] = c;
          double tv = tj[compose(jdx)].v;
          if (contra)
            s += fj.Gamma(idx[slot], c, mu).v * tv;
          else
            s -= fj.Gamma(c, idx[slot], mu).v * tv;
        }
      }
      out[mu * size + A] = s;
    }
  return out;
}

Ten3 covariant_derivative_rank11_at(const CoordTensorField& t, const FrameField& frame,
                                    const Point& p) {
  if (t.p != 1 || t.q != 1) throw DimensionError("expected a rank-(1,1) tensor");
  auto flat = covariant_derivative_at(t, frame, p);
  Ten3 out = zero_ten3();
  int m = t.m;
  for (int mu = 0; mu < m; ++mu)
    for (int al = 0; al < m; ++al)
      for (int be = 0; be < m; ++be) out[mu][al][be] = flat[mu * (m * m) + ix2(m, al, be)];
  return out;
}

int epsilon4(int a, int b, int c, int d) {
  int idx[4] = {a, b, c, d};
  for (int i = 0; i < 4; ++i)
    if (idx[i] < 0 || idx[i] > 3) throw DimensionError("epsilon indices must lie in 0..3");
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (idx[i] == idx[j]) return 0;
      if (idx[i] > idx[j]) sign = -sign;
    }
  return sign;
}

std::pair<int, int> symmetric_signature(const Mat& s, int m, double tol) {
  // Cyclic Jacobi; m <= 4 so a handful of sweeps is plenty.
  Mat a = s;
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) off = std::max(off, std::fabs(a[i][j]));
    if (off < 1e-14) break;
    for (int p = 0; p < m; ++p)
      for (int q = p + 1; q < m; ++q) {
        if (std::fabs(a[p][q]) < 1e-300) continue;
        double theta = 0.5 * std::atan2(2.0 * a[p][q], a[q][q] - a[p][p]);
        double c = std::cos(theta), sn = std::sin(theta);
        Mat r = a;
        for (int k = 0; k < m; ++k) {
          r[p][k] = c * a[p][k] - sn * a[q][k];
          r[q][k] = sn * a[p][k] + c * a[q][k];
        }
        Mat r2 = r;
        for (int k = 0; k < m; ++k) {
          r2[k][p] = c * r[k][p] - sn * r[k][q];
          r2[k][q] = sn * r[k][p] + c * r[k][q];
        }
        a = r2;
      }
  }
  int plus = 0, minus = 0;
  for (int i = 0; i < m; ++i) {
    if (a[i][i] > tol) ++plus;
    else if (a[i][i] < -tol) ++minus;
  }
  return {plus, minus};
}

}  // namespace framelift
