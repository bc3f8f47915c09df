#include "framelift/lorentz.hpp"

#include <algorithm>
#include <cmath>

namespace framelift {

Representation::Representation(int p_, int q_, int m_) : p(p_), q(q_), m(m_) {
  if (p < 0 || q < 0 || p + q > 4) throw DimensionError("supported tensor ranks have p+q <= 4");
  if (m < 2 || m > kMaxDim) throw DimensionError("representation dimension out of range");
}

int Representation::size() const {
  int s = 1;
  for (int i = 0; i < slots(); ++i) s *= m;
  return s;
}

LorentzTensorField::LorentzTensorField(Representation r, std::vector<Expr> c)
    : rep(r), comp(std::move(c)) {
  if (static_cast<int>(comp.size()) != rep.size())
    throw DimensionError("tensor field component count does not match rank");
}

LorentzTensorField LorentzTensorField::constant(Representation r, const TensorValue& v) {
  if (static_cast<int>(v.size()) != r.size())
    throw DimensionError("tensor value count does not match rank");
  std::vector<Expr> c;
  c.reserve(v.size());
  for (double x : v) c.push_back(Expr::constant(x));
  return LorentzTensorField(r, std::move(c));
}

std::vector<Jet> tensor_jets(const LorentzTensorField& t, const Point& p, int order) {
  auto xs = point_jets(p, order);
  std::vector<Jet> out(t.comp.size());
  for (std::size_t A = 0; A < t.comp.size(); ++A) out[A] = t.comp[A].evaluate(xs);
  return out;
}

namespace {

void decompose_index(int A, int m, int slots, int* idx) {
  for (int s = slots - 1; s >= 0; --s) {
    idx[s] = A % m;
    A /= m;
  }
}

int compose_index(const int* idx, int m, int slots) {
  int A = 0;
  for (int s = 0; s < slots; ++s) A = A * m + idx[s];
  return A;
}

}  // namespace

TensorValue generator_action(const Mat& xi_ab, const TensorValue& t, const Representation& rep,
                             Signature sig) {
  const int m = rep.m;
  const int n = rep.size();
  TensorValue out(n, 0.0);
  int idx[4], jdx[4];
  // xi^a_c = xi^{ab} eta_{bc} = eta(c) xi^{ac}
  for (int A = 0; A < n; ++A) {
    decompose_index(A, m, rep.slots(), idx);
    double s = 0;
    for (int slot = 0; slot < rep.slots(); ++slot) {
      for (int c = 0; c < m; ++c) {
        std::copy(idx, idx + rep.slots(), jdx);
        jdx[slot] = c;
        double tv = t[compose_index(jdx, m, rep.slots())];
        if (rep.slot_is_contravariant(slot))
          s += sig.eta(c) * xi_ab[idx[slot]][c] * tv;
        else
          s -= sig.eta(idx[slot]) * xi_ab[c][idx[slot]] * tv;
      }
    }
    out[A] = s;
  }
  return out;
}

std::vector<Jet> generator_action_jets(const std::vector<Jet>& xi_ab, const std::vector<Jet>& t,
                                       const Representation& rep, Signature sig) {
  const int m = rep.m;
  const int n = rep.size();
  int ord = std::min(xi_ab[0].order, t[0].order);
  std::vector<Jet> out(n);
  int idx[4], jdx[4];
  for (int A = 0; A < n; ++A) {
    decompose_index(A, m, rep.slots(), idx);
    Jet s = Jet::constant(xi_ab[0].dim, ord, 0.0);
    for (int slot = 0; slot < rep.slots(); ++slot) {
      for (int c = 0; c < m; ++c) {
        std::copy(idx, idx + rep.slots(), jdx);
        jdx[slot] = c;
        const Jet& tv = t[compose_index(jdx, m, rep.slots())];
        if (rep.slot_is_contravariant(slot))
          s += xi_ab[ix2(m, idx[slot], c)] * tv * sig.eta(c);
        else
          s -= xi_ab[ix2(m, c, idx[slot])] * tv * sig.eta(idx[slot]);
      }
    }
    out[A] = s;
  }
  return out;
}

Mat sigma_matrix(int a, int b, Signature sig) {
  const int m = sig.dim();
  Mat out = zero_mat();
  for (int c = 0; c < m; ++c)
    for (int d = 0; d < m; ++d) {
      double v = 0;
      if (c == b && d == a) v += 0.5 * sig.eta(a);
      if (c == a && d == b) v -= 0.5 * sig.eta(b);
      out[c][d] = v;  // (sigma_ab)^c_d = eta_{d[a} delta^c_{b]}
    }
  return out;
}

namespace {

// Covariant derivative of Lorentz tensor jets with a connection (ix3 jets):
// upper slot + w^a_{c mu} t^c, lower slot - w^c_{b mu} t_c.
std::vector<Jet> lorentz_covariant_derivative_jets(const std::vector<Jet>& tj,
                                                   const std::vector<Jet>& conn,
                                                   const Representation& rep, Signature sig,
                                                   int mu) {
  const int m = rep.m;
  const int n = rep.size();
  std::vector<Jet> out(n);
  int idx[4], jdx[4];
  for (int A = 0; A < n; ++A) {
    decompose_index(A, m, rep.slots(), idx);
    Jet s = jet_derivative(tj[A], mu);
    for (int slot = 0; slot < rep.slots(); ++slot)
      for (int c = 0; c < m; ++c) {
        std::copy(idx, idx + rep.slots(), jdx);
        jdx[slot] = c;
        const Jet& tv = tj[compose_index(jdx, m, rep.slots())];
        if (rep.slot_is_contravariant(slot)) {
          // w^{a}_{c mu} = eta(c) w^{ac}_mu
          s += conn[ix3(m, idx[slot], c, mu)] * tv * sig.eta(c);
        } else {
          s -= conn[ix3(m, c, idx[slot], mu)] * tv * sig.eta(idx[slot]);
        }
      }
    out[A] = s;
  }
  return out;
}

TensorResult lie_derivative_routes(const std::vector<Jet>& xi_j, const std::vector<Jet>& gen_ab,
                                   const std::vector<Jet>& gen_vertical_ab,
                                   const LorentzTensorField& t, const FrameJets& fj) {
  const int m = fj.m;
  const int n = t.rep.size();
  auto tj = tensor_jets(t, fj.point, fj.order);

  // Route 1: partial derivatives plus the bare generator.
  std::vector<double> route1(n);
  {
    auto act = generator_action_jets(gen_ab, tj, t.rep, fj.sig);
    for (int A = 0; A < n; ++A) {
      double s = -act[A].v;
      for (int mu = 0; mu < m; ++mu) s += xi_j[mu].v * tj[A].g1(mu);
      route1[A] = s;
    }
  }

  // Route 2: spin-connection covariant derivatives plus the vertical part.
  std::vector<double> route2(n);
  {
    auto act = generator_action_jets(gen_vertical_ab, tj, t.rep, fj.sig);
    for (int A = 0; A < n; ++A) route2[A] = -act[A].v;
    for (int mu = 0; mu < m; ++mu) {
      auto nab = lorentz_covariant_derivative_jets(tj, fj.omega, t.rep, fj.sig, mu);
      for (int A = 0; A < n; ++A) route2[A] += xi_j[mu].v * nab[A].v;
    }
  }

  TensorResult out;
  out.rep = t.rep;
  out.value = route1;
  double res = 0;
  for (int A = 0; A < n; ++A) res = std::max(res, std::fabs(route1[A] - route2[A]));
  out.cross_residual = res;
  return out;
}

}  // namespace

TensorResult gauge_lie_derivative_at(const GaugeGenerator& gen, const LorentzTensorField& t,
                                     const FrameField& frame, const Point& p) {
  auto fj = frame_jets(frame, p, 1);
  const int m = fj.m;
  auto xi_j = vector_jets(VectorField(gen.xi), p, fj.order);
  auto xs = point_jets(p, fj.order - 1);
  std::vector<Jet> gen_ab(m * m), gen_v(m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      Jet bare = gen.xi_ab[ix2(m, a, b)].evaluate(xs);
      gen_ab[ix2(m, a, b)] = bare;
      Jet vert = bare;
      for (int mu = 0; mu < m; ++mu) vert += fj.Omega(a, b, mu) * xi_j[mu];
      gen_v[ix2(m, a, b)] = vert;
    }
  return lie_derivative_routes(xi_j, gen_ab, gen_v, t, fj);
}

TensorResult kosmann_lie_derivative_at(const VectorField& xi, const LorentzTensorField& t,
                                       const FrameField& frame, const Point& p) {
  auto fj = frame_jets(frame, p, 1);
  auto xi_j = vector_jets(xi, p, fj.order);
  auto hat = kosmann_generator_jets(xi, fj);
  auto vert = kosmann_vertical_jets(xi, fj);
  return lie_derivative_routes(xi_j, hat, vert, t, fj);
}

LorentzTensorField gauge_lie_field(const GaugeGenerator& gen, const LorentzTensorField& t,
                                   Signature sig) {
  const int m = t.rep.m;
  const int n = t.rep.size();
  std::vector<Expr> out(n, Expr::constant(0.0));
  int idx[4], jdx[4];
  for (int A = 0; A < n; ++A) {
    decompose_index(A, m, t.rep.slots(), idx);
    Expr s = Expr::constant(0.0);
    for (int mu = 0; mu < m; ++mu) s = s + gen.xi[mu] * t.comp[A].differentiate(mu);
    for (int slot = 0; slot < t.rep.slots(); ++slot)
      for (int c = 0; c < m; ++c) {
        std::copy(idx, idx + t.rep.slots(), jdx);
        jdx[slot] = c;
        const Expr& tv = t.comp[compose_index(jdx, m, t.rep.slots())];
        if (t.rep.slot_is_contravariant(slot))
          s = s - Expr::constant(sig.eta(c)) * gen.xi_ab[ix2(m, idx[slot], c)] * tv;
        else
          s = s + Expr::constant(sig.eta(idx[slot])) * gen.xi_ab[ix2(m, c, idx[slot])] * tv;
      }
    out[A] = s.simplified();
  }
  return LorentzTensorField(t.rep, std::move(out));
}

std::vector<Jet> kosmann_lie_jets(const VectorField& xi, const LorentzTensorField& t,
                                  const FrameJets& fj) {
  const int m = fj.m;
  const int n = t.rep.size();
  auto tj = tensor_jets(t, fj.point, fj.order);
  auto xi_j = vector_jets(xi, fj.point, fj.order);
  auto hat = kosmann_generator_jets(xi, fj);  // order-1
  auto act = generator_action_jets(hat, tj, t.rep, fj.sig);
  std::vector<Jet> out(n);
  for (int A = 0; A < n; ++A) {
    Jet s = -act[A];
    for (int mu = 0; mu < m; ++mu) s += xi_j[mu] * jet_derivative(tj[A], mu);
    out[A] = s;
  }
  return out;
}

Vec kosmann_closed_form_rank10_at(const VectorField& xi, const LorentzTensorField& v,
                                  const FrameField& frame, const Point& p) {
  if (v.rep.p != 1 || v.rep.q != 0) throw DimensionError("closed form applies to rank (1,0)");
  auto fj = frame_jets(frame, p, 1);
  const int m = fj.m;
  auto vj = tensor_jets(v, p, 1);
  auto xi_j = vector_jets(xi, p, 1);

  // nabla_b xi^a (transported covariant derivative) and nabla_d v^a.
  Mat nab_xi = zero_mat();
  {
    auto xi_j2 = vector_jets(xi, p, fj.order);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        double s = 0;
        for (int mu = 0; mu < m; ++mu)
          for (int nu = 0; nu < m; ++nu) {
            double cov = xi_j2[nu].g1(mu);
            for (int lam = 0; lam < m; ++lam) cov += fj.Gamma(nu, lam, mu).v * xi_j2[lam].v;
            s += fj.E(a, nu).v * cov * fj.Einv(mu, b).v;
          }
        nab_xi[a][b] = s;  // nabla_b xi^a
      }
  }
  auto nab_v = [&](int d, int a) {
    double s = 0;
    for (int mu = 0; mu < m; ++mu) {
      double cov = vj[a].g1(mu);
      for (int c = 0; c < m; ++c) cov += fj.sig.eta(c) * fj.Omega(a, c, mu).v * vj[c].v;
      s += fj.Einv(mu, d).v * cov;
    }
    return s;
  };

  Vec out = zero_vec();
  for (int a = 0; a < m; ++a) {
    double s = 0;
    for (int d = 0; d < m; ++d) {
      double xi_d = 0;  // xi^d = e^d_mu xi^mu
      for (int mu = 0; mu < m; ++mu) xi_d += fj.E(d, mu).v * xi_j[mu].v;
      s += nab_xi[d][d] * vj[a].v + xi_d * nab_v(d, a);
    }
    for (int c = 0; c < m; ++c) s -= nab_xi[a][c] * vj[c].v;
    out[a] = s;
  }
  return out;
}

TensorValue frame_transport(TransportDirection dir, const Representation& rep,
                            const TensorValue& t, const FrameField& frame, const Point& p) {
  const int m = rep.m;
  const int n = rep.size();
  if (static_cast<int>(t.size()) != n) throw DimensionError("tensor value count mismatch");
  auto fj = frame_jets(frame, p, 0);

  // Per slot: to_lorentz contracts an upper slot with e^a_mu and a lower slot
  // with e^mu_a; to_spacetime uses the inverse factors.
  TensorValue cur = t;
  int idx[4], jdx[4];
  for (int slot = 0; slot < rep.slots(); ++slot) {
    TensorValue next(n, 0.0);
    bool contra = rep.slot_is_contravariant(slot);
    for (int A = 0; A < n; ++A) {
      decompose_index(A, m, rep.slots(), idx);
      double s = 0;
      for (int c = 0; c < m; ++c) {
        std::copy(idx, idx + rep.slots(), jdx);
        jdx[slot] = c;
        double factor;
        if (dir == TransportDirection::ToLorentz)
          factor = contra ? fj.E(idx[slot], c).v : fj.Einv(c, idx[slot]).v;
        else
          factor = contra ? fj.Einv(idx[slot], c).v : fj.E(c, idx[slot]).v;
        s += factor * cur[compose_index(jdx, m, rep.slots())];
      }
      next[A] = s;
    }
    cur = next;
  }
  return cur;
}

LorentzTensorField to_lorentz_field(const Representation& rep, const std::vector<Expr>& comp,
                                    const FrameField& frame) {
  if (rep.q != 0)
    throw DimensionError("symbolic transport is implemented for contravariant ranks only");
  const int m = rep.m;
  const int n = rep.size();
  std::vector<Expr> cur = comp;
  int idx[4], jdx[4];
  for (int slot = 0; slot < rep.slots(); ++slot) {
    std::vector<Expr> next(n, Expr::constant(0.0));
    for (int A = 0; A < n; ++A) {
      decompose_index(A, m, rep.slots(), idx);
      Expr s = Expr::constant(0.0);
      for (int c = 0; c < m; ++c) {
        std::copy(idx, idx + rep.slots(), jdx);
        jdx[slot] = c;
        s = s + frame.at(idx[slot], c) * cur[compose_index(jdx, m, rep.slots())];
      }
      next[A] = s.simplified();
    }
    cur = next;
  }
  return LorentzTensorField(rep, std::move(cur));
}

double frame_lie_derivative_identity_residual(const VectorField& xi, const FrameField& frame,
                                              const Point& p) {
  auto fj = frame_jets(frame, p, 1);
  const int m = fj.m;
  auto xi_j = vector_jets(xi, p, 1);
  auto hat = kosmann_generator_jets(xi, fj);
  auto lg = lie_metric_jets(xi, fj);

  double res = 0;
  for (int a = 0; a < m; ++a)
    for (int mu = 0; mu < m; ++mu) {
      // direct gauge Lie derivative of the frame:
      //   xi^lam d_lam e^a_mu + d_mu xi^lam e^a_lam - xi_hat^a_b e^b_mu
      double direct = 0;
      for (int lam = 0; lam < m; ++lam) {
        direct += xi_j[lam].v * jet_derivative(fj.E(a, mu), lam).v;
        direct += xi_j[lam].g1(mu) * fj.E(a, lam).v;
      }
      for (int b = 0; b < m; ++b)
        direct -= fj.sig.eta(b) * hat[ix2(m, a, b)].v * fj.E(b, mu).v;

      double half = 0;
      for (int lam = 0; lam < m; ++lam) half += 0.5 * lg[ix2(m, mu, lam)].v * fj.Eup(a, lam).v;

      res = std::max(res, std::fabs(direct - half));
    }
  return res;
}

double vector_transport_identity_residual(const VectorField& xi, const VectorField& v,
                                          const FrameField& frame, const Point& p) {
  auto fj = frame_jets(frame, p, 1);
  const int m = fj.m;

  // lhs: Kosmann Lie derivative of the transported section v^a = e^a_mu v^mu.
  auto va = to_lorentz_field(Representation(1, 0, m), v.comp, frame);
  auto lhs = kosmann_lie_derivative_at(xi, va, frame, p);

  // rhs term 1: (Lie_xi v)^mu e^a_mu with the ordinary Lie derivative.
  auto lie_v = vector_commutator(xi, v);
  auto lvj = vector_jets(lie_v, p, 0);
  // rhs term 2: (Lie_xi e^a_mu) v^mu via the frame identity 1/2 Lie g e.
  auto lg = lie_metric_jets(xi, fj);
  auto vj = vector_jets(v, p, 0);

  double res = 0;
  for (int a = 0; a < m; ++a) {
    double rhs = 0;
    for (int mu = 0; mu < m; ++mu) {
      rhs += lvj[mu].v * fj.E(a, mu).v;
      double lie_e = 0;
      for (int lam = 0; lam < m; ++lam) lie_e += 0.5 * lg[ix2(m, mu, lam)].v * fj.Eup(a, lam).v;
      rhs += lie_e * vj[mu].v;
    }
    res = std::max(res, std::fabs(lhs.value[a] - rhs));
  }
  return res;
}

VectorDefectAt vector_naturality_defect_residual(const VectorField& xi, const VectorField& zeta,
                                                 const LorentzTensorField& v,
                                                 const FrameField& frame, const Point& p) {
  if (v.rep.p != 1 || v.rep.q != 0) throw DimensionError("defect formula applies to rank (1,0)");
  auto fj2 = frame_jets(frame, p, 2);
  const int m = fj2.m;

  VectorDefectAt out;
  out.lhs = zero_vec();
  out.bracket = zero_vec();
  out.defect_term = zero_vec();

  // Lie along the commutator.
  auto comm = vector_commutator(xi, zeta);
  auto lie_comm = kosmann_lie_jets(comm, v, fj2);
  for (int a = 0; a < m; ++a) out.lhs[a] = lie_comm[a].v;

  // Nested derivatives: components of Lie_zeta v as order-1 jets, acted on by
  // Lie_xi, and vice versa. The inner result is a plain jet array, so the
  // outer application repeats the generator/transport contraction directly.
  auto nested = [&](const VectorField& first, const VectorField& second) {
    auto inner = kosmann_lie_jets(second, v, fj2);  // order 1
    auto xi_j = vector_jets(first, p, 1);
    auto hat = kosmann_generator_jets(first, fj2);  // order 1
    Vec res = zero_vec();
    auto act = generator_action_jets(hat, inner, v.rep, fj2.sig);
    for (int a = 0; a < m; ++a) {
      double s = -act[a].v;
      for (int mu = 0; mu < m; ++mu) s += xi_j[mu].v * inner[a].g1(mu);
      res[a] = s;
    }
    return res;
  };
  Vec xz = nested(xi, zeta);
  Vec zx = nested(zeta, xi);
  for (int a = 0; a < m; ++a) out.bracket[a] = xz[a] - zx[a];

  // Quarter-defect term.
  auto vj = tensor_jets(v, p, 0);
  auto lgx = lie_metric_jets(xi, fj2);
  auto lgz = lie_metric_jets(zeta, fj2);
  for (int a = 0; a < m; ++a) {
    double s = 0;
    for (int al = 0; al < m; ++al)
      for (int be = 0; be < m; ++be)
        for (int rho = 0; rho < m; ++rho)
          for (int sg = 0; sg < m; ++sg) {
            double v_up_al = 0, v_up_rho = 0;
            for (int c = 0; c < m; ++c) {
              v_up_al += fj2.Einv(al, c).v * vj[c].v;
              v_up_rho += fj2.Einv(rho, c).v * vj[c].v;
            }
            double coeff = v_up_al * fj2.Ginv(be, rho).v * fj2.Eup(a, sg).v -
                           v_up_rho * fj2.Ginv(be, sg).v * fj2.Eup(a, al).v;
            s += coeff * lgx[ix2(m, rho, sg)].v * lgz[ix2(m, al, be)].v;
          }
    out.defect_term[a] = 0.25 * s;
  }

  double res = 0, dn = 0;
  for (int a = 0; a < m; ++a) {
    res = std::max(res, std::fabs(out.lhs[a] - out.bracket[a] - out.defect_term[a]));
    dn = std::max(dn, std::fabs(out.defect_term[a]));
  }
  out.residual = res;
  out.defect_norm = dn;
  return out;
}

VectorField minkowski_plane_generator(int a, int b, Signature sig) {
  const int m = sig.dim();
  if (a < 0 || b < 0 || a >= m || b >= m || a == b)
    throw DimensionError("plane indices must be distinct and in range");
  // Matches the scene catalog: boosts use M_{ab} (a the timelike leg),
  // rotations the opposite orientation, e.g. rot_xy = -y d_x + x d_y.
  bool rotation = sig.eta(a) == sig.eta(b);
  int i = rotation ? b : a, j = rotation ? a : b;
  std::vector<Expr> comp(m, Expr::constant(0.0));
  // xi^mu = x_i delta^mu_j - x_j delta^mu_i, indices lowered with eta
  comp[j] = (Expr::constant(sig.eta(i)) * Expr::coordinate(i)).simplified();
  comp[i] = (Expr::constant(-sig.eta(j)) * Expr::coordinate(j)).simplified();
  return VectorField(std::move(comp));
}

BoostCheckAt boost_transformation_check(const Vec& v, int plane_a, int plane_b,
                                        const FrameField& frame, const Point& p) {
  const int m = frame.dim();
  if (frame.sig.plus != 1 || frame.sig.minus != 3)
    throw SceneMismatch("boost check needs Lorentzian signature (1,3)");
  for (int a = 0; a < m; ++a)
    for (int mu = 0; mu < m; ++mu) {
      double want = a == mu ? 1.0 : 0.0;
      if (std::fabs(frame.at(a, mu).evaluate(p) - want) > 1e-14)
        throw SceneMismatch("boost check needs the identity Minkowski frame");
    }

  VectorField xi = minkowski_plane_generator(plane_a, plane_b, frame.sig);
  TensorValue vv(v.begin(), v.begin() + m);
  auto lie = kosmann_lie_derivative_at(xi, LorentzTensorField::constant(Representation(1, 0, m), vv),
                                       frame, p);

  // lambda^mu_nu = d_nu xi^mu read off the generator itself
  auto nat = natural_lift_at(xi, p);
  BoostCheckAt out;
  out.lie = zero_vec();
  out.generator_action = zero_vec();
  double res = 0;
  for (int a = 0; a < m; ++a) {
    out.lie[a] = lie.value[a];
    double s = 0;
    for (int b = 0; b < m; ++b) s -= nat.dxi[b][a] * v[b];  // -lambda^a_b v^b
    out.generator_action[a] = s;
    res = std::max(res, std::fabs(out.lie[a] - s));
  }
  out.residual = res;
  return out;
}

}  // namespace framelift
