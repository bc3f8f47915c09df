#ifndef FRAMELIFT_GEOMETRY_HPP
#define FRAMELIFT_GEOMETRY_HPP

#include <vector>

#include "framelift/expr.hpp"
#include "framelift/jet.hpp"
#include "framelift/tensors.hpp"

namespace framelift {

// Flat metric eta = diag(+1 x plus, -1 x minus); Lorentzian default (1,3).
struct Signature {
  int plus = 1;
  int minus = 3;

  int dim() const { return plus + minus; }
  double eta(int a) const { return a < plus ? 1.0 : -1.0; }
};

using Point = std::vector<double>;

// The fundamental geometric input: e^a_mu as expressions, row a = frame
// (Latin) index, column mu = coordinate index. Everything else is derived.
struct FrameField {
  Signature sig;
  std::vector<Expr> comp;  // m*m, ix2(m, a, mu)

  FrameField() = default;
  FrameField(Signature s, std::vector<Expr> c);

  int dim() const { return sig.dim(); }
  const Expr& at(int a, int mu) const { return comp[ix2(dim(), a, mu)]; }
  Expr& at(int a, int mu) { return comp[ix2(dim(), a, mu)]; }

  static FrameField identity(Signature s);
};

// A dynamical so(eta)-valued connection Gamma^{ab}_mu, antisymmetric in ab.
// Construction takes the a<b components and fills the rest by antisymmetry.
struct LorentzConnectionField {
  Signature sig;
  std::vector<Expr> comp;  // m*m*m, ix3(m, a, b, mu)

  LorentzConnectionField() = default;
  LorentzConnectionField(Signature s, const std::vector<Expr>& upper_triangle_by_mu);

  int dim() const { return sig.dim(); }
  const Expr& at(int a, int b, int mu) const { return comp[ix3(dim(), a, b, mu)]; }
};

// ---------------------------------------------------------------------------
// Jet pipeline: evaluates the whole frame geometry at a point carrying exact
// coordinate derivatives up to `order`. Derived levels drop one order each
// (Christoffel and spin connection carry order-1, curvature order-2).
// ---------------------------------------------------------------------------

struct FrameJets {
  int m = 0;
  int order = 0;
  Signature sig;
  Point point;

  std::vector<Jet> e;     // [a][mu]
  std::vector<Jet> einv;  // [mu][a] = e_a^mu
  std::vector<Jet> eup;   // [b][mu] = e^{b mu} = eta^{bc} e_c^mu
  Jet det;                // det of e^a_mu
  std::vector<Jet> g;     // [mu][nu]
  std::vector<Jet> ginv;  // [mu][nu]
  Jet sqrt_abs_det_g;
  std::vector<Jet> gamma;  // [alpha][beta][mu], Levi-Civita, order-1
  std::vector<Jet> omega;  // [a][b][mu], induced spin connection, order-1
  double omega_presym_residual = 0.0;

  const Jet& E(int a, int mu) const { return e[ix2(m, a, mu)]; }
  const Jet& Einv(int mu, int a) const { return einv[ix2(m, mu, a)]; }
  const Jet& Eup(int b, int mu) const { return eup[ix2(m, b, mu)]; }
  const Jet& G(int mu, int nu) const { return g[ix2(m, mu, nu)]; }
  const Jet& Ginv(int mu, int nu) const { return ginv[ix2(m, mu, nu)]; }
  const Jet& Gamma(int al, int be, int mu) const { return gamma[ix3(m, al, be, mu)]; }
  const Jet& Omega(int a, int b, int mu) const { return omega[ix3(m, a, b, mu)]; }
};

// Throws SingularFrame when |det e| < 1e-12 at the point.
FrameJets frame_jets(const FrameField& frame, const Point& p, int order);

// Evaluates coordinate seeds for a point (shared by other field evaluations).
std::vector<Jet> point_jets(const Point& p, int order);

// Jet-valued matrix inverse (Gauss-Jordan, pivot on values). a is n x n flat.
std::vector<Jet> jet_matrix_inverse(const std::vector<Jet>& a, int n, Jet* det_out = nullptr);

// Curvature of an so(eta) connection given as jets (ix3, order >= 1).
// R^{ab}_{mu nu} = d_mu w^{ab}_nu - d_nu w^{ab}_mu
//                + w^a_{c mu} w^{cb}_nu - w^a_{c nu} w^{cb}_mu.
std::vector<Jet> connection_curvature_jets(const std::vector<Jet>& conn, int m, Signature sig);

// Evaluates an explicit connection field to jets.
std::vector<Jet> connection_jets(const LorentzConnectionField& conn, const Point& p, int order);

// ---------------------------------------------------------------------------
// Per-point value structs.
// ---------------------------------------------------------------------------

struct MetricAt {
  int m;
  Signature sig;
  Mat g;
  Mat ginv;
  double sqrt_abs_det;
};

struct ChristoffelAt {
  int m;
  Ten3 gamma;  // [alpha][beta][mu]
};

struct SpinConnectionAt {
  int m;
  Ten3 omega;  // [a][b][mu], antisymmetric in ab by construction
  double presym_residual;
};

struct CurvatureAt {
  int m;
  Ten4 riemann;     // R^{ab}_{mu nu}: [a][b][mu][nu]
  Mat ricci_frame;  // R^a_mu = R^{ab}_{mu nu} e_b^nu
  double scalar;    // R = R^{ab}_{mu nu} e_a^mu e_b^nu
};

MetricAt induced_metric_at(const FrameField& frame, const Point& p);
ChristoffelAt christoffel_at(const FrameField& frame, const Point& p);
SpinConnectionAt spin_connection_at(const FrameField& frame, const Point& p);
CurvatureAt curvature_at(const FrameField& frame, const Point& p);
CurvatureAt curvature_at(const FrameField& frame, const LorentzConnectionField& conn, const Point& p);

// max-norm of nabla_mu e^nu_a = d_mu e^nu_a + Gamma^nu_{lambda mu} e^lambda_a
//                             - omega^c_{a mu} e^nu_c over all indices.
double frame_compatibility_residual(const FrameField& frame, const ChristoffelAt& gamma,
                                    const SpinConnectionAt& omega, const Point& p);
double frame_compatibility_residual(const FrameField& frame, const Point& p);

// Coordinate (Greek-index) tensor field of rank (p contravariant, q covariant).
struct CoordTensorField {
  int p = 0, q = 0;
  int m = 0;
  std::vector<Expr> comp;  // m^(p+q), row-major, contravariant slots first

  int slots() const { return p + q; }
  int size() const;
};

// nabla_mu t with one Christoffel term per slot; layout out[mu * size + A].
std::vector<double> covariant_derivative_at(const CoordTensorField& t, const FrameField& frame,
                                            const Point& p);
// Convenience for the rank-(1,1) case: [mu][alpha][beta] = nabla_mu t^alpha_beta.
Ten3 covariant_derivative_rank11_at(const CoordTensorField& t, const FrameField& frame,
                                    const Point& p);

// Totally antisymmetric symbol, 4 indices in 0..3, values in {-1, 0, +1}.
int epsilon4(int a, int b, int c, int d);

// Signature (plus-count, minus-count) of a symmetric matrix via Jacobi
// eigenvalues; used by scene validation.
std::pair<int, int> symmetric_signature(const Mat& s, int m, double tol = 1e-10);

}  // namespace framelift

#endif
