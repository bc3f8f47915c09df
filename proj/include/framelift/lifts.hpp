#ifndef FRAMELIFT_LIFTS_HPP
#define FRAMELIFT_LIFTS_HPP

#include <vector>

#include "framelift/geometry.hpp"

namespace framelift {

// A spacetime vector field xi^mu given by expressions.
struct VectorField {
  std::vector<Expr> comp;

  VectorField() = default;
  explicit VectorField(std::vector<Expr> c) : comp(std::move(c)) {}

  int dim() const { return static_cast<int>(comp.size()); }
  const Expr& at(int mu) const { return comp[mu]; }

  static VectorField zero(int m) { return VectorField(std::vector<Expr>(m, Expr::constant(0.0))); }
};

std::vector<Jet> vector_jets(const VectorField& xi, const Point& p, int order);

// Lift to the general frame bundle: base components plus the fiber
// coefficients of rho^mu_nu, which are just d_mu xi^nu.
struct NaturalLiftAt {
  int m;
  Vec xi;
  Mat dxi;  // dxi[mu][nu] = d_mu xi^nu
};

NaturalLiftAt natural_lift_at(const VectorField& xi, const Point& p);

// Kosmann lift: base vector, so(eta) generator, and its vertical part.
// xi_hat^{ab}        from the frame form  e_nu^{[a} nabla_mu xi^nu e^{b]mu} - omega^{ab}_mu xi^mu
// xi_hat_vertical^{ab} independently as   nabla^{[b} xi^{a]}
// The two are tied by xi_hat_vertical = xi_hat + omega.xi; the residual of
// that relation is reported (it also witnesses connection independence).
struct KosmannLiftAt {
  int m;
  Vec xi;
  Mat xi_hat;
  Mat xi_hat_vertical;
  double consistency_residual;
};

KosmannLiftAt kosmann_lift_at(const VectorField& xi, const FrameField& frame, const Point& p);

// Jet-level Kosmann generator xi_hat^{ab} (ix2 layout); order = fj.order - 1.
std::vector<Jet> kosmann_generator_jets(const VectorField& xi, const FrameJets& fj);
// Vertical part nabla^{[b} xi^{a]} as jets.
std::vector<Jet> kosmann_vertical_jets(const VectorField& xi, const FrameJets& fj);

// (Lie_xi g)_{mu nu}; computed both from the partial-derivative expansion and
// as 2 nabla_(mu xi_nu), with the disagreement reported.
struct LieMetricAt {
  int m;
  Mat value;
  double cross_residual;
};

LieMetricAt lie_derivative_metric_at(const VectorField& xi, const FrameField& frame,
                                     const Point& p);

std::vector<Jet> lie_metric_jets(const VectorField& xi, const FrameJets& fj);

// max-norm of (Lie_xi g) over a set of points.
double killing_residual(const VectorField& xi, const FrameField& frame,
                        const std::vector<Point>& pts);

// [xi, zeta]^mu as expressions (exact symbolic derivatives).
VectorField vector_commutator(const VectorField& xi, const VectorField& zeta);

// Commutator defect of the Kosmann lift:
//   lhs = ([xi,zeta])^hat_K - [xi_hat_K, zeta_hat_K]
//   rhs = 1/2 e^a_alpha (Lie_xi g^{alpha lambda}) (Lie_zeta g_{lambda beta}) e^{b beta},
//         antisymmetric part.
// The fiber bracket of the lifted fields is
//   xi^mu d_mu zeta_hat^{ab} - zeta^mu d_mu xi_hat^{ab}
//   - (xi_hat^a_c zeta_hat^{cb} - zeta_hat^a_c xi_hat^{cb});
// the identity itself pins both orientations (see the tests).
struct KosmannDefectAt {
  int m;
  Mat lhs;
  Mat rhs;
  double residual;      // max |lhs - rhs|
  double rhs_norm;      // max |rhs|; vanishes when either field is Killing
};

KosmannDefectAt kosmann_defect_residual(const VectorField& xi, const VectorField& zeta,
                                        const FrameField& frame, const Point& p);

// Bundle generator Xi = xi^mu d_mu + xi^{ab} sigma_ab with expression
// components; antisymmetry of the Lorentz part is enforced at construction
// (entries with a < b are kept, the rest are derived).
struct GaugeGenerator {
  std::vector<Expr> xi;     // m
  std::vector<Expr> xi_ab;  // m*m, ix2

  GaugeGenerator() = default;
  GaugeGenerator(std::vector<Expr> base, const std::vector<Expr>& lorentz_full);

  int dim() const { return static_cast<int>(xi.size()); }
  static GaugeGenerator pure_translation(std::vector<Expr> base);
  static GaugeGenerator pure_gauge(int m, const std::vector<Expr>& lorentz_full);
};

// Commutator of bundle generators: base part [xi1, xi2], fiber part
// xi1.d(xi2^{ab}) - xi2.d(xi1^{ab}) - (xi1^a_c xi2^{cb} - xi2^a_c xi1^{cb}).
GaugeGenerator gauge_commutator(const GaugeGenerator& a, const GaugeGenerator& b, Signature sig);

// so(eta) matrix commutator with the first index raised: A^a_c B^{cb} - B^a_c A^{cb}.
Mat so_commutator(const Mat& a, const Mat& b, int m, Signature sig);

}  // namespace framelift

#endif
