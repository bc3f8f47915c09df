#ifndef FRAMELIFT_NOETHER_HPP
#define FRAMELIFT_NOETHER_HPP

#include <functional>
#include <optional>

#include "framelift/lorentz.hpp"

namespace framelift {

// ---------------------------------------------------------------------------
// Maxwell theory on a frame background.
// ---------------------------------------------------------------------------

struct EMField {
  std::vector<Expr> A;  // A_mu

  EMField() = default;
  explicit EMField(std::vector<Expr> a);

  int dim() const { return static_cast<int>(A.size()); }
  // F_{mu nu} = d_mu A_nu - d_nu A_mu, antisymmetric exactly (mu<nu stored).
  const Expr& F(int mu, int nu) const;
  double F_at(int mu, int nu, const Point& p) const;

 private:
  std::vector<Expr> f_upper_;  // mu<nu entries
  int pair_index(int mu, int nu) const;
};

// Symmetry generator (xi^mu, xi): a diffeomorphism part and a gauge scalar.
struct EMGaugeGenerator {
  std::vector<Expr> xi;
  Expr gauge;

  int dim() const { return static_cast<int>(xi.size()); }
  static EMGaugeGenerator pure_gauge(int m, Expr scalar);
};

// L_M = -1/4 sqrt|g| F_{mu nu} F^{mu nu}  (a coordinate density)
double maxwell_lagrangian_at(const EMField& em, const FrameField& frame, const Point& p);

// H_{alpha beta} = F_{mu alpha} F^mu_beta - 1/4 F.F g_{alpha beta}
Mat em_stress_at(const EMField& em, const FrameField& frame, const Point& p);

// d_mu(sqrt|g| F^{mu nu}) per nu: the Maxwell equations as a residual.
Vec maxwell_residual_at(const EMField& em, const FrameField& frame, const Point& p);

struct EMLieAAt {
  Vec value;
  double cross_residual;  // displayed formula vs direct expansion
};

// Lie_Xi A_mu = xi^lam F_{lam mu} - d_mu(xi - xi^lam A_lam)
EMLieAAt em_lie_derivative_A_at(const EMField& em, const EMGaugeGenerator& gen,
                                const FrameField& frame, const Point& p);

// E^mu = -sqrt|g| F^{mu nu} Lie_Xi A_nu - xi^mu L_M, as jets (order >= 1 lets
// the caller take the divergence exactly).
std::vector<Jet> em_noether_current_jets(const EMField& em, const EMGaugeGenerator& gen,
                                         const FrameJets& fj);
Vec em_noether_current_at(const EMField& em, const EMGaugeGenerator& gen, const FrameField& frame,
                          const Point& p);

// Gauge superpotential density U^{mu nu} = sqrt|g| F^{mu nu} xi.
std::vector<Jet> em_superpotential_jets(const EMField& em, const Expr& gauge_scalar,
                                        const FrameJets& fj);

// ---------------------------------------------------------------------------
// Surface quadrature for charges.
// ---------------------------------------------------------------------------

struct SurfaceQuadrature {
  enum class Rule { Midpoint, GaussLegendre };

  std::array<int, 2> frozen_coord;
  std::array<double, 2> frozen_value;
  std::array<int, 2> integ_coord;   // increasing coordinate order
  std::array<double, 2> lo, hi;
  std::array<int, 2> nodes;         // >= 8 each
  Rule rule = Rule::GaussLegendre;

  void validate(int m) const;  // throws QuadratureError
};

struct ChargeResult {
  double charge;
  double quad_error;  // |node-doubled - base|
};

// Q = integral over the 2-surface of integrand(p); the integrand is normally
// U^{mu nu} for the frozen pair (mu < nu), orientation by increasing
// coordinate order.
ChargeResult surface_charge(const std::function<double(const Point&)>& integrand,
                            const SurfaceQuadrature& surf, int m);

struct GaussChargeResult {
  double charge;
  double quad_error;
  double maxwell_residual;  // sampled on the surface
};

GaussChargeResult gauss_charge(const EMField& em, const Expr& gauge_scalar,
                               const FrameField& frame, const SurfaceQuadrature& surf);

// ---------------------------------------------------------------------------
// Tetrad-affine gravity and the Holst term.
// ---------------------------------------------------------------------------

struct GravityScene {
  FrameField frame;
  // Dynamical Lorentz connection; empty means the induced spin connection.
  std::optional<LorentzConnectionField> connection;
  double beta = 1.0;

  int dim() const { return frame.dim(); }
  bool induced() const { return !connection.has_value(); }
};

// Connection jets for the scene (the induced omega or the explicit field).
std::vector<Jet> scene_connection_jets(const GravityScene& gs, const FrameJets& fj);

// L_tA = 1/2 eps^{mu nu rho sg} R^{ab}_{mu nu} e^c_rho e^d_sg eps_{abcd}
// (coordinate density; 4D only).
double tA_lagrangian_at(const GravityScene& gs, const Point& p);
Jet tA_lagrangian_jet(const GravityScene& gs, const FrameJets& fj);

struct FieldEqResiduals {
  Mat einstein;           // R^a_mu - 1/2 R e^a_mu
  double einstein_norm;
  double torsion;         // skew exterior covariant derivative of e^[c e^d]
};

FieldEqResiduals tA_field_eq_residuals_at(const GravityScene& gs, const Point& p);

struct ConnectionLieAt {
  Ten3 value;  // [a][b][nu]
  double cross_residual;
};

// Lie_Xi Gamma^{ab}_nu = xi^lam R^{ab}_{lam nu} + nabla_nu xi_hat^{ab},
// xi_hat^{ab} = xi^{ab} + xi^lam Gamma^{ab}_lam; cross-checked against the
// direct transformation expansion.
ConnectionLieAt connection_lie_derivative_at(const GaugeGenerator& gen, const GravityScene& gs,
                                             const Point& p);
// Same with the Kosmann lift of a spacetime field inserted for xi^{ab}.
ConnectionLieAt connection_lie_derivative_kosmann_at(const VectorField& xi, const GravityScene& gs,
                                                     const Point& p);

// U^{mu nu} = 4 e e_a^mu e_b^nu xi_hat^{ab} for a generator value.
Mat tA_superpotential_at(const GravityScene& gs, const Mat& xi_hat, const Point& p);

// Same with the Kosmann generator inserted, as jets (for divergences).
std::vector<Jet> ta_superpotential_kosmann_jets(const VectorField& xi, const GravityScene& gs,
                                                const FrameJets& fj);

// Komar superpotential 4 e nabla^{[nu} xi^{mu]}, oriented to coincide with the
// tetrad-affine superpotential under the Kosmann lift (the library's KLV
// bracket makes e_a^mu e_b^nu nabla^{[b}xi^{a]} = nabla^{[nu}xi^{mu]}).
// Built purely from metric quantities, independent of the spin connection.
Mat komar_superpotential_at(const VectorField& xi, const FrameField& frame, const Point& p);
std::vector<Jet> komar_superpotential_jets(const VectorField& xi, const FrameJets& fj);

// Bulk Noether current E^mu = 4 e e_a^mu e_b^nu Lie_Xi Gamma^{ab}_nu - xi^mu L_tA.
std::vector<Jet> ta_noether_current_jets(const GaugeGenerator& gen, const GravityScene& gs,
                                         const FrameJets& fj);
std::vector<Jet> ta_noether_current_kosmann_jets(const VectorField& xi, const GravityScene& gs,
                                                 const FrameJets& fj);

// Holst difference superpotential.
struct HolstDifferenceAt {
  Mat u_delta;              // beta * e e_c^mu e_d^nu eps^{cd}_{ab} xi_hat^{ab}
  Mat kosmann_form;         // beta * eps^{mu nu alpha beta} nabla_alpha xi_beta
  double double_divergence; // d_mu d_nu of the Kosmann-form density
  bool kosmann_mode;
};

HolstDifferenceAt holst_difference_superpotential_at(const GravityScene& gs, const Mat& xi_hat,
                                                     const Point& p);
HolstDifferenceAt holst_difference_superpotential_kosmann_at(const VectorField& xi,
                                                             const GravityScene& gs,
                                                             const Point& p);

// Ordinary divergence of a jet-valued current: sum_mu d_mu E^mu.
double divergence_value(const std::vector<Jet>& current, int m);
// Ordinary divergence of an antisymmetric jet density: (d_nu U^{mu nu})_mu.
Vec antisym_divergence_value(const std::vector<Jet>& u, int m);

}  // namespace framelift

#endif
