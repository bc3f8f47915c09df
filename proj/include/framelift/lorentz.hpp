#ifndef FRAMELIFT_LORENTZ_HPP
#define FRAMELIFT_LORENTZ_HPP

#include <vector>

#include "framelift/lifts.hpp"

namespace framelift {

// Tensor representation of SO(eta): rank (p contravariant, q covariant) powers
// of the defining representation. Flattened index A runs row-major over the
// slots, contravariant slots first.
struct Representation {
  int p = 0;
  int q = 0;
  int m = 4;

  Representation() = default;
  Representation(int p_, int q_, int m_);

  int slots() const { return p + q; }
  int size() const;
  bool slot_is_contravariant(int s) const { return s < p; }
};

using TensorValue = std::vector<double>;

// A section of the associated bundle: components as expressions.
struct LorentzTensorField {
  Representation rep;
  std::vector<Expr> comp;

  LorentzTensorField() = default;
  LorentzTensorField(Representation r, std::vector<Expr> c);

  static LorentzTensorField constant(Representation r, const TensorValue& v);
};

std::vector<Jet> tensor_jets(const LorentzTensorField& t, const Point& p, int order);

// Index-wise so(eta) action of an antisymmetric generator, the paper's
// rank-(1,1) pattern extended one term per slot:
//   upper slot:  + xi^a_c t^{...c...}
//   lower slot:  - xi^c_b t_{...c...}
// with Latin indices moved by eta.
TensorValue generator_action(const Mat& xi_ab, const TensorValue& t, const Representation& rep,
                             Signature sig);
std::vector<Jet> generator_action_jets(const std::vector<Jet>& xi_ab, const std::vector<Jet>& t,
                                       const Representation& rep, Signature sig);

// Defining-representation matrices (sigma_ab)^c_d = eta_{d[a} delta^c_{b]}.
Mat sigma_matrix(int a, int b, Signature sig);

struct TensorResult {
  Representation rep;
  TensorValue value;
  double cross_residual;  // partial route vs covariant route
};

// Lie derivative along a bundle generator Xi = xi^mu d_mu + xi^{ab} sigma_ab:
//   Lie_Xi t = xi^mu d_mu t^A - (generator action of xi^{ab}) t.
// Also evaluated covariantly (nabla with the induced spin connection and the
// vertical part xi_V = xi^{ab} + omega^{ab}_mu xi^mu); the two must agree,
// which witnesses that the result carries no connection dependence.
TensorResult gauge_lie_derivative_at(const GaugeGenerator& gen, const LorentzTensorField& t,
                                     const FrameField& frame, const Point& p);

// Lie derivative along the Kosmann lift of a spacetime vector field.
TensorResult kosmann_lie_derivative_at(const VectorField& xi, const LorentzTensorField& t,
                                       const FrameField& frame, const Point& p);

// Symbolic gauge Lie derivative (the connection-free route). Exact, so it
// nests; the naturality property is tested through this form.
LorentzTensorField gauge_lie_field(const GaugeGenerator& gen, const LorentzTensorField& t,
                                   Signature sig);

// Jet-level Kosmann Lie derivative (order drops by one); used for nested
// commutators of Lie derivatives.
std::vector<Jet> kosmann_lie_jets(const VectorField& xi, const LorentzTensorField& t,
                                  const FrameJets& fj);

// The rank-(1,0) closed form nabla_d(xi^d v^a) - nabla_c xi^a v^c. It agrees
// with the Kosmann Lie derivative exactly when xi is Killing (div xi = 0 and
// nabla xi antisymmetric); for generic xi the difference is the symmetric part
// of nabla xi, which the caller can inspect.
Vec kosmann_closed_form_rank10_at(const VectorField& xi, const LorentzTensorField& v,
                                  const FrameField& frame, const Point& p);

enum class TransportDirection { ToLorentz, ToSpacetime };

// One frame (or inverse frame) factor per slot.
TensorValue frame_transport(TransportDirection dir, const Representation& rep,
                            const TensorValue& t, const FrameField& frame, const Point& p);

// Symbolic transport for purely contravariant fields (uses only e^a_mu).
LorentzTensorField to_lorentz_field(const Representation& rep, const std::vector<Expr>& comp,
                                    const FrameField& frame);

// |Lie_xi e^a_mu - 1/2 (Lie_xi g)_{mu lambda} e^{a lambda}|, the frame identity.
double frame_lie_derivative_identity_residual(const VectorField& xi, const FrameField& frame,
                                              const Point& p);

// Residual of Lie_xi v^a = (Lie_xi v^mu) e^a_mu + (Lie_xi e^a_mu) v^mu,
// all three terms computed independently.
double vector_transport_identity_residual(const VectorField& xi, const VectorField& v,
                                          const FrameField& frame, const Point& p);

// Residual of the quarter-defect formula for Lorentz vectors:
//   Lie_{[xi,zeta]} v^a = [Lie_xi, Lie_zeta] v^a
//     + 1/4 (v^alpha g^{beta rho} e^{a sigma} - v^rho g^{beta sigma} e^{a alpha})
//       Lie_xi g_{rho sigma} Lie_zeta g_{alpha beta}
struct VectorDefectAt {
  Vec lhs;           // Lie along the commutator
  Vec bracket;       // [Lie_xi, Lie_zeta] v
  Vec defect_term;   // the quarter term
  double residual;
  double defect_norm;
};

VectorDefectAt vector_naturality_defect_residual(const VectorField& xi, const VectorField& zeta,
                                                 const LorentzTensorField& v,
                                                 const FrameField& frame, const Point& p);

// Minkowski specialization: the Kosmann Lie derivative of a constant Lorentz
// vector along the plane-(a,b) isometry generator equals the so(eta) matrix
// action -lambda^a_b v^b (the infinitesimal form of v' = Lambda v).
struct BoostCheckAt {
  Vec lie;
  Vec generator_action;
  double residual;
};

// Requires the identity frame on a (1,3) chart; throws SceneMismatch otherwise.
BoostCheckAt boost_transformation_check(const Vec& v, int plane_a, int plane_b,
                                        const FrameField& frame, const Point& p);

// The plane-(a,b) isometry generator of eta: xi^mu = (x_a delta^mu_b - x_b delta^mu_a).
VectorField minkowski_plane_generator(int a, int b, Signature sig);

}  // namespace framelift

#endif
