#pragma once

// Connections on bundle models and the equivariant Chern-Weil construction.
//
// A g-valued element is a vector of components, one per basis vector e_a of
// g. Over the model A_P the components are coordinate vectors; over the Weil
// and Cartan models they are WeilModelElement / CartanElement.
//
//   K^c   = d Theta^c + 1/2 sum c_ab^c Theta^a Theta^b
//   L_i^a = -(iota^S_i Theta)^a
//   [a, b]^c = sum c_ab^c a^a b^b
//   (D a)^c  = d a^c + sum c_ab^c Theta^a a^b

#include "eqdr/checks.hpp"
#include "eqdr/eqmodels.hpp"
#include "eqdr/lie.hpp"
#include "eqdr/sdga.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace eqdr {

using GValued = std::vector<RatVector>;
using GValuedCartan = std::vector<CartanElement>;
using GValuedWeil = std::vector<WeilModelElement>;

/// The G-basic subalgebra A_M of A_P as a model in its own right.
struct BaseDescent {
  SDgaModel model;
  /// Column j is basis element j of A_M written in A_P coordinates.
  RatMatrix inclusion;
};

/// Joint kernel of all iota^G_a and L^G_a, degree by degree, with the unit
/// first. A basis vector that is a single A_P basis element keeps its name;
/// the others are called basic_1, basic_2, ...
BaseDescent descend_to_base(const BundleModel& b);

/// A validated bundle together with the Weil models over A_P and A_M.
class EquivariantBundle {
public:
  /// Throws ValidationError if validate_bundle fails or W(s) cannot be built.
  explicit EquivariantBundle(BundleModel bundle);

  const BundleModel& bundle() const { return *bundle_; }
  const SDgaModel& total() const { return bundle_->total(); }
  const LieAlgebraData& g() const { return bundle_->g(); }
  const LieAlgebraData& s() const { return bundle_->total().s(); }
  std::size_t g_rank() const { return g().dimension(); }
  std::size_t s_rank() const { return s().dimension(); }

  const std::shared_ptr<const WeilModel>& total_space() const { return total_space_; }
  const std::shared_ptr<const WeilModel>& base_space() const { return base_space_; }
  const BaseDescent& base() const { return base_; }

  /// Coordinates over A_M, or nullopt if v is not G-basic.
  std::optional<RatVector> to_base(const RatVector& v) const;
  std::optional<CartanElement> to_base(const CartanElement& x) const;
  /// First G-operator that does not annihilate x, as "iota^G_1 gives ...".
  std::optional<std::string> g_basic_witness(const WeilModelElement& x) const;

private:
  std::shared_ptr<const BundleModel> bundle_;
  std::shared_ptr<const WeilModel> total_space_;
  BaseDescent base_;
  std::shared_ptr<const WeilModel> base_space_;
};

std::string format_gvalued(const SDgaModel& m, const GValued& x);
std::string format_gvalued(const WeilModel& space, const GValuedWeil& x);
std::string format_gvalued(const WeilModel& space, const GValuedCartan& x);

/// Degree 1 components, iota^G_a Theta^b = delta_ab,
/// L^G_a Theta^c = -sum_b c_ab^c Theta^b and L^S_i Theta^a = 0.
CheckReport validate_connection(const EquivariantBundle& b, const GValued& theta);
/// Throws ValidationError naming the first failed check.
void require_connection(const EquivariantBundle& b, const GValued& theta);

GValued lie_bracket(const LieAlgebraData& g, const SDgaModel& m, const GValued& x, const GValued& y);
GValued curvature(const EquivariantBundle& b, const GValued& theta);
GValued moment(const EquivariantBundle& b, const GValued& theta, std::size_t i);
std::vector<GValued> moments(const EquivariantBundle& b, const GValued& theta);
GValued covariant_derivative(const EquivariantBundle& b, const GValued& theta, const GValued& x);

/// K is horizontal and Ad-equivariant.
CheckReport verify_curvature(const EquivariantBundle& b, const GValued& theta);
/// L^G_a L_i^c = -sum_b c_ab^c L_i^b, and L^S_j L_i = sum_k c_ji^k L_k.
CheckReport verify_moment(const EquivariantBundle& b, const GValued& theta);
/// iota_i K = D L_i and iota_j iota_i K = [L_i, L_j] - sum_k c_ij^k L_k.
CheckReport verify_curvature_contractions(const EquivariantBundle& b, const GValued& theta);

/// K + sum_k u_k L_k over the Cartan model of A_P.
GValuedCartan equivariant_curvature(const EquivariantBundle& b, const GValued& theta);

/// 1 (x) K + sum_i (d theta_i) (x) L_i - sum_i theta_i (x) iota_i K
///   + sum_{i<j} theta_i theta_j (x) [L_i, L_j]
/// assembled from the given data; `g` supplies the bracket.
GValuedWeil curvature_formula(const WeilModel& space, const LieAlgebraData& g, const GValued& k,
                              const std::vector<GValued>& l, const std::vector<GValued>& iota_k);

/// Xi^c = 1 (x) Theta^c + sum_i theta_i (x) L_i^c.
GValuedWeil xi_connection(const EquivariantBundle& b, const GValued& theta);

struct WeilCurvatureRoutes {
  GValuedWeil projector;  // prod (1 - theta_i iota_i) applied to K + sum u_k L_k
  GValuedWeil structure;  // d Xi + 1/2 [Xi, Xi]
  GValuedWeil formula;    // curvature_formula with the bundle's own data
};

WeilCurvatureRoutes weil_curvature_routes(const EquivariantBundle& b, const GValued& theta);
/// The common value of all three routes; throws InternalError if they differ.
GValuedWeil weil_equivariant_curvature(const EquivariantBundle& b, const GValued& theta);

/// Xi is a connection for the G-action and is S-basic.
CheckReport verify_xi(const EquivariantBundle& b, const GValued& theta);
/// Route agreement, S-basic K_inf and, for one-dimensional s, the
/// three-term formula K + u L - theta iota K.
CheckReport verify_weil_curvature(const EquivariantBundle& b, const GValued& theta);

/// f(values) with the values substituted for x1..xn. Every value must be
/// homogeneous of even degree (or zero); throws ValidationError otherwise.
WeilModelElement substitute(const WeilModel& space, const GcaElement& f, const GValuedWeil& values);
CartanElement substitute(const WeilModel& space, const GcaElement& f, const GValuedCartan& values);

/// f(K_inf) is annihilated by the total iota^S_i and L^S_i and by
/// iota^G_a, L^G_a, and its theta-free part is f(K + sum u_k L_k).
CheckReport verify_characteristic_form(const EquivariantBundle& b, const GValued& theta, const InvariantPolynomial& f);

struct ClassAnalysis {
  int degree = 0;
  CohomologyGroup group;         // H^degree of the base Cartan model
  RatVector coordinates;         // along group.representatives
  bool zero = false;
  std::optional<CartanElement> primitive;  // d_C primitive when zero (degree > 0)
};

struct ChernWeilForm {
  CartanElement total_form;  // over A_P
  CartanElement base_form;   // over A_M
  std::vector<ClassAnalysis> classes;  // one per nonzero homogeneous part
};

/// f(K + sum u_k L_k), descended to A_M and analysed degree by degree.
/// Throws ValidationError if the form is not G-basic and InternalError if
/// it is not d_C-closed.
ChernWeilForm chern_weil_form(const EquivariantBundle& b, const InvariantPolynomial& f, const GValued& theta);

/// The difference of the two Chern-Weil forms is d_C-exact over A_M.
CheckReport connection_independence(const EquivariantBundle& b, const InvariantPolynomial& f, const GValued& theta1,
                                    const GValued& theta2);

/// h(X): u_k replaced by the scalar X_k.
RatVector evaluate_at(const WeilModel& space, const CartanElement& h, const RatVector& x);
/// L_i (h(X)) = Dh(X)[ [X_i, X] ] at each sample point X.
CheckReport verify_evaluation_equivariance(const WeilModel& space, const CartanElement& h,
                                           const std::vector<RatVector>& samples);

}  // namespace eqdr
