#pragma once

// W(s) (x) A and the Cartan model S(s*) (x) A over a finite S-DGA model A.
//
// An element is a sparse map (Weil monomial, basis index of A) -> Q, read as
// sum c * (w (x) e_j). Products and operators follow the Koszul rule
//   (w1 (x) a1)(w2 (x) a2) = (-1)^{|a1||w2|} w1 w2 (x) a1 a2
//   D(w (x) a) = Dw (x) a + (-1)^{p|w|} w (x) Da.

#include "eqdr/gca.hpp"
#include "eqdr/ratlin.hpp"
#include "eqdr/sdga.hpp"
#include "eqdr/weil.hpp"

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace eqdr {

struct TensorKey {
  Exponents weil;      // u_1..u_l then theta_1..theta_l
  std::size_t basis;   // index into the model basis

  friend auto operator<=>(const TensorKey&, const TensorKey&) = default;
  friend bool operator==(const TensorKey&, const TensorKey&) = default;
};

/// Element of W(s) (x) A.
class WeilModelElement {
public:
  WeilModelElement() = default;

  const std::map<TensorKey, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rat coefficient(const TensorKey& key) const;
  void add_term(const TensorKey& key, const Rat& c);

  /// True if no term contains a theta (exponent layout u..., theta...).
  bool is_theta_free() const;

  WeilModelElement& operator+=(const WeilModelElement& other);
  WeilModelElement& operator-=(const WeilModelElement& other);
  WeilModelElement& operator*=(const Rat& s);
  friend WeilModelElement operator+(WeilModelElement a, const WeilModelElement& b) { return a += b; }
  friend WeilModelElement operator-(WeilModelElement a, const WeilModelElement& b) { return a -= b; }
  friend WeilModelElement operator-(WeilModelElement a) { return a *= Rat(-1); }
  friend WeilModelElement operator*(const Rat& s, WeilModelElement a) { return a *= s; }
  friend bool operator==(const WeilModelElement&, const WeilModelElement&) = default;

private:
  std::map<TensorKey, Rat> terms_;
};

/// Element of S(s*) (x) A: a theta-free WeilModelElement.
class CartanElement {
public:
  CartanElement() = default;
  /// Throws std::invalid_argument if x contains a theta.
  explicit CartanElement(WeilModelElement x);

  const WeilModelElement& element() const { return body_; }
  const std::map<TensorKey, Rat>& terms() const { return body_.terms(); }
  bool is_zero() const { return body_.is_zero(); }

  CartanElement& operator+=(const CartanElement& o) { body_ += o.body_; return *this; }
  CartanElement& operator-=(const CartanElement& o) { body_ -= o.body_; return *this; }
  friend CartanElement operator+(CartanElement a, const CartanElement& b) { return a += b; }
  friend CartanElement operator-(CartanElement a, const CartanElement& b) { return a -= b; }
  friend CartanElement operator*(const Rat& s, CartanElement a) { a.body_ *= s; return a; }
  friend bool operator==(const CartanElement&, const CartanElement&) = default;

private:
  WeilModelElement body_;
};

enum class TotalOperator { d, iota, lie };

struct BasicCheck {
  bool basic = true;
  std::string witness;  // e.g. "iota_1 gives 1"
};

/// The algebra W(s) (x) A with its total operators.
class WeilModel {
public:
  /// Throws ValidationError if the Weil algebra and the model act by
  /// different Lie algebras.
  WeilModel(std::shared_ptr<const WeilAlgebra> weil, std::shared_ptr<const SDgaModel> model);

  const WeilAlgebra& weil() const { return *weil_; }
  const SDgaModel& model() const { return *model_; }
  const std::shared_ptr<const SDgaModel>& model_ptr() const { return model_; }
  std::size_t rank() const { return weil_->rank(); }

  WeilModelElement tensor(const GcaElement& w, const RatVector& a) const;
  WeilModelElement from_model(const RatVector& a) const;
  WeilModelElement from_weil(const GcaElement& w) const;
  WeilModelElement basis(std::size_t j) const { return from_model(model_->basis_vector(j)); }
  WeilModelElement one() const { return basis(model_->unit()); }
  WeilModelElement scalar(const Rat& c) const { return c * one(); }
  WeilModelElement u(std::size_t i) const { return from_weil(weil_->u(i)); }
  WeilModelElement theta(std::size_t i) const { return from_weil(weil_->theta(i)); }

  int degree(const TensorKey& key) const;
  /// Common degree of all terms; nullopt for zero or mixed elements.
  std::optional<int> homogeneous_degree(const WeilModelElement& x) const;
  int u_weight(const TensorKey& key) const;

  WeilModelElement multiply(const WeilModelElement& a, const WeilModelElement& b) const;

  WeilModelElement d(const WeilModelElement& x) const;
  WeilModelElement iota(std::size_t i, const WeilModelElement& x) const;
  /// Derivation form L_W (x) 1 + 1 (x) L_A.
  WeilModelElement lie(std::size_t i, const WeilModelElement& x) const;
  WeilModelElement total_operator(TotalOperator kind, std::size_t i, const WeilModelElement& x) const;
  /// 1 (x) op with the Koszul sign for odd operators (used for G-actions).
  WeilModelElement apply_model_operator(const RatMatrix& op, Parity parity, const WeilModelElement& x) const;

  /// d_C a = da - sum_i u_i iota_i a, with d and iota acting on A only.
  CartanElement cartan_d(const CartanElement& a) const;
  /// (1 - theta_1 iota_1) ... (1 - theta_l iota_l) a, rightmost factor first.
  WeilModelElement mq_to_weil(const CartanElement& a) const;
  /// The theta-free component.
  CartanElement mq_to_cartan(const WeilModelElement& x) const;
  BasicCheck is_basic(const WeilModelElement& x) const;

  /// All keys of total degree k, theta-free only if `cartan`.
  std::vector<TensorKey> keys_of_degree(int k, bool cartan) const;

  /// "u1^2*theta1*alpha - 3/2*u1"; unit basis element is implicit.
  std::string format(const WeilModelElement& x) const;
  std::string format(const CartanElement& x) const { return format(x.element()); }

private:
  WeilModelElement apply_weil_operator(const GradedOperator& w_op, const RatMatrix& a_op, Parity parity,
                                       const WeilModelElement& x) const;

  std::shared_ptr<const WeilAlgebra> weil_;
  std::shared_ptr<const SDgaModel> model_;
};

RatVector coordinates(const WeilModelElement& x, const std::vector<TensorKey>& keys);
WeilModelElement from_coordinates(const RatVector& v, const std::vector<TensorKey>& keys);

struct CohomologyGroup {
  int degree = 0;
  std::size_t dimension = 0;
  std::vector<WeilModelElement> representatives;
};

/// Per-degree spanning sets, invariant (Cartan) and basic (Weil) subspaces
/// for degrees 0..cutoff, computed once at construction.
class EquivariantComplex {
public:
  /// Throws std::invalid_argument for a negative cutoff.
  EquivariantComplex(std::shared_ptr<const WeilModel> space, int cutoff);

  const WeilModel& space() const { return *space_; }
  int cutoff() const { return cutoff_; }

  const std::vector<TensorKey>& cartan_keys(int k) const { return levels_.at(check(k)).cartan_keys; }
  const std::vector<TensorKey>& weil_keys(int k) const { return levels_.at(check(k)).weil_keys; }
  /// Joint kernel of the total L_i on S(s*) (x) A in degree k.
  const std::vector<RatVector>& invariant_basis(int k) const { return levels_.at(check(k)).invariant; }
  /// Joint kernel of the total iota_i and L_i on W(s) (x) A in degree k.
  const std::vector<RatVector>& basic_basis(int k) const { return levels_.at(check(k)).basic; }

  std::vector<CartanElement> invariants(int k) const;
  /// Matrix of d_C from degree k to k+1 over cartan_keys (k < cutoff).
  RatMatrix cartan_d_matrix(int k) const;
  /// Matrix of the total d from degree k to k+1 over weil_keys (k < cutoff).
  RatMatrix weil_d_matrix(int k) const;

private:
  struct Level {
    std::vector<TensorKey> cartan_keys;
    std::vector<TensorKey> weil_keys;
    std::vector<RatVector> invariant;
    std::vector<RatVector> basic;
  };
  int check(int k) const;

  std::shared_ptr<const WeilModel> space_;
  int cutoff_;
  std::vector<Level> levels_;
};

/// H^k of the Cartan model (invariants under d_C). Requires k + 1 <= cutoff;
/// throws std::out_of_range otherwise. Representatives are reduced against
/// the boundaries.
CohomologyGroup equivariant_cohomology(const EquivariantComplex& c, int k);
/// H^k of the basic subcomplex of W(s) (x) A under the total d.
CohomologyGroup weil_basic_cohomology(const EquivariantComplex& c, int k);

/// Some invariant b of degree k-1 with d_C b = x, if one exists. x must be
/// homogeneous of degree k with 1 <= k <= cutoff (degree 0 is never exact).
std::optional<CartanElement> cartan_primitive(const EquivariantComplex& c, const CartanElement& x);

/// Coordinates of the class of x along the representatives of `group`
/// (computed in the same complex), or nullopt if x is not an invariant
/// cocycle of that degree.
std::optional<RatVector> class_coordinates(const EquivariantComplex& c, const CohomologyGroup& group,
                                           const CartanElement& x);

}  // namespace eqdr
