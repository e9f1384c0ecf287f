#pragma once

// Finite models of Omega(M) (and of Omega(P) for bundles): an explicit basis
// with degrees, a complete multiplication table, the differential, and the
// contraction operators of the acting Lie algebra(s). Lie derivatives are
// always derived as d iota + iota d.

#include "eqdr/checks.hpp"
#include "eqdr/lie.hpp"
#include "eqdr/ratlin.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace eqdr {

struct BasisElement {
  std::string name;
  int degree = 0;

  friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

class SDgaModel {
public:
  /// Structural checks only (shapes, unit present and of degree 0, nonempty
  /// basis, one contraction per generator of s); throws ValidationError.
  /// The algebraic axioms are checked by validate_sdga.
  ///
  /// products[i][j] is e_i * e_j as a coordinate vector. Matrices act on
  /// column vectors: column j is the image of e_j.
  SDgaModel(std::vector<BasisElement> basis, std::size_t unit, std::vector<std::vector<RatVector>> products,
            RatMatrix d, LieAlgebraData s, std::vector<RatMatrix> iota_s);

  std::size_t size() const { return basis_.size(); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  const BasisElement& element(std::size_t i) const { return basis_.at(i); }
  int degree(std::size_t i) const { return basis_.at(i).degree; }
  int max_degree() const;
  std::size_t unit() const { return unit_; }
  std::optional<std::size_t> find(const std::string& name) const;
  std::vector<std::size_t> indices_of_degree(int degree) const;

  RatVector zero() const { return RatVector(size()); }
  RatVector basis_vector(std::size_t i) const;
  RatVector unit_vector() const { return basis_vector(unit_); }

  const RatVector& product(std::size_t i, std::size_t j) const { return products_.at(i).at(j); }
  RatVector multiply(const RatVector& a, const RatVector& b) const;

  const RatMatrix& d() const { return d_; }
  const LieAlgebraData& s() const { return s_; }
  std::size_t s_rank() const { return s_.dimension(); }
  const RatMatrix& iota_s(std::size_t i) const { return iota_s_.at(i); }
  const RatMatrix& lie_s(std::size_t i) const { return lie_s_.at(i); }
  bool trivial_action() const;

  /// Same model with a different acting algebra. Only allowed when the
  /// current action is trivial; the new contractions are zero.
  SDgaModel with_acting_algebra(const LieAlgebraData& s) const;

  /// "3/2*alpha - beta"; the unit is rendered as a bare coefficient.
  std::string format(const RatVector& v) const;

  friend bool operator==(const SDgaModel&, const SDgaModel&) = default;

private:
  std::vector<BasisElement> basis_;
  std::size_t unit_;
  std::vector<std::vector<RatVector>> products_;
  RatMatrix d_;
  LieAlgebraData s_;
  std::vector<RatMatrix> iota_s_;
  std::vector<RatMatrix> lie_s_;
};

/// An S-DGA model of Omega(P) together with the contractions of the
/// principal G-action.
class BundleModel {
public:
  BundleModel(SDgaModel total, LieAlgebraData g, std::vector<RatMatrix> iota_g);

  const SDgaModel& total() const { return total_; }
  const LieAlgebraData& g() const { return g_; }
  std::size_t g_rank() const { return g_.dimension(); }
  const RatMatrix& iota_g(std::size_t a) const { return iota_g_.at(a); }
  const RatMatrix& lie_g(std::size_t a) const { return lie_g_.at(a); }

  friend bool operator==(const BundleModel&, const BundleModel&) = default;

private:
  SDgaModel total_;
  LieAlgebraData g_;
  std::vector<RatMatrix> iota_g_;
  std::vector<RatMatrix> lie_g_;
};

CheckReport validate_sdga(const SDgaModel& m);
CheckReport validate_bundle(const BundleModel& b);

using AnyModel = std::variant<SDgaModel, BundleModel>;

const std::vector<std::string>& builtin_names();
/// Throws std::invalid_argument for an unknown name.
AnyModel builtin(const std::string& name);

/// "u1" or "su2"; throws std::invalid_argument otherwise.
LieAlgebraData builtin_lie(const std::string& name);

}  // namespace eqdr
