#pragma once

#include "eqdr/checks.hpp"
#include "eqdr/gca.hpp"
#include "eqdr/lie.hpp"

#include <vector>

namespace eqdr {

/// W(s) = S(s*) (x) Lambda(s*) with generators u_1..u_l (degree 2, indices
/// 0..l-1) and theta_1..theta_l (degree 1, indices l..2l-1).
///
///   d theta_i = u_i - 1/2 sum_{j,k} c_{jk}^i theta_j theta_k
///   d u_i     = sum_{j,k} c_{jk}^i u_j theta_k
///   iota_i theta_j = delta_ij,  iota_i u_j = 0
///   L_i = d iota_i + iota_i d   (computed on generators, never assigned)
class WeilAlgebra {
public:
  /// Builds and runs verify_weil; throws ValidationError listing the first
  /// failed identity.
  static WeilAlgebra build(const LieAlgebraData& lie);
  /// Builds without verification (used to exhibit failures on bad input).
  static WeilAlgebra build_unchecked(const LieAlgebraData& lie);

  const LieAlgebraData& lie() const { return lie_; }
  std::size_t rank() const { return lie_.dimension(); }
  const GeneratorSetPtr& universe() const { return universe_; }

  std::size_t u_index(std::size_t i) const { return i; }
  std::size_t theta_index(std::size_t i) const { return rank() + i; }

  GcaElement one() const { return GcaElement::constant(universe_, 1); }
  GcaElement u(std::size_t i) const { return GcaElement::generator(universe_, u_index(i)); }
  GcaElement theta(std::size_t i) const { return GcaElement::generator(universe_, theta_index(i)); }

  const GradedOperator& d() const { return d_; }
  const GradedOperator& iota(std::size_t i) const { return iota_.at(i); }
  const GradedOperator& lie_derivative(std::size_t i) const { return lie_derivative_.at(i); }

private:
  WeilAlgebra(LieAlgebraData lie, GeneratorSetPtr universe, GradedOperator d, std::vector<GradedOperator> iota,
              std::vector<GradedOperator> lie_derivative);

  LieAlgebraData lie_;
  GeneratorSetPtr universe_;
  GradedOperator d_;
  std::vector<GradedOperator> iota_;
  std::vector<GradedOperator> lie_derivative_;
};

/// Checks on generators (and on all monomials of degree <= 3 for the
/// operator identities): d^2 = 0, iota values, {iota_i, iota_j} = 0, the
/// magic formula, L_i theta_j = -sum_k c_{ik}^j theta_k and the same on u_j,
/// [L_i, L_j] = sum_k c_{ij}^k L_k, [L_i, iota_j] = sum_k c_{ij}^k iota_k,
/// [L_i, d] = 0.
CheckReport verify_weil(const WeilAlgebra& w);

}  // namespace eqdr
