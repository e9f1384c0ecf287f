#pragma once

#include "eqdr/gca.hpp"
#include "eqdr/ratlin.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace eqdr {

/// c_{ij}^k = value for i < j (0-based); the (j, i) entry is implied.
struct BracketTriple {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  Rat value;

  friend bool operator==(const BracketTriple&, const BracketTriple&) = default;
};

/// A Lie algebra presented by structure constants [X_i, X_j] = sum_k c_{ij}^k X_k.
/// Construction does not validate; see validate_lie.
class LieAlgebraData {
public:
  LieAlgebraData() = default;

  /// Antisymmetrizes the given i < j constants. Throws std::invalid_argument
  /// if some triple has i >= j or an index out of range.
  static LieAlgebraData from_brackets(std::size_t dimension, std::span<const BracketTriple> brackets,
                                      std::vector<std::string> names = {});
  /// Raw dim^3 array, index (i*dim + j)*dim + k. Stored as given.
  static LieAlgebraData from_raw(std::size_t dimension, std::vector<Rat> constants,
                                 std::vector<std::string> names = {});

  static LieAlgebraData abelian(std::size_t dimension);
  static LieAlgebraData u1() { return abelian(1); }
  /// c_12^3 = c_23^1 = c_31^2 = 1.
  static LieAlgebraData su2();

  std::size_t dimension() const { return dimension_; }
  const Rat& c(std::size_t i, std::size_t j, std::size_t k) const {
    return constants_[(i * dimension_ + j) * dimension_ + k];
  }
  const std::vector<std::string>& names() const { return names_; }
  bool is_abelian() const;

  /// Nonzero constants with i < j, in index order.
  std::vector<BracketTriple> brackets() const;

  friend bool operator==(const LieAlgebraData&, const LieAlgebraData&) = default;

private:
  std::size_t dimension_ = 0;
  std::vector<Rat> constants_;
  std::vector<std::string> names_;
};

struct LieViolation {
  enum class Kind { antisymmetry, jacobi };
  Kind kind;
  std::size_t i, j, k;  // 0-based
  std::size_t p;        // output component (Jacobi) or k (antisymmetry)
  Rat value;            // offending sum (Jacobi) or c_ij^k + c_ji^k

  /// 1-based, e.g. "Jacobi identity fails at (i,j,k) = (1,2,3): component X2 is 1".
  std::string describe() const;
};

/// First antisymmetry or Jacobi violation in (i, j, k, p) lexicographic order.
std::optional<LieViolation> validate_lie(const LieAlgebraData& lie);

RatVector bracket(const LieAlgebraData& lie, const RatVector& v, const RatVector& w);

/// M[k][j] = -c_{ik}^j: the action of L_i on coefficient vectors over the dual basis.
RatMatrix coadjoint_matrix(const LieAlgebraData& lie, std::size_t i);

/// Commuting variables x1..xn (degree 2) for polynomials on a Lie algebra.
GeneratorSetPtr polynomial_variables(std::size_t n);

/// Infinitesimal Ad-invariance: sum_{b,c} c_{ab}^c x_b df/dx_c = 0 for every a.
bool check_ad_invariance(const GcaElement& f, const LieAlgebraData& g);

/// A polynomial on g that has passed check_ad_invariance.
class InvariantPolynomial {
public:
  /// Throws ValidationError if f is not Ad-invariant or lives in the wrong
  /// number of variables.
  InvariantPolynomial(GcaElement f, const LieAlgebraData& g);

  const GcaElement& polynomial() const { return f_; }
  std::size_t variables() const { return f_.universe()->size(); }

private:
  GcaElement f_;
};

}  // namespace eqdr
