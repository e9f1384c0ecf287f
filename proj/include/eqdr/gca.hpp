#pragma once

// Free graded-commutative algebra over Q.
//
// A monomial is an exponent vector over the generator list. Its normal form
// is "all even generators in generator order, then the odd generators with
// exponent 1 in increasing index order"; odd exponents are 0 or 1. All signs
// come from sorting odd generators, so a product of two normal-form
// monomials differs from the normal form of the result by a Koszul sign.

#include "eqdr/ratlin.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace eqdr {

struct GeneratorSpec {
  std::string name;
  int degree = 0;

  bool odd() const { return degree % 2 != 0; }
  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

class GeneratorSet {
public:
  /// Throws std::invalid_argument on duplicate names or negative degrees.
  explicit GeneratorSet(std::vector<GeneratorSpec> generators);

  std::size_t size() const { return generators_.size(); }
  const GeneratorSpec& operator[](std::size_t i) const { return generators_[i]; }
  std::optional<std::size_t> find(const std::string& name) const;

  friend bool operator==(const GeneratorSet& a, const GeneratorSet& b) { return a.generators_ == b.generators_; }

private:
  std::vector<GeneratorSpec> generators_;
};

using GeneratorSetPtr = std::shared_ptr<const GeneratorSet>;
using Exponents = std::vector<std::uint32_t>;

/// Sign of (left * right) relative to the normal form of the merged
/// monomial; 0 when an odd generator occurs in both.
int koszul_sign(const GeneratorSet& gens, const Exponents& left, const Exponents& right);
int monomial_degree(const GeneratorSet& gens, const Exponents& m);

class GcaElement {
public:
  explicit GcaElement(GeneratorSetPtr universe);

  static GcaElement constant(GeneratorSetPtr universe, const Rat& value);
  static GcaElement generator(GeneratorSetPtr universe, std::size_t index);
  /// Throws std::invalid_argument if an odd generator has exponent > 1.
  static GcaElement monomial(GeneratorSetPtr universe, Exponents exps, const Rat& coefficient = 1);

  const GeneratorSetPtr& universe() const { return universe_; }
  const std::map<Exponents, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Degree shared by every term; nullopt for zero or mixed-degree elements.
  std::optional<int> homogeneous_degree() const;
  Rat coefficient(const Exponents& m) const;

  void add_term(const Exponents& m, const Rat& coefficient);

  GcaElement& operator+=(const GcaElement& other);
  GcaElement& operator-=(const GcaElement& other);
  GcaElement& operator*=(const Rat& scalar);

  friend GcaElement operator+(GcaElement a, const GcaElement& b) { return a += b; }
  friend GcaElement operator-(GcaElement a, const GcaElement& b) { return a -= b; }
  friend GcaElement operator-(GcaElement a) { return a *= Rat(-1); }
  friend GcaElement operator*(const Rat& s, GcaElement a) { return a *= s; }
  friend GcaElement operator*(const GcaElement& a, const GcaElement& b);
  friend bool operator==(const GcaElement& a, const GcaElement& b);

  /// "3/2*u1^2*theta1 - theta2"; "0" for zero.
  std::string to_string() const;

private:
  void require_same_universe(const GcaElement& other) const;

  GeneratorSetPtr universe_;
  std::map<Exponents, Rat> terms_;
};

GcaElement multiply(const GcaElement& a, const GcaElement& b);

enum class Parity { even, odd };

inline int parity_bit(Parity p) { return p == Parity::odd ? 1 : 0; }

/// A derivation (even) or antiderivation (odd) of fixed degree, determined
/// by its values on generators and extended by the graded Leibniz rule
///   D(ab) = (Da) b + (-1)^{p|a|} a (Db).
class GradedOperator {
public:
  /// Images may be left unset; applying the operator to a monomial that
  /// contains such a generator throws. Throws std::invalid_argument if a set
  /// image is not homogeneous of degree deg(generator) + degree_shift.
  GradedOperator(GeneratorSetPtr universe, int degree_shift, Parity parity,
                 std::vector<std::optional<GcaElement>> images);

  int degree_shift() const { return degree_shift_; }
  Parity parity() const { return parity_; }
  const GeneratorSetPtr& universe() const { return universe_; }
  const std::optional<GcaElement>& image(std::size_t generator) const { return images_.at(generator); }

  GcaElement apply(const GcaElement& a) const;
  GcaElement operator()(const GcaElement& a) const { return apply(a); }

private:
  GcaElement apply_monomial(const Exponents& m) const;

  GeneratorSetPtr universe_;
  int degree_shift_;
  Parity parity_;
  std::vector<std::optional<GcaElement>> images_;
};

inline GcaElement apply(const GradedOperator& op, const GcaElement& a) { return op.apply(a); }

/// Any linear map on a GCA together with its parity, e.g. a composite such
/// as d o iota that is not itself determined by generator values.
struct GradedMap {
  std::function<GcaElement(const GcaElement&)> map;
  Parity parity;
};

inline GradedMap as_map(const GradedOperator& op) {
  return {[&op](const GcaElement& x) { return op.apply(x); }, op.parity()};
}

/// D1 D2 - (-1)^{p1 p2} D2 D1 evaluated on each test element.
std::vector<GcaElement> graded_commutator(const GradedMap& d1, const GradedMap& d2,
                                          std::span<const GcaElement> test_basis);

/// All normal-form monomials of the given total degree. Requires every
/// generator to have positive degree.
std::vector<Exponents> monomials_of_degree(const GeneratorSet& gens, int degree);

}  // namespace eqdr
