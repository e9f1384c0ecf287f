#include "eqdr/gca.hpp"

#include <set>
#include <stdexcept>

namespace eqdr {

// ------------------------------------------------------------- GeneratorSet

GeneratorSet::GeneratorSet(std::vector<GeneratorSpec> generators) : generators_(std::move(generators)) {
  std::set<std::string> seen;
  for (const auto& g : generators_) {
    if (g.degree < 0) throw std::invalid_argument("generator '" + g.name + "' has negative degree");
    if (!seen.insert(g.name).second) throw std::invalid_argument("duplicate generator name '" + g.name + "'");
  }
}

std::optional<std::size_t> GeneratorSet::find(const std::string& name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].name == name) return i;
  }
  return std::nullopt;
}

int koszul_sign(const GeneratorSet& gens, const Exponents& left, const Exponents& right) {
  // Moving each odd generator of `right` left past the larger odd
  // generators of `left` costs one transposition each.
  int larger_odds_seen = 0;  // odd generators of `left` with index > current
  int total = 0;
  for (std::size_t i = gens.size(); i-- > 0;) {
    if (!gens[i].odd()) continue;
    if (left[i] && right[i]) return 0;
    if (right[i]) total += larger_odds_seen;
    if (left[i]) ++larger_odds_seen;
  }
  return total % 2 == 0 ? 1 : -1;
}

int monomial_degree(const GeneratorSet& gens, const Exponents& m) {
  int degree = 0;
  for (std::size_t i = 0; i < gens.size(); ++i) degree += static_cast<int>(m[i]) * gens[i].degree;
  return degree;
}

// --------------------------------------------------------------- GcaElement

GcaElement::GcaElement(GeneratorSetPtr universe) : universe_(std::move(universe)) {
  if (!universe_) throw std::invalid_argument("GcaElement: null generator set");
}

GcaElement GcaElement::constant(GeneratorSetPtr universe, const Rat& value) {
  GcaElement e(std::move(universe));
  e.add_term(Exponents(e.universe_->size(), 0), value);
  return e;
}

GcaElement GcaElement::generator(GeneratorSetPtr universe, std::size_t index) {
  if (index >= universe->size()) throw std::out_of_range("generator index out of range");
  Exponents m(universe->size(), 0);
  m[index] = 1;
  return monomial(std::move(universe), std::move(m));
}

GcaElement GcaElement::monomial(GeneratorSetPtr universe, Exponents exps, const Rat& coefficient) {
  if (exps.size() != universe->size()) throw std::invalid_argument("exponent vector has wrong length");
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if ((*universe)[i].odd() && exps[i] > 1) {
      throw std::invalid_argument("odd generator '" + (*universe)[i].name + "' with exponent > 1");
    }
  }
  GcaElement e(std::move(universe));
  e.add_term(exps, coefficient);
  return e;
}

std::optional<int> GcaElement::homogeneous_degree() const {
  std::optional<int> degree;
  for (const auto& [m, c] : terms_) {
    const int d = monomial_degree(*universe_, m);
    if (degree && *degree != d) return std::nullopt;
    degree = d;
  }
  return degree;
}

Rat GcaElement::coefficient(const Exponents& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rat(0) : it->second;
}

void GcaElement::add_term(const Exponents& m, const Rat& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

void GcaElement::require_same_universe(const GcaElement& other) const {
  if (universe_ != other.universe_ && !(*universe_ == *other.universe_)) {
    throw std::invalid_argument("GcaElement: mismatched generator universes");
  }
}

GcaElement& GcaElement::operator+=(const GcaElement& other) {
  require_same_universe(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

GcaElement& GcaElement::operator-=(const GcaElement& other) {
  require_same_universe(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

GcaElement& GcaElement::operator*=(const Rat& scalar) {
  if (scalar == 0) {
    terms_.clear();
  } else {
    for (auto& [m, c] : terms_) c *= scalar;
  }
  return *this;
}

GcaElement operator*(const GcaElement& a, const GcaElement& b) { return multiply(a, b); }

bool operator==(const GcaElement& a, const GcaElement& b) {
  a.require_same_universe(b);
  return a.terms_ == b.terms_;
}

std::string GcaElement::to_string() const {
  std::vector<std::pair<std::string, Rat>> parts;
  for (const auto& [m, c] : terms_) {
    std::string text;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!text.empty()) text += "*";
      text += (*universe_)[i].name;
      if (m[i] > 1) text += "^" + std::to_string(m[i]);
    }
    parts.emplace_back(std::move(text), c);
  }
  return format_sum(parts);
}

GcaElement multiply(const GcaElement& a, const GcaElement& b) {
  if (a.universe() != b.universe() && !(*a.universe() == *b.universe())) {
    throw std::invalid_argument("multiply: mismatched generator universes");
  }
  const GeneratorSet& gens = *a.universe();
  GcaElement out(a.universe());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      const int sign = koszul_sign(gens, ma, mb);
      if (sign == 0) continue;
      Exponents m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, sign > 0 ? Rat(ca * cb) : Rat(-(ca * cb)));
    }
  }
  return out;
}

// ----------------------------------------------------------- GradedOperator

GradedOperator::GradedOperator(GeneratorSetPtr universe, int degree_shift, Parity parity,
                               std::vector<std::optional<GcaElement>> images)
    : universe_(std::move(universe)), degree_shift_(degree_shift), parity_(parity), images_(std::move(images)) {
  if (images_.size() != universe_->size()) throw std::invalid_argument("GradedOperator: one image per generator required");
  if ((degree_shift_ % 2 != 0) != (parity_ == Parity::odd)) {
    throw std::invalid_argument("GradedOperator: parity does not match degree shift");
  }
  for (std::size_t g = 0; g < images_.size(); ++g) {
    if (!images_[g] || images_[g]->is_zero()) continue;
    const auto degree = images_[g]->homogeneous_degree();
    if (!degree || *degree != (*universe_)[g].degree + degree_shift_) {
      throw std::invalid_argument("GradedOperator: image of '" + (*universe_)[g].name + "' has the wrong degree");
    }
  }
}

GcaElement GradedOperator::apply_monomial(const Exponents& m) const {
  const GeneratorSet& gens = *universe_;
  GcaElement out(universe_);
  int preceding_odd = 0;
  // Even generators first (all of even degree, so no sign), then odd ones in
  // increasing order, matching the normal form.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (m[g] == 0 || gens[g].odd() != (pass == 1)) continue;
      const auto& image = images_[g];
      if (!image) throw std::invalid_argument("operator has no action on generator '" + gens[g].name + "'");
      if (!image->is_zero()) {
        Exponents prefix(m.size(), 0), suffix(m.size(), 0);
        for (std::size_t h = 0; h < gens.size(); ++h) {
          const bool before = (gens[h].odd() == gens[g].odd()) ? h < g : !gens[h].odd();
          if (h == g) {
            prefix[h] = m[h] - 1;
          } else if (before) {
            prefix[h] = m[h];
          } else {
            suffix[h] = m[h];
          }
        }
        // For an even generator the remaining copies g^{e-1} sit in the
        // prefix; the image commutes past them with no sign since g is even.
        Rat factor = gens[g].odd() ? Rat(1) : Rat(m[g]);
        if (parity_ == Parity::odd && preceding_odd % 2 != 0) factor = -factor;
        GcaElement term = GcaElement::monomial(universe_, prefix) * (*image) * GcaElement::monomial(universe_, suffix);
        out += factor * term;
      }
      if (gens[g].odd()) ++preceding_odd;
    }
  }
  return out;
}

GcaElement GradedOperator::apply(const GcaElement& a) const {
  if (a.universe() != universe_ && !(*a.universe() == *universe_)) {
    throw std::invalid_argument("GradedOperator::apply: mismatched generator universes");
  }
  GcaElement out(universe_);
  for (const auto& [m, c] : a.terms()) out += c * apply_monomial(m);
  return out;
}

std::vector<GcaElement> graded_commutator(const GradedMap& d1, const GradedMap& d2,
                                          std::span<const GcaElement> test_basis) {
  const bool both_odd = d1.parity == Parity::odd && d2.parity == Parity::odd;
  std::vector<GcaElement> out;
  out.reserve(test_basis.size());
  for (const auto& x : test_basis) {
    GcaElement forward = d1.map(d2.map(x));
    GcaElement backward = d2.map(d1.map(x));
    out.push_back(both_odd ? forward + backward : forward - backward);
  }
  return out;
}

namespace {

void enumerate(const GeneratorSet& gens, std::size_t index, int remaining, Exponents& current,
               std::vector<Exponents>& out) {
  if (index == gens.size()) {
    if (remaining == 0) out.push_back(current);
    return;
  }
  const int degree = gens[index].degree;
  const std::uint32_t max_exp = gens[index].odd() ? 1u : static_cast<std::uint32_t>(remaining / degree);
  for (std::uint32_t e = 0; e <= max_exp && static_cast<int>(e) * degree <= remaining; ++e) {
    current[index] = e;
    enumerate(gens, index + 1, remaining - static_cast<int>(e) * degree, current, out);
  }
  current[index] = 0;
}

}  // namespace

std::vector<Exponents> monomials_of_degree(const GeneratorSet& gens, int degree) {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].degree <= 0) throw std::invalid_argument("monomials_of_degree: generator of degree 0");
  }
  std::vector<Exponents> out;
  if (degree < 0) return out;
  Exponents current(gens.size(), 0);
  enumerate(gens, 0, degree, current, out);
  return out;
}

}  // namespace eqdr
