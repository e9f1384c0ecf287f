#include "eqdr/lie.hpp"

#include "eqdr/errors.hpp"

#include <stdexcept>

namespace eqdr {

namespace {

std::vector<std::string> default_names(std::size_t dimension, std::vector<std::string> names) {
  if (names.empty()) {
    for (std::size_t i = 0; i < dimension; ++i) names.push_back("X" + std::to_string(i + 1));
  }
  if (names.size() != dimension) throw std::invalid_argument("Lie algebra: one name per basis vector required");
  return names;
}

}  // namespace

LieAlgebraData LieAlgebraData::from_brackets(std::size_t dimension, std::span<const BracketTriple> brackets,
                                             std::vector<std::string> names) {
  LieAlgebraData lie;
  lie.dimension_ = dimension;
  lie.constants_.assign(dimension * dimension * dimension, Rat(0));
  lie.names_ = default_names(dimension, std::move(names));
  for (const auto& t : brackets) {
    if (t.i >= dimension || t.j >= dimension || t.k >= dimension) {
      throw std::invalid_argument("structure constant index out of range");
    }
    if (t.i >= t.j) throw std::invalid_argument("structure constants must be given with i < j");
    lie.constants_[(t.i * dimension + t.j) * dimension + t.k] += t.value;
    lie.constants_[(t.j * dimension + t.i) * dimension + t.k] -= t.value;
  }
  return lie;
}

LieAlgebraData LieAlgebraData::from_raw(std::size_t dimension, std::vector<Rat> constants,
                                        std::vector<std::string> names) {
  if (constants.size() != dimension * dimension * dimension) {
    throw std::invalid_argument("structure constants: expected dim^3 entries");
  }
  LieAlgebraData lie;
  lie.dimension_ = dimension;
  lie.constants_ = std::move(constants);
  lie.names_ = default_names(dimension, std::move(names));
  return lie;
}

LieAlgebraData LieAlgebraData::abelian(std::size_t dimension) { return from_brackets(dimension, {}); }

LieAlgebraData LieAlgebraData::su2() {
  const BracketTriple triples[] = {
      {0, 1, 2, Rat(1)},   // [X1, X2] = X3
      {1, 2, 0, Rat(1)},   // [X2, X3] = X1
      {0, 2, 1, Rat(-1)},  // [X3, X1] = X2
  };
  return from_brackets(3, triples);
}

bool LieAlgebraData::is_abelian() const {
  for (const auto& c : constants_) {
    if (c != 0) return false;
  }
  return true;
}

std::vector<BracketTriple> LieAlgebraData::brackets() const {
  std::vector<BracketTriple> out;
  for (std::size_t i = 0; i < dimension_; ++i) {
    for (std::size_t j = i + 1; j < dimension_; ++j) {
      for (std::size_t k = 0; k < dimension_; ++k) {
        if (c(i, j, k) != 0) out.push_back({i, j, k, c(i, j, k)});
      }
    }
  }
  return out;
}

std::string LieViolation::describe() const {
  auto idx = [](std::size_t x) { return std::to_string(x + 1); };
  if (kind == Kind::antisymmetry) {
    return "antisymmetry fails: c_" + idx(i) + idx(j) + "^" + idx(k) + " + c_" + idx(j) + idx(i) + "^" + idx(k) +
           " = " + value.get_str();
  }
  return "Jacobi identity fails at (i,j,k) = (" + idx(i) + "," + idx(j) + "," + idx(k) + "): component X" + idx(p) +
         " of the cyclic sum is " + value.get_str();
}

std::optional<LieViolation> validate_lie(const LieAlgebraData& lie) {
  const std::size_t n = lie.dimension();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const Rat sum = lie.c(i, j, k) + lie.c(j, i, k);
        if (sum != 0) return LieViolation{LieViolation::Kind::antisymmetry, i, j, k, k, sum};
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t p = 0; p < n; ++p) {
          Rat sum = 0;
          for (std::size_t m = 0; m < n; ++m) {
            sum += lie.c(i, j, m) * lie.c(m, k, p) + lie.c(j, k, m) * lie.c(m, i, p) + lie.c(k, i, m) * lie.c(m, j, p);
          }
          if (sum != 0) return LieViolation{LieViolation::Kind::jacobi, i, j, k, p, sum};
        }
      }
    }
  }
  return std::nullopt;
}

RatVector bracket(const LieAlgebraData& lie, const RatVector& v, const RatVector& w) {
  const std::size_t n = lie.dimension();
  if (v.size() != n || w.size() != n) throw std::invalid_argument("bracket: dimension mismatch");
  RatVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (w[j] == 0) continue;
      for (std::size_t k = 0; k < n; ++k) out[k] += v[i] * w[j] * lie.c(i, j, k);
    }
  }
  return out;
}

RatMatrix coadjoint_matrix(const LieAlgebraData& lie, std::size_t i) {
  const std::size_t n = lie.dimension();
  if (i >= n) throw std::out_of_range("coadjoint_matrix: index out of range");
  RatMatrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) m.set(k, j, -lie.c(i, k, j));
  }
  return m;
}

GeneratorSetPtr polynomial_variables(std::size_t n) {
  std::vector<GeneratorSpec> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back({"x" + std::to_string(i + 1), 2});
  return std::make_shared<const GeneratorSet>(std::move(gens));
}

bool check_ad_invariance(const GcaElement& f, const LieAlgebraData& g) {
  const std::size_t n = g.dimension();
  if (f.universe()->size() != n) return false;
  const auto& vars = f.universe();
  for (std::size_t a = 0; a < n; ++a) {
    // The vector field x -> [e_a, x] as a derivation: x_c -> sum_b c_{ab}^c x_b.
    std::vector<std::optional<GcaElement>> images;
    for (std::size_t c = 0; c < n; ++c) {
      GcaElement image(vars);
      for (std::size_t b = 0; b < n; ++b) image += g.c(a, b, c) * GcaElement::generator(vars, b);
      images.emplace_back(std::move(image));
    }
    const GradedOperator rotation(vars, 0, Parity::even, std::move(images));
    if (!rotation.apply(f).is_zero()) return false;
  }
  return true;
}

InvariantPolynomial::InvariantPolynomial(GcaElement f, const LieAlgebraData& g) : f_(std::move(f)) {
  if (f_.universe()->size() != g.dimension()) {
    throw ValidationError("polynomial has " + std::to_string(f_.universe()->size()) + " variables but the Lie algebra has dimension " +
                          std::to_string(g.dimension()));
  }
  if (!check_ad_invariance(f_, g)) throw ValidationError("polynomial " + f_.to_string() + " is not Ad-invariant");
}

}  // namespace eqdr
