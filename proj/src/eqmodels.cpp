#include "eqdr/eqmodels.hpp"

#include "eqdr/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace eqdr {

// --------------------------------------------------------- WeilModelElement

Rat WeilModelElement::coefficient(const TensorKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Rat(0) : it->second;
}

void WeilModelElement::add_term(const TensorKey& key, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool WeilModelElement::is_theta_free() const {
  for (const auto& [key, c] : terms_) {
    const std::size_t l = key.weil.size() / 2;
    for (std::size_t i = l; i < key.weil.size(); ++i) {
      if (key.weil[i] != 0) return false;
    }
  }
  return true;
}

WeilModelElement& WeilModelElement::operator+=(const WeilModelElement& other) {
  for (const auto& [key, c] : other.terms_) add_term(key, c);
  return *this;
}

WeilModelElement& WeilModelElement::operator-=(const WeilModelElement& other) {
  for (const auto& [key, c] : other.terms_) add_term(key, -c);
  return *this;
}

WeilModelElement& WeilModelElement::operator*=(const Rat& s) {
  if (s == 0) {
    terms_.clear();
  } else {
    for (auto& [key, c] : terms_) c *= s;
  }
  return *this;
}

CartanElement::CartanElement(WeilModelElement x) : body_(std::move(x)) {
  if (!body_.is_theta_free()) throw std::invalid_argument("Cartan element may not contain theta");
}

// ---------------------------------------------------------------- WeilModel

WeilModel::WeilModel(std::shared_ptr<const WeilAlgebra> weil, std::shared_ptr<const SDgaModel> model)
    : weil_(std::move(weil)), model_(std::move(model)) {
  if (!(weil_->lie() == model_->s())) {
    throw ValidationError("the Weil algebra and the model are built on different Lie algebras");
  }
}

WeilModelElement WeilModel::tensor(const GcaElement& w, const RatVector& a) const {
  WeilModelElement out;
  for (const auto& [m, c] : w.terms()) {
    for (std::size_t j = 0; j < a.size(); ++j) out.add_term({m, j}, c * a[j]);
  }
  return out;
}

WeilModelElement WeilModel::from_model(const RatVector& a) const { return tensor(weil_->one(), a); }

WeilModelElement WeilModel::from_weil(const GcaElement& w) const { return tensor(w, model_->unit_vector()); }

int WeilModel::degree(const TensorKey& key) const {
  return monomial_degree(*weil_->universe(), key.weil) + model_->degree(key.basis);
}

std::optional<int> WeilModel::homogeneous_degree(const WeilModelElement& x) const {
  std::optional<int> out;
  for (const auto& [key, c] : x.terms()) {
    const int d = degree(key);
    if (out && *out != d) return std::nullopt;
    out = d;
  }
  return out;
}

int WeilModel::u_weight(const TensorKey& key) const {
  int w = 0;
  for (std::size_t i = 0; i < rank(); ++i) w += static_cast<int>(key.weil[i]);
  return w;
}

WeilModelElement WeilModel::multiply(const WeilModelElement& a, const WeilModelElement& b) const {
  const GeneratorSet& gens = *weil_->universe();
  WeilModelElement out;
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      int sign = koszul_sign(gens, ka.weil, kb.weil);
      if (sign == 0) continue;
      if (model_->degree(ka.basis) % 2 != 0 && monomial_degree(gens, kb.weil) % 2 != 0) sign = -sign;
      const RatVector& p = model_->product(ka.basis, kb.basis);
      Exponents w(ka.weil.size());
      for (std::size_t g = 0; g < w.size(); ++g) w[g] = ka.weil[g] + kb.weil[g];
      const Rat factor = sign * ca * cb;
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] != 0) out.add_term({w, k}, factor * p[k]);
      }
    }
  }
  return out;
}

WeilModelElement WeilModel::apply_weil_operator(const GradedOperator& w_op, const RatMatrix& a_op, Parity parity,
                                                const WeilModelElement& x) const {
  WeilModelElement out;
  for (const auto& [key, c] : x.terms()) {
    const GcaElement image = w_op.apply(GcaElement::monomial(weil_->universe(), key.weil));
    for (const auto& [m, cm] : image.terms()) out.add_term({m, key.basis}, c * cm);
  }
  out += apply_model_operator(a_op, parity, x);
  return out;
}

WeilModelElement WeilModel::apply_model_operator(const RatMatrix& op, Parity parity, const WeilModelElement& x) const {
  // Column-indexed view of op.
  std::map<std::size_t, std::vector<std::pair<std::size_t, Rat>>> columns;
  for (const auto& [idx, value] : op.entries()) columns[idx.second].emplace_back(idx.first, value);
  const GeneratorSet& gens = *weil_->universe();
  WeilModelElement out;
  for (const auto& [key, c] : x.terms()) {
    auto it = columns.find(key.basis);
    if (it == columns.end()) continue;
    const bool negate = parity == Parity::odd && monomial_degree(gens, key.weil) % 2 != 0;
    for (const auto& [row, value] : it->second) out.add_term({key.weil, row}, negate ? Rat(-c * value) : Rat(c * value));
  }
  return out;
}

WeilModelElement WeilModel::d(const WeilModelElement& x) const {
  return apply_weil_operator(weil_->d(), model_->d(), Parity::odd, x);
}

WeilModelElement WeilModel::iota(std::size_t i, const WeilModelElement& x) const {
  return apply_weil_operator(weil_->iota(i), model_->iota_s(i), Parity::odd, x);
}

WeilModelElement WeilModel::lie(std::size_t i, const WeilModelElement& x) const {
  return apply_weil_operator(weil_->lie_derivative(i), model_->lie_s(i), Parity::even, x);
}

WeilModelElement WeilModel::total_operator(TotalOperator kind, std::size_t i, const WeilModelElement& x) const {
  switch (kind) {
    case TotalOperator::d: return d(x);
    case TotalOperator::iota: return iota(i, x);
    case TotalOperator::lie: return lie(i, x);
  }
  throw std::invalid_argument("unknown operator kind");
}

CartanElement WeilModel::cartan_d(const CartanElement& a) const {
  WeilModelElement out = apply_model_operator(model_->d(), Parity::even, a.element());
  for (std::size_t i = 0; i < rank(); ++i) {
    const WeilModelElement contracted = apply_model_operator(model_->iota_s(i), Parity::even, a.element());
    for (const auto& [key, c] : contracted.terms()) {
      TensorKey shifted = key;
      shifted.weil[weil_->u_index(i)] += 1;
      out.add_term(shifted, -c);
    }
  }
  return CartanElement(std::move(out));
}

WeilModelElement WeilModel::mq_to_weil(const CartanElement& a) const {
  WeilModelElement x = a.element();
  for (std::size_t i = rank(); i-- > 0;) x -= multiply(theta(i), iota(i, x));
  return x;
}

CartanElement WeilModel::mq_to_cartan(const WeilModelElement& x) const {
  WeilModelElement out;
  for (const auto& [key, c] : x.terms()) {
    bool theta_free = true;
    for (std::size_t i = 0; i < rank(); ++i) theta_free = theta_free && key.weil[weil_->theta_index(i)] == 0;
    if (theta_free) out.add_term(key, c);
  }
  return CartanElement(std::move(out));
}

BasicCheck WeilModel::is_basic(const WeilModelElement& x) const {
  for (std::size_t i = 0; i < rank(); ++i) {
    const WeilModelElement contracted = iota(i, x);
    if (!contracted.is_zero()) return {false, "iota_" + std::to_string(i + 1) + " gives " + format(contracted)};
  }
  for (std::size_t i = 0; i < rank(); ++i) {
    const WeilModelElement derived = lie(i, x);
    if (!derived.is_zero()) return {false, "L_" + std::to_string(i + 1) + " gives " + format(derived)};
  }
  return {};
}

std::vector<TensorKey> WeilModel::keys_of_degree(int k, bool cartan) const {
  std::vector<TensorKey> out;
  if (k < 0) return out;
  const GeneratorSet& gens = *weil_->universe();
  for (std::size_t j = 0; j < model_->size(); ++j) {
    const int rest = k - model_->degree(j);
    if (rest < 0) continue;
    for (auto& m : monomials_of_degree(gens, rest)) {
      if (cartan) {
        bool theta_free = true;
        for (std::size_t i = 0; i < rank(); ++i) theta_free = theta_free && m[weil_->theta_index(i)] == 0;
        if (!theta_free) continue;
      }
      out.push_back({std::move(m), j});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string WeilModel::format(const WeilModelElement& x) const {
  const GeneratorSet& gens = *weil_->universe();
  // Lower degree first; within a degree, higher powers of the Weil
  // generators first.
  std::vector<std::pair<TensorKey, Rat>> ordered(x.terms().begin(), x.terms().end());
  std::stable_sort(ordered.begin(), ordered.end(), [&](const auto& a, const auto& b) {
    const int da = degree(a.first), db = degree(b.first);
    if (da != db) return da < db;
    if (a.first.weil != b.first.weil) return a.first.weil > b.first.weil;
    return a.first.basis < b.first.basis;
  });
  std::vector<std::pair<std::string, Rat>> parts;
  for (const auto& [key, c] : ordered) {
    std::string text;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (key.weil[g] == 0) continue;
      if (!text.empty()) text += "*";
      text += gens[g].name;
      if (key.weil[g] > 1) text += "^" + std::to_string(key.weil[g]);
    }
    if (key.basis != model_->unit()) {
      if (!text.empty()) text += "*";
      text += model_->element(key.basis).name;
    }
    parts.emplace_back(std::move(text), c);
  }
  return format_sum(parts);
}

RatVector coordinates(const WeilModelElement& x, const std::vector<TensorKey>& keys) {
  RatVector v(keys.size());
  for (const auto& [key, c] : x.terms()) {
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it == keys.end() || !(*it == key)) throw std::invalid_argument("element has a term outside the given key set");
    v[static_cast<std::size_t>(it - keys.begin())] = c;
  }
  return v;
}

WeilModelElement from_coordinates(const RatVector& v, const std::vector<TensorKey>& keys) {
  if (v.size() != keys.size()) throw std::invalid_argument("from_coordinates: dimension mismatch");
  WeilModelElement out;
  for (std::size_t i = 0; i < v.size(); ++i) out.add_term(keys[i], v[i]);
  return out;
}

// ------------------------------------------------------ EquivariantComplex

namespace {

template <class Op>
RatMatrix operator_matrix(const std::vector<TensorKey>& from, const std::vector<TensorKey>& to, Op&& op) {
  RatMatrix m(to.size(), from.size());
  for (std::size_t col = 0; col < from.size(); ++col) {
    WeilModelElement x;
    x.add_term(from[col], 1);
    const WeilModelElement image = op(x);
    const RatVector v = coordinates(image, to);
    for (std::size_t row = 0; row < v.size(); ++row) m.set(row, col, v[row]);
  }
  return m;
}

std::vector<RatVector> joint_kernel(std::vector<RatMatrix> blocks, std::size_t dimension) {
  if (blocks.empty()) {
    std::vector<RatVector> out;
    for (std::size_t i = 0; i < dimension; ++i) {
      RatVector v(dimension);
      v[i] = 1;
      out.push_back(std::move(v));
    }
    return out;
  }
  return kernel_basis(RatMatrix::vstack(blocks));
}

}  // namespace

EquivariantComplex::EquivariantComplex(std::shared_ptr<const WeilModel> space, int cutoff)
    : space_(std::move(space)), cutoff_(cutoff) {
  if (cutoff_ < 0) throw std::invalid_argument("EquivariantComplex: negative cutoff");
  const WeilModel& s = *space_;
  levels_.resize(static_cast<std::size_t>(cutoff_) + 1);
  for (int k = 0; k <= cutoff_; ++k) {
    Level& level = levels_[static_cast<std::size_t>(k)];
    level.cartan_keys = s.keys_of_degree(k, true);
    level.weil_keys = s.keys_of_degree(k, false);
    const auto weil_below = s.keys_of_degree(k - 1, false);

    std::vector<RatMatrix> invariance, basic;
    for (std::size_t i = 0; i < s.rank(); ++i) {
      invariance.push_back(operator_matrix(level.cartan_keys, level.cartan_keys,
                                           [&](const WeilModelElement& x) { return s.lie(i, x); }));
      basic.push_back(operator_matrix(level.weil_keys, weil_below,
                                      [&](const WeilModelElement& x) { return s.iota(i, x); }));
      basic.push_back(operator_matrix(level.weil_keys, level.weil_keys,
                                      [&](const WeilModelElement& x) { return s.lie(i, x); }));
    }
    level.invariant = joint_kernel(std::move(invariance), level.cartan_keys.size());
    level.basic = joint_kernel(std::move(basic), level.weil_keys.size());
  }
}

int EquivariantComplex::check(int k) const {
  if (k < 0 || k > cutoff_) throw std::out_of_range("degree " + std::to_string(k) + " exceeds the cutoff " + std::to_string(cutoff_));
  return k;
}

std::vector<CartanElement> EquivariantComplex::invariants(int k) const {
  std::vector<CartanElement> out;
  for (const auto& v : invariant_basis(k)) out.emplace_back(from_coordinates(v, cartan_keys(k)));
  return out;
}

RatMatrix EquivariantComplex::cartan_d_matrix(int k) const {
  if (k >= cutoff_) throw std::out_of_range("cartan_d_matrix: degree " + std::to_string(k) + " needs cutoff > k");
  return operator_matrix(cartan_keys(k), cartan_keys(k + 1), [&](const WeilModelElement& x) {
    return space_->cartan_d(CartanElement(x)).element();
  });
}

RatMatrix EquivariantComplex::weil_d_matrix(int k) const {
  if (k >= cutoff_) throw std::out_of_range("weil_d_matrix: degree " + std::to_string(k) + " needs cutoff > k");
  return operator_matrix(weil_keys(k), weil_keys(k + 1), [&](const WeilModelElement& x) { return space_->d(x); });
}

namespace {

// Cohomology of a subcomplex given by bases of its degree k and k-1 pieces
// inside the ambient spaces V^k, V^{k-1}, with ambient differentials.
CohomologyGroup subcomplex_cohomology(int k, const std::vector<RatVector>& sub_k, const std::vector<RatVector>& sub_below,
                                      const RatMatrix& d_k, const std::optional<RatMatrix>& d_below,
                                      const std::vector<TensorKey>& keys) {
  const std::size_t dim = keys.size();
  const RatMatrix span_k = RatMatrix::from_columns(dim, sub_k);
  std::vector<RatVector> cycles;
  for (const auto& z : kernel_basis(d_k * span_k)) cycles.push_back(span_k.apply(z));

  std::vector<RatVector> boundaries;
  if (d_below) {
    for (const auto& b : sub_below) boundaries.push_back(d_below->apply(b));
  }

  const QuotientBasis q = quotient_basis(cycles, boundaries, dim);
  EchelonBasis boundary_span(dim);
  for (const auto& b : boundaries) boundary_span.insert(b);

  CohomologyGroup group;
  group.degree = k;
  group.dimension = q.dimension;
  for (const auto& rep : q.representatives) group.representatives.push_back(from_coordinates(boundary_span.reduce(rep), keys));
  return group;
}

void require_cutoff(const EquivariantComplex& c, int k) {
  if (k < 0 || k + 1 > c.cutoff()) {
    throw std::out_of_range("cutoff exceeded: degree " + std::to_string(k) + " needs cutoff >= " + std::to_string(k + 1));
  }
}

}  // namespace

CohomologyGroup equivariant_cohomology(const EquivariantComplex& c, int k) {
  require_cutoff(c, k);
  std::optional<RatMatrix> below;
  std::vector<RatVector> sub_below;
  if (k > 0) {
    below = c.cartan_d_matrix(k - 1);
    sub_below = c.invariant_basis(k - 1);
  }
  return subcomplex_cohomology(k, c.invariant_basis(k), sub_below, c.cartan_d_matrix(k), below, c.cartan_keys(k));
}

CohomologyGroup weil_basic_cohomology(const EquivariantComplex& c, int k) {
  require_cutoff(c, k);
  std::optional<RatMatrix> below;
  std::vector<RatVector> sub_below;
  if (k > 0) {
    below = c.weil_d_matrix(k - 1);
    sub_below = c.basic_basis(k - 1);
  }
  return subcomplex_cohomology(k, c.basic_basis(k), sub_below, c.weil_d_matrix(k), below, c.weil_keys(k));
}

std::optional<CartanElement> cartan_primitive(const EquivariantComplex& c, const CartanElement& x) {
  const auto degree = c.space().homogeneous_degree(x.element());
  if (!degree) {
    if (x.is_zero()) return CartanElement();
    throw std::invalid_argument("cartan_primitive: element is not homogeneous");
  }
  if (*degree == 0) return std::nullopt;
  if (*degree > c.cutoff()) throw std::out_of_range("cartan_primitive: degree exceeds the cutoff");
  const int k = *degree;
  const auto& below_keys = c.cartan_keys(k - 1);
  const RatMatrix span_below = RatMatrix::from_columns(below_keys.size(), c.invariant_basis(k - 1));
  const RatMatrix image = c.cartan_d_matrix(k - 1) * span_below;
  const auto z = solve(image, coordinates(x.element(), c.cartan_keys(k)));
  if (!z) return std::nullopt;
  return CartanElement(from_coordinates(span_below.apply(*z), below_keys));
}

std::optional<RatVector> class_coordinates(const EquivariantComplex& c, const CohomologyGroup& group,
                                           const CartanElement& x) {
  const int k = group.degree;
  require_cutoff(c, k);
  const auto& keys = c.cartan_keys(k);
  if (!x.is_zero()) {
    const auto degree = c.space().homogeneous_degree(x.element());
    if (!degree || *degree != k) return std::nullopt;
  }
  const RatVector v = coordinates(x.element(), keys);
  // Must be an invariant cocycle.
  EchelonBasis invariant(keys.size());
  for (const auto& b : c.invariant_basis(k)) invariant.insert(b);
  if (!invariant.contains(v) || !is_zero(c.cartan_d_matrix(k).apply(v))) return std::nullopt;

  std::vector<RatVector> columns;
  for (const auto& rep : group.representatives) columns.push_back(coordinates(rep, keys));
  if (k > 0) {
    const RatMatrix d_below = c.cartan_d_matrix(k - 1);
    for (const auto& b : c.invariant_basis(k - 1)) columns.push_back(d_below.apply(b));
  }
  const auto y = solve(RatMatrix::from_columns(keys.size(), columns), v);
  if (!y) throw InternalError("invariant cocycle is not spanned by cohomology representatives and boundaries");
  return RatVector(y->begin(), y->begin() + static_cast<std::ptrdiff_t>(group.dimension));
}

}  // namespace eqdr
