#include "eqdr/sdga.hpp"

#include "eqdr/errors.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace eqdr {

namespace {

std::vector<RatMatrix> derive_lie(const RatMatrix& d, const std::vector<RatMatrix>& iota) {
  std::vector<RatMatrix> out;
  out.reserve(iota.size());
  for (const auto& i : iota) out.push_back(d * i + i * d);
  return out;
}

void require_square(const RatMatrix& m, std::size_t n, const std::string& what) {
  if (m.rows() != n || m.cols() != n) {
    throw ValidationError(what + " must be " + std::to_string(n) + "x" + std::to_string(n));
  }
}

}  // namespace

// ---------------------------------------------------------------- SDgaModel

SDgaModel::SDgaModel(std::vector<BasisElement> basis, std::size_t unit, std::vector<std::vector<RatVector>> products,
                     RatMatrix d, LieAlgebraData s, std::vector<RatMatrix> iota_s)
    : basis_(std::move(basis)),
      unit_(unit),
      products_(std::move(products)),
      d_(std::move(d)),
      s_(std::move(s)),
      iota_s_(std::move(iota_s)) {
  const std::size_t n = basis_.size();
  if (n == 0) throw ValidationError("model has an empty basis");
  std::set<std::string> names;
  for (const auto& b : basis_) {
    if (b.degree < 0) throw ValidationError("basis element '" + b.name + "' has negative degree");
    if (!names.insert(b.name).second) throw ValidationError("duplicate basis name '" + b.name + "'");
  }
  if (unit_ >= n) throw ValidationError("model has no unit");
  if (basis_[unit_].degree != 0) throw ValidationError("unit '" + basis_[unit_].name + "' must have degree 0");
  if (products_.size() != n) throw ValidationError("multiplication table has wrong size");
  for (const auto& row : products_) {
    if (row.size() != n) throw ValidationError("multiplication table has wrong size");
    for (const auto& v : row) {
      if (v.size() != n) throw ValidationError("multiplication table entry has wrong length");
    }
  }
  require_square(d_, n, "differential");
  if (iota_s_.size() != s_.dimension()) {
    throw ValidationError("expected " + std::to_string(s_.dimension()) + " S-contractions, got " +
                          std::to_string(iota_s_.size()));
  }
  for (const auto& m : iota_s_) require_square(m, n, "S-contraction");
  lie_s_ = derive_lie(d_, iota_s_);
}

int SDgaModel::max_degree() const {
  int out = 0;
  for (const auto& b : basis_) out = std::max(out, b.degree);
  return out;
}

std::optional<std::size_t> SDgaModel::find(const std::string& name) const {
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (basis_[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> SDgaModel::indices_of_degree(int degree) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (basis_[i].degree == degree) out.push_back(i);
  }
  return out;
}

RatVector SDgaModel::basis_vector(std::size_t i) const {
  RatVector v(size());
  v.at(i) = 1;
  return v;
}

RatVector SDgaModel::multiply(const RatVector& a, const RatVector& b) const {
  if (a.size() != size() || b.size() != size()) throw std::invalid_argument("SDgaModel::multiply: dimension mismatch");
  RatVector out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < size(); ++j) {
      if (b[j] == 0) continue;
      const Rat factor = a[i] * b[j];
      const RatVector& p = products_[i][j];
      for (std::size_t k = 0; k < size(); ++k) {
        if (p[k] != 0) out[k] += factor * p[k];
      }
    }
  }
  return out;
}

bool SDgaModel::trivial_action() const {
  for (const auto& m : iota_s_) {
    if (!m.is_zero()) return false;
  }
  return true;
}

SDgaModel SDgaModel::with_acting_algebra(const LieAlgebraData& s) const {
  if (!trivial_action()) throw ValidationError("cannot replace the acting Lie algebra of a model with a nontrivial action");
  std::vector<RatMatrix> zero(s.dimension(), RatMatrix(size(), size()));
  return SDgaModel(basis_, unit_, products_, d_, s, std::move(zero));
}

std::string SDgaModel::format(const RatVector& v) const {
  std::vector<std::pair<std::string, Rat>> parts;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) parts.emplace_back(i == unit_ ? std::string() : basis_[i].name, v[i]);
  }
  return format_sum(parts);
}

// -------------------------------------------------------------- BundleModel

BundleModel::BundleModel(SDgaModel total, LieAlgebraData g, std::vector<RatMatrix> iota_g)
    : total_(std::move(total)), g_(std::move(g)), iota_g_(std::move(iota_g)) {
  if (iota_g_.size() != g_.dimension()) {
    throw ValidationError("expected " + std::to_string(g_.dimension()) + " G-contractions, got " +
                          std::to_string(iota_g_.size()));
  }
  for (const auto& m : iota_g_) require_square(m, total_.size(), "G-contraction");
  lie_g_ = derive_lie(total_.d(), iota_g_);
}

// --------------------------------------------------------------- validation

namespace {

std::string idx(std::size_t i) { return std::to_string(i + 1); }

// A B - (-1)^{pa pb} B A
RatMatrix graded_commutator(const RatMatrix& a, bool a_odd, const RatMatrix& b, bool b_odd) {
  return (a_odd && b_odd) ? a * b + b * a : a * b - b * a;
}

// First basis element on which `m` is nonzero, as a witness string.
std::optional<std::string> nonzero_witness(const SDgaModel& model, const RatMatrix& m) {
  if (m.is_zero()) return std::nullopt;
  const std::size_t col = m.entries().begin()->first.second;
  return "on " + model.element(col).name + " gives " + model.format(m.column(col));
}

void check_shift(CheckReport& report, const SDgaModel& model, const RatMatrix& op, int shift, const std::string& name,
                 const std::string& label) {
  for (const auto& [index, value] : op.entries()) {
    const auto [row, col] = index;
    if (model.degree(row) != model.degree(col) + shift) {
      report.fail(name, label + "(" + model.element(col).name + ") has a component along " + model.element(row).name +
                            " of degree " + std::to_string(model.degree(row)));
      return;
    }
  }
  report.pass(name);
}

void check_antiderivation(CheckReport& report, const SDgaModel& model, const RatMatrix& op, bool odd,
                          const std::string& name, const std::string& label) {
  const std::size_t n = model.size();
  std::vector<RatVector> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = op.column(i);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const RatVector lhs = op.apply(model.product(i, j));
      RatVector rhs = model.multiply(images[i], model.basis_vector(j));
      const RatVector second = model.multiply(model.basis_vector(i), images[j]);
      const bool negate = odd && model.degree(i) % 2 != 0;
      for (std::size_t k = 0; k < n; ++k) rhs[k] += negate ? Rat(-second[k]) : second[k];
      if (lhs != rhs) {
        report.fail(name, label + "(" + model.element(i).name + "*" + model.element(j).name + ") = " + model.format(lhs) +
                              " but the Leibniz rule gives " + model.format(rhs));
        return;
      }
    }
  }
  report.pass(name);
}

void check_zero(CheckReport& report, const SDgaModel& model, const RatMatrix& m, const std::string& name,
                const std::string& label) {
  if (auto w = nonzero_witness(model, m)) {
    report.fail(name, label + " " + *w);
  } else {
    report.pass(name);
  }
}

// Contraction axioms and the derived Lie-derivative bracket relations for
// one acting algebra (prefix "S" or "G").
void check_action(CheckReport& report, const SDgaModel& model, const std::string& side, const LieAlgebraData& lie,
                  const std::vector<RatMatrix>& iota, const std::vector<RatMatrix>& lie_deriv) {
  const std::string p = side + ": ";
  if (auto v = validate_lie(lie)) {
    report.fail(p + "acting Lie algebra is valid", v->describe());
  } else {
    report.pass(p + "acting Lie algebra is valid");
  }
  const std::size_t l = iota.size();
  for (std::size_t i = 0; i < l; ++i) {
    check_shift(report, model, iota[i], -1, p + "iota lowers degree by 1", "iota_" + idx(i));
    check_antiderivation(report, model, iota[i], true, p + "iota is an antiderivation", "iota_" + idx(i));
    for (std::size_t j = i; j < l; ++j) {
      check_zero(report, model, graded_commutator(iota[i], true, iota[j], true), p + "{iota_i, iota_j} = 0",
                 "{iota_" + idx(i) + ", iota_" + idx(j) + "}");
    }
  }
  for (std::size_t i = 0; i < l; ++i) {
    check_zero(report, model, graded_commutator(lie_deriv[i], false, model.d(), true), p + "[L_i, d] = 0",
               "[L_" + idx(i) + ", d]");
    for (std::size_t j = 0; j < l; ++j) {
      RatMatrix ll = graded_commutator(lie_deriv[i], false, lie_deriv[j], false);
      RatMatrix li = graded_commutator(lie_deriv[i], false, iota[j], true);
      for (std::size_t k = 0; k < l; ++k) {
        if (lie.c(i, j, k) == 0) continue;
        ll = ll - lie.c(i, j, k) * lie_deriv[k];
        li = li - lie.c(i, j, k) * iota[k];
      }
      check_zero(report, model, ll, p + "[L_i, L_j] = sum c_ij^k L_k", "[L_" + idx(i) + ", L_" + idx(j) + "] - sum c L");
      check_zero(report, model, li, p + "[L_i, iota_j] = sum c_ij^k iota_k",
                 "[L_" + idx(i) + ", iota_" + idx(j) + "] - sum c iota");
    }
  }
  if (l == 0) {
    for (const char* name : {"iota lowers degree by 1", "iota is an antiderivation", "{iota_i, iota_j} = 0", "[L_i, d] = 0",
                             "[L_i, L_j] = sum c_ij^k L_k", "[L_i, iota_j] = sum c_ij^k iota_k"}) {
      report.pass(p + name);
    }
  }
}

void check_algebra(CheckReport& report, const SDgaModel& m) {
  const std::size_t n = m.size();

  bool unit_ok = true;
  for (std::size_t i = 0; i < n && unit_ok; ++i) {
    const RatVector e = m.basis_vector(i);
    if (m.product(m.unit(), i) != e || m.product(i, m.unit()) != e) {
      report.fail("unit", m.element(m.unit()).name + " does not act as the identity on " + m.element(i).name);
      unit_ok = false;
    }
  }
  if (unit_ok) report.pass("unit");

  // Degrees of products.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const RatVector& p = m.product(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        if (p[k] != 0 && m.degree(k) != m.degree(i) + m.degree(j)) {
          report.fail("product is graded", m.element(i).name + "*" + m.element(j).name + " has a component along " +
                                               m.element(k).name);
        }
      }
    }
  }
  report.pass("product is graded");

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool sign = (m.degree(i) * m.degree(j)) % 2 != 0;
      RatVector swapped = m.product(j, i);
      if (sign) {
        for (auto& x : swapped) x = -x;
      }
      if (m.product(i, j) != swapped) {
        report.fail("product is graded-commutative", m.element(i).name + "*" + m.element(j).name + " = " +
                                                         m.format(m.product(i, j)) + " but the swapped product gives " +
                                                         m.format(swapped));
      }
    }
  }
  report.pass("product is graded-commutative");

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const RatVector left = m.multiply(m.product(i, j), m.basis_vector(k));
        const RatVector right = m.multiply(m.basis_vector(i), m.product(j, k));
        if (left != right) {
          report.fail("product is associative", "(" + m.element(i).name + "*" + m.element(j).name + ")*" +
                                                    m.element(k).name + " = " + m.format(left) + " but " +
                                                    m.element(i).name + "*(" + m.element(j).name + "*" +
                                                    m.element(k).name + ") = " + m.format(right));
        }
      }
    }
  }
  report.pass("product is associative");

  check_shift(report, m, m.d(), 1, "d raises degree by 1", "d");
  check_zero(report, m, m.d() * m.d(), "d^2 = 0", "d^2");
  check_antiderivation(report, m, m.d(), true, "d is an antiderivation", "d");
}

}  // namespace

CheckReport validate_sdga(const SDgaModel& m) {
  CheckReport report;
  check_algebra(report, m);
  std::vector<RatMatrix> iota, lie;
  for (std::size_t i = 0; i < m.s_rank(); ++i) {
    iota.push_back(m.iota_s(i));
    lie.push_back(m.lie_s(i));
  }
  check_action(report, m, "S", m.s(), iota, lie);
  return report;
}

CheckReport validate_bundle(const BundleModel& b) {
  CheckReport report = validate_sdga(b.total());
  const SDgaModel& m = b.total();
  std::vector<RatMatrix> iota_g, lie_g;
  for (std::size_t a = 0; a < b.g_rank(); ++a) {
    iota_g.push_back(b.iota_g(a));
    lie_g.push_back(b.lie_g(a));
  }
  check_action(report, m, "G", b.g(), iota_g, lie_g);

  const std::vector<std::string> names = {"[L^S_i, L^G_a] = 0", "{iota^S_i, iota^G_a} = 0", "[L^S_i, iota^G_a] = 0",
                                          "[L^G_a, iota^S_i] = 0"};
  for (std::size_t i = 0; i < m.s_rank(); ++i) {
    for (std::size_t a = 0; a < b.g_rank(); ++a) {
      const std::string w = "(i,a) = (" + idx(i) + "," + idx(a) + ")";
      check_zero(report, m, graded_commutator(m.lie_s(i), false, b.lie_g(a), false), names[0], w);
      check_zero(report, m, graded_commutator(m.iota_s(i), true, b.iota_g(a), true), names[1], w);
      check_zero(report, m, graded_commutator(m.lie_s(i), false, b.iota_g(a), true), names[2], w);
      check_zero(report, m, graded_commutator(b.lie_g(a), false, m.iota_s(i), true), names[3], w);
    }
  }
  for (const auto& name : names) report.pass(name);
  return report;
}

// ------------------------------------------------------------------ catalog

namespace {

// Builds a model from named pieces: products default to zero except those
// with the unit, and each listed product (a, b) also fixes (b, a) by graded
// commutativity.
struct ModelSketch {
  std::vector<BasisElement> basis;
  std::vector<std::tuple<std::string, std::string, std::vector<std::pair<std::string, Rat>>>> products;
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, Rat>>>> d;
  LieAlgebraData s;
  std::vector<std::vector<std::pair<std::string, std::vector<std::pair<std::string, Rat>>>>> iota_s;

  std::size_t at(const std::string& name) const {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis[i].name == name) return i;
    }
    throw std::logic_error("builtin model refers to unknown basis element " + name);
  }

  RatVector combination(const std::vector<std::pair<std::string, Rat>>& terms) const {
    RatVector v(basis.size());
    for (const auto& [name, c] : terms) v[at(name)] += c;
    return v;
  }

  RatMatrix op(const std::vector<std::pair<std::string, std::vector<std::pair<std::string, Rat>>>>& images) const {
    RatMatrix m(basis.size(), basis.size());
    for (const auto& [name, terms] : images) {
      const RatVector v = combination(terms);
      for (std::size_t r = 0; r < v.size(); ++r) m.set(r, at(name), v[r]);
    }
    return m;
  }

  SDgaModel build() const {
    const std::size_t n = basis.size();
    const std::size_t unit = at("one");
    std::vector<std::vector<RatVector>> table(n, std::vector<RatVector>(n, RatVector(n)));
    for (std::size_t i = 0; i < n; ++i) {
      table[unit][i][i] = 1;
      table[i][unit][i] = 1;
    }
    for (const auto& [a, b, terms] : products) {
      const std::size_t i = at(a), j = at(b);
      table[i][j] = combination(terms);
      RatVector mirrored = table[i][j];
      if ((basis[i].degree * basis[j].degree) % 2 != 0) {
        for (auto& x : mirrored) x = -x;
      }
      table[j][i] = mirrored;
    }
    std::vector<RatMatrix> iota;
    for (const auto& images : iota_s) iota.push_back(op(images));
    return SDgaModel(basis, unit, std::move(table), op(d), s, std::move(iota));
  }
};

using Terms = std::vector<std::pair<std::string, Rat>>;

SDgaModel point_model() {
  ModelSketch s;
  s.basis = {{"one", 0}};
  s.s = LieAlgebraData::u1();
  s.iota_s = {{}};
  return s.build();
}

SDgaModel circle_rotation_model() {
  ModelSketch s;
  s.basis = {{"one", 0}, {"alpha", 1}};
  s.s = LieAlgebraData::u1();
  s.iota_s = {{{"alpha", Terms{{"one", 1}}}}};
  return s.build();
}

SDgaModel s2_trivial_model() {
  ModelSketch s;
  s.basis = {{"one", 0}, {"omega", 2}};
  s.s = LieAlgebraData::u1();
  s.iota_s = {{}};
  return s.build();
}

BundleModel flat_circle_over_circle_model() {
  ModelSketch s;
  s.basis = {{"one", 0}, {"alpha", 1}, {"beta", 1}, {"alpha_beta", 2}};
  s.products = {{"alpha", "beta", Terms{{"alpha_beta", 1}}}};
  s.s = LieAlgebraData::u1();
  // iota(alpha beta) = iota(alpha) beta - alpha iota(beta)
  s.iota_s = {{{"alpha", Terms{{"one", 1}}}, {"alpha_beta", Terms{{"beta", 1}}}}};
  ModelSketch g = s;
  g.iota_s = {{{"beta", Terms{{"one", 1}}}, {"alpha_beta", Terms{{"alpha", -1}}}}};
  return BundleModel(s.build(), LieAlgebraData::u1(), {g.op(g.iota_s[0])});
}

BundleModel hopf_model(bool fiber_rotation) {
  ModelSketch s;
  s.basis = {{"one", 0}, {"beta", 1}, {"omega", 2}, {"beta_omega", 3}};
  s.products = {{"beta", "omega", Terms{{"beta_omega", 1}}}};
  s.d = {{"beta", Terms{{"omega", 1}}}};
  s.s = LieAlgebraData::u1();
  const std::vector<std::pair<std::string, Terms>> fiber = {{"beta", Terms{{"one", 1}}},
                                                            {"beta_omega", Terms{{"omega", 1}}}};
  s.iota_s = {fiber_rotation ? fiber : std::vector<std::pair<std::string, Terms>>{}};
  return BundleModel(s.build(), LieAlgebraData::u1(), {s.op(fiber)});
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"point", "circle_rotation", "s2_trivial", "flat_circle_over_circle",
                                                 "hopf_trivial_s", "hopf_fiber_rotation"};
  return names;
}

AnyModel builtin(const std::string& name) {
  if (name == "point") return point_model();
  if (name == "circle_rotation") return circle_rotation_model();
  if (name == "s2_trivial") return s2_trivial_model();
  if (name == "flat_circle_over_circle") return flat_circle_over_circle_model();
  if (name == "hopf_trivial_s") return hopf_model(false);
  if (name == "hopf_fiber_rotation") return hopf_model(true);
  throw std::invalid_argument("unknown builtin model '" + name + "'");
}

LieAlgebraData builtin_lie(const std::string& name) {
  if (name == "u1") return LieAlgebraData::u1();
  if (name == "su2") return LieAlgebraData::su2();
  throw std::invalid_argument("unknown builtin Lie algebra '" + name + "'");
}

}  // namespace eqdr
