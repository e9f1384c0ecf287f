#include "eqdr/chernweil.hpp"

#include "eqdr/errors.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace eqdr {

namespace {

std::string idx(std::size_t i) { return std::to_string(i + 1); }

RatVector scaled(const Rat& s, RatVector v) {
  for (auto& x : v) x *= s;
  return v;
}

RatVector& add_into(RatVector& acc, const RatVector& v, const Rat& s = 1) {
  for (std::size_t i = 0; i < acc.size(); ++i) {
    if (v[i] != 0) acc[i] += s * v[i];
  }
  return acc;
}

std::optional<int> vector_degree(const SDgaModel& m, const RatVector& v) {
  std::optional<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (out && *out != m.degree(i)) return std::nullopt;
    out = m.degree(i);
  }
  return out;
}

GValued zero_gvalued(const LieAlgebraData& g, const SDgaModel& m) { return GValued(g.dimension(), m.zero()); }

/// -sum_b c_ab^c x^b, the coadjoint-style action of e_a on g-valued data.
GValued ad_action(const LieAlgebraData& g, std::size_t a, const GValued& x) {
  GValued out(x.size(), RatVector(x.empty() ? 0 : x[0].size()));
  for (std::size_t c = 0; c < g.dimension(); ++c) {
    for (std::size_t b = 0; b < g.dimension(); ++b) {
      if (g.c(a, b, c) != 0) add_into(out[c], x[b], -g.c(a, b, c));
    }
  }
  return out;
}

GValued apply_each(const RatMatrix& op, const GValued& x) {
  GValued out;
  for (const auto& v : x) out.push_back(op.apply(v));
  return out;
}

std::map<int, CartanElement> split_by_degree(const WeilModel& space, const CartanElement& x) {
  std::map<int, WeilModelElement> parts;
  for (const auto& [key, c] : x.terms()) parts[space.degree(key)].add_term(key, c);
  std::map<int, CartanElement> out;
  for (auto& [k, part] : parts) out.emplace(k, CartanElement(std::move(part)));
  return out;
}

}  // namespace

// ------------------------------------------------------------- base descent

BaseDescent descend_to_base(const BundleModel& b) {
  const SDgaModel& total = b.total();
  const std::size_t n = total.size();

  std::vector<RatMatrix> ops;
  for (std::size_t a = 0; a < b.g_rank(); ++a) {
    ops.push_back(b.iota_g(a));
    ops.push_back(b.lie_g(a));
  }

  std::vector<RatVector> columns;
  std::vector<BasisElement> basis;
  std::size_t unnamed = 0;
  auto name_of = [&](const RatVector& v) {
    std::optional<std::size_t> single;
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] == 0) continue;
      if (single || v[i] != 1) return "basic_" + std::to_string(++unnamed);
      single = i;
    }
    return total.element(*single).name;
  };

  for (int t = 0; t <= total.max_degree(); ++t) {
    const auto indices = total.indices_of_degree(t);
    if (indices.empty()) continue;
    std::vector<RatVector> embed_cols;
    for (std::size_t i : indices) embed_cols.push_back(total.basis_vector(i));
    const RatMatrix embed = RatMatrix::from_columns(n, embed_cols);

    std::vector<RatVector> kernel;
    if (ops.empty()) {
      kernel = embed_cols;
    } else {
      for (const auto& z : kernel_basis(RatMatrix::vstack(ops) * embed)) kernel.push_back(embed.apply(z));
    }

    EchelonBasis chosen(n);
    std::vector<RatVector> level;
    if (t == 0) {
      const RatVector unit = total.unit_vector();
      EchelonBasis kernel_span(n);
      for (const auto& v : kernel) kernel_span.insert(v);
      if (!kernel_span.contains(unit)) throw InternalError("the unit is not G-basic");
      chosen.insert(unit);
      level.push_back(unit);
    }
    for (const auto& v : kernel) {
      if (chosen.insert(v)) level.push_back(v);
    }
    for (auto& v : level) {
      basis.push_back({name_of(v), t});
      columns.push_back(std::move(v));
    }
  }

  const std::size_t m = columns.size();
  RatMatrix inclusion = RatMatrix::from_columns(n, columns);
  auto restrict = [&](const RatVector& v, const std::string& what) {
    auto y = solve(inclusion, v);
    if (!y) throw InternalError("G-basic forms are not closed under " + what);
    return *y;
  };

  std::vector<std::vector<RatVector>> products(m, std::vector<RatVector>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) products[i][j] = restrict(total.multiply(columns[i], columns[j]), "products");
  }
  auto restrict_operator = [&](const RatMatrix& op, const std::string& what) {
    std::vector<RatVector> cols;
    for (const auto& v : columns) cols.push_back(restrict(op.apply(v), what));
    return RatMatrix::from_columns(m, cols);
  };
  RatMatrix d = restrict_operator(total.d(), "d");
  std::vector<RatMatrix> iota_s;
  for (std::size_t i = 0; i < total.s_rank(); ++i) iota_s.push_back(restrict_operator(total.iota_s(i), "iota^S"));

  SDgaModel model(std::move(basis), 0, std::move(products), std::move(d), total.s(), std::move(iota_s));
  return {std::move(model), std::move(inclusion)};
}

// ---------------------------------------------------------- EquivariantBundle

namespace {

std::shared_ptr<const BundleModel> validated(BundleModel bundle) {
  const CheckReport report = validate_bundle(bundle);
  if (const CheckResult* failure = report.first_failure()) {
    throw ValidationError("bundle check '" + failure->name + "' failed: " + failure->witness);
  }
  return std::make_shared<const BundleModel>(std::move(bundle));
}

}  // namespace

EquivariantBundle::EquivariantBundle(BundleModel bundle)
    : bundle_(validated(std::move(bundle))), base_(descend_to_base(*bundle_)) {
  auto weil = std::make_shared<const WeilAlgebra>(WeilAlgebra::build(s()));
  total_space_ = std::make_shared<const WeilModel>(weil, std::make_shared<const SDgaModel>(bundle_->total()));
  base_space_ = std::make_shared<const WeilModel>(weil, std::make_shared<const SDgaModel>(base_.model));
}

std::optional<RatVector> EquivariantBundle::to_base(const RatVector& v) const { return solve(base_.inclusion, v); }

std::optional<CartanElement> EquivariantBundle::to_base(const CartanElement& x) const {
  std::map<Exponents, RatVector> grouped;
  for (const auto& [key, c] : x.terms()) {
    auto [it, inserted] = grouped.try_emplace(key.weil, total().zero());
    it->second[key.basis] += c;
  }
  WeilModelElement out;
  for (const auto& [weil, v] : grouped) {
    const auto y = to_base(v);
    if (!y) return std::nullopt;
    for (std::size_t j = 0; j < y->size(); ++j) out.add_term({weil, j}, (*y)[j]);
  }
  return CartanElement(std::move(out));
}

std::optional<std::string> EquivariantBundle::g_basic_witness(const WeilModelElement& x) const {
  const WeilModel& space = *total_space_;
  for (std::size_t a = 0; a < g_rank(); ++a) {
    const auto image = space.apply_model_operator(bundle_->iota_g(a), Parity::odd, x);
    if (!image.is_zero()) return "iota^G_" + idx(a) + " gives " + space.format(image);
  }
  for (std::size_t a = 0; a < g_rank(); ++a) {
    const auto image = space.apply_model_operator(bundle_->lie_g(a), Parity::even, x);
    if (!image.is_zero()) return "L^G_" + idx(a) + " gives " + space.format(image);
  }
  return std::nullopt;
}

// ------------------------------------------------------------- formatting

namespace {

template <class F>
std::string format_components(std::size_t n, F&& component) {
  std::string out = "(";
  for (std::size_t a = 0; a < n; ++a) {
    if (a) out += ", ";
    out += component(a);
  }
  return out + ")";
}

}  // namespace

std::string format_gvalued(const SDgaModel& m, const GValued& x) {
  if (x.size() == 1) return m.format(x[0]);
  return format_components(x.size(), [&](std::size_t a) { return m.format(x[a]); });
}

std::string format_gvalued(const WeilModel& space, const GValuedWeil& x) {
  if (x.size() == 1) return space.format(x[0]);
  return format_components(x.size(), [&](std::size_t a) { return space.format(x[a]); });
}

std::string format_gvalued(const WeilModel& space, const GValuedCartan& x) {
  if (x.size() == 1) return space.format(x[0]);
  return format_components(x.size(), [&](std::size_t a) { return space.format(x[a]); });
}

// ------------------------------------------------------------- connections

CheckReport validate_connection(const EquivariantBundle& b, const GValued& theta) {
  CheckReport report;
  const SDgaModel& m = b.total();
  const LieAlgebraData& g = b.g();
  const std::size_t n = g.dimension();

  const std::string shape = "one component per generator of g";
  if (theta.size() != n) {
    report.fail(shape, std::to_string(theta.size()) + " components for dim g = " + std::to_string(n));
    return report;
  }
  for (const auto& v : theta) {
    if (v.size() != m.size()) {
      report.fail(shape, "component has the wrong length");
      return report;
    }
  }
  report.pass(shape);

  for (std::size_t a = 0; a < n; ++a) {
    const auto degree = vector_degree(m, theta[a]);
    if (!degree || *degree != 1) report.fail("components have degree 1", "Theta^" + idx(a) + " = " + m.format(theta[a]));
  }
  report.pass("components have degree 1");

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t c = 0; c < n; ++c) {
      const RatVector value = b.bundle().iota_g(a).apply(theta[c]);
      const RatVector expected = a == c ? m.unit_vector() : m.zero();
      if (value != expected) {
        report.fail("iota^G_a Theta^b = delta_ab", "iota^G_" + idx(a) + " Theta^" + idx(c) + " = " + m.format(value));
      }
    }
  }
  report.pass("iota^G_a Theta^b = delta_ab");

  for (std::size_t a = 0; a < n; ++a) {
    const GValued value = apply_each(b.bundle().lie_g(a), theta);
    const GValued expected = ad_action(g, a, theta);
    for (std::size_t c = 0; c < n; ++c) {
      if (value[c] != expected[c]) {
        report.fail("L^G_a Theta^c = -sum c_ab^c Theta^b", "L^G_" + idx(a) + " Theta^" + idx(c) + " = " +
                                                               m.format(value[c]) + ", expected " + m.format(expected[c]));
      }
    }
  }
  report.pass("L^G_a Theta^c = -sum c_ab^c Theta^b");

  for (std::size_t i = 0; i < m.s_rank(); ++i) {
    for (std::size_t a = 0; a < n; ++a) {
      const RatVector value = m.lie_s(i).apply(theta[a]);
      if (!is_zero(value)) report.fail("L^S_i Theta^a = 0", "L^S_" + idx(i) + " Theta^" + idx(a) + " = " + m.format(value));
    }
  }
  report.pass("L^S_i Theta^a = 0");
  return report;
}

void require_connection(const EquivariantBundle& b, const GValued& theta) {
  const CheckReport report = validate_connection(b, theta);
  if (const CheckResult* failure = report.first_failure()) {
    throw ValidationError("connection check '" + failure->name + "' failed: " + failure->witness);
  }
}

GValued lie_bracket(const LieAlgebraData& g, const SDgaModel& m, const GValued& x, const GValued& y) {
  GValued out = zero_gvalued(g, m);
  for (std::size_t a = 0; a < g.dimension(); ++a) {
    for (std::size_t b = 0; b < g.dimension(); ++b) {
      bool any = false;
      for (std::size_t c = 0; c < g.dimension() && !any; ++c) any = g.c(a, b, c) != 0;
      if (!any) continue;
      const RatVector p = m.multiply(x[a], y[b]);
      for (std::size_t c = 0; c < g.dimension(); ++c) {
        if (g.c(a, b, c) != 0) add_into(out[c], p, g.c(a, b, c));
      }
    }
  }
  return out;
}

GValued curvature(const EquivariantBundle& b, const GValued& theta) {
  GValued k = apply_each(b.total().d(), theta);
  const GValued half = lie_bracket(b.g(), b.total(), theta, theta);
  for (std::size_t c = 0; c < k.size(); ++c) add_into(k[c], half[c], Rat(1, 2));
  return k;
}

GValued moment(const EquivariantBundle& b, const GValued& theta, std::size_t i) {
  GValued l;
  for (const auto& v : theta) l.push_back(scaled(-1, b.total().iota_s(i).apply(v)));
  return l;
}

std::vector<GValued> moments(const EquivariantBundle& b, const GValued& theta) {
  std::vector<GValued> out;
  for (std::size_t i = 0; i < b.s_rank(); ++i) out.push_back(moment(b, theta, i));
  return out;
}

GValued covariant_derivative(const EquivariantBundle& b, const GValued& theta, const GValued& x) {
  GValued out = apply_each(b.total().d(), x);
  const GValued br = lie_bracket(b.g(), b.total(), theta, x);
  for (std::size_t c = 0; c < out.size(); ++c) add_into(out[c], br[c]);
  return out;
}

CheckReport verify_curvature(const EquivariantBundle& b, const GValued& theta) {
  CheckReport report;
  const SDgaModel& m = b.total();
  const GValued k = curvature(b, theta);
  for (std::size_t a = 0; a < b.g_rank(); ++a) {
    for (std::size_t c = 0; c < b.g_rank(); ++c) {
      const RatVector value = b.bundle().iota_g(a).apply(k[c]);
      if (!is_zero(value)) report.fail("curvature is horizontal", "iota^G_" + idx(a) + " K^" + idx(c) + " = " + m.format(value));
    }
    const GValued value = apply_each(b.bundle().lie_g(a), k);
    const GValued expected = ad_action(b.g(), a, k);
    if (value != expected) {
      report.fail("curvature is Ad-equivariant", "L^G_" + idx(a) + " K = " + format_gvalued(m, value) + ", expected " +
                                                     format_gvalued(m, expected));
    }
  }
  report.pass("curvature is horizontal");
  report.pass("curvature is Ad-equivariant");
  return report;
}

CheckReport verify_moment(const EquivariantBundle& b, const GValued& theta) {
  CheckReport report;
  const SDgaModel& m = b.total();
  const auto l = moments(b, theta);
  for (std::size_t i = 0; i < b.s_rank(); ++i) {
    for (std::size_t a = 0; a < b.g_rank(); ++a) {
      const GValued value = apply_each(b.bundle().lie_g(a), l[i]);
      const GValued expected = ad_action(b.g(), a, l[i]);
      if (value != expected) {
        report.fail("L^G_a L_i^c = -sum c_ab^c L_i^b", "L^G_" + idx(a) + " L_" + idx(i) + " = " + format_gvalued(m, value) +
                                                            ", expected " + format_gvalued(m, expected));
      }
    }
  }
  report.pass("L^G_a L_i^c = -sum c_ab^c L_i^b");

  for (std::size_t j = 0; j < b.s_rank(); ++j) {
    for (std::size_t i = 0; i < b.s_rank(); ++i) {
      const GValued value = apply_each(m.lie_s(j), l[i]);
      GValued expected = zero_gvalued(b.g(), m);
      for (std::size_t k = 0; k < b.s_rank(); ++k) {
        if (b.s().c(j, i, k) == 0) continue;
        for (std::size_t c = 0; c < expected.size(); ++c) add_into(expected[c], l[k][c], b.s().c(j, i, k));
      }
      if (value != expected) {
        report.fail("L^S_j L_i = sum c_ji^k L_k", "L^S_" + idx(j) + " L_" + idx(i) + " = " + format_gvalued(m, value) +
                                                      ", expected " + format_gvalued(m, expected));
      }
    }
  }
  report.pass("L^S_j L_i = sum c_ji^k L_k");
  return report;
}

CheckReport verify_curvature_contractions(const EquivariantBundle& b, const GValued& theta) {
  CheckReport report;
  const SDgaModel& m = b.total();
  const GValued k = curvature(b, theta);
  const auto l = moments(b, theta);
  for (std::size_t i = 0; i < b.s_rank(); ++i) {
    const GValued lhs = apply_each(m.iota_s(i), k);
    const GValued rhs = covariant_derivative(b, theta, l[i]);
    if (lhs != rhs) {
      report.fail("iota_i K = D L_i", "i = " + idx(i) + ": iota_i K = " + format_gvalued(m, lhs) + ", D L_i = " +
                                           format_gvalued(m, rhs));
    }
  }
  report.pass("iota_i K = D L_i");

  for (std::size_t i = 0; i < b.s_rank(); ++i) {
    for (std::size_t j = 0; j < b.s_rank(); ++j) {
      const GValued lhs = apply_each(m.iota_s(j), apply_each(m.iota_s(i), k));
      GValued rhs = lie_bracket(b.g(), m, l[i], l[j]);
      for (std::size_t p = 0; p < b.s_rank(); ++p) {
        if (b.s().c(i, j, p) == 0) continue;
        for (std::size_t c = 0; c < rhs.size(); ++c) add_into(rhs[c], l[p][c], -b.s().c(i, j, p));
      }
      if (lhs != rhs) {
        report.fail("iota_j iota_i K = [L_i, L_j] - L_[X_i, X_j]", "(i, j) = (" + idx(i) + ", " + idx(j) + "): " +
                                                                       format_gvalued(m, lhs) + " vs " + format_gvalued(m, rhs));
      }
    }
  }
  report.pass("iota_j iota_i K = [L_i, L_j] - L_[X_i, X_j]");
  return report;
}

// ------------------------------------------------- equivariant curvature

GValuedCartan equivariant_curvature(const EquivariantBundle& b, const GValued& theta) {
  const WeilModel& space = *b.total_space();
  const GValued k = curvature(b, theta);
  const auto l = moments(b, theta);
  GValuedCartan out;
  for (std::size_t c = 0; c < b.g_rank(); ++c) {
    WeilModelElement x = space.from_model(k[c]);
    for (std::size_t i = 0; i < b.s_rank(); ++i) x += space.tensor(space.weil().u(i), l[i][c]);
    out.emplace_back(std::move(x));
  }
  return out;
}

GValuedWeil curvature_formula(const WeilModel& space, const LieAlgebraData& g, const GValued& k,
                              const std::vector<GValued>& l, const std::vector<GValued>& iota_k) {
  const WeilAlgebra& w = space.weil();
  const std::size_t s_rank = space.rank();
  if (l.size() != s_rank || iota_k.size() != s_rank) throw std::invalid_argument("curvature_formula: expected one L_i per generator of s");
  GValuedWeil out;
  for (std::size_t c = 0; c < g.dimension(); ++c) {
    WeilModelElement x = space.from_model(k[c]);
    for (std::size_t i = 0; i < s_rank; ++i) {
      x += space.tensor(w.d().apply(w.theta(i)), l[i][c]);
      x -= space.tensor(w.theta(i), iota_k[i][c]);
    }
    out.push_back(std::move(x));
  }
  for (std::size_t i = 0; i < s_rank; ++i) {
    for (std::size_t j = i + 1; j < s_rank; ++j) {
      const GValued br = lie_bracket(g, space.model(), l[i], l[j]);
      const GcaElement tt = w.theta(i) * w.theta(j);
      for (std::size_t c = 0; c < g.dimension(); ++c) out[c] += space.tensor(tt, br[c]);
    }
  }
  return out;
}

GValuedWeil xi_connection(const EquivariantBundle& b, const GValued& theta) {
  const WeilModel& space = *b.total_space();
  const auto l = moments(b, theta);
  GValuedWeil xi;
  for (std::size_t c = 0; c < b.g_rank(); ++c) {
    WeilModelElement x = space.from_model(theta[c]);
    for (std::size_t i = 0; i < b.s_rank(); ++i) x += space.tensor(space.weil().theta(i), l[i][c]);
    xi.push_back(std::move(x));
  }
  return xi;
}

WeilCurvatureRoutes weil_curvature_routes(const EquivariantBundle& b, const GValued& theta) {
  const WeilModel& space = *b.total_space();
  const LieAlgebraData& g = b.g();
  WeilCurvatureRoutes routes;

  for (const auto& component : equivariant_curvature(b, theta)) routes.projector.push_back(space.mq_to_weil(component));

  const GValuedWeil xi = xi_connection(b, theta);
  for (std::size_t c = 0; c < g.dimension(); ++c) {
    WeilModelElement x = space.d(xi[c]);
    for (std::size_t a = 0; a < g.dimension(); ++a) {
      for (std::size_t bb = 0; bb < g.dimension(); ++bb) {
        if (g.c(a, bb, c) != 0) x += Rat(g.c(a, bb, c) / 2) * space.multiply(xi[a], xi[bb]);
      }
    }
    routes.structure.push_back(std::move(x));
  }

  const GValued k = curvature(b, theta);
  std::vector<GValued> iota_k;
  for (std::size_t i = 0; i < b.s_rank(); ++i) iota_k.push_back(apply_each(b.total().iota_s(i), k));
  routes.formula = curvature_formula(space, g, k, moments(b, theta), iota_k);
  return routes;
}

GValuedWeil weil_equivariant_curvature(const EquivariantBundle& b, const GValued& theta) {
  WeilCurvatureRoutes routes = weil_curvature_routes(b, theta);
  const WeilModel& space = *b.total_space();
  for (std::size_t c = 0; c < routes.structure.size(); ++c) {
    if (!(routes.projector[c] == routes.structure[c]) || !(routes.formula[c] == routes.structure[c])) {
      throw InternalError("the computations of K_inf disagree in component " + idx(c) + ": projector " +
                          space.format(routes.projector[c]) + ", structure equation " +
                          space.format(routes.structure[c]) + ", expanded formula " + space.format(routes.formula[c]));
    }
  }
  return std::move(routes.structure);
}

CheckReport verify_xi(const EquivariantBundle& b, const GValued& theta) {
  CheckReport report;
  const WeilModel& space = *b.total_space();
  const GValuedWeil xi = xi_connection(b, theta);
  const std::size_t n = b.g_rank();

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t c = 0; c < n; ++c) {
      const auto value = space.apply_model_operator(b.bundle().iota_g(a), Parity::odd, xi[c]);
      const auto expected = a == c ? space.one() : WeilModelElement();
      if (!(value == expected)) {
        report.fail("Xi: iota^G_a Xi^b = delta_ab", "iota^G_" + idx(a) + " Xi^" + idx(c) + " = " + space.format(value));
      }
    }
    for (std::size_t c = 0; c < n; ++c) {
      const auto value = space.apply_model_operator(b.bundle().lie_g(a), Parity::even, xi[c]);
      WeilModelElement expected;
      for (std::size_t bb = 0; bb < n; ++bb) {
        if (b.g().c(a, bb, c) != 0) expected -= b.g().c(a, bb, c) * xi[bb];
      }
      if (!(value == expected)) {
        report.fail("Xi: L^G_a Xi^c = -sum c_ab^c Xi^b", "L^G_" + idx(a) + " Xi^" + idx(c) + " = " + space.format(value));
      }
    }
  }
  report.pass("Xi: iota^G_a Xi^b = delta_ab");
  report.pass("Xi: L^G_a Xi^c = -sum c_ab^c Xi^b");

  for (std::size_t i = 0; i < b.s_rank(); ++i) {
    for (std::size_t c = 0; c < n; ++c) {
      const auto contracted = space.iota(i, xi[c]);
      if (!contracted.is_zero()) {
        report.fail("Xi is S-horizontal", "iota_" + idx(i) + " Xi^" + idx(c) + " = " + space.format(contracted));
      }
      const auto derived = space.lie(i, xi[c]);
      if (!derived.is_zero()) report.fail("Xi is S-invariant", "L_" + idx(i) + " Xi^" + idx(c) + " = " + space.format(derived));
    }
  }
  report.pass("Xi is S-horizontal");
  report.pass("Xi is S-invariant");
  return report;
}

CheckReport verify_weil_curvature(const EquivariantBundle& b, const GValued& theta) {
  CheckReport report;
  const WeilModel& space = *b.total_space();
  const WeilCurvatureRoutes routes = weil_curvature_routes(b, theta);
  const std::size_t n = b.g_rank();

  for (std::size_t c = 0; c < n; ++c) {
    if (!(routes.projector[c] == routes.structure[c])) {
      report.fail("projector route = structure route", "component " + idx(c) + ": " + space.format(routes.projector[c]) +
                                                            " vs " + space.format(routes.structure[c]));
    }
    if (!(routes.formula[c] == routes.structure[c])) {
      report.fail("expanded formula = structure route", "component " + idx(c) + ": " + space.format(routes.formula[c]) +
                                                             " vs " + space.format(routes.structure[c]));
    }
    const BasicCheck basic = space.is_basic(routes.structure[c]);
    if (!basic.basic) report.fail("K_inf is S-basic", "component " + idx(c) + ": " + basic.witness);
  }
  report.pass("projector route = structure route");
  report.pass("expanded formula = structure route");
  report.pass("K_inf is S-basic");

  if (b.s_rank() == 1) {
    const GValued k = curvature(b, theta);
    const GValued l = moment(b, theta, 0);
    const std::string name = "rank one: K_inf = K + u L - theta iota K";
    for (std::size_t c = 0; c < n; ++c) {
      WeilModelElement expected = space.from_model(k[c]);
      expected += space.tensor(space.weil().u(0), l[c]);
      expected -= space.tensor(space.weil().theta(0), b.total().iota_s(0).apply(k[c]));
      if (!(expected == routes.structure[c])) {
        report.fail(name, "component " + idx(c) + ": " + space.format(expected) + " vs " + space.format(routes.structure[c]));
      }
    }
    report.pass(name);
  }
  return report;
}

// ------------------------------------------------------------ substitution

namespace {

template <class Element, class Multiply>
Element substitute_impl(const WeilModel& space, const GcaElement& f, const std::vector<Element>& values,
                        const Element& one, Multiply&& mul) {
  if (f.universe()->size() != values.size()) {
    throw ValidationError("polynomial has " + std::to_string(f.universe()->size()) + " variables but " +
                          std::to_string(values.size()) + " values were given");
  }
  for (std::size_t a = 0; a < values.size(); ++a) {
    if (values[a].is_zero()) continue;
    const auto degree = space.homogeneous_degree(values[a]);
    if (!degree || *degree % 2 != 0) {
      throw ValidationError("cannot substitute into a polynomial: value " + std::to_string(a + 1) +
                            " is not homogeneous of even degree");
    }
  }
  std::map<std::pair<std::size_t, std::uint32_t>, Element> powers;
  auto power = [&](std::size_t a, std::uint32_t e) -> const Element& {
    auto it = powers.find({a, e});
    if (it != powers.end()) return it->second;
    Element p = one;
    for (std::uint32_t t = 0; t < e; ++t) p = mul(p, values[a]);
    return powers.emplace(std::make_pair(a, e), std::move(p)).first->second;
  };

  Element out;
  for (const auto& [exps, c] : f.terms()) {
    Element term = one;
    for (std::size_t a = 0; a < exps.size(); ++a) {
      if (exps[a] != 0) term = mul(term, power(a, exps[a]));
    }
    out += c * term;
  }
  return out;
}

}  // namespace

WeilModelElement substitute(const WeilModel& space, const GcaElement& f, const GValuedWeil& values) {
  return substitute_impl(space, f, values, space.one(),
                         [&](const WeilModelElement& x, const WeilModelElement& y) { return space.multiply(x, y); });
}

CartanElement substitute(const WeilModel& space, const GcaElement& f, const GValuedCartan& values) {
  GValuedWeil raw;
  for (const auto& v : values) raw.push_back(v.element());
  return CartanElement(substitute(space, f, raw));
}

CheckReport verify_characteristic_form(const EquivariantBundle& b, const GValued& theta, const InvariantPolynomial& f) {
  CheckReport report;
  const WeilModel& space = *b.total_space();
  const WeilModelElement weil_form = substitute(space, f.polynomial(), weil_equivariant_curvature(b, theta));
  const CartanElement cartan_form = substitute(space, f.polynomial(), equivariant_curvature(b, theta));

  for (std::size_t i = 0; i < b.s_rank(); ++i) {
    const auto contracted = space.iota(i, weil_form);
    if (!contracted.is_zero()) report.fail("f(K_inf) is S-horizontal", "iota_" + idx(i) + " gives " + space.format(contracted));
    const auto derived = space.lie(i, weil_form);
    if (!derived.is_zero()) report.fail("f(K_inf) is S-invariant", "L_" + idx(i) + " gives " + space.format(derived));
  }
  report.pass("f(K_inf) is S-horizontal");
  report.pass("f(K_inf) is S-invariant");

  for (std::size_t a = 0; a < b.g_rank(); ++a) {
    const auto contracted = space.apply_model_operator(b.bundle().iota_g(a), Parity::odd, weil_form);
    if (!contracted.is_zero()) report.fail("f(K_inf) is G-horizontal", "iota^G_" + idx(a) + " gives " + space.format(contracted));
    const auto derived = space.apply_model_operator(b.bundle().lie_g(a), Parity::even, weil_form);
    if (!derived.is_zero()) report.fail("f(K_inf) is G-invariant", "L^G_" + idx(a) + " gives " + space.format(derived));
  }
  report.pass("f(K_inf) is G-horizontal");
  report.pass("f(K_inf) is G-invariant");

  const CartanElement restricted = space.mq_to_cartan(weil_form);
  report.record("theta-free part of f(K_inf) is f(K + sum u_k L_k)", restricted == cartan_form,
                space.format(restricted) + " vs " + space.format(cartan_form));
  return report;
}

// ------------------------------------------------------ Chern-Weil forms

ChernWeilForm chern_weil_form(const EquivariantBundle& b, const InvariantPolynomial& f, const GValued& theta) {
  const WeilModel& total_space = *b.total_space();
  const WeilModel& base_space = *b.base_space();
  ChernWeilForm out;
  out.total_form = substitute(total_space, f.polynomial(), equivariant_curvature(b, theta));

  if (const auto witness = b.g_basic_witness(out.total_form.element())) {
    throw ValidationError("f(K + sum u_k L_k) is not G-basic: " + *witness);
  }
  const auto base = b.to_base(out.total_form);
  if (!base) throw InternalError("a G-basic form has no coordinates over the basic subalgebra");
  out.base_form = *base;

  const CartanElement dc = base_space.cartan_d(out.base_form);
  if (!dc.is_zero()) throw InternalError("f(K + sum u_k L_k) is not d_C-closed: d_C gives " + base_space.format(dc));

  const auto parts = split_by_degree(base_space, out.base_form);
  if (parts.empty()) return out;
  const int top = parts.rbegin()->first;
  EquivariantComplex complex(b.base_space(), top + 1);
  for (const auto& [degree, part] : parts) {
    ClassAnalysis analysis;
    analysis.degree = degree;
    analysis.group = equivariant_cohomology(complex, degree);
    const auto coords = class_coordinates(complex, analysis.group, part);
    if (!coords) throw InternalError("a closed invariant form was not recognised as a cocycle");
    analysis.coordinates = *coords;
    analysis.zero = is_zero(*coords);
    if (analysis.zero && degree > 0) {
      analysis.primitive = cartan_primitive(complex, part);
      if (!analysis.primitive) throw InternalError("zero class without a d_C primitive");
    }
    out.classes.push_back(std::move(analysis));
  }
  return out;
}

CheckReport connection_independence(const EquivariantBundle& b, const InvariantPolynomial& f, const GValued& theta1,
                                    const GValued& theta2) {
  CheckReport report;
  const std::string name = "Chern-Weil forms differ by a d_C-exact element";
  const WeilModel& space = *b.base_space();
  const CartanElement difference =
      chern_weil_form(b, f, theta1).base_form - chern_weil_form(b, f, theta2).base_form;
  const auto parts = split_by_degree(space, difference);
  if (parts.empty()) {
    report.pass(name);
    return report;
  }
  EquivariantComplex complex(b.base_space(), parts.rbegin()->first);
  for (const auto& [degree, part] : parts) {
    if (degree == 0 || !cartan_primitive(complex, part)) {
      report.fail(name, "degree " + std::to_string(degree) + " part " + space.format(part) + " is not exact");
    }
  }
  report.pass(name);
  return report;
}

// -------------------------------------------------------------- evaluation

RatVector evaluate_at(const WeilModel& space, const CartanElement& h, const RatVector& x) {
  if (x.size() != space.rank()) throw std::invalid_argument("evaluate_at: point has the wrong dimension");
  RatVector out = space.model().zero();
  for (const auto& [key, c] : h.terms()) {
    Rat value = c;
    for (std::size_t k = 0; k < space.rank(); ++k) {
      for (std::uint32_t e = 0; e < key.weil[k]; ++e) value *= x[k];
    }
    out[key.basis] += value;
  }
  return out;
}

namespace {

// Dh(X)[Y], the derivative of X -> h(X) in the direction Y.
RatVector directional_derivative(const WeilModel& space, const CartanElement& h, const RatVector& x, const RatVector& y) {
  RatVector out = space.model().zero();
  for (const auto& [key, c] : h.terms()) {
    for (std::size_t k = 0; k < space.rank(); ++k) {
      if (key.weil[k] == 0 || y[k] == 0) continue;
      Rat value = c * key.weil[k] * y[k];
      for (std::size_t p = 0; p < space.rank(); ++p) {
        const std::uint32_t e = key.weil[p] - (p == k ? 1 : 0);
        for (std::uint32_t t = 0; t < e; ++t) value *= x[p];
      }
      out[key.basis] += value;
    }
  }
  return out;
}

}  // namespace

CheckReport verify_evaluation_equivariance(const WeilModel& space, const CartanElement& h,
                                           const std::vector<RatVector>& samples) {
  CheckReport report;
  const std::string name = "L_i h(X) = Dh(X)[ad(X_i) X]";
  const SDgaModel& m = space.model();
  const LieAlgebraData& s = m.s();
  for (const auto& x : samples) {
    for (std::size_t i = 0; i < space.rank(); ++i) {
      RatVector e(space.rank());
      e[i] = 1;
      const RatVector lhs = m.lie_s(i).apply(evaluate_at(space, h, x));
      const RatVector rhs = directional_derivative(space, h, x, bracket(s, e, x));
      if (lhs != rhs) {
        std::string point;
        for (const auto& v : x) point += (point.empty() ? "" : ", ") + to_string(v);
        report.fail(name, "i = " + idx(i) + ", X = (" + point + "): " + m.format(lhs) + " vs " + m.format(rhs));
      }
    }
  }
  report.pass(name);
  return report;
}

}  // namespace eqdr
