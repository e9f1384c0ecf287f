#include "eqdr/commands.hpp"

#include "eqdr/chernweil.hpp"
#include "eqdr/eqmodels.hpp"
#include "eqdr/errors.hpp"
#include "eqdr/weil.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <tuple>

namespace eqdr {

namespace {

constexpr int max_supported_degree = 24;

// Option misuse is reported like a parse error (exit 2).
[[noreturn]] void usage(const std::string& message) { throw ParseError(message); }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string format_vector(const RatVector& v) {
  if (v.size() == 1) return to_string(v[0]);
  std::vector<std::string> parts;
  for (const auto& x : v) parts.push_back(to_string(x));
  return "(" + join(parts, ", ") + ")";
}

std::string describe_basis(const SDgaModel& m) {
  std::vector<std::string> parts;
  for (const auto& e : m.basis()) parts.push_back(e.name + " (" + std::to_string(e.degree) + ")");
  return join(parts, ", ");
}

std::string describe_lie(const LieAlgebraData& lie) {
  std::string text = "dimension " + std::to_string(lie.dimension());
  if (lie.dimension() > 0) text += lie.is_abelian() ? ", abelian" : ", nonabelian";
  return text;
}

bool same_lie(const LieAlgebraData& a, const LieAlgebraData& b) {
  return a.dimension() == b.dimension() && a.brackets() == b.brackets();
}

void require_lie(const LieAlgebraData& lie, const std::string& which) {
  if (auto v = validate_lie(lie)) throw ValidationError("Lie algebra " + which + ": " + v->describe());
}

void require_checks(const CheckReport& r, const std::string& what) {
  if (const CheckResult* f = r.first_failure()) {
    throw ValidationError(what + " check '" + f->name + "' failed: " + f->witness);
  }
}

LieAlgebraData resolve_lie(const std::string& spec) {
  if (spec == "u1" || spec == "su2") return builtin_lie(spec);
  return load_lie_algebra(spec);
}

// --lie may only equip a model whose action is trivial.
ModelDocument apply_lie(ModelDocument doc, const LieAlgebraData& s) {
  const SDgaModel& total = doc.total();
  if (same_lie(total.s(), s)) return doc;
  if (!total.trivial_action()) {
    throw ValidationError("--lie: the model already carries a nontrivial action of a different Lie algebra");
  }
  SDgaModel replaced = total.with_acting_algebra(s);
  if (auto* b = std::get_if<BundleModel>(&doc.model)) {
    std::vector<RatMatrix> iota_g;
    for (std::size_t a = 0; a < b->g_rank(); ++a) iota_g.push_back(b->iota_g(a));
    doc.model = BundleModel(std::move(replaced), b->g(), std::move(iota_g));
  } else {
    doc.model = std::move(replaced);
  }
  return doc;
}

std::shared_ptr<const WeilModel> make_space(const SDgaModel& m) {
  auto weil = std::make_shared<const WeilAlgebra>(WeilAlgebra::build(m.s()));
  return std::make_shared<const WeilModel>(weil, std::make_shared<const SDgaModel>(m));
}

WeilModelElement homogeneous_part(const WeilModel& space, const WeilModelElement& x, int k) {
  WeilModelElement out;
  for (const auto& [key, c] : x.terms()) {
    if (space.degree(key) == k) out.add_term(key, c);
  }
  return out;
}

std::vector<RatVector> sample_points(std::size_t rank) {
  std::vector<RatVector> samples;
  for (std::size_t i = 0; i < rank; ++i) {
    RatVector e(rank);
    e[i] = 1;
    samples.push_back(e);
  }
  RatVector mixed(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    mixed[i] = Rat(2 * static_cast<long>(i) + 3, 2) * (i % 2 ? -1 : 1);
    mixed[i].canonicalize();
  }
  if (rank > 0) samples.push_back(mixed);
  return samples;
}

struct Context {
  const ModelDocument& doc;
  const CommandOptions& options;
  Report& report;
  std::optional<EquivariantBundle> bundle;
  std::shared_ptr<const WeilModel> space;  // W(s) (x) A_P, or W(s) (x) A
};

void prepare(Context& c) {
  require_lie(c.doc.s(), "s");
  if (const auto* b = std::get_if<BundleModel>(&c.doc.model)) {
    require_lie(b->g(), "g");
    c.bundle.emplace(*b);
    c.space = c.bundle->total_space();
  } else {
    const auto& m = std::get<SDgaModel>(c.doc.model);
    require_checks(validate_sdga(m), "model");
    c.space = make_space(m);
  }
}

const EquivariantBundle& require_bundle(const Context& c) {
  if (!c.bundle) usage("'" + c.options.command + "' needs a bundle model (one with a lie_algebra_g section)");
  return *c.bundle;
}

std::shared_ptr<const WeilModel> selected_space(const Context& c) {
  if (!c.options.base) return c.space;
  return require_bundle(c).base_space();
}

GValued resolve_connection(const Context& c) {
  const EquivariantBundle& b = require_bundle(c);
  GValued theta;
  if (c.options.connection) {
    std::string_view text = *c.options.connection;
    while (true) {
      const auto semi = text.find(';');
      theta.push_back(parse_combination(b.total(), text.substr(0, semi)));
      if (semi == std::string_view::npos) break;
      text.remove_prefix(semi + 1);
    }
    if (theta.size() != b.g_rank()) {
      usage("--connection: expected " + std::to_string(b.g_rank()) + " component(s) separated by ';', found " +
            std::to_string(theta.size()));
    }
  } else if (c.doc.connection) {
    theta = *c.doc.connection;
  } else {
    usage("no connection: the document has none and --connection was not given");
  }
  return theta;
}

std::optional<GcaElement> resolve_polynomial(const Context& c) {
  const std::size_t n = require_bundle(c).g_rank();
  if (c.options.poly) return parse_polynomial(*c.options.poly, n);
  return c.doc.polynomial;
}

void add_connection_section(Context& c, const GValued& theta) {
  const EquivariantBundle& b = *c.bundle;
  ReportSection& s = c.report.section("Connection");
  s.value("Theta", format_gvalued(b.total(), theta));
  CheckReport checks = validate_connection(b, theta);
  s.add_checks(checks);
  require_checks(checks, "connection");
}

void cohomology_table(ReportSection& s, const std::vector<CohomologyGroup>& groups, const WeilModel& space) {
  ReportTable table{{"degree", "dimension", "representatives"}, {}};
  std::vector<std::string> dims;
  for (const auto& g : groups) {
    std::vector<std::string> reps;
    for (const auto& r : g.representatives) reps.push_back(space.format(r));
    table.rows.push_back({std::to_string(g.degree), std::to_string(g.dimension), reps.empty() ? "-" : join(reps, "; ")});
    dims.push_back(std::to_string(g.dimension));
  }
  s.value("dimensions", join(dims, ","));
  s.table = std::move(table);
}

void describe_space(Context& c, ReportSection& s, const WeilModel& space) {
  s.value("acting algebra", describe_lie(space.model().s()));
  s.value(c.options.base ? "basis of A_M" : "basis", describe_basis(space.model()));
}

// ------------------------------------------------------------------ commands

void cmd_validate(Context& c) {
  const ModelDocument& doc = c.doc;
  auto lie_section = [&](const std::string& which, const LieAlgebraData& lie) {
    ReportSection& s = c.report.section("Lie algebra " + which);
    s.value("structure", describe_lie(lie));
    CheckReport checks;
    if (auto v = validate_lie(lie)) {
      checks.fail("antisymmetry and Jacobi identity", v->describe());
    } else {
      checks.pass("antisymmetry and Jacobi identity");
    }
    checks.append(verify_weil(WeilAlgebra::build_unchecked(lie)), "W(" + which + "): ");
    s.add_checks(checks);
    return checks.ok();
  };
  bool lie_ok = lie_section("s", doc.s());
  if (doc.is_bundle()) lie_ok = lie_section("g", std::get<BundleModel>(doc.model).g()) && lie_ok;

  ReportSection& model = c.report.section("Model");
  model.value("basis", describe_basis(doc.total()));
  model.value("top degree", std::to_string(doc.total().max_degree()));
  model.value("action", doc.total().trivial_action() ? "trivial" : "nontrivial");
  CheckReport model_checks =
      doc.is_bundle() ? validate_bundle(std::get<BundleModel>(doc.model)) : validate_sdga(std::get<SDgaModel>(doc.model));
  model.add_checks(model_checks);

  if (doc.is_bundle() && (doc.connection || c.options.connection)) {
    if (lie_ok && model_checks.ok()) {
      c.bundle.emplace(std::get<BundleModel>(doc.model));
      const GValued theta = resolve_connection(c);
      ReportSection& s = c.report.section("Connection");
      s.value("Theta", format_gvalued(c.bundle->total(), theta));
      s.add_checks(validate_connection(*c.bundle, theta));
    } else {
      c.report.section("Connection").value("skipped", "the model or its Lie algebras are invalid");
    }
  }

  if (doc.is_bundle()) {
    const std::size_t n = std::get<BundleModel>(doc.model).g_rank();
    std::optional<GcaElement> f = c.options.poly ? parse_polynomial(*c.options.poly, n) : doc.polynomial;
    if (f) {
      ReportSection& s = c.report.section("Polynomial");
      s.value("f", format_polynomial(*f));
      CheckReport checks;
      checks.record("f is Ad-invariant", check_ad_invariance(*f, std::get<BundleModel>(doc.model).g()),
                    "some L^G_a f is nonzero");
      s.add_checks(checks);
    }
  }
}

void cmd_cohomology(Context& c, int n) {
  prepare(c);
  const auto space = selected_space(c);
  EquivariantComplex complex(space, n + 1);
  std::vector<CohomologyGroup> groups;
  for (int k = 0; k <= n; ++k) groups.push_back(equivariant_cohomology(complex, k));
  ReportSection& s = c.report.section(c.options.base ? "Equivariant cohomology of the base" : "Equivariant cohomology");
  describe_space(c, s, *space);
  cohomology_table(s, groups, *space);
}

void cmd_weil_cohomology(Context& c, int n) {
  prepare(c);
  const auto space = selected_space(c);
  EquivariantComplex complex(space, n + 1);
  ReportSection& s = c.report.section(c.options.base ? "Cartan and Weil models of the base" : "Cartan and Weil models");
  describe_space(c, s, *space);
  ReportTable table{{"degree", "cartan", "weil", "weil representatives"}, {}};
  CheckReport checks;
  const std::string same_dim = "Cartan and Weil dimensions agree";
  const std::string cocycles = "MQ images of Cartan classes are basic cocycles";
  const std::string spans = "MQ images span the basic cohomology";
  for (const auto* name : {&same_dim, &cocycles, &spans}) checks.pass(*name);
  for (int k = 0; k <= n; ++k) {
    const CohomologyGroup cartan = equivariant_cohomology(complex, k);
    const CohomologyGroup weil = weil_basic_cohomology(complex, k);
    std::vector<std::string> reps;
    for (const auto& r : weil.representatives) reps.push_back(space->format(r));
    table.rows.push_back({std::to_string(k), std::to_string(cartan.dimension), std::to_string(weil.dimension),
                          reps.empty() ? "-" : join(reps, "; ")});
    const std::string where = "degree " + std::to_string(k);
    checks.record(same_dim, cartan.dimension == weil.dimension,
                  where + ": " + std::to_string(cartan.dimension) + " vs " + std::to_string(weil.dimension));

    const auto& keys = complex.weil_keys(k);
    EchelonBasis span(keys.size());
    if (k > 0) {
      const RatMatrix dk = complex.weil_d_matrix(k - 1);
      for (const auto& v : complex.basic_basis(k - 1)) span.insert(dk.apply(v));
    }
    std::size_t independent = 0;
    for (const auto& r : cartan.representatives) {
      const WeilModelElement w = space->mq_to_weil(CartanElement(r));
      if (!space->is_basic(w).basic || !space->d(w).is_zero()) {
        checks.fail(cocycles, where + ": image of " + space->format(r) + " is " + space->format(w));
      }
      if (span.insert(coordinates(w, keys))) ++independent;
    }
    checks.record(spans, independent == weil.dimension,
                  where + ": rank " + std::to_string(independent) + " of " + std::to_string(weil.dimension));
  }
  s.table = std::move(table);
  s.add_checks(checks);
  if (!checks.ok()) throw InternalError("Cartan and Weil computations disagree");
}

void cmd_mq(Context& c) {
  prepare(c);
  if (!c.options.element) usage("mq needs --element");
  const auto space = selected_space(c);
  const WeilModel& w = *space;
  const WeilModelElement x = parse_element(w, *c.options.element);
  ReportSection& s = c.report.section("Mathai-Quillen map");
  s.value("direction", c.options.direction);
  s.value("element", w.format(x));
  CheckReport checks;
  auto invariant = [&](const WeilModelElement& y) -> std::optional<std::string> {
    for (std::size_t i = 0; i < w.rank(); ++i) {
      const WeilModelElement l = w.lie(i, y);
      if (!l.is_zero()) return "L_" + std::to_string(i + 1) + " gives " + w.format(l);
    }
    return std::nullopt;
  };
  if (c.options.direction == "to-weil") {
    if (!x.is_theta_free()) throw ValidationError("to-weil expects a Cartan element, but the element contains theta");
    const CartanElement a(x);
    const auto inv = invariant(x);
    checks.record("element is S-invariant", !inv, inv.value_or(""));
    const WeilModelElement image = w.mq_to_weil(a);
    s.value("image", w.format(image));
    const BasicCheck basic = w.is_basic(image);
    checks.record("image is basic", basic.basic, basic.witness);
    const WeilModelElement lhs = w.d(image), rhs = w.mq_to_weil(w.cartan_d(a));
    checks.record("d(image) = image of d_C(element)", lhs == rhs, "difference " + w.format(lhs - rhs));
    checks.record("theta-free part of the image is the element", w.mq_to_cartan(image) == a,
                  "theta-free part is " + w.format(w.mq_to_cartan(image)));
  } else if (c.options.direction == "to-cartan") {
    const BasicCheck basic = w.is_basic(x);
    checks.record("element is basic", basic.basic, basic.witness);
    const CartanElement image = w.mq_to_cartan(x);
    s.value("image", w.format(image));
    const auto inv = invariant(image.element());
    checks.record("image is S-invariant", !inv, inv.value_or(""));
    const WeilModelElement back = w.mq_to_weil(image);
    checks.record("mq_to_weil(image) = element", back == x, "mq_to_weil(image) is " + w.format(back));
    const CartanElement lhs = w.cartan_d(image), rhs = w.mq_to_cartan(w.d(x));
    checks.record("d_C(image) = theta-free part of d(element)", lhs == rhs, "difference " + w.format(lhs - rhs));
  } else {
    usage("--direction must be to-weil or to-cartan");
  }
  s.add_checks(checks);
}

void cmd_chern(Context& c) {
  prepare(c);
  const EquivariantBundle& b = require_bundle(c);
  auto f = resolve_polynomial(c);
  if (!f) usage("chern needs --poly (the document has no polynomial)");
  const GValued theta = resolve_connection(c);
  add_connection_section(c, theta);

  ReportSection& poly = c.report.section("Polynomial");
  poly.value("f", format_polynomial(*f));
  const InvariantPolynomial invariant(*f, b.g());
  poly.checks.push_back({"f is Ad-invariant", true, {}});

  const WeilModel& total = *b.total_space();
  const WeilModel& base = *b.base_space();
  ReportSection& curv = c.report.section("Equivariant curvature");
  curv.value("K + sum u_k L_k", format_gvalued(total, equivariant_curvature(b, theta)));

  const ChernWeilForm form = chern_weil_form(b, invariant, theta);
  ReportSection& cw = c.report.section("Chern-Weil form");
  cw.value("f(K + sum u_k L_k)", total.format(form.total_form));
  cw.value("basis of A_M", describe_basis(base.model()));
  cw.value("form over A_M", base.format(form.base_form));
  ReportTable table{{"degree", "dim H", "basis of H", "coordinates", "class"}, {}};
  for (const auto& a : form.classes) {
    std::vector<std::string> reps;
    for (const auto& r : a.group.representatives) reps.push_back(base.format(r));
    table.rows.push_back({std::to_string(a.degree), std::to_string(a.group.dimension), reps.empty() ? "-" : join(reps, "; "),
                          a.coordinates.empty() ? "-" : format_vector(a.coordinates), a.zero ? "zero" : "nonzero"});
  }
  cw.table = std::move(table);
  for (const auto& a : form.classes) {
    const std::string k = std::to_string(a.degree);
    cw.value("class in degree " + k,
             base.format(homogeneous_part(base, form.base_form.element(), a.degree)) + (a.zero ? " (zero)" : " (nonzero)"));
    if (a.primitive) cw.value("d_C primitive in degree " + k, base.format(*a.primitive));
  }

  ReportSection& checks = c.report.section("Characteristic form checks");
  checks.add_checks(verify_characteristic_form(b, theta, invariant));

  ReportSection& eval = c.report.section("Evaluation on s");
  const auto samples = sample_points(b.s_rank());
  for (const auto& x : samples) {
    eval.value("h(" + format_vector(x) + ")", base.model().format(evaluate_at(base, form.base_form, x)));
  }
  eval.add_checks(verify_evaluation_equivariance(base, form.base_form, samples));
}

void cmd_curvature(Context& c) {
  prepare(c);
  const EquivariantBundle& b = require_bundle(c);
  const GValued theta = resolve_connection(c);
  add_connection_section(c, theta);
  const WeilModel& total = *b.total_space();

  ReportSection& s = c.report.section("Curvature and moments");
  s.value("K", format_gvalued(b.total(), curvature(b, theta)));
  const auto l = moments(b, theta);
  for (std::size_t i = 0; i < l.size(); ++i) s.value("L_" + std::to_string(i + 1), format_gvalued(b.total(), l[i]));
  s.value("K + sum u_k L_k", format_gvalued(total, equivariant_curvature(b, theta)));
  s.add_checks(verify_curvature(b, theta));

  const GValuedWeil k_inf = weil_equivariant_curvature(b, theta);
  ReportSection& w = c.report.section("Curvature in the Weil model");
  w.value("Xi", format_gvalued(total, xi_connection(b, theta)));
  w.value("K_inf", format_gvalued(total, k_inf));
  w.add_checks(verify_weil_curvature(b, theta));
}

CheckReport cartan_model_checks(const EquivariantComplex& complex, int n) {
  const WeilModel& w = complex.space();
  CheckReport r;
  const std::string square = "d_C^2 = -sum u_i L_i on the full complex";
  const std::string square_inv = "d_C^2 = 0 on invariants";
  const std::string basic = "MQ images of invariants are basic";
  const std::string intertwine = "MQ intertwines d_C and d";
  const std::string round_trip = "MQ round trips";
  for (const auto* name : {&square, &square_inv, &basic, &intertwine, &round_trip}) r.pass(*name);
  for (int k = 0; k <= n; ++k) {
    const std::string where = "degree " + std::to_string(k) + ": ";
    for (const auto& key : w.keys_of_degree(k, true)) {
      WeilModelElement x;
      x.add_term(key, 1);
      const CartanElement a(x);
      const WeilModelElement lhs = w.cartan_d(w.cartan_d(a)).element();
      WeilModelElement rhs;
      for (std::size_t i = 0; i < w.rank(); ++i) rhs -= w.multiply(w.u(i), w.lie(i, x));
      if (lhs != rhs) r.fail(square, where + "on " + w.format(x) + " the difference is " + w.format(lhs - rhs));
    }
    for (const auto& a : complex.invariants(k)) {
      const CartanElement dd = w.cartan_d(w.cartan_d(a));
      if (!dd.is_zero()) r.fail(square_inv, where + "d_C^2 of " + w.format(a) + " is " + w.format(dd));
      const WeilModelElement image = w.mq_to_weil(a);
      const BasicCheck b = w.is_basic(image);
      if (!b.basic) r.fail(basic, where + w.format(a) + ": " + b.witness);
      if (w.d(image) != w.mq_to_weil(w.cartan_d(a))) r.fail(intertwine, where + "on " + w.format(a));
      if (w.mq_to_cartan(image) != a) r.fail(round_trip, where + "Cartan side on " + w.format(a));
      if (b.basic && w.mq_to_weil(w.mq_to_cartan(image)) != image) r.fail(round_trip, where + "Weil side on " + w.format(image));
    }
  }
  return r;
}

std::vector<GcaElement> default_polynomials(const LieAlgebraData& g) {
  const std::size_t n = g.dimension();
  if (n == 1) return {parse_polynomial("x1", 1), parse_polynomial("x1^2", 1)};
  std::string sum;
  for (std::size_t a = 1; a <= n; ++a) sum += (a > 1 ? " + x" : "x") + std::to_string(a) + "^2";
  GcaElement f = parse_polynomial(sum, n);
  if (n > 0 && check_ad_invariance(f, g)) return {f};
  return {};
}

void cmd_prop_checks(Context& c, int n) {
  prepare(c);
  const ModelDocument& doc = c.doc;
  c.report.section("Weil algebra of s").add_checks(verify_weil(WeilAlgebra::build_unchecked(doc.s())));
  if (c.bundle) c.report.section("Weil algebra of g").add_checks(verify_weil(WeilAlgebra::build_unchecked(c.bundle->g())));

  const auto space = selected_space(c);
  EquivariantComplex complex(space, n + 1);
  ReportSection& cartan = c.report.section(c.options.base ? "Cartan model of the base" : "Cartan model");
  cartan.value("degrees", "0.." + std::to_string(n));
  cartan.add_checks(cartan_model_checks(complex, n));

  if (!c.bundle) return;
  const EquivariantBundle& b = *c.bundle;
  if (!doc.connection && !c.options.connection) {
    c.report.section("Connection").value("skipped", "no connection given");
    return;
  }
  const GValued theta = resolve_connection(c);
  add_connection_section(c, theta);
  c.report.section("Moment map").add_checks(verify_moment(b, theta));
  ReportSection& curv = c.report.section("Curvature");
  curv.add_checks(verify_curvature(b, theta));
  curv.add_checks(verify_curvature_contractions(b, theta));
  c.report.section("Induced connection Xi").add_checks(verify_xi(b, theta));
  c.report.section("Curvature in the Weil model").add_checks(verify_weil_curvature(b, theta));

  std::vector<GcaElement> polys;
  if (auto f = resolve_polynomial(c)) {
    polys.push_back(*f);
  } else {
    polys = default_polynomials(b.g());
  }
  ReportSection& forms = c.report.section("Characteristic forms");
  if (polys.empty()) forms.value("skipped", "no invariant polynomial given");
  for (const auto& f : polys) {
    CheckReport checks;
    checks.append(verify_characteristic_form(b, theta, InvariantPolynomial(f, b.g())), "f = " + format_polynomial(f) + ": ");
    forms.add_checks(checks);
  }
}

void dispatch(Context& c) {
  const CommandOptions& o = c.options;
  if (o.max_degree < 0 || o.max_degree > max_supported_degree) {
    usage("--max-degree must be between 0 and " + std::to_string(max_supported_degree));
  }
  if (o.command == "validate") {
    cmd_validate(c);
  } else if (o.command == "cohomology") {
    cmd_cohomology(c, o.max_degree);
  } else if (o.command == "weil-cohomology") {
    cmd_weil_cohomology(c, o.max_degree);
  } else if (o.command == "mq") {
    cmd_mq(c);
  } else if (o.command == "chern") {
    cmd_chern(c);
  } else if (o.command == "curvature") {
    cmd_curvature(c);
  } else if (o.command == "prop-checks") {
    cmd_prop_checks(c, o.max_degree);
  } else {
    usage("unknown command '" + o.command + "'");
  }
}

void configure(Report& report, const std::string& label, const CommandOptions& o) {
  report.command = o.command;
  auto& cfg = report.configuration;
  cfg.emplace_back("model", label);
  if (o.lie) cfg.emplace_back("lie", *o.lie);
  cfg.emplace_back("max-degree", std::to_string(o.max_degree));
  if (o.poly) cfg.emplace_back("poly", *o.poly);
  if (o.connection) cfg.emplace_back("connection", *o.connection);
  if (o.command == "mq") {
    cfg.emplace_back("direction", o.direction);
    if (o.element) cfg.emplace_back("element", *o.element);
  }
  if (o.base) cfg.emplace_back("base", "yes");
}

template <class F>
void guarded(Report& report, F&& body) {
  try {
    body();
    if (report.has_failures()) report.exit_code = ExitCode::check_failed;
  } catch (...) {
    std::tie(report.exit_code, report.error) = classify_current_exception();
  }
}

}  // namespace

std::pair<ExitCode, std::string> classify_current_exception() {
  try {
    throw;
  } catch (const ParseError& e) {
    return {ExitCode::parse_error, e.what()};
  } catch (const ValidationError& e) {
    return {ExitCode::check_failed, e.what()};
  } catch (const InternalError& e) {
    return {ExitCode::internal_error, e.what()};
  } catch (const InvalidComplexError& e) {
    return {ExitCode::internal_error, e.what()};
  } catch (const std::exception& e) {
    return {ExitCode::internal_error, std::string("unexpected failure: ") + e.what()};
  } catch (...) {
    return {ExitCode::internal_error, "unexpected failure"};
  }
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"validate", "cohomology", "weil-cohomology", "mq",
                                                 "chern",    "curvature",  "prop-checks"};
  return names;
}

Report run_on_document(const ModelDocument& doc, const std::string& label, const CommandOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Report report;
  configure(report, label, options);
  guarded(report, [&] {
    ModelDocument effective = options.lie ? apply_lie(doc, resolve_lie(*options.lie)) : doc;
    Context c{effective, options, report, std::nullopt, nullptr};
    dispatch(c);
  });
  if (options.timing) {
    report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return report;
}

Report run_command(const CommandOptions& options) {
  if (options.builtin.has_value() == options.model_path.has_value()) {
    Report report;
    configure(report, "-", options);
    report.exit_code = ExitCode::parse_error;
    report.error = "exactly one of --builtin and --model is required";
    return report;
  }
  std::string label;
  std::optional<ModelDocument> doc;
  Report failure;
  if (options.builtin) {
    label = "builtin " + *options.builtin;
    const auto& names = builtin_names();
    if (std::find(names.begin(), names.end(), *options.builtin) == names.end()) {
      configure(failure, label, options);
      failure.exit_code = ExitCode::parse_error;
      failure.error = "unknown builtin '" + *options.builtin + "' (known: " + join(names, ", ") + ")";
      return failure;
    }
    doc = builtin_document(*options.builtin);
  } else {
    label = *options.model_path;
    configure(failure, label, options);
    guarded(failure, [&] { doc = load_model(*options.model_path); });
    if (!doc) return failure;
  }
  return run_on_document(*doc, label, options);
}

}  // namespace eqdr
