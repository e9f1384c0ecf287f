// Connections beyond the builtin catalog: the flat family, a synthetic
// su(2) bundle and the expanded curvature formula fed with chosen data.

#include "support.hpp"

#include "eqdr/chernweil.hpp"
#include "eqdr/model_io.hpp"

#include <doctest.h>

using namespace eqdr;
using namespace eqdr::testing;

namespace {

BundleModel bundle_of(const std::string& name) { return std::get<BundleModel>(builtin(name)); }

// Theta = beta + c*alpha on the flat circle bundle.
GValued flat_connection(const EquivariantBundle& b, const Rat& c) {
  RatVector v = b.total().zero();
  v[*b.total().find("beta")] = 1;
  v[*b.total().find("alpha")] = c;
  return {v};
}

// SU(2) as a principal bundle over a point: the exterior algebra on the
// left-invariant forms beta^1..beta^3 with d beta^c = -1/2 sum c_ab^c beta^a beta^b
// and iota^G_a beta^b = delta_ab. S = u(1) acts trivially.
BundleModel maurer_cartan_su2() {
  const LieAlgebraData g = LieAlgebraData::su2();
  auto gens = std::make_shared<const GeneratorSet>(
      std::vector<GeneratorSpec>{{"beta1", 1}, {"beta2", 1}, {"beta3", 1}});
  std::vector<Exponents> monomials = {{0, 0, 0}};
  for (int k = 1; k <= 3; ++k) {
    for (const auto& m : monomials_of_degree(*gens, k)) monomials.push_back(m);
  }
  const std::size_t n = monomials.size();
  auto index = [&](const Exponents& e) {
    return static_cast<std::size_t>(std::find(monomials.begin(), monomials.end(), e) - monomials.begin());
  };
  auto coords = [&](const GcaElement& x) {
    RatVector v(n);
    for (const auto& [e, c] : x.terms()) v[index(e)] = c;
    return v;
  };

  std::vector<BasisElement> basis;
  for (const auto& m : monomials) {
    std::string name;
    for (std::size_t i = 0; i < 3; ++i) {
      if (m[i]) name += (name.empty() ? "" : "_") + std::string("b") + std::to_string(i + 1);
    }
    basis.push_back({name.empty() ? "one" : name, monomial_degree(*gens, m)});
  }
  std::vector<std::vector<RatVector>> products(n, std::vector<RatVector>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      products[i][j] = coords(GcaElement::monomial(gens, monomials[i]) * GcaElement::monomial(gens, monomials[j]));
    }
  }

  std::vector<std::optional<GcaElement>> d_images;
  for (std::size_t c = 0; c < 3; ++c) {
    GcaElement x(gens);
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 3; ++b) {
        if (g.c(a, b, c) != 0) {
          x += Rat(-1, 2) * g.c(a, b, c) * (GcaElement::generator(gens, a) * GcaElement::generator(gens, b));
        }
      }
    }
    d_images.push_back(x);
  }
  const GradedOperator d(gens, 1, Parity::odd, d_images);
  auto matrix_of = [&](const GradedOperator& op) {
    RatMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      const RatVector col = coords(op(GcaElement::monomial(gens, monomials[j])));
      for (std::size_t i = 0; i < n; ++i) {
        if (col[i] != 0) m.set(i, j, col[i]);
      }
    }
    return m;
  };
  std::vector<RatMatrix> iota_g;
  for (std::size_t a = 0; a < 3; ++a) {
    std::vector<std::optional<GcaElement>> images;
    for (std::size_t b = 0; b < 3; ++b) images.push_back(GcaElement::constant(gens, a == b ? 1 : 0));
    iota_g.push_back(matrix_of(GradedOperator(gens, -1, Parity::odd, images)));
  }
  SDgaModel total(basis, 0, products, matrix_of(d), LieAlgebraData::u1(), {RatMatrix(n, n)});
  return BundleModel(std::move(total), g, std::move(iota_g));
}

}  // namespace

TEST_CASE("flat family: curvature contractions and moment identities for five values of c") {
  const EquivariantBundle b(bundle_of("flat_circle_over_circle"));
  for (const Rat& c : {Rat(0), Rat(1), Rat(-1), Rat(3, 2), Rat(-7, 3)}) {
    CAPTURE(to_string(c));
    const GValued theta = flat_connection(b, c);
    CHECK(validate_connection(b, theta).ok());
    CHECK(verify_moment(b, theta).ok());
    CHECK(verify_curvature_contractions(b, theta).ok());
    CHECK(verify_curvature(b, theta).ok());
    CHECK(verify_weil_curvature(b, theta).ok());
    CHECK(is_zero(curvature(b, theta)[0]));
    RatVector expected = b.total().zero();
    expected[b.total().unit()] = -c;
    CHECK(moment(b, theta, 0)[0] == expected);
  }
}

TEST_CASE("flat family: the class of x is zero with primitive c*alpha") {
  const EquivariantBundle b(bundle_of("flat_circle_over_circle"));
  const InvariantPolynomial f(parse_polynomial("x1", 1), b.g());
  const WeilModel& base = *b.base_space();
  for (const Rat& c : {Rat(1), Rat(-1), Rat(3, 2), Rat(-7, 3), Rat(5)}) {
    const ChernWeilForm form = chern_weil_form(b, f, flat_connection(b, c));
    CHECK(form.base_form.element() == -c * base.u(0));
    REQUIRE(form.classes.size() == 1);
    CHECK(form.classes[0].zero);
    REQUIRE(form.classes[0].primitive.has_value());
    CHECK(base.cartan_d(*form.classes[0].primitive) == form.base_form);
  }
}

TEST_CASE("flat family: Chern-Weil forms of different connections are d_C-cohomologous") {
  const EquivariantBundle b(bundle_of("flat_circle_over_circle"));
  const std::vector<Rat> values = {Rat(0), Rat(1), Rat(-1), Rat(3, 2), Rat(-7, 3)};
  for (const char* poly : {"x1", "x1^2"}) {
    const InvariantPolynomial f(parse_polynomial(poly, 1), b.g());
    for (const Rat& c1 : values) {
      for (const Rat& c2 : values) {
        CHECK(connection_independence(b, f, flat_connection(b, c1), flat_connection(b, c2)).ok());
      }
    }
  }
}

TEST_CASE("Maurer-Cartan su2 bundle over a point") {
  const BundleModel model = maurer_cartan_su2();
  REQUIRE(validate_bundle(model).ok());
  const EquivariantBundle b(model);
  GValued theta;
  for (const char* name : {"b1", "b2", "b3"}) theta.push_back(b.total().basis_vector(*b.total().find(name)));
  const CheckReport connection = validate_connection(b, theta);
  CHECK(connection.ok());
  for (const auto& k : curvature(b, theta)) CHECK(is_zero(k));
  CHECK(verify_curvature(b, theta).ok());
  CHECK(verify_moment(b, theta).ok());
  CHECK(verify_curvature_contractions(b, theta).ok());
  CHECK(verify_xi(b, theta).ok());
  CHECK(verify_weil_curvature(b, theta).ok());
  CHECK(b.base().model.size() == 1);

  const InvariantPolynomial f(parse_polynomial("x1^2 + x2^2 + x3^2", 3), b.g());
  CHECK(verify_characteristic_form(b, theta, f).ok());
  CHECK(chern_weil_form(b, f, theta).base_form.is_zero());
}

TEST_CASE("expanded curvature formula: the theta theta term is the bracket of the moments") {
  const SDgaModel point = builtin_sdga("point").with_acting_algebra(LieAlgebraData::abelian(2));
  const auto space = weil_model(point);
  const WeilModel& w = *space;
  const LieAlgebraData g = LieAlgebraData::su2();
  const RatVector zero = point.zero(), one = point.unit_vector();
  const GValued k = {zero, zero, zero};
  const std::vector<GValued> l = {{one, zero, zero}, {zero, one, zero}};
  const std::vector<GValued> iota_k = {k, k};
  const GValuedWeil out = curvature_formula(w, g, k, l, iota_k);
  REQUIRE(out.size() == 3);
  CHECK(out[0] == w.u(0));
  CHECK(out[1] == w.u(1));
  CHECK(out[2] == w.multiply(w.theta(0), w.theta(1)));
  CHECK(w.format(out[2]) == "theta1*theta2");
}

TEST_CASE("rank one Weil curvature is K + u L - theta iota K on every builtin bundle") {
  for (const char* name : {"flat_circle_over_circle", "hopf_trivial_s", "hopf_fiber_rotation"}) {
    CAPTURE(name);
    const EquivariantBundle b(bundle_of(name));
    const GValued theta = *builtin_document(name).connection;
    const WeilModel& w = *b.total_space();
    const GValuedWeil k_inf = weil_equivariant_curvature(b, theta);
    const GValued k = curvature(b, theta), l = moment(b, theta, 0);
    const WeilModelElement expected = w.from_model(k[0]) + w.multiply(w.u(0), w.from_model(l[0])) -
                                      w.multiply(w.theta(0), w.from_model(b.total().iota_s(0).apply(k[0])));
    CHECK(k_inf[0] == expected);
  }
}
