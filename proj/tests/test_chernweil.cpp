#include "support.hpp"

#include "eqdr/chernweil.hpp"
#include "eqdr/errors.hpp"

#include <doctest.h>

using namespace eqdr;
using namespace eqdr::testing;

namespace {

EquivariantBundle bundle_of(const std::string& name) { return EquivariantBundle(std::get<BundleModel>(builtin(name))); }

RatVector vec(const SDgaModel& m, std::initializer_list<std::pair<const char*, Rat>> terms) {
  RatVector v = m.zero();
  for (const auto& [name, c] : terms) v[*m.find(name)] += c;
  return v;
}

GValued flat_connection(const EquivariantBundle& b, const Rat& c) {
  return {vec(b.total(), {{"beta", 1}, {"alpha", c}})};
}

GValued beta_connection(const EquivariantBundle& b) { return {vec(b.total(), {{"beta", 1}})}; }

InvariantPolynomial poly_x(std::size_t power) {
  auto vars = polynomial_variables(1);
  Exponents e{static_cast<std::uint32_t>(power)};
  return InvariantPolynomial(GcaElement::monomial(vars, e), LieAlgebraData::u1());
}

}  // namespace

TEST_CASE("connections on the builtin bundles validate") {
  const auto flat = bundle_of("flat_circle_over_circle");
  CHECK(validate_connection(flat, flat_connection(flat, Rat(3, 2))).ok());
  const auto hopf = bundle_of("hopf_trivial_s");
  CHECK(validate_connection(hopf, beta_connection(hopf)).ok());
  const auto rot = bundle_of("hopf_fiber_rotation");
  CHECK(validate_connection(rot, beta_connection(rot)).ok());
}

TEST_CASE("a connection with iota^G Theta = 2 is rejected") {
  const auto flat = bundle_of("flat_circle_over_circle");
  const GValued theta{vec(flat.total(), {{"beta", 2}, {"alpha", Rat(3, 2)}})};
  const CheckReport report = validate_connection(flat, theta);
  const CheckResult* failure = report.first_failure();
  REQUIRE(failure);
  CHECK(failure->name == "iota^G_a Theta^b = delta_ab");
  CHECK(failure->witness == "iota^G_1 Theta^1 = 2");
  CHECK_THROWS_AS(require_connection(flat, theta), ValidationError);
}

TEST_CASE("curvature and moment on the builtin bundles") {
  const auto flat = bundle_of("flat_circle_over_circle");
  const auto theta = flat_connection(flat, Rat(3, 2));
  CHECK(is_zero(curvature(flat, theta)[0]));
  CHECK(moment(flat, theta, 0)[0] == vec(flat.total(), {{"one", Rat(-3, 2)}}));
  CHECK(is_zero(covariant_derivative(flat, theta, moment(flat, theta, 0))[0]));

  const auto hopf = bundle_of("hopf_trivial_s");
  CHECK(curvature(hopf, beta_connection(hopf))[0] == vec(hopf.total(), {{"omega", 1}}));
  CHECK(is_zero(moment(hopf, beta_connection(hopf), 0)[0]));

  const auto rot = bundle_of("hopf_fiber_rotation");
  CHECK(moment(rot, beta_connection(rot), 0)[0] == vec(rot.total(), {{"one", -1}}));
}

TEST_CASE("equivariant curvature in the Cartan model") {
  const auto flat = bundle_of("flat_circle_over_circle");
  const WeilModel& fs = *flat.total_space();
  CHECK(fs.format(equivariant_curvature(flat, flat_connection(flat, Rat(3, 2)))[0]) == "-3/2*u1");

  const auto hopf = bundle_of("hopf_trivial_s");
  CHECK(hopf.total_space()->format(equivariant_curvature(hopf, beta_connection(hopf))[0]) == "omega");

  const auto rot = bundle_of("hopf_fiber_rotation");
  CHECK(rot.total_space()->format(equivariant_curvature(rot, beta_connection(rot))[0]) == "-u1 + omega");
}

TEST_CASE("K_inf: all three routes agree and the checks pass on every builtin bundle") {
  for (const char* name : {"flat_circle_over_circle", "hopf_trivial_s", "hopf_fiber_rotation"}) {
    CAPTURE(name);
    const auto b = bundle_of(name);
    const GValued theta = std::string(name) == "flat_circle_over_circle" ? flat_connection(b, Rat(3, 2)) : beta_connection(b);
    CHECK(verify_curvature(b, theta).ok());
    CHECK(verify_moment(b, theta).ok());
    CHECK(verify_curvature_contractions(b, theta).ok());
    CHECK(verify_xi(b, theta).ok());
    CHECK(verify_weil_curvature(b, theta).ok());
    CHECK_NOTHROW(weil_equivariant_curvature(b, theta));
    for (std::size_t p : {1u, 2u}) CHECK(verify_characteristic_form(b, theta, poly_x(p)).ok());
  }
}

TEST_CASE("K_inf values") {
  const auto rot = bundle_of("hopf_fiber_rotation");
  CHECK(rot.total_space()->format(weil_equivariant_curvature(rot, beta_connection(rot))[0]) == "-u1 + omega");
  const auto flat = bundle_of("flat_circle_over_circle");
  CHECK(flat.total_space()->format(weil_equivariant_curvature(flat, flat_connection(flat, 5))[0]) == "-5*u1");
}

TEST_CASE("base descent") {
  const auto flat = bundle_of("flat_circle_over_circle");
  const auto& base = flat.base().model;
  REQUIRE(base.size() == 2);
  CHECK(base.element(0).name == "one");
  CHECK(base.element(1).name == "alpha");
  CHECK(validate_sdga(base).ok());

  const auto hopf = bundle_of("hopf_trivial_s");
  REQUIRE(hopf.base().model.size() == 2);
  CHECK(hopf.base().model.element(1).name == "omega");
}

TEST_CASE("Chern-Weil classes") {
  SUBCASE("flat, c = 3/2: -3/2 u is d_C(3/2 alpha)") {
    const auto flat = bundle_of("flat_circle_over_circle");
    const auto form = chern_weil_form(flat, poly_x(1), flat_connection(flat, Rat(3, 2)));
    const WeilModel& base = *flat.base_space();
    CHECK(base.format(form.base_form) == "-3/2*u1");
    REQUIRE(form.classes.size() == 1);
    CHECK(form.classes[0].zero);
    REQUIRE(form.classes[0].primitive);
    CHECK(base.format(*form.classes[0].primitive) == "3/2*alpha");
  }
  SUBCASE("hopf_trivial_s: omega, nonzero in a two-dimensional H^2") {
    const auto hopf = bundle_of("hopf_trivial_s");
    const auto form = chern_weil_form(hopf, poly_x(1), beta_connection(hopf));
    CHECK(hopf.base_space()->format(form.base_form) == "omega");
    REQUIRE(form.classes.size() == 1);
    CHECK_FALSE(form.classes[0].zero);
    CHECK(form.classes[0].group.dimension == 2);
  }
  SUBCASE("hopf_fiber_rotation: omega - u nonzero, and its square") {
    const auto rot = bundle_of("hopf_fiber_rotation");
    const auto form = chern_weil_form(rot, poly_x(1), beta_connection(rot));
    CHECK(rot.base_space()->format(form.base_form) == "-u1 + omega");
    CHECK_FALSE(form.classes.at(0).zero);
    const auto square = chern_weil_form(rot, poly_x(2), beta_connection(rot));
    CHECK(rot.base_space()->format(square.base_form) == "u1^2 - 2*u1*omega");
    CHECK_FALSE(square.classes.at(0).zero);
  }
}

TEST_CASE("connection independence on the flat family") {
  const auto flat = bundle_of("flat_circle_over_circle");
  CHECK(connection_independence(flat, poly_x(1), flat_connection(flat, Rat(3, 2)), flat_connection(flat, -2)).ok());
  CHECK(connection_independence(flat, poly_x(2), flat_connection(flat, Rat(3, 2)), flat_connection(flat, -2)).ok());
  CHECK(connection_independence(flat, poly_x(1), flat_connection(flat, 1), flat_connection(flat, 1)).ok());
}

TEST_CASE("evaluation at a point of s") {
  const auto flat = bundle_of("flat_circle_over_circle");
  const auto form = chern_weil_form(flat, poly_x(1), flat_connection(flat, Rat(3, 2)));
  const WeilModel& base = *flat.base_space();
  CHECK(base.model().format(evaluate_at(base, form.base_form, {2})) == "-3");
  CHECK(base.model().format(evaluate_at(base, form.base_form, {0})) == "0");

  const auto rot = bundle_of("hopf_fiber_rotation");
  const auto rform = chern_weil_form(rot, poly_x(1), beta_connection(rot));
  CHECK(rot.base_space()->model().format(evaluate_at(*rot.base_space(), rform.base_form, {1})) == "-1 + omega");
  CHECK(verify_evaluation_equivariance(*rot.base_space(), rform.base_form, {{0}, {1}, {Rat(-2, 3)}}).ok());
}
