#include "support.hpp"

#include "eqdr/errors.hpp"
#include "eqdr/lie.hpp"
#include "eqdr/ratlin.hpp"
#include "eqdr/weil.hpp"

#include <doctest.h>

#include <random>

using namespace eqdr;
using namespace eqdr::testing;

namespace {

RatMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int density_percent) {
  std::uniform_int_distribution<int> pct(0, 99);
  RatMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (pct(rng) < density_percent) m.set(r, c, small_rat(rng));
    }
  }
  return m;
}

GcaElement random_element(std::mt19937& rng, const GeneratorSetPtr& gens, int degree) {
  GcaElement x(gens);
  const auto monomials = monomials_of_degree(*gens, degree);
  for (const auto& m : monomials) {
    if (rng() % 2) x.add_term(m, small_rat(rng));
  }
  return x;
}

}  // namespace

// ------------------------------------------------------------------ ratlin

TEST_CASE("rational literals") {
  CHECK(parse_rat("3/6") == Rat(1, 2));
  CHECK(parse_rat("-4") == Rat(-4));
  CHECK(to_string(parse_rat("-6/4")) == "-3/2");
  CHECK_THROWS_AS(parse_rat("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rat("1.5"), ParseError);
  CHECK_THROWS_AS(parse_rat(""), ParseError);
}

TEST_CASE("format_sum") {
  CHECK(format_sum({{"a", Rat(3, 2)}, {"b", Rat(-1)}, {"", Rat(2)}}) == "3/2*a - b + 2");
  CHECK(format_sum({{"a", Rat(0)}}) == "0");
  CHECK(format_sum({{"a", Rat(-1)}}) == "-a");
}

TEST_CASE("rank plus nullity equals the column count on random matrices") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
    const RatMatrix m = random_matrix(rng, rows, cols, 40);
    const auto kernel = kernel_basis(m);
    CHECK(rank(m) + kernel.size() == cols);
    for (const auto& v : kernel) CHECK(is_zero(m.apply(v)));
    CHECK(span_rank(kernel, cols) == kernel.size());
  }
}

TEST_CASE("solve returns a solution or nothing") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const RatMatrix m = random_matrix(rng, 4, 3, 50);
    RatVector x(3);
    for (auto& c : x) c = small_rat(rng);
    const RatVector b = m.apply(x);
    const auto y = solve(m, b);
    REQUIRE(y.has_value());
    CHECK(m.apply(*y) == b);
  }
  RatMatrix zero(2, 2);
  CHECK_FALSE(solve(zero, RatVector{1, 0}).has_value());
}

TEST_CASE("quotient_basis") {
  const std::vector<RatVector> cycles = {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
  const std::vector<RatVector> boundaries = {{1, 1, 0}};
  const QuotientBasis q = quotient_basis(cycles, boundaries, 3);
  CHECK(q.dimension == 1);
  CHECK(q.representatives == std::vector<RatVector>{{1, 0, 0}});
  const std::vector<RatVector> stray = {{0, 0, 1}};
  CHECK_THROWS_AS(quotient_basis(cycles, stray, 3), InvalidComplexError);
}

TEST_CASE("echelon basis membership") {
  EchelonBasis b(3);
  CHECK(b.insert({1, 2, 0}));
  CHECK(b.insert({0, 1, 1}));
  CHECK_FALSE(b.insert({1, 3, 1}));
  CHECK(b.contains({2, 5, 1}));
  CHECK_FALSE(b.contains({0, 0, 1}));
  CHECK(b.rank() == 2);
}

// ------------------------------------------------------------------ gca

TEST_CASE("Koszul signs in an exterior algebra") {
  auto gens = std::make_shared<const GeneratorSet>(
      std::vector<GeneratorSpec>{{"a", 1}, {"b", 1}, {"x", 2}});
  const auto a = GcaElement::generator(gens, 0), b = GcaElement::generator(gens, 1), x = GcaElement::generator(gens, 2);
  CHECK(b * a == -(a * b));
  CHECK((a * a).is_zero());
  CHECK(x * a == a * x);
  CHECK(b * x * a == -(x * a * b));
  CHECK(koszul_sign(*gens, {0, 1, 0}, {1, 0, 0}) == -1);
  CHECK(koszul_sign(*gens, {1, 0, 0}, {1, 0, 0}) == 0);
  CHECK_THROWS_AS(GcaElement::monomial(gens, {2, 0, 0}), std::invalid_argument);
}

TEST_CASE("associativity and the Leibniz rule on random elements of W(su2)") {
  const WeilAlgebra w = WeilAlgebra::build(LieAlgebraData::su2());
  const auto& gens = w.universe();
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 100; ++trial) {
    const int da = 1 + rng() % 3, db = 1 + rng() % 3, dc = 1 + rng() % 2;
    const GcaElement a = random_element(rng, gens, da), b = random_element(rng, gens, db),
                     c = random_element(rng, gens, dc);
    CHECK((a * b) * c == a * (b * c));
    const Rat sign = da % 2 ? -1 : 1;
    CHECK(w.d()(a * b) == w.d()(a) * b + sign * (a * w.d()(b)));
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(w.iota(i)(a * b) == w.iota(i)(a) * b + sign * (a * w.iota(i)(b)));
      CHECK(w.lie_derivative(i)(a * b) == w.lie_derivative(i)(a) * b + a * w.lie_derivative(i)(b));
    }
  }
}

TEST_CASE("graded commutativity on random elements") {
  const WeilAlgebra w = WeilAlgebra::build(LieAlgebraData::su2());
  std::mt19937 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const int da = 1 + rng() % 4, db = 1 + rng() % 4;
    const GcaElement a = random_element(rng, w.universe(), da), b = random_element(rng, w.universe(), db);
    const Rat sign = (da * db) % 2 ? -1 : 1;
    CHECK(a * b == sign * (b * a));
  }
}

// ------------------------------------------------------------------ lie

TEST_CASE("structure constants") {
  CHECK_FALSE(validate_lie(LieAlgebraData::su2()).has_value());
  CHECK_FALSE(validate_lie(LieAlgebraData::abelian(2)).has_value());
  CHECK(LieAlgebraData::abelian(2).is_abelian());
  const LieAlgebraData su2 = LieAlgebraData::su2();
  CHECK(su2.c(1, 0, 2) == -1);

  const std::vector<BracketTriple> bad = {{0, 1, 0, 1}, {0, 2, 1, 1}};
  const auto v = validate_lie(LieAlgebraData::from_brackets(3, bad));
  REQUIRE(v.has_value());
  CHECK(v->kind == LieViolation::Kind::jacobi);
  CHECK(v->describe().find("(1,2,3)") != std::string::npos);
  CHECK(v->describe().find("X2") != std::string::npos);

  std::vector<Rat> raw(8);
  raw[(0 * 2 + 1) * 2 + 0] = 1;  // c_12^1 = 1 without c_21^1 = -1
  const auto anti = validate_lie(LieAlgebraData::from_raw(2, raw));
  REQUIRE(anti.has_value());
  CHECK(anti->kind == LieViolation::Kind::antisymmetry);
  CHECK_THROWS_AS(LieAlgebraData::from_brackets(2, std::vector<BracketTriple>{{1, 0, 0, 1}}), std::invalid_argument);
}

TEST_CASE("Jacobi identity for the su2 bracket on random triples") {
  const LieAlgebraData g = LieAlgebraData::su2();
  std::mt19937 rng(4242);
  auto random_vector = [&] {
    RatVector v(3);
    for (auto& c : v) c = small_rat(rng);
    return v;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const RatVector x = random_vector(), y = random_vector(), z = random_vector();
    RatVector sum(3);
    const RatVector a = bracket(g, x, bracket(g, y, z)), b = bracket(g, y, bracket(g, z, x)),
                    c = bracket(g, z, bracket(g, x, y));
    for (std::size_t k = 0; k < 3; ++k) sum[k] = a[k] + b[k] + c[k];
    CHECK(is_zero(sum));
    const RatVector xy = bracket(g, x, y), yx = bracket(g, y, x);
    for (std::size_t k = 0; k < 3; ++k) CHECK(xy[k] == -yx[k]);
  }
}

TEST_CASE("Ad-invariant polynomials") {
  const LieAlgebraData su2 = LieAlgebraData::su2();
  const auto vars = polynomial_variables(3);
  const auto x1 = GcaElement::generator(vars, 0), x2 = GcaElement::generator(vars, 1),
             x3 = GcaElement::generator(vars, 2);
  CHECK(check_ad_invariance(x1 * x1 + x2 * x2 + x3 * x3, su2));
  CHECK_FALSE(check_ad_invariance(x1 * x1, su2));
  CHECK_FALSE(check_ad_invariance(x1, su2));
  CHECK_THROWS_AS(InvariantPolynomial(x1, su2), ValidationError);
  CHECK(check_ad_invariance(x1 * x2, LieAlgebraData::abelian(3)));
}

// ------------------------------------------------------------------ weil

TEST_CASE("Weil algebras of u1 and su2 satisfy every identity") {
  for (const auto& lie : {LieAlgebraData::u1(), LieAlgebraData::su2(), LieAlgebraData::abelian(2)}) {
    const CheckReport r = verify_weil(WeilAlgebra::build(lie));
    CHECK(r.ok());
    CHECK(r.find("d^2 = 0") != nullptr);
  }
}

TEST_CASE("Weil differential of su2 on generators") {
  const WeilAlgebra w = WeilAlgebra::build(LieAlgebraData::su2());
  // d theta_3 = u_3 - theta_1 theta_2.
  CHECK(w.d()(w.theta(2)) == w.u(2) - w.theta(0) * w.theta(1));
  // d u_3 = u_1 theta_2 - u_2 theta_1.
  CHECK(w.d()(w.u(2)) == w.u(0) * w.theta(1) - w.u(1) * w.theta(0));
  // L_1 theta_2 = -c_13^2 theta_3 = theta_3.
  CHECK(w.lie_derivative(0)(w.theta(1)) == w.theta(2));
  CHECK(w.lie_derivative(0)(w.u(1)) == w.u(2));
}

TEST_CASE("corrupted su2 constants are rejected with a d^2 witness") {
  const std::vector<BracketTriple> brackets = {{0, 1, 2, 1}, {0, 1, 0, 1}, {1, 2, 0, 1}, {0, 2, 1, -1}};
  const LieAlgebraData bad = LieAlgebraData::from_brackets(3, brackets);
  const CheckReport r = verify_weil(WeilAlgebra::build_unchecked(bad));
  const CheckResult* d2 = r.find("d^2 = 0");
  REQUIRE(d2 != nullptr);
  CHECK_FALSE(d2->passed);
  CHECK_FALSE(d2->witness.empty());
  CHECK_THROWS_AS(WeilAlgebra::build(bad), ValidationError);
}

// ------------------------------------------------------------------ sdga

TEST_CASE("every builtin model satisfies its axioms") {
  for (const auto& name : builtin_names()) {
    CAPTURE(name);
    const AnyModel any = builtin(name);
    const CheckReport r = std::holds_alternative<BundleModel>(any) ? validate_bundle(std::get<BundleModel>(any))
                                                                   : validate_sdga(std::get<SDgaModel>(any));
    CHECK(r.ok());
  }
  CHECK_THROWS_AS(builtin("klein_bottle"), std::invalid_argument);
  CHECK_THROWS_AS(builtin_lie("so3"), std::invalid_argument);
}

TEST_CASE("acting algebra can only be replaced on a trivial action") {
  CHECK(builtin_sdga("point").trivial_action());
  CHECK_FALSE(builtin_sdga("circle_rotation").trivial_action());
  CHECK_NOTHROW(builtin_sdga("s2_trivial").with_acting_algebra(LieAlgebraData::su2()));
  CHECK_THROWS(builtin_sdga("circle_rotation").with_acting_algebra(LieAlgebraData::su2()));
}

TEST_CASE("lie derivatives follow from d and iota") {
  const SDgaModel circle = builtin_sdga("circle_rotation");
  const RatMatrix expected = circle.d() * circle.iota_s(0) + circle.iota_s(0) * circle.d();
  CHECK(circle.lie_s(0) == expected);
}
