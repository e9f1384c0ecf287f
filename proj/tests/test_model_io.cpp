#include "support.hpp"

#include "eqdr/errors.hpp"
#include "eqdr/model_io.hpp"

#include <doctest.h>

using namespace eqdr;
using namespace eqdr::testing;

namespace {

const char* const kCircle = R"(# circle with a free rotation
lie_algebra_s
  dimension 1
end
model
  basis one 0
  basis alpha 1
  unit one
  iota_s 1 alpha = one
end
)";

std::string parse_error_of(const std::string& text) {
  try {
    parse_model(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("every builtin round-trips through the text format") {
  for (const auto& name : builtin_names()) {
    CAPTURE(name);
    const ModelDocument doc = builtin_document(name);
    const std::string text = serialize_model(doc);
    const ModelDocument back = parse_model(text);
    CHECK(back == doc);
    CHECK(serialize_model(back) == text);
  }
}

TEST_CASE("hand-written circle matches the builtin") {
  CHECK(parse_model(kCircle) == builtin_document("circle_rotation"));
}

TEST_CASE("products are mirrored by graded commutativity unless given") {
  const ModelDocument doc = parse_model(R"(
model
  basis one 0
  basis a 1
  basis b 1
  basis ab 2
  unit one
  mul a b = ab
end
)");
  const SDgaModel& m = doc.total();
  CHECK(m.format(m.product(*m.find("b"), *m.find("a"))) == "-ab");
  CHECK(m.s_rank() == 0);
}

TEST_CASE("a non-graded-commutative table survives the round trip") {
  const ModelDocument doc = parse_model(R"(
model
  basis one 0
  basis a 1
  basis b 1
  basis ab 2
  unit one
  mul b a = ab
  mul a b = ab
end
)");
  CHECK(parse_model(serialize_model(doc)) == doc);
  CHECK_FALSE(validate_sdga(doc.total()).ok());
}

TEST_CASE("parse errors carry positions") {
  CHECK(parse_error_of("model\n  basis one 0\n  unit one\n  d one = 1/0\nend\n") == "4:11: zero denominator in '1/0'");
  CHECK(parse_error_of("model\n  basis one 0\n  unit one\n  d one = gamma\nend\n") == "4:11: unknown basis element 'gamma'");
  CHECK(parse_error_of("model\n  basis one 0\n  basis one 1\n  unit one\nend\n") == "3:9: duplicate basis element 'one'");
  CHECK(parse_error_of("model\n  basis u1 2\nend\n") == "2:9: basis name 'u1' is reserved");
  CHECK(parse_error_of("model\n  basis one 0\n  unit one\n") == "1:1: section opened here is not closed with 'end'");
  CHECK(parse_error_of("lie_algebra_s\n  dimension 2\n  bracket 2 1 1 1\nend\n") == "3:11: bracket i j k value requires i < j");
  CHECK(parse_error_of("frobnicate\n") == "1:1: unknown section 'frobnicate'");
  CHECK(parse_error_of("model\n  basis one 0\n  unit one\n  mul one one = one\nend\n") == "4:7: products with the unit are implicit");
  CHECK(parse_error_of("model\n  basis one 0\n  unit one\n  iota_s 1 one = 0\nend\n") ==
        "4:10: iota_s index 1 out of range 1..0");
  CHECK(parse_error_of("model\n  basis one 0\n  unit one\n  d one = 2 one\nend\n") == "4:13: expected '+', '-' or '*', found 'o'");
}

TEST_CASE("a model without a unit is a validation error") {
  CHECK_THROWS_AS(parse_model("model\n  basis alpha 1\nend\n"), ValidationError);
  CHECK_THROWS_AS(parse_model("model\n  basis one 1\n  unit one\nend\n"), ValidationError);
}

TEST_CASE("connection and polynomial sections") {
  ModelDocument doc = builtin_document("flat_circle_over_circle");
  doc.polynomial = parse_polynomial("x1^2 - 1/2", 1);
  const ModelDocument back = parse_model(serialize_model(doc));
  CHECK(back == doc);
  CHECK(serialize_model(back).find("polynomial -1/2 + x1^2") != std::string::npos);
  CHECK(serialize_model(back).find("component 1 = 3/2*alpha + beta") != std::string::npos);
}

TEST_CASE("polynomial grammar") {
  CHECK(format_polynomial(parse_polynomial("(x1 + x2)^2", 2)) == "x1^2 + 2*x1*x2 + x2^2");
  CHECK(format_polynomial(parse_polynomial("x1*x1 + x2^2 + x3^2", 3)) == "x1^2 + x2^2 + x3^2");
  CHECK(format_polynomial(parse_polynomial("-(3/2)*x1 + 2", 1)) == "2 - 3/2*x1");
  CHECK_THROWS_AS(parse_polynomial("x1 x2", 2), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x3", 2), ParseError);
  CHECK_THROWS_AS(parse_polynomial("y", 2), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x1/2", 2), ParseError);
  CHECK_THROWS_AS(parse_polynomial("(x1", 2), ParseError);
}

TEST_CASE("element grammar with Koszul signs") {
  auto space = weil_model(builtin_sdga("circle_rotation"));
  const auto alpha = *space->model().find("alpha");
  CHECK(parse_element(*space, "alpha - theta1") == space->basis(alpha) - space->theta(0));
  CHECK(parse_element(*space, "alpha*theta1") == -space->multiply(space->theta(0), space->basis(alpha)));
  CHECK(space->format(parse_element(*space, "3/2*u1^2*alpha + 1")) == "1 + 3/2*u1^2*alpha");
  CHECK_THROWS_AS(parse_element(*space, "u2"), ParseError);
  CHECK_THROWS_AS(parse_element(*space, "gamma"), ParseError);
}
