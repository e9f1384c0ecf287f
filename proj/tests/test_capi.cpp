// Exercises the shared library through eqdr.h only.

#include "eqdr.h"

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

namespace {

std::string take(char* text) {
  std::string out = text ? text : "";
  eqdr_string_free(text);
  return out;
}

std::string render(const eqdr_report* r, eqdr_format f) {
  char* text = nullptr;
  REQUIRE(eqdr_report_render(r, f, &text) == EQDR_OK);
  return take(text);
}

}  // namespace

TEST_CASE("catalog listing") {
  CHECK(eqdr_builtin_count() == 6);
  CHECK(std::string(eqdr_builtin_name(0)) == "point");
  CHECK(eqdr_builtin_name(99) == nullptr);
  CHECK(eqdr_command_count() == 7);
  CHECK(std::string(eqdr_command_name(6)) == "prop-checks");
}

TEST_CASE("documents round-trip through the text format") {
  for (size_t i = 0; i < eqdr_builtin_count(); ++i) {
    eqdr_document* doc = nullptr;
    REQUIRE(eqdr_document_from_builtin(eqdr_builtin_name(i), &doc) == EQDR_OK);
    char* text = nullptr;
    REQUIRE(eqdr_document_serialize(doc, &text) == EQDR_OK);
    const std::string first = take(text);
    eqdr_document* again = nullptr;
    REQUIRE(eqdr_document_parse(first.c_str(), &again) == EQDR_OK);
    CHECK(eqdr_document_equal(doc, again) == 1);
    REQUIRE(eqdr_document_serialize(again, &text) == EQDR_OK);
    CHECK(take(text) == first);
    eqdr_document_free(doc);
    eqdr_document_free(again);
  }
}

TEST_CASE("errors are reported through status codes and eqdr_last_error") {
  eqdr_document* doc = nullptr;
  CHECK(eqdr_document_parse("model\n  basis one 0\n  unit one\n  d one = 1/0\nend\n", &doc) == EQDR_PARSE_ERROR);
  CHECK(std::string(eqdr_last_error()) == "4:11: zero denominator in '1/0'");
  CHECK(doc == nullptr);
  CHECK(eqdr_document_parse("model\n  basis alpha 1\nend\n", &doc) == EQDR_CHECK_FAILED);
  CHECK(eqdr_document_from_builtin("klein_bottle", &doc) == EQDR_INVALID_ARGUMENT);
  CHECK(eqdr_document_from_builtin(nullptr, &doc) == EQDR_INVALID_ARGUMENT);
  CHECK(eqdr_document_load("/nonexistent/model.txt", &doc) == EQDR_PARSE_ERROR);
  CHECK(eqdr_document_equal(nullptr, nullptr) == 0);
  CHECK(eqdr_execute(nullptr, nullptr) == EQDR_INVALID_ARGUMENT);
}

TEST_CASE("execute a command on a builtin") {
  eqdr_options o;
  eqdr_options_init(&o);
  CHECK(o.max_degree == 8);
  o.command = "cohomology";
  o.builtin = "point";
  o.lie = "su2";
  eqdr_report* r = nullptr;
  REQUIRE(eqdr_execute(&o, &r) == EQDR_OK);
  CHECK(eqdr_report_exit_code(r) == 0);
  CHECK(std::string(eqdr_report_error(r)).empty());
  const std::string human = render(r, EQDR_FORMAT_HUMAN);
  CHECK(human.find("dimensions: 1,0,0,0,1,0,0,0,1") != std::string::npos);
  CHECK(render(r, EQDR_FORMAT_MACHINE).find("\"exit_code\": 0") != std::string::npos);
  eqdr_report_free(r);
}

TEST_CASE("failed runs still produce a report") {
  eqdr_options o;
  eqdr_options_init(&o);
  o.command = "validate";
  o.builtin = "klein_bottle";
  eqdr_report* r = nullptr;
  CHECK(eqdr_execute(&o, &r) == EQDR_PARSE_ERROR);
  REQUIRE(r != nullptr);
  CHECK(std::string(eqdr_report_error(r)).find("unknown builtin 'klein_bottle'") != std::string::npos);
  CHECK(std::string(eqdr_last_error()).find("klein_bottle") != std::string::npos);
  eqdr_report_free(r);

  eqdr_document* doc = nullptr;
  REQUIRE(eqdr_document_from_builtin("hopf_trivial_s", &doc) == EQDR_OK);
  o.command = "curvature";
  o.connection = "2*beta";
  REQUIRE(eqdr_execute_document(doc, "hopf", &o, &r) == EQDR_CHECK_FAILED);
  CHECK(render(r, EQDR_FORMAT_HUMAN).find("iota^G_1 Theta^1 = 2") != std::string::npos);
  eqdr_report_free(r);
  eqdr_document_free(doc);
}
