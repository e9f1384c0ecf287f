#include "eqdr/commands.hpp"
#include "eqdr/errors.hpp"

#include <doctest.h>
#include <json.hpp>

using namespace eqdr;

namespace {

CommandOptions on_builtin(std::string command, std::string name) {
  CommandOptions o;
  o.command = std::move(command);
  o.builtin = std::move(name);
  return o;
}

template <class E>
ExitCode classify(E error) {
  try {
    throw error;
  } catch (...) {
    return classify_current_exception().first;
  }
}

}  // namespace

TEST_CASE("exception classes map to the documented exit codes") {
  CHECK(classify(ParseError("x", 1, 2)) == ExitCode::parse_error);
  CHECK(classify(ValidationError("x")) == ExitCode::check_failed);
  CHECK(classify(InternalError("x")) == ExitCode::internal_error);
  CHECK(classify(InvalidComplexError("x")) == ExitCode::internal_error);
  CHECK(classify(std::runtime_error("x")) == ExitCode::internal_error);
  try {
    throw InternalError("routes disagree");
  } catch (...) {
    CHECK(classify_current_exception().second == "routes disagree");
  }
}

TEST_CASE("human and machine renderings carry the same data") {
  for (const auto& [command, name] : std::vector<std::pair<std::string, std::string>>{
           {"chern", "hopf_fiber_rotation"}, {"weil-cohomology", "s2_trivial"}, {"validate", "klein_bottle"}}) {
    CommandOptions o = on_builtin(command, name);
    o.poly = "x1";
    const Report r = run_command(o);
    const std::string human = r.render_human();
    const auto doc = nlohmann::json::parse(r.render_machine());
    CHECK(doc["command"] == command);
    CHECK(doc["exit_code"] == static_cast<int>(r.exit_code));
    if (!r.error.empty()) CHECK(human.find(doc["error"].get<std::string>()) != std::string::npos);
    for (const auto& section : doc["sections"]) {
      CHECK(human.find("== " + section["title"].get<std::string>() + " ==") != std::string::npos);
      for (const auto& [key, value] : section["values"].items()) {
        CHECK(human.find(key + ": " + value.get<std::string>()) != std::string::npos);
      }
      for (const auto& check : section["checks"]) {
        const std::string mark = check["passed"].get<bool>() ? "[pass] " : "[FAIL] ";
        CHECK(human.find(mark + check["name"].get<std::string>()) != std::string::npos);
      }
      if (section.contains("table")) {
        for (const auto& row : section["table"]["rows"]) {
          for (const auto& cell : row) CHECK(human.find(cell.get<std::string>()) != std::string::npos);
        }
      }
    }
  }
}

TEST_CASE("reports are deterministic") {
  const Report a = run_command(on_builtin("prop-checks", "hopf_fiber_rotation"));
  const Report b = run_command(on_builtin("prop-checks", "hopf_fiber_rotation"));
  CHECK(a.render_human() == b.render_human());
  CHECK(a.render_machine() == b.render_machine());
  CHECK(a.exit_code == ExitCode::ok);
}

TEST_CASE("timing is reported only on request") {
  CommandOptions o = on_builtin("cohomology", "point");
  CHECK_FALSE(run_command(o).elapsed_ms.has_value());
  o.timing = true;
  const Report r = run_command(o);
  CHECK(r.elapsed_ms.has_value());
  CHECK(r.render_human().find("elapsed: ") != std::string::npos);
}

TEST_CASE("prop-checks passes on every builtin") {
  for (const auto& name : builtin_names()) {
    CAPTURE(name);
    CommandOptions o = on_builtin("prop-checks", name);
    o.max_degree = 6;
    const Report r = run_command(o);
    CHECK(r.exit_code == ExitCode::ok);
    CHECK(r.error.empty());
  }
}

TEST_CASE("run_on_document echoes the label and honours the document polynomial") {
  ModelDocument doc = builtin_document("hopf_trivial_s");
  doc.polynomial = parse_polynomial("x1^2", 1);
  CommandOptions o;
  o.command = "chern";
  const Report r = run_on_document(doc, "in memory", o);
  CHECK(r.exit_code == ExitCode::ok);
  CHECK(r.configuration.front().second == "in memory");
  CHECK(r.render_human().find("f: x1^2") != std::string::npos);
}
