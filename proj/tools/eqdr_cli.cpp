// eqdr: command line front end. Talks to the engine through eqdr.h only.

#include "eqdr.h"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

struct Flags {
  std::optional<std::string> builtin, model, lie, poly, element, connection;
  int max_degree = 8;
  std::string format = "human";
  std::string direction = "to-weil";
  bool base = false;
  bool timing = false;
};

const char* c_str(const std::optional<std::string>& s) { return s ? s->c_str() : nullptr; }

std::string builtin_list() {
  std::string out;
  for (size_t i = 0; i < eqdr_builtin_count(); ++i) out += (i ? ", " : "") + std::string(eqdr_builtin_name(i));
  return out;
}

void add_flags(CLI::App* sub, Flags& f) {
  auto* b = sub->add_option("--builtin", f.builtin, "builtin model (" + builtin_list() + ")");
  auto* m = sub->add_option("--model", f.model, "model file");
  b->excludes(m);
  sub->add_option("--lie", f.lie, "acting Lie algebra for models with trivial action: u1, su2 or a file");
  sub->add_option("--max-degree", f.max_degree, "top degree N (default 8)");
  sub->add_option("--poly", f.poly, "invariant polynomial in x1..xn");
  sub->add_option("--format", f.format, "human or machine")->check(CLI::IsMember({"human", "machine"}));
  sub->add_option("--connection", f.connection, "connection components over A_P, separated by ';'");
  sub->add_flag("--base", f.base, "work over the basic subalgebra A_M of a bundle");
  sub->add_flag("--timing", f.timing, "report elapsed time");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Weil and Cartan models, equivariant cohomology and equivariant Chern-Weil forms"};
  app.require_subcommand(1);
  Flags flags;
  std::vector<CLI::App*> subs;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"validate", "check the Lie algebras, the model axioms, the connection and the polynomial"},
      {"cohomology", "equivariant cohomology via the Cartan model, degrees 0..N"},
      {"weil-cohomology", "Cartan and Weil-model cohomology side by side with an agreement check"},
      {"mq", "Mathai-Quillen map of an element between the Cartan and Weil models"},
      {"chern", "equivariant Chern-Weil form of a polynomial and its classes"},
      {"curvature", "curvature, moments and the equivariant curvature in both models"},
      {"prop-checks", "identities of the Weil algebra, Cartan model, connection and curvature"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_flags(sub, flags);
    if (name == "mq") {
      sub->add_option("--element", flags.element, "element text, e.g. \"alpha - theta1\"");
      sub->add_option("--direction", flags.direction, "to-weil or to-cartan")
          ->check(CLI::IsMember({"to-weil", "to-cartan"}));
    }
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EQDR_PARSE_ERROR;
  }

  std::string command;
  for (auto* sub : subs) {
    if (sub->parsed()) command = sub->get_name();
  }

  eqdr_options options;
  eqdr_options_init(&options);
  options.command = command.c_str();
  options.builtin = c_str(flags.builtin);
  options.model_path = c_str(flags.model);
  options.lie = c_str(flags.lie);
  options.max_degree = flags.max_degree;
  options.poly = c_str(flags.poly);
  options.element = c_str(flags.element);
  options.direction = flags.direction.c_str();
  options.connection = c_str(flags.connection);
  options.base = flags.base;
  options.timing = flags.timing;

  eqdr_report* report = nullptr;
  const eqdr_status status = eqdr_execute(&options, &report);
  if (!report) {
    std::cerr << "error: " << eqdr_last_error() << "\n";
    return status == EQDR_INVALID_ARGUMENT ? EQDR_PARSE_ERROR : status;
  }
  const bool machine = flags.format == "machine";
  char* text = nullptr;
  if (eqdr_report_render(report, machine ? EQDR_FORMAT_MACHINE : EQDR_FORMAT_HUMAN, &text) != EQDR_OK) {
    std::cerr << "error: " << eqdr_last_error() << "\n";
    eqdr_report_free(report);
    return EQDR_INTERNAL_ERROR;
  }
  std::fputs(text, stdout);
  eqdr_string_free(text);
  const int code = eqdr_report_exit_code(report);
  const std::string error = eqdr_report_error(report);
  if (!machine && !error.empty()) std::cerr << "error: " << error << "\n";
  eqdr_report_free(report);
  return code;
}
