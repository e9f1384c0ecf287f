#pragma once

// Command dispatch shared by the C API and the command line tool.

#include "eqdr/model_io.hpp"
#include "eqdr/report.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace eqdr {

struct CommandOptions {
  std::string command;
  std::optional<std::string> builtin;     // exactly one of builtin / model_path for run_command
  std::optional<std::string> model_path;
  std::optional<std::string> lie;         // "u1", "su2" or a file with a lie_algebra section
  int max_degree = 8;
  std::optional<std::string> poly;
  std::optional<std::string> element;     // mq only
  std::string direction = "to-weil";      // mq only
  std::optional<std::string> connection;  // components separated by ';'
  bool base = false;                      // cohomology over A_M for bundles
  bool timing = false;
};

const std::vector<std::string>& command_names();

/// Exit code and message for the exception being handled (call from a catch
/// block): ParseError 2, ValidationError 1, InternalError and
/// InvalidComplexError 3, anything else 3.
std::pair<ExitCode, std::string> classify_current_exception();

/// Loads the model named by the options and runs the command. Never throws:
/// every failure is reflected in the exit code and error of the report.
Report run_command(const CommandOptions& options);

/// Same, on an already loaded document. `label` is echoed as the model.
Report run_on_document(const ModelDocument& doc, const std::string& label, const CommandOptions& options);

}  // namespace eqdr
