#include "eqdr/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace eqdr {

void ReportSection::add_checks(const CheckReport& report) {
  checks.insert(checks.end(), report.results().begin(), report.results().end());
}

ReportSection& Report::section(std::string title) {
  sections.push_back({});
  sections.back().title = std::move(title);
  return sections.back();
}

bool Report::has_failures() const {
  for (const auto& s : sections) {
    for (const auto& c : s.checks) {
      if (!c.passed) return true;
    }
  }
  return false;
}

namespace {

const char* status_name(ExitCode code) {
  switch (code) {
    case ExitCode::ok: return "ok";
    case ExitCode::check_failed: return "check_failed";
    case ExitCode::parse_error: return "parse_error";
    case ExitCode::internal_error: return "internal_error";
  }
  return "unknown";
}

std::string format_ms(double ms) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.3f", ms);
  return buffer;
}

void render_table(std::ostringstream& out, const ReportTable& table) {
  std::vector<std::size_t> width(table.columns.size());
  for (std::size_t c = 0; c < table.columns.size(); ++c) width[c] = table.columns[c].size();
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c + 1 < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string text = "  ";
    for (std::size_t c = 0; c < cells.size(); ++c) {
      text += cells[c];
      if (c + 1 < cells.size()) text += std::string(width[c] - cells[c].size() + 2, ' ');
    }
    out << text << "\n";
  };
  line(table.columns);
  for (const auto& row : table.rows) line(row);
}

}  // namespace

std::string Report::render_human() const {
  std::ostringstream out;
  out << "command: " << command << "\n";
  for (const auto& [key, value] : configuration) out << key << ": " << value << "\n";
  for (const auto& s : sections) {
    out << "\n== " << s.title << " ==\n";
    for (const auto& [key, value] : s.values) out << "  " << key << ": " << value << "\n";
    if (s.table) render_table(out, *s.table);
    for (const auto& c : s.checks) {
      out << (c.passed ? "  [pass] " : "  [FAIL] ") << c.name;
      if (!c.passed && !c.witness.empty()) out << ": " << c.witness;
      out << "\n";
    }
  }
  out << "\n";
  if (!error.empty()) out << "error: " << error << "\n";
  if (elapsed_ms) out << "elapsed: " << format_ms(*elapsed_ms) << " ms\n";
  out << "status: " << status_name(exit_code) << " (exit " << static_cast<int>(exit_code) << ")\n";
  return out.str();
}

std::string Report::render_machine() const {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["command"] = command;
  ordered_json config = ordered_json::object();
  for (const auto& [key, value] : configuration) config[key] = value;
  doc["configuration"] = config;
  ordered_json sections_json = ordered_json::array();
  for (const auto& s : sections) {
    ordered_json section;
    section["title"] = s.title;
    ordered_json values = ordered_json::object();
    for (const auto& [key, value] : s.values) values[key] = value;
    section["values"] = values;
    if (s.table) section["table"] = {{"columns", s.table->columns}, {"rows", s.table->rows}};
    ordered_json checks = ordered_json::array();
    for (const auto& c : s.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"witness", c.witness}});
    section["checks"] = checks;
    sections_json.push_back(section);
  }
  doc["sections"] = sections_json;
  if (!error.empty()) doc["error"] = error;
  if (elapsed_ms) doc["elapsed_ms"] = format_ms(*elapsed_ms);
  doc["status"] = status_name(exit_code);
  doc["exit_code"] = static_cast<int>(exit_code);
  return doc.dump(2) + "\n";
}

}  // namespace eqdr
