#include "eqdr.h"

#include "eqdr/commands.hpp"
#include "eqdr/errors.hpp"
#include "eqdr/model_io.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct eqdr_document {
  eqdr::ModelDocument doc;
};

struct eqdr_report {
  eqdr::Report report;
};

namespace {

thread_local std::string last_error;

eqdr_status fail(eqdr_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class F>
eqdr_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const eqdr::ParseError& e) {
    return fail(EQDR_PARSE_ERROR, e.what());
  } catch (const eqdr::ValidationError& e) {
    return fail(EQDR_CHECK_FAILED, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(EQDR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(EQDR_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(EQDR_INTERNAL_ERROR, e.what());
  }
}

std::optional<std::string> opt(const char* s) {
  if (!s) return std::nullopt;
  return std::string(s);
}

eqdr::CommandOptions convert(const eqdr_options& o) {
  eqdr::CommandOptions out;
  out.command = o.command ? o.command : "";
  out.builtin = opt(o.builtin);
  out.model_path = opt(o.model_path);
  out.lie = opt(o.lie);
  out.max_degree = o.max_degree;
  out.poly = opt(o.poly);
  out.element = opt(o.element);
  if (o.direction) out.direction = o.direction;
  out.connection = opt(o.connection);
  out.base = o.base != 0;
  out.timing = o.timing != 0;
  return out;
}

eqdr_status store_document(eqdr::ModelDocument doc, eqdr_document** out) {
  *out = new eqdr_document{std::move(doc)};
  return EQDR_OK;
}

eqdr_status store_report(eqdr::Report report, eqdr_report** out) {
  const auto code = static_cast<eqdr_status>(report.exit_code);
  if (code != EQDR_OK) last_error = report.error;
  *out = new eqdr_report{std::move(report)};
  return code;
}

}  // namespace

extern "C" {

void eqdr_options_init(eqdr_options* options) {
  if (!options) return;
  *options = eqdr_options{};
  options->max_degree = 8;
  options->direction = "to-weil";
}

const char* eqdr_last_error(void) { return last_error.c_str(); }

void eqdr_string_free(char* text) { std::free(text); }

size_t eqdr_builtin_count(void) { return eqdr::builtin_names().size(); }

const char* eqdr_builtin_name(size_t index) {
  const auto& names = eqdr::builtin_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

size_t eqdr_command_count(void) { return eqdr::command_names().size(); }

const char* eqdr_command_name(size_t index) {
  const auto& names = eqdr::command_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

eqdr_status eqdr_document_from_builtin(const char* name, eqdr_document** out) {
  if (!name || !out) return fail(EQDR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { return store_document(eqdr::builtin_document(name), out); });
}

eqdr_status eqdr_document_parse(const char* text, eqdr_document** out) {
  if (!text || !out) return fail(EQDR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { return store_document(eqdr::parse_model(text), out); });
}

eqdr_status eqdr_document_load(const char* path, eqdr_document** out) {
  if (!path || !out) return fail(EQDR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { return store_document(eqdr::load_model(path), out); });
}

eqdr_status eqdr_document_serialize(const eqdr_document* doc, char** out) {
  if (!doc || !out) return fail(EQDR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = copy_string(eqdr::serialize_model(doc->doc));
    return *out ? EQDR_OK : fail(EQDR_INTERNAL_ERROR, "out of memory");
  });
}

int eqdr_document_equal(const eqdr_document* a, const eqdr_document* b) {
  if (!a || !b) return 0;
  return a->doc == b->doc ? 1 : 0;
}

void eqdr_document_free(eqdr_document* doc) { delete doc; }

eqdr_status eqdr_execute(const eqdr_options* options, eqdr_report** out) {
  if (!options || !out) return fail(EQDR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { return store_report(eqdr::run_command(convert(*options)), out); });
}

eqdr_status eqdr_execute_document(const eqdr_document* doc, const char* label, const eqdr_options* options,
                                  eqdr_report** out) {
  if (!doc || !options || !out) return fail(EQDR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    return store_report(eqdr::run_on_document(doc->doc, label ? label : "document", convert(*options)), out);
  });
}

eqdr_status eqdr_report_render(const eqdr_report* report, eqdr_format format, char** out) {
  if (!report || !out) return fail(EQDR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const std::string text =
        format == EQDR_FORMAT_MACHINE ? report->report.render_machine() : report->report.render_human();
    *out = copy_string(text);
    return *out ? EQDR_OK : fail(EQDR_INTERNAL_ERROR, "out of memory");
  });
}

int eqdr_report_exit_code(const eqdr_report* report) {
  return report ? static_cast<int>(report->report.exit_code) : static_cast<int>(EQDR_INVALID_ARGUMENT);
}

const char* eqdr_report_error(const eqdr_report* report) { return report ? report->report.error.c_str() : ""; }

void eqdr_report_free(eqdr_report* report) { delete report; }

}  // extern "C"
