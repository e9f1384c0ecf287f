#pragma once

// Text formats: model documents, linear combinations, Weil/Cartan model
// elements and polynomials on g. The grammar is in docs/model-format.md.

#include "eqdr/chernweil.hpp"
#include "eqdr/eqmodels.hpp"
#include "eqdr/gca.hpp"
#include "eqdr/sdga.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace eqdr {

struct ModelDocument {
  AnyModel model;
  std::optional<GValued> connection;    // bundles only
  std::optional<GcaElement> polynomial;  // in x1..xn, n = dim g

  bool is_bundle() const { return std::holds_alternative<BundleModel>(model); }
  const SDgaModel& total() const;
  const LieAlgebraData& s() const { return total().s(); }

  friend bool operator==(const ModelDocument& a, const ModelDocument& b);
};

/// Throws ParseError (with line and column) for malformed text and
/// ValidationError when the document has no unit or fails the structural
/// checks of SDgaModel. Algebraic axioms are not checked here.
ModelDocument parse_model(std::string_view text);
/// Reads the file; an unreadable file is a ParseError.
ModelDocument load_model(const std::string& path);
/// Canonical text. parse_model(serialize_model(doc)) == doc.
std::string serialize_model(const ModelDocument& doc);

/// The builtin model; bundles come with their standard connection
/// (beta + 3/2 alpha on the flat example, beta on the Hopf examples).
/// Throws std::invalid_argument for an unknown name.
ModelDocument builtin_document(const std::string& name);

/// A file holding a single "lie_algebra ... end" section (the _s and _g
/// spellings are accepted too).
LieAlgebraData parse_lie_algebra(std::string_view text);
LieAlgebraData load_lie_algebra(const std::string& path);

/// "beta + 3/2*alpha" over the basis of m. A bare rational is a multiple of
/// the unit.
RatVector parse_combination(const SDgaModel& m, std::string_view text);

/// "u1^2*theta1*alpha - 3/2*u1" in W(s) (x) A. Factors are multiplied left
/// to right, so "alpha*theta1" is -theta1*alpha.
WeilModelElement parse_element(const WeilModel& space, std::string_view text);

/// Polynomial in x1..xn with +, -, *, ^, rational literals and parentheses.
GcaElement parse_polynomial(std::string_view text, std::size_t n);
/// Lower degree first, higher powers of earlier variables first.
std::string format_polynomial(const GcaElement& f);

/// True for names of the form u<digits> or theta<digits>, which would be
/// ambiguous in element text.
bool is_reserved_name(std::string_view name);

}  // namespace eqdr
