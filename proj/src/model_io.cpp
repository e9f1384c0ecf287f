#include "eqdr/model_io.hpp"

#include "eqdr/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace eqdr {

namespace {

// Character cursor over one line that reports 1-based positions.
class Cursor {
public:
  Cursor(std::string_view text, std::size_t line, std::size_t first_column)
      : text_(text), line_(line), first_column_(first_column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return first_column_ + pos_; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'" + found());
  }
  bool at_identifier() {
    const char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  bool at_number() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

  std::string identifier() {
    if (!at_identifier()) fail("expected a name" + found());
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  /// Unsigned "p" or "p/q"; the sign is handled by the caller.
  Rat rational() {
    if (!at_number()) fail("expected a number" + found());
    const std::size_t start = pos_;
    const std::size_t column = this->column();
    digits();
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected a denominator");
      digits();
    }
    try {
      return parse_rat(text_.substr(start, pos_ - start));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_, column);
    }
  }

  /// Signed rational literal such as "-3/2".
  Rat signed_rational() {
    const bool negative = accept('-');
    if (!negative) accept('+');
    const Rat r = rational();
    return negative ? Rat(-r) : r;
  }

  std::uint32_t integer() {
    if (!at_number()) fail("expected an integer" + found());
    const std::size_t start = pos_;
    digits();
    const std::string_view text = text_.substr(start, pos_ - start);
    if (text.size() > 9) fail("integer too large");
    return static_cast<std::uint32_t>(std::stoul(std::string(text)));
  }

  std::uint32_t exponent() {
    const std::size_t column = rest_column();
    const std::uint32_t value = integer();
    if (value > 64) throw ParseError("exponent larger than 64", line_, column);
    return value;
  }

  std::size_t index_1based(std::size_t bound, const std::string& what) {
    const std::size_t column = rest_column();
    const std::uint32_t value = integer();
    if (value < 1 || value > bound) {
      throw ParseError(what + " index " + std::to_string(value) + " out of range 1.." + std::to_string(bound), line_,
                       column);
    }
    return value - 1;
  }

  std::string rest() {
    skip_space();
    std::string_view r = text_.substr(pos_);
    while (!r.empty() && std::isspace(static_cast<unsigned char>(r.back()))) r.remove_suffix(1);
    return std::string(r);
  }
  std::size_t rest_column() {
    skip_space();
    return column();
  }

  void expect_end() {
    if (!done()) fail("unexpected text" + found());
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, column()); }

private:
  void digits() {
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  std::string found() const {
    if (pos_ >= text_.size()) return ", found end of line";
    return std::string(", found '") + text_[pos_] + "'";
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t first_column_;
  std::size_t pos_ = 0;
};

// ------------------------------------------------------- sums of products

struct Factor {
  std::string name;
  std::uint32_t power = 1;
  std::size_t column = 0;
};

struct Term {
  Rat coefficient = 1;
  std::vector<Factor> factors;
};

std::vector<Term> parse_terms(Cursor& cur) {
  std::vector<Term> terms;
  bool negative = false;
  if (cur.accept('-')) {
    negative = true;
  } else {
    cur.accept('+');
  }
  while (true) {
    Term term;
    if (negative) term.coefficient = -1;
    do {
      if (cur.at_number()) {
        term.coefficient *= cur.rational();
      } else if (cur.at_identifier()) {
        Factor f;
        f.column = cur.column();
        f.name = cur.identifier();
        if (cur.accept('^')) f.power = cur.exponent();
        term.factors.push_back(std::move(f));
      } else {
        cur.fail(cur.done() ? "expected a term, found end of line" : std::string("expected a term, found '") + cur.peek() + "'");
      }
    } while (cur.accept('*'));
    terms.push_back(std::move(term));
    if (cur.done()) break;
    if (cur.accept('+')) {
      negative = false;
    } else if (cur.accept('-')) {
      negative = true;
    } else {
      cur.fail(std::string("expected '+', '-' or '*', found '") + cur.peek() + "'");
    }
  }
  return terms;
}

RatVector combination_at(const SDgaModel& m, Cursor& cur) {
  RatVector v = m.zero();
  for (const Term& term : parse_terms(cur)) {
    if (term.factors.size() > 1) throw ParseError("expected a linear combination of basis elements", cur.line(), term.factors[1].column);
    if (term.factors.empty()) {
      v[m.unit()] += term.coefficient;
      continue;
    }
    const Factor& f = term.factors[0];
    if (f.power != 1) throw ParseError("powers are not allowed in a linear combination", cur.line(), f.column);
    const auto index = m.find(f.name);
    if (!index) throw ParseError("unknown basis element '" + f.name + "'", cur.line(), f.column);
    v[*index] += term.coefficient;
  }
  return v;
}

// ------------------------------------------------------------- polynomials

class PolynomialParser {
public:
  PolynomialParser(Cursor& cur, std::size_t n) : cur_(cur), vars_(polynomial_variables(n)), n_(n) {}

  GcaElement parse() {
    GcaElement out = sum();
    cur_.expect_end();
    return out;
  }

private:
  GcaElement sum() {
    GcaElement out = product();
    while (true) {
      if (cur_.accept('+')) {
        out += product();
      } else if (cur_.accept('-')) {
        out -= product();
      } else {
        return out;
      }
    }
  }

  GcaElement product() {
    GcaElement out = unary();
    while (cur_.accept('*')) out = out * unary();
    return out;
  }

  GcaElement unary() {
    if (cur_.accept('-')) return -unary();
    if (cur_.accept('+')) return unary();
    return power();
  }

  GcaElement power() {
    GcaElement base = primary();
    if (!cur_.accept('^')) return base;
    const std::uint32_t e = cur_.exponent();
    GcaElement out = GcaElement::constant(vars_, 1);
    for (std::uint32_t i = 0; i < e; ++i) out = out * base;
    return out;
  }

  GcaElement primary() {
    if (cur_.accept('(')) {
      GcaElement inner = sum();
      cur_.expect(')');
      return inner;
    }
    if (cur_.at_number()) return GcaElement::constant(vars_, cur_.rational());
    if (cur_.at_identifier()) {
      const std::size_t column = cur_.column();
      const std::string name = cur_.identifier();
      if (name.size() > 1 && name[0] == 'x' && std::all_of(name.begin() + 1, name.end(), ::isdigit)) {
        const unsigned long k = std::stoul(name.substr(1));
        if (k >= 1 && k <= n_) return GcaElement::generator(vars_, k - 1);
        throw ParseError("variable " + name + " out of range x1..x" + std::to_string(n_), cur_.line(), column);
      }
      throw ParseError("unknown variable '" + name + "'", cur_.line(), column);
    }
    cur_.fail(cur_.done() ? "expected a polynomial term, found end of input"
                          : std::string("expected a polynomial term, found '") + cur_.peek() + "'");
  }

  Cursor& cur_;
  GeneratorSetPtr vars_;
  std::size_t n_;
};

// -------------------------------------------------------------- documents

struct Located {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

struct RawLie {
  std::optional<std::size_t> dimension;
  std::vector<std::string> names;
  std::vector<BracketTriple> brackets;
  std::set<std::pair<std::size_t, std::size_t>> seen;
};

struct RawOperatorEntry {
  std::size_t index = 0;  // 0-based; unused for d
  std::size_t index_line = 0;
  std::size_t index_column = 0;
  Located target;
  Located image;
};

struct RawProduct {
  Located left, right, image;
};

struct RawDocument {
  std::optional<RawLie> lie_s, lie_g;
  bool has_model = false;
  std::vector<BasisElement> basis;
  std::vector<std::size_t> basis_lines;
  std::optional<Located> unit;
  std::vector<RawProduct> products;
  std::vector<RawOperatorEntry> d, iota_s, iota_g;
  std::optional<std::size_t> connection_line;
  std::vector<RawOperatorEntry> components;
  std::optional<Located> polynomial;
};

Cursor cursor_at(const Located& x) { return Cursor(x.text, x.line, x.column); }

LieAlgebraData build_lie(const RawLie& raw) {
  const std::size_t n = raw.dimension.value_or(0);
  return LieAlgebraData::from_brackets(n, raw.brackets, raw.names);
}

void parse_lie_line(RawLie& lie, Cursor& cur, const std::string& keyword, std::size_t keyword_column) {
  if (keyword == "dimension") {
    if (lie.dimension) cur.fail("dimension given twice");
    lie.dimension = cur.integer();
  } else if (keyword == "names") {
    if (!lie.dimension) cur.fail("names must follow dimension");
    if (!lie.names.empty()) cur.fail("names given twice");
    std::set<std::string> unique;
    while (!cur.done()) {
      const std::size_t column = cur.column();
      std::string name = cur.identifier();
      if (!unique.insert(name).second) throw ParseError("duplicate generator name '" + name + "'", cur.line(), column);
      lie.names.push_back(std::move(name));
    }
    if (lie.names.size() != *lie.dimension) cur.fail("expected " + std::to_string(*lie.dimension) + " names");
  } else if (keyword == "bracket") {
    if (!lie.dimension) cur.fail("bracket must follow dimension");
    const std::size_t n = *lie.dimension;
    const std::size_t column = cur.rest_column();
    const std::size_t i = cur.index_1based(n, "bracket");
    const std::size_t j = cur.index_1based(n, "bracket");
    const std::size_t k = cur.index_1based(n, "bracket");
    if (i >= j) throw ParseError("bracket i j k value requires i < j", cur.line(), column);
    const Rat value = cur.signed_rational();
    cur.expect_end();
    if (!lie.seen.insert({i * n + j, k}).second) throw ParseError("bracket given twice", cur.line(), column);
    if (value != 0) lie.brackets.push_back({i, j, k, value});
    return;
  } else {
    throw ParseError("unknown Lie algebra entry '" + keyword + "'", cur.line(), keyword_column);
  }
  cur.expect_end();
}

Located located_name(Cursor& cur) {
  Located out;
  out.line = cur.line();
  cur.skip_space();
  out.column = cur.column();
  out.text = cur.identifier();
  return out;
}

Located located_rest(Cursor& cur) {
  Located out;
  out.line = cur.line();
  out.column = cur.rest_column();
  out.text = cur.rest();
  if (out.text.empty()) cur.fail("expected a linear combination");
  return out;
}

void parse_model_line(RawDocument& doc, Cursor& cur, const std::string& keyword, std::size_t keyword_column) {
  if (keyword == "basis") {
    const std::size_t column = cur.rest_column();
    std::string name = cur.identifier();
    if (is_reserved_name(name)) throw ParseError("basis name '" + name + "' is reserved", cur.line(), column);
    for (const auto& b : doc.basis) {
      if (b.name == name) throw ParseError("duplicate basis element '" + name + "'", cur.line(), column);
    }
    const int degree = static_cast<int>(cur.integer());
    cur.expect_end();
    doc.basis.push_back({std::move(name), degree});
    doc.basis_lines.push_back(cur.line());
  } else if (keyword == "unit") {
    if (doc.unit) cur.fail("unit given twice");
    doc.unit = located_name(cur);
    cur.expect_end();
  } else if (keyword == "mul") {
    RawProduct p;
    p.left = located_name(cur);
    p.right = located_name(cur);
    cur.expect('=');
    p.image = located_rest(cur);
    doc.products.push_back(std::move(p));
  } else if (keyword == "d" || keyword == "iota_s" || keyword == "iota_g") {
    RawOperatorEntry e;
    if (keyword != "d") {
      e.index_line = cur.line();
      e.index_column = cur.rest_column();
      const std::uint32_t value = cur.integer();
      if (value < 1) throw ParseError("indices start at 1", e.index_line, e.index_column);
      e.index = value - 1;
    }
    e.target = located_name(cur);
    cur.expect('=');
    e.image = located_rest(cur);
    if (keyword == "d") {
      doc.d.push_back(std::move(e));
    } else if (keyword == "iota_s") {
      doc.iota_s.push_back(std::move(e));
    } else {
      doc.iota_g.push_back(std::move(e));
    }
  } else {
    throw ParseError("unknown model entry '" + keyword + "'", cur.line(), keyword_column);
  }
}

void parse_connection_line(RawDocument& doc, Cursor& cur, const std::string& keyword, std::size_t keyword_column) {
  if (keyword != "component") throw ParseError("unknown connection entry '" + keyword + "'", cur.line(), keyword_column);
  RawOperatorEntry e;
  e.index_line = e.target.line = cur.line();
  e.index_column = e.target.column = cur.rest_column();
  const std::uint32_t value = cur.integer();
  if (value < 1) throw ParseError("indices start at 1", e.index_line, e.index_column);
  e.index = value - 1;
  cur.expect('=');
  e.image = located_rest(cur);
  doc.components.push_back(std::move(e));
}

RawDocument scan(std::string_view text) {
  enum class Section { none, lie_s, lie_g, model, connection };
  RawDocument doc;
  Section section = Section::none;
  std::size_t section_line = 0;
  std::size_t line_no = 0;

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    Cursor cur(line, line_no, 1);
    if (cur.done()) {
      if (end == text.size()) break;
      continue;
    }
    const std::size_t keyword_column = cur.rest_column();
    const std::string keyword = cur.identifier();
    auto open = [&](Section s, bool already) {
      if (section != Section::none) throw ParseError("section '" + keyword + "' opened inside another section", line_no, keyword_column);
      if (already) throw ParseError("section '" + keyword + "' given twice", line_no, keyword_column);
      cur.expect_end();
      section = s;
      section_line = line_no;
    };

    if (keyword == "end") {
      if (section == Section::none) throw ParseError("'end' without an open section", line_no, keyword_column);
      cur.expect_end();
      section = Section::none;
    } else if (section == Section::lie_s) {
      parse_lie_line(*doc.lie_s, cur, keyword, keyword_column);
    } else if (section == Section::lie_g) {
      parse_lie_line(*doc.lie_g, cur, keyword, keyword_column);
    } else if (section == Section::model) {
      parse_model_line(doc, cur, keyword, keyword_column);
    } else if (section == Section::connection) {
      parse_connection_line(doc, cur, keyword, keyword_column);
    } else if (keyword == "lie_algebra_s") {
      open(Section::lie_s, doc.lie_s.has_value());
      doc.lie_s.emplace();
    } else if (keyword == "lie_algebra_g") {
      open(Section::lie_g, doc.lie_g.has_value());
      doc.lie_g.emplace();
    } else if (keyword == "model") {
      open(Section::model, doc.has_model);
      doc.has_model = true;
    } else if (keyword == "connection") {
      open(Section::connection, doc.connection_line.has_value());
      doc.connection_line = line_no;
    } else if (keyword == "polynomial") {
      if (doc.polynomial) throw ParseError("polynomial given twice", line_no, keyword_column);
      Located p;
      p.line = line_no;
      p.column = cur.rest_column();
      p.text = cur.rest();
      if (p.text.empty()) throw ParseError("expected a polynomial", line_no, p.column);
      doc.polynomial = std::move(p);
    } else {
      throw ParseError("unknown section '" + keyword + "'", line_no, keyword_column);
    }
    if (end == text.size()) break;
  }
  if (section != Section::none) throw ParseError("section opened here is not closed with 'end'", section_line, 1);
  for (const RawLie* lie : {doc.lie_s ? &*doc.lie_s : nullptr, doc.lie_g ? &*doc.lie_g : nullptr}) {
    if (lie && !lie->dimension) throw ParseError("Lie algebra section without a dimension");
  }
  if (!doc.has_model) throw ParseError("missing model section");
  return doc;
}

std::size_t resolve_name(const std::vector<BasisElement>& basis, const Located& x) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].name == x.text) return i;
  }
  throw ParseError("unknown basis element '" + x.text + "'", x.line, x.column);
}

// Builds a square operator from "target = image" entries; `index` selects
// one family member when the entries carry indices.
RatMatrix build_operator(const SDgaModel& shape, const std::vector<RawOperatorEntry>& entries,
                         std::optional<std::size_t> index) {
  const std::size_t n = shape.size();
  RatMatrix m(n, n);
  std::set<std::size_t> seen;
  for (const auto& e : entries) {
    if (index && e.index != *index) continue;
    const std::size_t column = resolve_name(shape.basis(), e.target);
    if (!seen.insert(column).second) throw ParseError("image of '" + e.target.text + "' given twice", e.target.line, e.target.column);
    Cursor cur = cursor_at(e.image);
    const RatVector v = combination_at(shape, cur);
    for (std::size_t r = 0; r < n; ++r) m.set(r, column, v[r]);
  }
  return m;
}

void check_indices(const std::vector<RawOperatorEntry>& entries, std::size_t bound, const std::string& what) {
  for (const auto& e : entries) {
    if (e.index >= bound) {
      throw ParseError(what + " index " + std::to_string(e.index + 1) + " out of range 1.." + std::to_string(bound),
                       e.index_line, e.index_column);
    }
  }
}

}  // namespace

// ----------------------------------------------------------- public API

const SDgaModel& ModelDocument::total() const {
  if (const auto* b = std::get_if<BundleModel>(&model)) return b->total();
  return std::get<SDgaModel>(model);
}

bool operator==(const ModelDocument& a, const ModelDocument& b) {
  if (!(a.model == b.model) || a.connection != b.connection) return false;
  if (a.polynomial.has_value() != b.polynomial.has_value()) return false;
  if (!a.polynomial) return true;
  return a.polynomial->universe()->size() == b.polynomial->universe()->size() &&
         a.polynomial->terms() == b.polynomial->terms();
}

bool is_reserved_name(std::string_view name) {
  for (std::string_view prefix : {std::string_view("u"), std::string_view("theta")}) {
    if (name.size() > prefix.size() && name.substr(0, prefix.size()) == prefix &&
        std::all_of(name.begin() + static_cast<std::ptrdiff_t>(prefix.size()), name.end(), ::isdigit)) {
      return true;
    }
  }
  return false;
}

ModelDocument parse_model(std::string_view text) {
  const RawDocument raw = scan(text);

  if (!raw.unit) throw ValidationError("the model has no unit (add a degree-0 basis element and a 'unit' line)");
  if (raw.basis.empty()) throw ValidationError("the model has an empty basis");

  const LieAlgebraData s = raw.lie_s ? build_lie(*raw.lie_s) : LieAlgebraData::abelian(0);
  const std::size_t n = raw.basis.size();
  const std::size_t unit = resolve_name(raw.basis, *raw.unit);

  check_indices(raw.iota_s, s.dimension(), "iota_s");
  if (!raw.iota_g.empty() && !raw.lie_g) {
    throw ParseError("iota_g entries require a lie_algebra_g section", raw.iota_g[0].target.line, raw.iota_g[0].target.column);
  }

  // A shape-only model is used to resolve names in linear combinations.
  std::vector<std::vector<RatVector>> empty_table(n, std::vector<RatVector>(n, RatVector(n)));
  std::vector<RatMatrix> zero_iota(s.dimension(), RatMatrix(n, n));
  const SDgaModel shape(raw.basis, unit, empty_table, RatMatrix(n, n), s, zero_iota);

  std::vector<std::vector<RatVector>> table(n, std::vector<RatVector>(n, RatVector(n)));
  std::vector<std::vector<bool>> explicit_entry(n, std::vector<bool>(n, false));
  for (const auto& p : raw.products) {
    const std::size_t i = resolve_name(raw.basis, p.left);
    const std::size_t j = resolve_name(raw.basis, p.right);
    if (i == unit || j == unit) throw ParseError("products with the unit are implicit", p.left.line, p.left.column);
    if (explicit_entry[i][j]) throw ParseError("product " + p.left.text + " * " + p.right.text + " given twice", p.left.line, p.left.column);
    Cursor cur = cursor_at(p.image);
    table[i][j] = combination_at(shape, cur);
    explicit_entry[i][j] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    table[unit][i][i] = 1;
    table[i][unit][i] = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (!explicit_entry[i][j] || explicit_entry[j][i]) continue;
      RatVector mirrored = table[i][j];
      if ((raw.basis[i].degree * raw.basis[j].degree) % 2 != 0) {
        for (auto& x : mirrored) x = -x;
      }
      table[j][i] = std::move(mirrored);
    }
  }

  RatMatrix d = build_operator(shape, raw.d, std::nullopt);
  std::vector<RatMatrix> iota_s;
  for (std::size_t i = 0; i < s.dimension(); ++i) iota_s.push_back(build_operator(shape, raw.iota_s, i));
  SDgaModel total(raw.basis, unit, std::move(table), std::move(d), s, std::move(iota_s));

  ModelDocument doc{total, std::nullopt, std::nullopt};
  if (raw.lie_g) {
    const LieAlgebraData g = build_lie(*raw.lie_g);
    check_indices(raw.iota_g, g.dimension(), "iota_g");
    std::vector<RatMatrix> iota_g;
    for (std::size_t a = 0; a < g.dimension(); ++a) iota_g.push_back(build_operator(shape, raw.iota_g, a));
    doc.model = BundleModel(std::move(total), g, std::move(iota_g));

    if (raw.connection_line) {
      check_indices(raw.components, g.dimension(), "connection component");
      GValued theta(g.dimension(), shape.zero());
      std::set<std::size_t> seen;
      for (const auto& e : raw.components) {
        if (!seen.insert(e.index).second) throw ParseError("component given twice", e.target.line, e.target.column);
        Cursor cur = cursor_at(e.image);
        theta[e.index] = combination_at(shape, cur);
      }
      doc.connection = std::move(theta);
    }
    if (raw.polynomial) {
      Cursor cur = cursor_at(*raw.polynomial);
      doc.polynomial = PolynomialParser(cur, g.dimension()).parse();
    }
  } else {
    if (raw.connection_line) throw ParseError("a connection requires a lie_algebra_g section", *raw.connection_line, 1);
    if (raw.polynomial) throw ParseError("a polynomial requires a lie_algebra_g section", raw.polynomial->line, 1);
  }
  return doc;
}

ModelDocument load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read model file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model(buffer.str());
}

namespace {

void write_lie(std::ostringstream& out, const std::string& title, const LieAlgebraData& lie) {
  out << title << "\n  dimension " << lie.dimension() << "\n";
  if (lie.names() != LieAlgebraData::abelian(lie.dimension()).names()) {
    out << "  names";
    for (const auto& name : lie.names()) out << " " << name;
    out << "\n";
  }
  for (const auto& t : lie.brackets()) {
    out << "  bracket " << t.i + 1 << " " << t.j + 1 << " " << t.k + 1 << " " << to_string(t.value) << "\n";
  }
  out << "end\n";
}

void write_operator(std::ostringstream& out, const SDgaModel& m, const RatMatrix& op, const std::string& prefix) {
  for (std::size_t j = 0; j < m.size(); ++j) {
    const RatVector image = op.column(j);
    if (is_zero(image)) continue;
    out << "  " << prefix << m.element(j).name << " = " << m.format(image) << "\n";
  }
}

}  // namespace

std::string serialize_model(const ModelDocument& doc) {
  std::ostringstream out;
  const SDgaModel& m = doc.total();
  const auto* bundle = std::get_if<BundleModel>(&doc.model);

  write_lie(out, "lie_algebra_s", m.s());
  if (bundle) write_lie(out, "lie_algebra_g", bundle->g());

  out << "model\n";
  for (const auto& b : m.basis()) out << "  basis " << b.name << " " << b.degree << "\n";
  out << "  unit " << m.element(m.unit()).name << "\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i; j < m.size(); ++j) {
      if (i == m.unit() || j == m.unit()) continue;
      const RatVector& ij = m.product(i, j);
      const RatVector& ji = m.product(j, i);
      if (is_zero(ij) && is_zero(ji)) continue;
      out << "  mul " << m.element(i).name << " " << m.element(j).name << " = " << m.format(ij) << "\n";
      RatVector mirrored = ij;
      if ((m.degree(i) * m.degree(j)) % 2 != 0) {
        for (auto& x : mirrored) x = -x;
      }
      if (i != j && mirrored != ji) {
        out << "  mul " << m.element(j).name << " " << m.element(i).name << " = " << m.format(ji) << "\n";
      }
    }
  }
  write_operator(out, m, m.d(), "d ");
  for (std::size_t i = 0; i < m.s_rank(); ++i) write_operator(out, m, m.iota_s(i), "iota_s " + std::to_string(i + 1) + " ");
  if (bundle) {
    for (std::size_t a = 0; a < bundle->g_rank(); ++a) {
      write_operator(out, m, bundle->iota_g(a), "iota_g " + std::to_string(a + 1) + " ");
    }
  }
  out << "end\n";

  if (doc.connection) {
    out << "connection\n";
    for (std::size_t a = 0; a < doc.connection->size(); ++a) {
      out << "  component " << a + 1 << " = " << m.format((*doc.connection)[a]) << "\n";
    }
    out << "end\n";
  }
  if (doc.polynomial) out << "polynomial " << format_polynomial(*doc.polynomial) << "\n";
  return out.str();
}

ModelDocument builtin_document(const std::string& name) {
  ModelDocument doc{builtin(name), std::nullopt, std::nullopt};
  if (doc.is_bundle()) {
    const SDgaModel& m = doc.total();
    RatVector theta = m.basis_vector(*m.find("beta"));
    if (name == "flat_circle_over_circle") theta[*m.find("alpha")] = Rat(3, 2);
    doc.connection = GValued{theta};
  }
  return doc;
}

RatVector parse_combination(const SDgaModel& m, std::string_view text) {
  Cursor cur(text, 1, 1);
  if (cur.done()) cur.fail("expected a linear combination");
  return combination_at(m, cur);
}

WeilModelElement parse_element(const WeilModel& space, std::string_view text) {
  Cursor cur(text, 1, 1);
  if (cur.done()) cur.fail("expected an element");
  const std::size_t l = space.rank();
  auto indexed = [&](const std::string& name, std::string_view prefix) -> std::optional<std::size_t> {
    if (!is_reserved_name(name) || name.substr(0, prefix.size()) != prefix) return std::nullopt;
    if (prefix == "u" && name.substr(0, 5) == "theta") return std::nullopt;
    return std::stoul(name.substr(prefix.size()));
  };

  WeilModelElement out;
  for (const Term& term : parse_terms(cur)) {
    WeilModelElement value = space.scalar(term.coefficient);
    for (const Factor& f : term.factors) {
      WeilModelElement factor;
      if (auto k = indexed(f.name, "theta")) {
        if (*k < 1 || *k > l) throw ParseError(f.name + " out of range theta1..theta" + std::to_string(l), 1, f.column);
        factor = space.theta(*k - 1);
      } else if (auto k = indexed(f.name, "u")) {
        if (*k < 1 || *k > l) throw ParseError(f.name + " out of range u1..u" + std::to_string(l), 1, f.column);
        factor = space.u(*k - 1);
      } else if (auto j = space.model().find(f.name)) {
        factor = space.basis(*j);
      } else {
        throw ParseError("unknown name '" + f.name + "'", 1, f.column);
      }
      for (std::uint32_t p = 0; p < f.power; ++p) value = space.multiply(value, factor);
    }
    out += value;
  }
  return out;
}

LieAlgebraData parse_lie_algebra(std::string_view text) {
  std::optional<RawLie> lie;
  bool open = false, closed = false;
  std::size_t line_no = 0, start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    Cursor cur(line, line_no, 1);
    if (cur.done()) continue;
    const std::size_t column = cur.rest_column();
    const std::string keyword = cur.identifier();
    if (closed) throw ParseError("text after the Lie algebra section", line_no, column);
    if (!open) {
      if (keyword != "lie_algebra" && keyword != "lie_algebra_s" && keyword != "lie_algebra_g") {
        throw ParseError("expected a lie_algebra section", line_no, column);
      }
      cur.expect_end();
      open = true;
      lie.emplace();
    } else if (keyword == "end") {
      cur.expect_end();
      closed = true;
    } else {
      parse_lie_line(*lie, cur, keyword, column);
    }
  }
  if (!closed) throw ParseError(open ? "Lie algebra section is not closed with 'end'" : "expected a lie_algebra section");
  if (!lie->dimension) throw ParseError("Lie algebra section without a dimension");
  return build_lie(*lie);
}

LieAlgebraData load_lie_algebra(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read Lie algebra file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_lie_algebra(buffer.str());
}

GcaElement parse_polynomial(std::string_view text, std::size_t n) {
  Cursor cur(text, 1, 1);
  return PolynomialParser(cur, n).parse();
}

std::string format_polynomial(const GcaElement& f) {
  const GeneratorSet& vars = *f.universe();
  std::vector<std::pair<Exponents, Rat>> ordered(f.terms().begin(), f.terms().end());
  std::stable_sort(ordered.begin(), ordered.end(), [&](const auto& a, const auto& b) {
    const int da = monomial_degree(vars, a.first), db = monomial_degree(vars, b.first);
    if (da != db) return da < db;
    return a.first > b.first;
  });
  std::vector<std::pair<std::string, Rat>> parts;
  for (const auto& [m, c] : ordered) {
    std::string text;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!text.empty()) text += "*";
      text += vars[i].name;
      if (m[i] > 1) text += "^" + std::to_string(m[i]);
    }
    parts.emplace_back(std::move(text), c);
  }
  return format_sum(parts);
}

}  // namespace eqdr
