#include "eqdr/ratlin.hpp"

#include "eqdr/errors.hpp"

#include <algorithm>
#include <cctype>

namespace eqdr {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

Rat parse_rat(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw ParseError("not a rational literal: '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rat r(negative ? mpz_class(-n) : n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& value) { return value.get_str(); }

bool is_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

std::string format_sum(const std::vector<std::pair<std::string, Rat>>& terms) {
  std::string out;
  for (const auto& [monomial, coefficient] : terms) {
    if (coefficient == 0) continue;
    const bool negative = coefficient < 0;
    const Rat magnitude = negative ? Rat(-coefficient) : coefficient;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (monomial.empty()) {
      out += magnitude.get_str();
    } else if (magnitude == 1) {
      out += monomial;
    } else {
      out += magnitude.get_str() + "*" + monomial;
    }
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------- RatMatrix

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

RatMatrix RatMatrix::from_columns(std::size_t rows, std::span<const RatVector> columns) {
  RatMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) {
      if (columns[c][r] != 0) m.entries_.emplace(Index{r, c}, columns[c][r]);
    }
  }
  return m;
}

void RatMatrix::check(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("RatMatrix index out of range");
}

Rat RatMatrix::at(std::size_t r, std::size_t c) const {
  check(r, c);
  auto it = entries_.find({r, c});
  return it == entries_.end() ? Rat(0) : it->second;
}

void RatMatrix::set(std::size_t r, std::size_t c, const Rat& value) {
  check(r, c);
  if (value == 0) {
    entries_.erase({r, c});
  } else {
    entries_[{r, c}] = value;
  }
}

void RatMatrix::add(std::size_t r, std::size_t c, const Rat& value) {
  check(r, c);
  if (value == 0) return;
  auto [it, inserted] = entries_.try_emplace({r, c}, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) entries_.erase(it);
  }
}

RatVector RatMatrix::apply(const RatVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("RatMatrix::apply: dimension mismatch");
  RatVector out(rows_);
  for (const auto& [idx, value] : entries_) out[idx.first] += value * v[idx.second];
  return out;
}

RatVector RatMatrix::column(std::size_t c) const {
  if (c >= cols_) throw std::out_of_range("RatMatrix column out of range");
  RatVector out(rows_);
  for (const auto& [idx, value] : entries_) {
    if (idx.second == c) out[idx.first] = value;
  }
  return out;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (const auto& [idx, value] : entries_) t.entries_.emplace(Index{idx.second, idx.first}, value);
  return t;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("RatMatrix +: shape mismatch");
  RatMatrix out = a;
  for (const auto& [idx, value] : b.entries_) out.add(idx.first, idx.second, value);
  return out;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) { return a + Rat(-1) * b; }

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("RatMatrix *: shape mismatch");
  // Row-indexed view of b.
  std::vector<std::vector<std::pair<std::size_t, Rat>>> brows(b.rows_);
  for (const auto& [idx, value] : b.entries_) brows[idx.first].emplace_back(idx.second, value);
  RatMatrix out(a.rows_, b.cols_);
  for (const auto& [idx, value] : a.entries_) {
    for (const auto& [col, bv] : brows[idx.second]) out.add(idx.first, col, value * bv);
  }
  return out;
}

RatMatrix operator*(const Rat& s, const RatMatrix& a) {
  RatMatrix out(a.rows_, a.cols_);
  if (s == 0) return out;
  for (const auto& [idx, value] : a.entries_) out.entries_.emplace(idx, s * value);
  return out;
}

RatMatrix RatMatrix::vstack(std::span<const RatMatrix> blocks) {
  if (blocks.empty()) return {};
  const std::size_t cols = blocks.front().cols();
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw std::invalid_argument("vstack: column mismatch");
    rows += b.rows();
  }
  RatMatrix out(rows, cols);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (const auto& [idx, value] : b.entries_) out.entries_.emplace(Index{idx.first + offset, idx.second}, value);
    offset += b.rows();
  }
  return out;
}

// ------------------------------------------------------------- EchelonBasis

EchelonBasis::Row EchelonBasis::reduce_row(Row row) const {
  // Rows are fully reduced, so a single pass over pivots in ascending order
  // suffices: eliminating pivot p never reintroduces an earlier pivot.
  for (const auto& [pivot, basis_row] : rows_) {
    auto it = row.find(pivot);
    if (it == row.end()) continue;
    const Rat factor = it->second;
    for (const auto& [col, value] : basis_row) {
      auto [jt, inserted] = row.try_emplace(col, -factor * value);
      if (!inserted) {
        jt->second -= factor * value;
        if (jt->second == 0) row.erase(jt);
      }
    }
  }
  return row;
}

bool EchelonBasis::insert(const RatVector& v) {
  if (v.size() != dimension_) throw std::invalid_argument("EchelonBasis::insert: dimension mismatch");
  Row row;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) row.emplace(i, v[i]);
  }
  row = reduce_row(std::move(row));
  if (row.empty()) return false;

  const std::size_t pivot = row.begin()->first;
  const Rat lead = row.begin()->second;
  for (auto& [col, value] : row) value /= lead;

  // Keep the basis fully reduced: clear the new pivot from existing rows.
  for (auto& [p, other] : rows_) {
    auto it = other.find(pivot);
    if (it == other.end()) continue;
    const Rat factor = it->second;
    for (const auto& [col, value] : row) {
      auto [jt, inserted] = other.try_emplace(col, -factor * value);
      if (!inserted) {
        jt->second -= factor * value;
        if (jt->second == 0) other.erase(jt);
      }
    }
  }
  rows_.emplace(pivot, std::move(row));
  return true;
}

RatVector EchelonBasis::reduce(const RatVector& v) const {
  if (v.size() != dimension_) throw std::invalid_argument("EchelonBasis::reduce: dimension mismatch");
  Row row;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) row.emplace(i, v[i]);
  }
  row = reduce_row(std::move(row));
  RatVector out(dimension_);
  for (const auto& [col, value] : row) out[col] = value;
  return out;
}

bool EchelonBasis::contains(const RatVector& v) const { return is_zero(reduce(v)); }

// ---------------------------------------------------------------- functions

namespace {

using SparseRow = std::map<std::size_t, Rat>;

std::vector<SparseRow> matrix_rows(const RatMatrix& m) {
  std::vector<SparseRow> rows(m.rows());
  for (const auto& [idx, value] : m.entries()) rows[idx.first].emplace(idx.second, value);
  return rows;
}

// Full RREF of the given rows over `cols` columns; returns pivot -> row.
std::map<std::size_t, SparseRow> rref(std::vector<SparseRow> rows) {
  std::map<std::size_t, SparseRow> done;
  for (auto& row : rows) {
    for (const auto& [pivot, basis_row] : done) {
      auto it = row.find(pivot);
      if (it == row.end()) continue;
      const Rat factor = it->second;
      for (const auto& [col, value] : basis_row) {
        auto [jt, inserted] = row.try_emplace(col, -factor * value);
        if (!inserted) {
          jt->second -= factor * value;
          if (jt->second == 0) row.erase(jt);
        }
      }
    }
    if (row.empty()) continue;
    const std::size_t pivot = row.begin()->first;
    const Rat lead = row.begin()->second;
    for (auto& [col, value] : row) value /= lead;
    for (auto& [p, other] : done) {
      auto it = other.find(pivot);
      if (it == other.end()) continue;
      const Rat factor = it->second;
      for (const auto& [col, value] : row) {
        auto [jt, inserted] = other.try_emplace(col, -factor * value);
        if (!inserted) {
          jt->second -= factor * value;
          if (jt->second == 0) other.erase(jt);
        }
      }
    }
    done.emplace(pivot, std::move(row));
  }
  return done;
}

}  // namespace

std::size_t rank(const RatMatrix& m) { return rref(matrix_rows(m)).size(); }

std::size_t span_rank(std::span<const RatVector> vectors, std::size_t dimension) {
  EchelonBasis basis(dimension);
  for (const auto& v : vectors) basis.insert(v);
  return basis.rank();
}

std::vector<RatVector> kernel_basis(const RatMatrix& m) {
  const auto reduced = rref(matrix_rows(m));
  std::vector<RatVector> out;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (reduced.contains(free)) continue;
    RatVector v(m.cols());
    v[free] = 1;
    for (const auto& [pivot, row] : reduced) {
      auto it = row.find(free);
      if (it != row.end()) v[pivot] = -it->second;
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<RatVector> solve(const RatMatrix& m, const RatVector& rhs) {
  if (rhs.size() != m.rows()) throw std::invalid_argument("solve: rhs dimension mismatch");
  auto rows = matrix_rows(m);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rhs[r] != 0) rows[r].emplace(m.cols(), rhs[r]);
  }
  const auto reduced = rref(std::move(rows));
  RatVector x(m.cols());
  for (const auto& [pivot, row] : reduced) {
    if (pivot == m.cols()) return std::nullopt;
    auto it = row.find(m.cols());
    if (it != row.end()) x[pivot] = it->second;
  }
  return x;
}

QuotientBasis quotient_basis(std::span<const RatVector> cycles,
                             std::span<const RatVector> boundaries,
                             std::size_t dimension) {
  EchelonBasis cycle_span(dimension);
  for (const auto& c : cycles) cycle_span.insert(c);
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    if (!cycle_span.contains(boundaries[i])) {
      throw InvalidComplexError("boundary #" + std::to_string(i) + " is not in the span of the cycles");
    }
  }

  EchelonBasis running(dimension);
  for (const auto& b : boundaries) running.insert(b);
  QuotientBasis out;
  for (const auto& c : cycles) {
    if (running.insert(c)) out.representatives.push_back(c);
  }
  out.dimension = out.representatives.size();
  return out;
}

}  // namespace eqdr
