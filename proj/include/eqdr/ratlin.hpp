#pragma once

// Exact linear algebra over Q. Everything here is a pure function of its
// arguments; pivots are always the first nonzero column so results are
// reproducible bit for bit.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eqdr {

using Rat = mpq_class;
using RatVector = std::vector<Rat>;

/// Parses "p/q" or an integer (optional leading '-'). Throws ParseError on
/// anything else, including a zero denominator.
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& value);

bool is_zero(const RatVector& v);

/// Renders sum of coefficient*monomial pairs as "3/2*a - b + 2". An empty
/// monomial string stands for the unit. Zero coefficients are skipped; an
/// empty sum renders as "0".
std::string format_sum(const std::vector<std::pair<std::string, Rat>>& terms);

class RatMatrix {
public:
  using Index = std::pair<std::size_t, std::size_t>;

  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  static RatMatrix identity(std::size_t n);
  /// Columns are given as dense vectors of length `rows`.
  static RatMatrix from_columns(std::size_t rows, std::span<const RatVector> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rat& value);
  void add(std::size_t r, std::size_t c, const Rat& value);

  const std::map<Index, Rat>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  RatVector apply(const RatVector& v) const;
  RatVector column(std::size_t c) const;
  RatMatrix transpose() const;

  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator*(const Rat& s, const RatMatrix& a);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) = default;

  /// Stacks matrices with equal column counts on top of each other.
  static RatMatrix vstack(std::span<const RatMatrix> blocks);

private:
  void check(std::size_t r, std::size_t c) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::map<Index, Rat> entries_;
};

/// Incrementally maintained reduced row echelon basis of a subspace of Q^n.
class EchelonBasis {
public:
  explicit EchelonBasis(std::size_t dimension) : dimension_(dimension) {}

  std::size_t dimension() const { return dimension_; }
  std::size_t rank() const { return rows_.size(); }

  /// Adds v to the span. Returns false (and leaves the basis unchanged) if v
  /// was already in it.
  bool insert(const RatVector& v);
  bool contains(const RatVector& v) const;
  /// v minus its projection along pivot columns; zero iff v is in the span.
  RatVector reduce(const RatVector& v) const;

private:
  using Row = std::map<std::size_t, Rat>;
  Row reduce_row(Row row) const;

  std::size_t dimension_;
  std::map<std::size_t, Row> rows_;  // pivot column -> row with 1 at pivot
};

std::size_t rank(const RatMatrix& m);
std::size_t span_rank(std::span<const RatVector> vectors, std::size_t dimension);

/// Basis of ker(m). One vector per free column, ascending; the free column
/// carries coefficient 1.
std::vector<RatVector> kernel_basis(const RatMatrix& m);

/// Any x with m x = rhs (free variables set to zero), or nullopt.
std::optional<RatVector> solve(const RatMatrix& m, const RatVector& rhs);

struct QuotientBasis {
  std::size_t dimension = 0;
  std::vector<RatVector> representatives;
};

/// span(cycles) / span(boundaries). Representatives are a subset of `cycles`
/// (first-come order) independent modulo the boundaries. Throws
/// InvalidComplexError if some boundary is not in span(cycles).
QuotientBasis quotient_basis(std::span<const RatVector> cycles,
                             std::span<const RatVector> boundaries,
                             std::size_t dimension);

}  // namespace eqdr
