#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace apolarium::exact {

/// Arbitrary-precision rational. GMP keeps it canonical: reduced, positive
/// denominator, zero stored as 0/1.
using Rat = mpq_class;
using Int = mpz_class;
using RatVector = std::vector<Rat>;

/// Parses "p", "-p" or "p/q" (q != 0). Throws ParseError.
Rat parse_rat(std::string_view text);
/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rat& r);

Int factorial(unsigned n);
Int binomial(long n, long k);

/// Dense row-major rational matrix.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  QMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries);
  static QMatrix identity(std::size_t n);
  /// Builds from nested rows; all rows must have equal length.
  static QMatrix from_rows(const std::vector<RatVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rat& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  std::span<const Rat> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
  const std::vector<Rat>& entries() const { return entries_; }

  QMatrix transpose() const;
  QMatrix operator*(const QMatrix& other) const;
  bool is_zero() const;
  bool is_symmetric() const;

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> entries_;
};

/// Reduced row echelon form together with its pivot columns.
struct Rref {
  QMatrix matrix;
  std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination; the pivot of each step is the first nonzero
/// entry in column order (topmost row among candidates).
Rref rref(const QMatrix& m);
std::size_t rank(const QMatrix& m);
/// Basis of the right null space, one vector per free column (in column
/// order), normalized to 1 at its free column.
std::vector<RatVector> kernel_basis(const QMatrix& m);
/// Solves m x = b; nullopt when inconsistent. Free variables are set to zero.
std::optional<RatVector> solve(const QMatrix& m, const RatVector& b);
/// Inverse of a square matrix; nullopt when singular.
std::optional<QMatrix> inverse(const QMatrix& m);

/// Sparse row: (column, value) pairs with strictly increasing columns and no
/// zero values.
using SparseRow = std::vector<std::pair<std::size_t, Rat>>;

/// Incrementally maintained reduced echelon basis of a row space of fixed
/// width. Rows are kept fully reduced, so each pivot column is nonzero in
/// exactly one stored row.
class IncrementalEchelon {
 public:
  explicit IncrementalEchelon(std::size_t width) : width_(width) {}

  std::size_t width() const { return width_; }
  std::size_t rank() const { return rows_.size(); }

  /// Adds `row` if it lies outside the current span. Returns true when
  /// accepted. Throws DomainError on width mismatch.
  bool insert(const RatVector& row);
  bool insert(SparseRow row);

  /// Reduces `row` against the basis; the result is zero iff row is in the span.
  SparseRow reduce(SparseRow row) const;
  bool contains(const SparseRow& row) const { return reduce(row).empty(); }

  /// Stored rows in pivot-column order.
  std::vector<SparseRow> basis() const;
  const std::map<std::size_t, SparseRow>& rows_by_pivot() const { return rows_; }

 private:
  void check(const SparseRow& row) const;

  std::size_t width_;
  std::map<std::size_t, SparseRow> rows_;
};

SparseRow to_sparse(const RatVector& dense);
RatVector to_dense(const SparseRow& row, std::size_t width);

}  // namespace apolarium::exact
