#include "apolarium/exact.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "apolarium/errors.hpp"

namespace apolarium::exact {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

// a - c*b for sorted sparse rows.
SparseRow axpy(const SparseRow& a, const Rat& c, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -c * b[j].second);
      ++j;
    } else {
      Rat v = a[i].second - c * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
          s.end());
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw ParseError("invalid rational literal '" + std::string(text) + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  Int d(den);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rat r{Int(num), d};
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) { return r.get_str(); }

Int factorial(unsigned n) {
  Int out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

Int binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Int out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

QMatrix::QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

QMatrix::QMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) throw DomainError("QMatrix: entry count does not match shape");
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<RatVector>& rows) {
  if (rows.empty()) return {};
  QMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw DomainError("QMatrix: ragged rows");
    std::copy(rows[r].begin(), rows[r].end(), m.entries_.begin() + static_cast<long>(r * m.cols_));
  }
  return m;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

QMatrix QMatrix::operator*(const QMatrix& other) const {
  if (cols_ != other.rows_) throw DomainError("QMatrix: shape mismatch in product");
  QMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& a = (*this)(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) out(r, c) += a * other(k, c);
    }
  return out;
}

bool QMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Rat& x) { return x == 0; });
}

bool QMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c)
      if ((*this)(r, c) != (*this)(c, r)) return false;
  return true;
}

Rref rref(const QMatrix& m) {
  Rref out{m, {}};
  QMatrix& a = out.matrix;
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < a.cols() && lead_row < a.rows(); ++col) {
    std::size_t pivot = lead_row;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != lead_row)
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(pivot, c), a(lead_row, c));
    Rat inv = 1 / a(lead_row, col);
    for (std::size_t c = col; c < a.cols(); ++c) a(lead_row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == lead_row || a(r, col) == 0) continue;
      Rat factor = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c) a(r, c) -= factor * a(lead_row, c);
    }
    out.pivots.push_back(col);
    ++lead_row;
  }
  return out;
}

std::size_t rank(const QMatrix& m) {
  // Row-by-row insertion keeps memory sparse for the wide, mostly-zero
  // catalecticant and evaluation matrices.
  IncrementalEchelon ech(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    SparseRow row;
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0) row.emplace_back(c, m(r, c));
    ech.insert(std::move(row));
  }
  return ech.rank();
}

std::vector<RatVector> kernel_basis(const QMatrix& m) {
  Rref r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVector v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.matrix(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVector> solve(const QMatrix& m, const RatVector& b) {
  if (b.size() != m.rows()) throw DomainError("solve: right-hand side has wrong length");
  QMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  Rref red = rref(aug);
  if (!red.pivots.empty() && red.pivots.back() == m.cols()) return std::nullopt;
  RatVector x(m.cols());
  for (std::size_t i = 0; i < red.pivots.size(); ++i) x[red.pivots[i]] = red.matrix(i, m.cols());
  return x;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("inverse: matrix is not square");
  const std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  Rref red = rref(aug);
  if (red.pivots.size() < n || red.pivots[n - 1] != n - 1) return std::nullopt;
  QMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = red.matrix(r, n + c);
  return inv;
}

SparseRow to_sparse(const RatVector& dense) {
  SparseRow row;
  for (std::size_t c = 0; c < dense.size(); ++c)
    if (dense[c] != 0) row.emplace_back(c, dense[c]);
  return row;
}

RatVector to_dense(const SparseRow& row, std::size_t width) {
  RatVector out(width);
  for (const auto& [c, v] : row) out.at(c) = v;
  return out;
}

void IncrementalEchelon::check(const SparseRow& row) const {
  if (!row.empty() && row.back().first >= width_)
    throw DomainError("IncrementalEchelon: column index outside row width");
}

SparseRow IncrementalEchelon::reduce(SparseRow row) const {
  check(row);
  std::vector<std::pair<std::size_t, Rat>> hits;
  for (const auto& [c, v] : row)
    if (rows_.contains(c)) hits.emplace_back(c, v);
  for (const auto& [c, v] : hits) row = axpy(row, v, rows_.at(c));
  return row;
}

bool IncrementalEchelon::insert(const RatVector& row) {
  if (row.size() != width_) throw DomainError("IncrementalEchelon: row width mismatch");
  return insert(to_sparse(row));
}

bool IncrementalEchelon::insert(SparseRow row) {
  SparseRow r = reduce(std::move(row));
  if (r.empty()) return false;
  const std::size_t pivot = r.front().first;
  Rat inv = 1 / r.front().second;
  for (auto& [c, v] : r) v *= inv;
  for (auto& [p, other] : rows_) {
    auto it = std::lower_bound(other.begin(), other.end(), pivot,
                               [](const auto& e, std::size_t col) { return e.first < col; });
    if (it != other.end() && it->first == pivot) {
      Rat factor = it->second;
      other = axpy(other, factor, r);
    }
  }
  rows_.emplace(pivot, std::move(r));
  return true;
}

std::vector<SparseRow> IncrementalEchelon::basis() const {
  std::vector<SparseRow> out;
  out.reserve(rows_.size());
  for (const auto& [p, r] : rows_) out.push_back(r);
  return out;
}

}  // namespace apolarium::exact
