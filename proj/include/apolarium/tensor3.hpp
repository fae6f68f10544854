#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "apolarium/exact.hpp"
#include "apolarium/limits.hpp"

namespace apolarium::tensor {

using exact::QMatrix;
using exact::Rat;
using exact::RatVector;
using Index3 = std::array<std::size_t, 3>;

/// Sparse order-3 tensor over Q. Indices are 0-based.
class Tensor3 {
 public:
  using Entries = std::map<Index3, Rat>;
  using Labels = std::array<std::vector<std::string>, 3>;

  Tensor3() = default;
  explicit Tensor3(Index3 dims) : dims_(dims) {}

  const Index3& dims() const { return dims_; }
  std::size_t dim(int axis) const { return dims_.at(static_cast<std::size_t>(axis)); }
  const Entries& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }

  Rat get(const Index3& ix) const;
  /// Overwrites (a zero value erases the entry).
  void set(const Index3& ix, const Rat& v);
  void add(const Index3& ix, const Rat& v);

  const std::optional<Labels>& labels() const { return labels_; }
  void set_labels(Labels labels);
  void clear_labels() { labels_.reset(); }

  /// Equality of dims and entries; labels are bookkeeping and ignored.
  friend bool operator==(const Tensor3& a, const Tensor3& b) {
    return a.dims_ == b.dims_ && a.entries_ == b.entries_;
  }

 private:
  void check(const Index3& ix) const;

  Index3 dims_{0, 0, 0};
  Entries entries_;
  std::optional<Labels> labels_;
};

/// Contraction with the dual basis vector `index` of `axis`; the result is
/// indexed by the two remaining axes in their original order.
QMatrix slice(const Tensor3& t, int axis, std::size_t index);
/// Dimension of the span of the slices along `axis`.
std::size_t axis_rank(const Tensor3& t, int axis);
/// All three axis ranks equal the dims.
bool is_concise(const Tensor3& t);

/// Coppersmith-Winograd tensor: e1 is index 0, en is index n-1.
Tensor3 cw(std::size_t n);

/// G = Z/m_1 x ... x Z/m_r. Elements enumerated lexicographically, so the
/// neutral element comes first.
struct AbelianGroup {
  std::vector<unsigned> orders;

  std::size_t order() const;
  std::vector<std::vector<unsigned>> elements() const;
  std::size_t index_of(const std::vector<unsigned>& g) const;
  std::vector<unsigned> add(const std::vector<unsigned>& a, const std::vector<unsigned>& b) const;
};

/// Addition-table tensor sum_{g1+g2=g3} g1 (x) g2 (x) g3.
Tensor3 group_tensor(const AbelianGroup& g);

/// table[i][j] = coordinates of b_i * b_j in the basis.
using MultTable = std::vector<std::vector<RatVector>>;
/// T[i][j][k] = coefficient of b_k in b_i * b_j. Rejects non-commutative tables.
Tensor3 structure_tensor(const MultTable& table);

/// T in S^2(K^n) (x) K^m stored as m symmetric n x n slices.
struct PartiallySymmetricTensor {
  std::size_t n = 0;
  std::vector<QMatrix> slices;

  std::size_t m() const { return slices.size(); }
  /// Throws DomainError when a slice has the wrong size or is not symmetric.
  void validate() const;
};

/// Multiplication tensor of A_{T,k} on the basis (1, x_1..x_n, y_1..y_k,
/// z_1..z_m): x_a x_b = sum_c T_c[a][b] z_c, the unit acts as identity,
/// every other product of basis elements is zero.
Tensor3 algebra_A_Tk(const PartiallySymmetricTensor& t, std::size_t k);

/// T_S: slice j is the 2n x 2n matrix [[0, T_j], [T_j^t, 0]] where T_j is the
/// contraction of T by the j-th dual basis vector of the third factor.
PartiallySymmetricTensor symmetrize_TS(const Tensor3& t);

/// T' = T + e_0 (x) id on K^{b+k}. Axis 1 gains the new index 0; the old
/// a-th basis vector becomes index a+1; third-axis index l of T moves to
/// b + (k - c) + l. Requires T concise and k >= c.
Tensor3 one_generic_extension(const Tensor3& t, std::size_t k);

/// Kronecker product; flat index i*d'+i'. Labels combine with "|".
Tensor3 kronecker_product(const Tensor3& a, const Tensor3& b, const Limits& limits = {});
Tensor3 kronecker_power(const Tensor3& t, unsigned n, const Limits& limits = {});

/// Tensor file format: {dims, entries: [[i,j,k,"p/q"],...], labels?}.
nlohmann::json to_json(const Tensor3& t);
Tensor3 tensor_from_json(const nlohmann::json& j);

}  // namespace apolarium::tensor
