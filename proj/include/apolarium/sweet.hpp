#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "apolarium/exact.hpp"
#include "apolarium/limits.hpp"
#include "apolarium/tensor3.hpp"

namespace apolarium::sweet {

using exact::Int;
using exact::Rat;
using tensor::Index3;
using tensor::Tensor3;

/// A block label in Z^r.
using Label = std::vector<long>;
using LabelTriple = std::array<Label, 3>;

/// Labels per axis per basis index. Axes are 0-based.
struct Blocking {
  std::size_t r = 1;
  std::array<std::vector<Label>, 3> labels;

  /// Throws DomainError on arity or size mismatch with `t`.
  void validate(const Tensor3& t) const;
  LabelTriple block_of(const Index3& ix) const;
};

/// Axes 0 and 1 carry `degrees`, axis 2 carries their negatives.
Blocking grading_blocking(const std::vector<long>& degrees);
/// Grading blocking with degrees 0 (index 0), 1 (middle), 2 (index n-1).
/// Fits cw(n) and the group tensor of any group of order n >= 3.
Blocking cw_blocking(std::size_t n);
/// Induced blocking on the N-th Kronecker power: labels concatenate.
Blocking power_blocking(const Blocking& b, unsigned n, const Limits& limits = {});

/// Structure tensor of K[x]/(x^2) on the basis (1, x).
Tensor3 tensor_TB();

struct BlockDistribution {
  std::vector<LabelTriple> support;
  std::vector<Rat> probs;

  /// Nonnegative, sums to one, distinct triples of equal arity.
  void validate() const;
  Rat prob(const LabelTriple& b) const;
};

BlockDistribution uniform_distribution(const std::vector<LabelTriple>& support);
/// Six-block distribution on the standard CW support: p on each large block,
/// q on each small block.
BlockDistribution cw_distribution(const Rat& p, const Rat& q);

struct Block {
  LabelTriple labels;
  Index3 format;
  std::array<std::vector<std::size_t>, 3> indices;
  Tensor3 tensor;
};

/// Nonzero blocks, sorted by label triple. Format counts the basis vectors
/// carrying each label, so zero rows inside a block still count.
std::vector<Block> support_blocks(const Tensor3& t, const Blocking& b);
bool is_tight(const Tensor3& t, const Blocking& b);

using Marginal = std::map<Label, Rat>;
std::array<Marginal, 3> marginals(const BlockDistribution& p);
/// Same probability multiset on all three axes (equality up to relabeling).
bool marginals_equal(const std::array<Marginal, 3>& m);

enum class Uniqueness { unique, non_unique, unknown };
std::string to_string(Uniqueness u);
Uniqueness marginal_uniqueness(const BlockDistribution& p);

struct SweetPiece {
  Tensor3 tensor;
  /// Flat indices into T^{(x)N} kept on each axis, increasing.
  std::array<std::vector<std::size_t>, 3> kept;
  /// Power blocking restricted to the kept indices.
  Blocking blocking;
  std::array<std::size_t, 3> p_axes{0, 0, 0};
  std::size_t p_T = 0;
};

/// Marginal-matching projection of T^{(x)N}, enumerated without forming the
/// full power. `require_tight` may be dropped for non-tight ambient tensors
/// such as T_G under the CW blocking.
SweetPiece sp_extract(const Tensor3& t, const Blocking& b, const BlockDistribution& p, unsigned n,
                      const Limits& limits = {}, bool require_tight = true);

/// Projection restricting the two axes in `fixed` to marginal-matching
/// sequences; the remaining axis keeps all d^N indices.
Tensor3 chimney(const Tensor3& t, const Blocking& b, const BlockDistribution& p, unsigned n,
                std::pair<int, int> fixed, const Limits& limits = {});

/// Flat indices of axis-`axis` sequences whose label counts equal
/// N times the marginal.
std::vector<std::size_t> composition_indices(const Tensor3& t, const Blocking& b, const Marginal& m,
                                             int axis, unsigned n, const Limits& limits = {});

struct SweetCheck {
  bool uniform_marginals_equal = false;
  bool p_equal = false;
  bool block_formats_equal = false;
  bool block_multisets_equal = false;
  std::size_t blocks = 0;

  bool ok() const { return uniform_marginals_equal && p_equal && block_formats_equal && block_multisets_equal; }
};
/// Sufficient-condition check of the sweet-piece axioms; block isomorphism
/// is approximated by equal formats and equal entry multisets.
SweetCheck check_sweet_piece(const SweetPiece& sp);

/// Per-axis integer weights, one per basis index, constant on label classes.
using Weights = std::array<std::vector<long>, 3>;
/// t -> 0 limit: positive-weight entries vanish, weight-zero entries stay.
/// A nonzero entry of negative weight is a DomainError.
Tensor3 toric_degenerate(const Tensor3& t, const Blocking& b, const Weights& w);
/// Weights equal to the first label coordinate.
Weights label_weights(const Blocking& b);

/// Number of indices on `axis` whose slice is zero.
std::size_t zero_layers(const Tensor3& t, int axis);

enum class Ambient { group_power, z2_power, other };
std::string to_string(Ambient a);
/// ambient_dim - zero_layer_count; requires a minimal-rank ambient tensor
/// from the whitelist unless `override_minimal` is set.
Int substitution_bound(const Int& ambient_dim, const Int& zero_layer_count, Ambient ambient,
                       bool override_minimal = false);

/// binom(N, (2p+2q)N+1) (n-1)^{(p+q)N-1}.
Int formula_sweet_term(unsigned n, unsigned big_n, const Rat& p, const Rat& q);
/// n^N minus the term above.
Int formula_sweet_rank(unsigned n, unsigned big_n, const Rat& p, const Rat& q);

/// 2^{3k-1} - sum_{i=k+1}^{floor(3k/2)} binom(3k, 2i).
Int formula_pratt(unsigned k);
/// |{A xor B : |A| = |B| = k, A, B in [3k]}| by enumeration (k <= 6).
Int even_symdiff_count(unsigned k);
/// sum_{i=0}^{k} binom(3k, 2i).
Int even_symdiff_closed(unsigned k);

double omega_bound(const Int& a, const Rat& r, const Rat& p);

std::vector<Int> veronese_dims(const std::vector<Int>& graded_dims, unsigned k);
/// Total-degree Hilbert function of the N-th tensor power of an algebra with
/// Hilbert function (1, m, 1).
std::vector<Int> tensor_power_graded_dims(unsigned m, unsigned big_n);

/// Dimension of the subalgebra of (K[x,y]/(x^2,y^2))^{(x)3k} generated by
/// its degree-k part, by closing monomials under multiplication.
Int veronese_subalgebra_dim_bruteforce(unsigned k);
/// 2 + 2 sum_{a=0}^{k} binom(3k,a) binom(3k-a,2k-a).
Int veronese_subalgebra_dim_formula(unsigned k);

nlohmann::json to_json(const Blocking& b);
nlohmann::json to_json(const BlockDistribution& p);
nlohmann::json to_json(const Marginal& m);
/// {labels: [[...],[...],[...]]}; scalar labels are read as r = 1.
Blocking blocking_from_json(const nlohmann::json& j);
/// {support: [[a1,a2,a3],...], probs: ["p/q",...]}.
BlockDistribution distribution_from_json(const nlohmann::json& j);
Weights weights_from_json(const nlohmann::json& j);

}  // namespace apolarium::sweet
