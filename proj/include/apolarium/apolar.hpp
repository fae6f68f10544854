#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "apolarium/exact.hpp"
#include "apolarium/limits.hpp"
#include "apolarium/poly.hpp"
#include "apolarium/tensor3.hpp"

namespace apolarium::apolar {

using exact::QMatrix;
using exact::Rat;
using poly::Exponent;
using poly::Poly;

/// Echelonized basis of D o f with its degree filtrations.
///   filt_ge[i] = dim D_{>=i} o f,  filt_le[i] = dim D_{<=i} o f,
/// for i = 0..deg f + 1.
struct PartialsSpace {
  Poly f;
  std::vector<Poly> basis;
  std::vector<std::size_t> filt_ge;
  std::vector<std::size_t> filt_le;
  /// Monomials indexing coordinates (every divisor of a term of f).
  std::vector<Exponent> columns;

  std::size_t dim() const { return basis.size(); }
  exact::SparseRow coordinates(const Poly& p) const;
  /// True when p lies in D o f.
  bool contains(const Poly& p) const;
};

PartialsSpace partials_space(const Poly& f, const Limits& limits = {});
/// Basis of D o f echelonized lowest degree first, then reduced to lowest
/// degree forms. These span ldf(D o f) and are independent.
std::vector<Poly> lowest_form_basis(const PartialsSpace& ps);
std::size_t apolar_dim(const Poly& f, const Limits& limits = {});
/// HF_i = filt_ge[i] - filt_ge[i+1], trailing zeros dropped.
std::vector<std::size_t> hilbert_function(const Poly& f, const Limits& limits = {});
/// f, d f/d x_1, ..., d f/d x_n are linearly independent.
bool is_concise(const Poly& f);

/// Dimension of the linear span of polynomials over a common VarSet.
std::size_t span_dim(const std::vector<Poly>& polys);

/// mu-style value ((alpha^e) o f)_0 = e! * coefficient of x^e in f.
Rat constant_of_action(const Poly& f, const Exponent& e);

/// Basis of the degree <= d part of Ann(f), as polynomials over the dual
/// variables ("d" + name). Default bound: deg f + 1.
std::vector<Poly> annihilator_upto(const Poly& f, std::optional<unsigned> d = std::nullopt,
                                   const Limits& limits = {});

/// Rows: dual monomials of degree k; columns: monomials of degree deg F - k;
/// both in graded-lex (GrlexGreater) order.
QMatrix catalecticant_matrix(const Poly& F, unsigned k);
std::size_t catalecticant_rank(const Poly& F, unsigned k);
std::size_t max_catalecticant_rank(const Poly& F);

/// Monomial basis of Ap(f) and its Gram matrix under mu(a, b) = ((ab) o f)_0.
struct PairingTable {
  std::vector<Exponent> basis;
  QMatrix gram;
};

PairingTable pairing_table(const Poly& f, const Limits& limits = {});

struct ApolarStructure {
  tensor::Tensor3 tensor;
  std::vector<Exponent> basis;
};

/// Multiplication tensor of Ap(f) in the greedy graded-lex monomial basis.
ApolarStructure structure_tensor_of_apolar(const Poly& f, const Limits& limits = {});

struct TautologicalCheck {
  Poly generator;     // annihilator element of F|_{v=1}
  Poly homogenized;   // with the dual of v
  bool annihilates = false;
};

struct TautologicalReport {
  std::vector<TautologicalCheck> checks;
  bool pass() const;
};

/// For every basis element g of Ann(F|_{v=1})_{<=bound}, homogenizes g with
/// the dual of v (to degree deg g) and applies it to tw(F, v), or to F itself
/// when `twisted` is false.
TautologicalReport verify_tautological_apolarity(const Poly& F, const std::string& v,
                                                 std::optional<unsigned> bound = std::nullopt, bool twisted = true,
                                                 const Limits& limits = {});

struct BoxtimesCheck {
  std::size_t dim = 0;       // dim Ap(f^{boxtimes d})
  std::size_t expected = 0;  // (dim Ap f)^d
};

BoxtimesCheck boxtimes_apolar_dim(const Poly& f, unsigned d, const Limits& limits = {});

}  // namespace apolarium::apolar
