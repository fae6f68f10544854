#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apolarium/exact.hpp"
#include "apolarium/limits.hpp"

namespace apolarium::poly {

using exact::Rat;
using Exponent = std::vector<unsigned>;

unsigned total_degree(const Exponent& e);

/// Graded order, larger first: higher total degree first, ties broken by
/// lexicographically larger exponent (x1 > x2 > ...). Used for term storage,
/// printing and pivot selection.
struct GrlexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Monomials of exactly degree `d` in `n` variables, in GrlexGreater order.
std::vector<Exponent> monomials_of_degree(std::size_t n, unsigned d);
/// Monomials of degree <= d: degree 0 first, then degree 1, ... (each block in
/// GrlexGreater order). This is the "smallest first" enumeration.
std::vector<Exponent> monomials_up_to_degree(std::size_t n, unsigned d);

/// Ordered list of distinct variable names. Cheap to copy.
class VarSet {
 public:
  VarSet();
  explicit VarSet(std::vector<std::string> names);

  std::size_t size() const { return names_->size(); }
  const std::string& name(std::size_t i) const { return names_->at(i); }
  const std::vector<std::string>& names() const { return *names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Index of `name`; throws DomainError when absent.
  std::size_t require(std::string_view name) const;
  bool contains(std::string_view name) const { return index_of(name).has_value(); }

  friend bool operator==(const VarSet& a, const VarSet& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

/// Names of the differential operators dual to `vars`: "d" + name.
VarSet dual_varset(const VarSet& vars);
/// Orders names with a trailing number numerically (x2 < x10).
bool natural_less(const std::string& a, const std::string& b);
/// A name matching [A-Za-z][A-Za-z0-9]* that is not in `vars`, built from
/// `base` by appending digits when needed.
std::string fresh_name(const VarSet& vars, const std::string& base);

/// Sparse multivariate polynomial with rational coefficients.
class Poly {
 public:
  using Terms = std::map<Exponent, Rat, GrlexGreater>;

  Poly() = default;
  explicit Poly(VarSet vars) : vars_(std::move(vars)) {}

  static Poly constant(VarSet vars, const Rat& c);
  static Poly variable(VarSet vars, std::size_t index);
  static Poly monomial(VarSet vars, Exponent e, const Rat& c = 1);

  const VarSet& vars() const { return vars_; }
  std::size_t arity() const { return vars_.size(); }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// -1 for the zero polynomial.
  int degree() const;
  /// Degree of the lowest nonzero term; -1 for zero.
  int min_degree() const;
  bool is_homogeneous() const;
  Rat coefficient(const Exponent& e) const;

  /// Adds c*x^e (removing the term if it cancels).
  void add_term(const Exponent& e, const Rat& c);

  /// Homogeneous component of degree d.
  Poly part_of_degree(unsigned d) const;
  /// Sum of components of degree <= d (resp. >= d).
  Poly part_le(unsigned d) const;
  Poly part_ge(unsigned d) const;

  /// Partial derivative with respect to variable `index`.
  Poly derivative(std::size_t index) const;
  /// Same terms, reinterpreted over another variable set of equal size.
  Poly with_vars(VarSet vars) const;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Rat& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rat& c) { return a *= c; }
  friend Poly operator*(const Rat& c, Poly a) { return a *= c; }
  Poly operator-() const { return *this * Rat(-1); }
  friend Poly operator*(const Poly& a, const Poly& b);

  friend bool operator==(const Poly& a, const Poly& b) { return a.vars_ == b.vars_ && a.terms_ == b.terms_; }

 private:
  void require_same_vars(const Poly& other) const;

  VarSet vars_;
  Terms terms_;
};

/// Apolarity action: sigma (an operator over the dual variables, paired with
/// f's variables by position) acting by differentiation,
/// a^k o x^m = m!/(m-k)! x^(m-k).
Poly apply(const Poly& sigma, const Poly& f);

Poly mul(const Poly& f, const Poly& g, const Limits& limits = {});
Poly pow(const Poly& f, unsigned d, const Limits& limits = {});
/// f(x_{.1}) * ... * f(x_{.d}) in d disjoint copies of the variables; copy j of
/// variable "x1" is named "x1<j>".
Poly boxtimes_power(const Poly& f, unsigned d, const Limits& limits = {});

/// Divides the coefficient of each term by (exponent of v)!.
Poly twist(const Poly& F, std::string_view v);
/// F|_{v=1}, removing v from the variable set.
Poly dehomogenize(const Poly& F, std::string_view v);
/// Multiplies each term by v^(d - deg term); v is inserted at `position`.
Poly homogenize(const Poly& f, std::string_view v, unsigned d, std::size_t position = 0);
/// Sets the listed variables to zero and drops them.
Poly restrict_zero(const Poly& F, const std::vector<std::string>& kill);
/// Re-expresses f over a variable set containing all of f's names.
Poly embed(const Poly& f, const VarSet& target);

/// Lowest and top degree forms. Throw DomainError on zero.
Poly ldf(const Poly& f);
Poly tdf(const Poly& f);

/// Parses the text grammar: sums of products of rational constants,
/// variables, powers and parenthesized subexpressions. When `vars` is absent
/// the variable set is the naturally sorted set of names that occur.
Poly parse(std::string_view text, const std::optional<VarSet>& vars = std::nullopt);
/// Canonical text form; terms in GrlexGreater order.
std::string to_string(const Poly& p);
std::string monomial_string(const VarSet& vars, const Exponent& e);

}  // namespace apolarium::poly
