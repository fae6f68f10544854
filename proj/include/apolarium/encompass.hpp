#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apolarium/apolar.hpp"
#include "apolarium/limits.hpp"
#include "apolarium/poly.hpp"

namespace apolarium::encompass {

using exact::Rat;
using poly::Poly;

/// Truncation to degree <= 1 is injective on D o f.
bool is_encompassing(const Poly& f, const Limits& limits = {});
/// f_{<=1} = 0 and truncation to degree <= 1 is injective on D_{>=1} o f.
bool is_almost_encompassing(const Poly& f, const Limits& limits = {});

struct GrowthCheck {
  std::size_t lhs = 0;  // dim Ap(f^d)
  exact::Int rhs;       // binom(l + d - 1, d)
  bool equal = false;
};

GrowthCheck check_maximal_growth(const Poly& f, unsigned d, const Limits& limits = {});
/// dim Ap(f^d) for d = 1..dmax.
std::vector<std::size_t> growth_table(const Poly& f, unsigned dmax, const Limits& limits = {});

/// Partials d f / d x^{a_i} that together with 1 form a basis of D o f,
/// chosen greedily over dual monomials in graded-lex order.
std::vector<Poly> gradient_basis(const Poly& f, const Limits& limits = {});

struct JacobianProbe {
  std::size_t rank = 0;
  std::size_t target = 0;  // l - 1
  std::size_t points_tried = 0;
  std::uint64_t seed = 0;
};

/// Rank of the Jacobian of gradient_basis(f) at up to three random integer
/// points with coordinates in [-1000, 1000] (std::mt19937_64(seed)); the
/// maximum is returned and probing stops once it reaches l - 1.
JacobianProbe gradient_generic_rank(const Poly& f, std::uint64_t seed, const Limits& limits = {});

struct ExtensionResult {
  Poly g;
  std::vector<Poly> sigma_list;  // over the dual variables of f
  Poly G;
  std::vector<std::string> y_names;
  std::string x0;
};

/// sum over multi-indices a of y^a / a! * (sigma^a o f), enumerated until
/// every further term vanishes. No validation of sigmas.
Poly taylor_series(const Poly& f, const std::vector<Poly>& sigmas, const std::vector<std::string>& y_names,
                   const Limits& limits = {});

/// Encompassing extension of a concise f. The default sigmas are the
/// smallest graded-lex dual monomials of degree >= 2 completing
/// 1, alpha_1..alpha_k to a basis of Ap(f). An override must have the right
/// count, only terms of degree >= 2, and complete the basis.
ExtensionResult encompassing_extension(const Poly& f, const std::optional<std::vector<Poly>>& sigma_override = std::nullopt,
                                       const Limits& limits = {});

struct MainTheoremReport {
  bool concise = false;
  bool encompassing = false;
  unsigned d = 0;
  unsigned middle = 0;                 // floor(deg F^d / 2)
  std::size_t twisted_rank = 0;        // rank of the middle catalecticant of tw(F^d)
  std::size_t twisted_rank_at_d = 0;   // rank of the degree-d catalecticant of tw(F^d)
  std::size_t untwisted_rank = 0;      // rank of the middle catalecticant of F^d
  exact::Int expected;                 // binom(n + d, d)
  bool assumptions_hold() const { return concise && encompassing; }
  bool holds() const { return assumptions_hold() && exact::Int(twisted_rank) == expected; }
};

MainTheoremReport verify_main_theorem(const Poly& F, const std::string& v, unsigned d, const Limits& limits = {});

}  // namespace apolarium::encompass
