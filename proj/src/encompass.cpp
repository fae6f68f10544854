#include "apolarium/encompass.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "apolarium/errors.hpp"

namespace apolarium::encompass {

namespace {

using poly::Exponent;

void require_nonzero(const Poly& f, const char* what) {
  if (f.is_zero()) throw DomainError(std::string(what) + ": zero polynomial");
}

std::vector<Poly> truncations(const std::vector<Poly>& polys) {
  std::vector<Poly> out;
  out.reserve(polys.size());
  for (const auto& p : polys) out.push_back(p.part_le(1));
  return out;
}

std::size_t dim_with(std::vector<Poly> polys, const Poly& extra) {
  polys.push_back(extra);
  return apolar::span_dim(polys);
}

Rat evaluate(const Poly& p, const std::vector<Rat>& point) {
  Rat total = 0;
  for (const auto& [e, c] : p.terms()) {
    Rat term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
    total += term;
  }
  return total;
}

std::string y_prefix(const poly::VarSet& vars, std::size_t count) {
  for (const char* prefix : {"y", "w", "u", "t"}) {
    bool clash = false;
    for (std::size_t j = 1; j <= count && !clash; ++j) clash = vars.contains(prefix + std::to_string(j));
    if (!clash) return prefix;
  }
  return poly::fresh_name(vars, "y") + "_";
}

}  // namespace

bool is_encompassing(const Poly& f, const Limits& limits) {
  require_nonzero(f, "is_encompassing");
  auto ps = apolar::partials_space(f, limits);
  return apolar::span_dim(truncations(ps.basis)) == ps.dim();
}

bool is_almost_encompassing(const Poly& f, const Limits& limits) {
  require_nonzero(f, "is_almost_encompassing");
  if (!f.part_le(1).is_zero()) return false;
  std::vector<Poly> higher;
  for (std::size_t i = 0; i < f.arity(); ++i) {
    Poly d = f.derivative(i);
    if (d.is_zero()) continue;
    auto ps = apolar::partials_space(d, limits);
    higher.insert(higher.end(), ps.basis.begin(), ps.basis.end());
  }
  if (higher.empty()) return true;
  return apolar::span_dim(truncations(higher)) == apolar::span_dim(higher);
}

GrowthCheck check_maximal_growth(const Poly& f, unsigned d, const Limits& limits) {
  require_nonzero(f, "check_maximal_growth");
  if (d == 0) throw DomainError("check_maximal_growth: d must be at least 1");
  const std::size_t l = apolar::apolar_dim(f, limits);
  GrowthCheck out;
  out.rhs = exact::binomial(static_cast<long>(l + d - 1), d);
  if (out.rhs > exact::Int(static_cast<unsigned long>(limits.max_terms)))
    throw GuardError("binom(l+d-1,d) exceeds the term limit");
  out.lhs = apolar::apolar_dim(poly::pow(f, d, limits), limits);
  out.equal = exact::Int(static_cast<unsigned long>(out.lhs)) == out.rhs;
  return out;
}

std::vector<std::size_t> growth_table(const Poly& f, unsigned dmax, const Limits& limits) {
  require_nonzero(f, "growth_table");
  std::vector<std::size_t> out;
  Poly p = f;
  for (unsigned d = 1; d <= dmax; ++d) {
    out.push_back(apolar::apolar_dim(p, limits));
    if (d < dmax) p = poly::mul(p, f, limits);
  }
  return out;
}

std::vector<Poly> gradient_basis(const Poly& f, const Limits& limits) {
  require_nonzero(f, "gradient_basis");
  const std::size_t l = apolar::apolar_dim(f, limits);
  std::vector<Poly> chosen;
  std::vector<Poly> span{Poly::constant(f.vars(), 1)};
  for (const auto& a : poly::monomials_up_to_degree(f.arity(), static_cast<unsigned>(std::max(f.degree(), 0)))) {
    if (chosen.size() + 1 == l) break;
    Poly p = poly::apply(Poly::monomial(f.vars(), a), f);
    if (p.is_zero()) continue;
    if (dim_with(span, p) > span.size()) {
      span.push_back(p);
      chosen.push_back(std::move(p));
    }
  }
  return chosen;
}

JacobianProbe gradient_generic_rank(const Poly& f, std::uint64_t seed, const Limits& limits) {
  require_nonzero(f, "gradient_generic_rank");
  if (!apolar::is_concise(f)) throw DomainError("gradient_generic_rank: polynomial is not concise");
  const auto basis = gradient_basis(f, limits);
  const std::size_t n = f.arity();
  std::vector<std::vector<Poly>> jac(basis.size());
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) jac[r].push_back(basis[r].derivative(c));

  JacobianProbe out;
  out.seed = seed;
  out.target = basis.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coord(-1000, 1000);
  for (int attempt = 0; attempt < 3 && out.rank < out.target; ++attempt) {
    std::vector<Rat> point(n);
    for (auto& x : point) x = Rat(coord(rng));
    exact::QMatrix m(basis.size(), n);
    for (std::size_t r = 0; r < basis.size(); ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = evaluate(jac[r][c], point);
    out.rank = std::max(out.rank, exact::rank(m));
    ++out.points_tried;
  }
  return out;
}

Poly taylor_series(const Poly& f, const std::vector<Poly>& sigmas, const std::vector<std::string>& y_names,
                   const Limits& limits) {
  if (sigmas.size() != y_names.size()) throw DomainError("taylor_series: one y variable per sigma required");
  for (const auto& s : sigmas)
    if (s.arity() != f.arity()) throw DomainError("taylor_series: sigma arity does not match f");
  std::vector<std::string> names = f.vars().names();
  names.insert(names.end(), y_names.begin(), y_names.end());
  const poly::VarSet big(std::move(names));
  const std::size_t n = f.arity();
  const std::size_t m = sigmas.size();

  Poly g(big);
  Exponent a(m, 0);
  // h = sigma^a o f; the term is y^a / a! * h.
  std::function<void(const Poly&, std::size_t)> walk = [&](const Poly& h, std::size_t first) {
    Rat inv_fact = 1;
    for (unsigned k : a) inv_fact /= Rat(exact::factorial(k));
    for (const auto& [e, c] : h.terms()) {
      Exponent full(n + m);
      std::copy(e.begin(), e.end(), full.begin());
      std::copy(a.begin(), a.end(), full.begin() + static_cast<long>(n));
      g.add_term(full, c * inv_fact);
    }
    if (g.size() > limits.max_terms) throw GuardError("extension exceeds the term limit");
    for (std::size_t j = first; j < m; ++j) {
      Poly next = poly::apply(sigmas[j], h);
      if (next.is_zero()) continue;
      ++a[j];
      walk(next, j);
      --a[j];
    }
  };
  walk(f, 0);
  return g;
}

ExtensionResult encompassing_extension(const Poly& f, const std::optional<std::vector<Poly>>& sigma_override,
                                       const Limits& limits) {
  require_nonzero(f, "encompassing_extension");
  if (!apolar::is_concise(f)) throw DomainError("encompassing_extension: polynomial is not concise");
  const std::size_t k = f.arity();
  const std::size_t l = apolar::apolar_dim(f, limits);
  const std::size_t count = l - 1 - k;
  const poly::VarSet dual = poly::dual_varset(f.vars());

  std::vector<Poly> images{f};
  for (std::size_t i = 0; i < k; ++i) images.push_back(f.derivative(i));

  ExtensionResult out;
  if (sigma_override) {
    if (sigma_override->size() != count)
      throw DomainError("sigma override needs " + std::to_string(count) + " elements, got " +
                        std::to_string(sigma_override->size()));
    for (const auto& s : *sigma_override) {
      if (s.arity() != k) throw DomainError("sigma override has the wrong arity");
      if (s.is_zero() || s.min_degree() < 2) throw DomainError("sigma override elements must lie in D_{>=2}");
      images.push_back(poly::apply(s, f));
      out.sigma_list.push_back(s.with_vars(dual));
    }
    if (apolar::span_dim(images) != l)
      throw DomainError("sigma override does not complete 1, alpha_1..alpha_k to a basis of Ap(f)");
  } else {
    std::size_t rank = apolar::span_dim(images);
    for (const auto& a : poly::monomials_up_to_degree(k, static_cast<unsigned>(f.degree()))) {
      if (out.sigma_list.size() == count) break;
      if (poly::total_degree(a) < 2) continue;
      Poly img = poly::apply(Poly::monomial(f.vars(), a), f);
      if (img.is_zero()) continue;
      std::size_t r = dim_with(images, img);
      if (r > rank) {
        rank = r;
        images.push_back(std::move(img));
        out.sigma_list.push_back(Poly::monomial(dual, a));
      }
    }
  }

  const std::string prefix = y_prefix(f.vars(), count);
  for (std::size_t j = 1; j <= count; ++j) out.y_names.push_back(prefix + std::to_string(j));
  out.g = taylor_series(f, out.sigma_list, out.y_names, limits);
  out.x0 = poly::fresh_name(out.g.vars(), "x0");
  out.G = poly::homogenize(out.g, out.x0, static_cast<unsigned>(f.degree()), 0);
  return out;
}

MainTheoremReport verify_main_theorem(const Poly& F, const std::string& v, unsigned d, const Limits& limits) {
  if (F.is_zero() || !F.is_homogeneous()) throw DomainError("verify_main_theorem: F must be a nonzero form");
  if (d == 0) throw DomainError("verify_main_theorem: d must be at least 1");
  MainTheoremReport r;
  r.d = d;
  r.concise = apolar::is_concise(F);
  const Poly f = poly::dehomogenize(F, v);
  r.encompassing = !f.is_zero() && is_encompassing(f, limits);
  const Poly Fd = poly::pow(F, d, limits);
  const Poly tw = poly::twist(Fd, v);
  const unsigned D = static_cast<unsigned>(Fd.degree());
  r.middle = D / 2;
  r.twisted_rank = apolar::catalecticant_rank(tw, r.middle);
  r.twisted_rank_at_d = d <= D ? apolar::catalecticant_rank(tw, d) : 0;
  r.untwisted_rank = apolar::catalecticant_rank(Fd, r.middle);
  r.expected = exact::binomial(static_cast<long>(F.arity() - 1 + d), d);
  return r;
}

}  // namespace apolarium::encompass
