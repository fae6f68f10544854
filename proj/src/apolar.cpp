#include "apolarium/apolar.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "apolarium/errors.hpp"

namespace apolarium::apolar {

namespace {

using ColumnIndex = std::map<Exponent, std::size_t, poly::GrlexGreater>;

void require_nonzero(const Poly& f, const char* what) {
  if (f.is_zero()) throw DomainError(std::string(what) + ": zero polynomial");
}

void require_homogeneous(const Poly& F, const char* what) {
  require_nonzero(F, what);
  if (!F.is_homogeneous()) throw DomainError(std::string(what) + ": polynomial is not homogeneous");
}

ColumnIndex index_columns(const std::vector<Exponent>& cols) {
  ColumnIndex idx;
  for (std::size_t i = 0; i < cols.size(); ++i) idx.emplace(cols[i], i);
  return idx;
}

// Terms outside the index make the result nullopt.
std::optional<exact::SparseRow> coords(const ColumnIndex& idx, const Poly& p) {
  exact::SparseRow row;
  row.reserve(p.size());
  for (const auto& [e, c] : p.terms()) {
    auto it = idx.find(e);
    if (it == idx.end()) return std::nullopt;
    row.emplace_back(it->second, c);
  }
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return row;
}

std::vector<Exponent> divisor_monomials(const Poly& f, const Limits& limits) {
  std::set<Exponent, poly::GrlexGreater> out;
  const std::size_t n = f.arity();
  for (const auto& [m, c] : f.terms()) {
    Exponent d(n, 0);
    for (;;) {
      out.insert(d);
      if (out.size() > limits.max_terms)
        throw GuardError("partials space exceeds the term limit (" + std::to_string(limits.max_terms) + ")");
      std::size_t i = 0;
      while (i < n && d[i] == m[i]) d[i++] = 0;
      if (i == n) break;
      ++d[i];
    }
  }
  return {out.begin(), out.end()};
}

Poly row_to_poly(const exact::SparseRow& row, const std::vector<Exponent>& cols, const poly::VarSet& vars) {
  Poly p(vars);
  for (const auto& [c, v] : row) p.add_term(cols[c], v);
  return p;
}

Exponent add_exp(const Exponent& a, const Exponent& b) {
  Exponent e(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) e[i] = a[i] + b[i];
  return e;
}

}  // namespace

exact::SparseRow PartialsSpace::coordinates(const Poly& p) const {
  auto row = coords(index_columns(columns), p);
  if (!row) throw DomainError("polynomial has a term outside the partials space support");
  return *row;
}

bool PartialsSpace::contains(const Poly& p) const {
  auto row = coords(index_columns(columns), p);
  if (!row) return false;
  exact::IncrementalEchelon ech(columns.size());
  for (const auto& b : basis) ech.insert(*coords(index_columns(columns), b));
  return ech.contains(*row);
}

PartialsSpace partials_space(const Poly& f, const Limits& limits) {
  require_nonzero(f, "partials_space");
  PartialsSpace ps;
  ps.f = f;
  ps.columns = divisor_monomials(f, limits);
  const ColumnIndex idx = index_columns(ps.columns);
  const std::size_t width = ps.columns.size();

  // levels[i] spans D_i o f.
  std::vector<std::vector<exact::SparseRow>> levels;
  std::vector<Poly> current{f};
  levels.push_back({*coords(idx, f)});
  while (!current.empty()) {
    exact::IncrementalEchelon ech(width);
    std::vector<Poly> next;
    std::vector<exact::SparseRow> rows;
    for (const auto& p : current) {
      for (std::size_t v = 0; v < f.arity(); ++v) {
        Poly q = p.derivative(v);
        if (q.is_zero()) continue;
        auto row = *coords(idx, q);
        if (ech.insert(row)) {
          next.push_back(std::move(q));
          rows.push_back(std::move(row));
        }
      }
    }
    if (!rows.empty()) levels.push_back(std::move(rows));
    current = std::move(next);
  }

  const std::size_t L = levels.size();
  ps.filt_ge.assign(L + 1, 0);
  ps.filt_le.assign(L + 1, 0);
  {
    exact::IncrementalEchelon ech(width);
    for (std::size_t i = L; i-- > 0;) {
      for (const auto& r : levels[i]) ech.insert(r);
      ps.filt_ge[i] = ech.rank();
    }
    for (const auto& r : ech.basis()) ps.basis.push_back(row_to_poly(r, ps.columns, f.vars()));
  }
  {
    exact::IncrementalEchelon ech(width);
    for (std::size_t i = 0; i < L; ++i) {
      for (const auto& r : levels[i]) ech.insert(r);
      ps.filt_le[i] = ech.rank();
    }
    ps.filt_le[L] = ech.rank();
  }
  return ps;
}

std::vector<Poly> lowest_form_basis(const PartialsSpace& ps) {
  const std::size_t w = ps.columns.size();
  const ColumnIndex idx = index_columns(ps.columns);
  exact::IncrementalEchelon ech(w);
  for (const auto& b : ps.basis) {
    auto row = *coords(idx, b);
    for (auto& [c, v] : row) c = w - 1 - c;
    std::reverse(row.begin(), row.end());
    ech.insert(std::move(row));
  }
  std::vector<Poly> out;
  for (auto row : ech.basis()) {
    for (auto& [c, v] : row) c = w - 1 - c;
    out.push_back(poly::ldf(row_to_poly(row, ps.columns, ps.f.vars())));
  }
  return out;
}

std::size_t apolar_dim(const Poly& f, const Limits& limits) { return partials_space(f, limits).dim(); }

std::vector<std::size_t> hilbert_function(const Poly& f, const Limits& limits) {
  auto ps = partials_space(f, limits);
  std::vector<std::size_t> hf;
  for (std::size_t i = 0; i + 1 < ps.filt_ge.size(); ++i) hf.push_back(ps.filt_ge[i] - ps.filt_ge[i + 1]);
  while (!hf.empty() && hf.back() == 0) hf.pop_back();
  return hf;
}

std::size_t span_dim(const std::vector<Poly>& polys) {
  if (polys.empty()) return 0;
  std::set<Exponent, poly::GrlexGreater> support;
  for (const auto& p : polys) {
    if (!(p.vars() == polys.front().vars())) throw DomainError("span_dim: mixed variable sets");
    for (const auto& [e, c] : p.terms()) support.insert(e);
  }
  std::vector<Exponent> cols(support.begin(), support.end());
  const ColumnIndex idx = index_columns(cols);
  exact::IncrementalEchelon ech(cols.size());
  for (const auto& p : polys) ech.insert(*coords(idx, p));
  return ech.rank();
}

bool is_concise(const Poly& f) {
  require_nonzero(f, "is_concise");
  std::vector<Poly> images{f};
  for (std::size_t v = 0; v < f.arity(); ++v) images.push_back(f.derivative(v));
  return span_dim(images) == f.arity() + 1;
}

Rat constant_of_action(const Poly& f, const Exponent& e) {
  Rat c = f.coefficient(e);
  if (c == 0) return c;
  for (unsigned k : e) c *= Rat(exact::factorial(k));
  return c;
}

std::vector<Poly> annihilator_upto(const Poly& f, std::optional<unsigned> d, const Limits& limits) {
  require_nonzero(f, "annihilator_upto");
  const unsigned bound = d.value_or(static_cast<unsigned>(f.degree()) + 1);
  if (bound > limits.max_degree) throw GuardError("annihilator degree bound exceeds the degree limit");
  const auto duals = poly::monomials_up_to_degree(f.arity(), bound);
  const auto cols = divisor_monomials(f, limits);
  if (duals.size() * cols.size() > limits.max_entries)
    throw GuardError("annihilator matrix exceeds the entry limit (" + std::to_string(limits.max_entries) + ")");
  const ColumnIndex idx = index_columns(cols);
  QMatrix m(cols.size(), duals.size());
  for (std::size_t j = 0; j < duals.size(); ++j) {
    Poly img = poly::apply(Poly::monomial(f.vars(), duals[j]), f);
    for (const auto& [e, c] : img.terms()) m(idx.at(e), j) = c;
  }
  const poly::VarSet dv = poly::dual_varset(f.vars());
  std::vector<Poly> out;
  for (const auto& v : exact::kernel_basis(m)) {
    Poly g(dv);
    for (std::size_t j = 0; j < v.size(); ++j) g.add_term(duals[j], v[j]);
    out.push_back(std::move(g));
  }
  return out;
}

QMatrix catalecticant_matrix(const Poly& F, unsigned k) {
  require_homogeneous(F, "catalecticant_matrix");
  const unsigned d = static_cast<unsigned>(F.degree());
  if (k > d) throw DomainError("catalecticant index " + std::to_string(k) + " exceeds the degree " + std::to_string(d));
  const auto rows = poly::monomials_of_degree(F.arity(), k);
  const auto cols = poly::monomials_of_degree(F.arity(), d - k);
  const ColumnIndex ri = index_columns(rows);
  const ColumnIndex ci = index_columns(cols);
  QMatrix m(rows.size(), cols.size());
  for (const auto& [mono, c] : F.terms()) {
    for (const auto& [a, r] : ri) {
      bool divides = true;
      for (std::size_t i = 0; i < mono.size() && divides; ++i) divides = a[i] <= mono[i];
      if (!divides) continue;
      Exponent rest(mono.size());
      exact::Int scale = 1;
      for (std::size_t i = 0; i < mono.size(); ++i) {
        rest[i] = mono[i] - a[i];
        for (unsigned t = rest[i] + 1; t <= mono[i]; ++t) scale *= t;
      }
      m(r, ci.at(rest)) += c * Rat(scale);
    }
  }
  return m;
}

std::size_t catalecticant_rank(const Poly& F, unsigned k) { return exact::rank(catalecticant_matrix(F, k)); }

std::size_t max_catalecticant_rank(const Poly& F) {
  require_homogeneous(F, "max_catalecticant_rank");
  const unsigned d = static_cast<unsigned>(F.degree());
  std::size_t best = 0;
  for (unsigned k = 0; k <= d / 2; ++k) best = std::max(best, catalecticant_rank(F, k));
  return best;
}

PairingTable pairing_table(const Poly& f, const Limits& limits) {
  require_nonzero(f, "pairing_table");
  const auto ps = partials_space(f, limits);
  const ColumnIndex idx = index_columns(ps.columns);
  exact::IncrementalEchelon ech(ps.columns.size());
  PairingTable table;
  for (const auto& a : poly::monomials_up_to_degree(f.arity(), static_cast<unsigned>(f.degree()))) {
    Poly img = poly::apply(Poly::monomial(f.vars(), a), f);
    if (img.is_zero()) continue;
    if (ech.insert(*coords(idx, img))) table.basis.push_back(a);
    if (table.basis.size() == ps.dim()) break;
  }
  const std::size_t l = table.basis.size();
  table.gram = QMatrix(l, l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) table.gram(i, j) = constant_of_action(f, add_exp(table.basis[i], table.basis[j]));
  return table;
}

ApolarStructure structure_tensor_of_apolar(const Poly& f, const Limits& limits) {
  const PairingTable table = pairing_table(f, limits);
  const std::size_t l = table.basis.size();
  if (l * l * l > limits.max_entries) throw GuardError("structure tensor exceeds the entry limit");
  auto ginv = exact::inverse(table.gram);
  if (!ginv) throw std::logic_error("apolar pairing is degenerate");

  std::vector<Poly> images;
  for (const auto& b : table.basis) images.push_back(poly::apply(Poly::monomial(f.vars(), b), f));

  tensor::Tensor3 t({l, l, l});
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < l; ++j) {
      const Exponent prod = add_exp(table.basis[i], table.basis[j]);
      exact::RatVector rhs(l);
      for (std::size_t m = 0; m < l; ++m) rhs[m] = constant_of_action(f, add_exp(prod, table.basis[m]));
      exact::RatVector c(l, 0);
      for (std::size_t a = 0; a < l; ++a)
        for (std::size_t m = 0; m < l; ++m) c[a] += (*ginv)(a, m) * rhs[m];
      // Dual route: the same class expressed directly inside D o f.
      Poly lhs = poly::apply(Poly::monomial(f.vars(), prod), f);
      Poly combo(f.vars());
      for (std::size_t a = 0; a < l; ++a)
        if (c[a] != 0) combo += images[a] * c[a];
      if (!(lhs == combo)) throw std::logic_error("structure constants disagree with the partials space");
      for (std::size_t a = 0; a < l; ++a) t.set({i, j, a}, c[a]);
    }
  }
  const poly::VarSet dv = poly::dual_varset(f.vars());
  std::vector<std::string> names;
  for (const auto& b : table.basis) {
    std::string s = poly::monomial_string(dv, b);
    names.push_back(s.empty() ? "1" : s);
  }
  t.set_labels({names, names, names});
  return {std::move(t), table.basis};
}

bool TautologicalReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const TautologicalCheck& c) { return c.annihilates; });
}

TautologicalReport verify_tautological_apolarity(const Poly& F, const std::string& v, std::optional<unsigned> bound,
                                                 bool twisted, const Limits& limits) {
  require_homogeneous(F, "verify_tautological_apolarity");
  const std::size_t pos = F.vars().require(v);
  const Poly f = poly::dehomogenize(F, v);
  if (f.is_zero()) throw DomainError("verify_tautological_apolarity: dehomogenization is zero");
  const poly::VarSet fdual = poly::dual_varset(F.vars());
  const Poly target = twisted ? poly::twist(F, v) : F;
  TautologicalReport report;
  for (auto& g : annihilator_upto(f, bound, limits)) {
    Poly h = poly::homogenize(g, "d" + v, static_cast<unsigned>(g.degree()), pos).with_vars(fdual);
    bool ok = poly::apply(h, target).is_zero();
    report.checks.push_back({std::move(g), std::move(h), ok});
  }
  return report;
}

BoxtimesCheck boxtimes_apolar_dim(const Poly& f, unsigned d, const Limits& limits) {
  require_nonzero(f, "boxtimes_apolar_dim");
  BoxtimesCheck out;
  const std::size_t l = apolar_dim(f, limits);
  std::size_t expected = 1;
  for (unsigned i = 0; i < d; ++i) {
    expected *= l;
    if (expected > limits.max_terms) throw GuardError("boxtimes dimension exceeds the term limit");
  }
  out.expected = expected;
  out.dim = apolar_dim(poly::boxtimes_power(f, d, limits), limits);
  return out;
}

}  // namespace apolarium::apolar
