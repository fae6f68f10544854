#include "apolarium/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

#include "apolarium/errors.hpp"

namespace apolarium::poly {

namespace {

bool valid_name(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; });
}

void guard_terms(std::size_t n, const Limits& limits) {
  if (n > limits.max_terms)
    throw GuardError("polynomial exceeds the term limit (" + std::to_string(limits.max_terms) + ")");
}

void guard_degree(long d, const Limits& limits) {
  if (d > static_cast<long>(limits.max_degree))
    throw GuardError("polynomial degree " + std::to_string(d) + " exceeds the degree limit (" +
                     std::to_string(limits.max_degree) + ")");
}

void monomials_rec(std::size_t n, std::size_t pos, unsigned remaining, Exponent& cur, std::vector<Exponent>& out) {
  if (pos + 1 == n) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (unsigned e = remaining + 1; e-- > 0;) {
    cur[pos] = e;
    monomials_rec(n, pos + 1, remaining - e, cur, out);
  }
  cur[pos] = 0;
}

// ---- parser -------------------------------------------------------------

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Number, std::string(s.substr(i, j - i)), i});
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), i});
      i = j;
    } else {
      Tok k;
      switch (c) {
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Star; break;
        case '/': k = Tok::Slash; break;
        case '^': k = Tok::Caret; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        default:
          throw ParseError("unexpected character '" + std::string(1, c) + "' at position " + std::to_string(i));
      }
      out.push_back({k, std::string(1, c), i});
      ++i;
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, VarSet vars) : toks_(std::move(toks)), vars_(std::move(vars)) {}

  Poly run() {
    if (peek().kind == Tok::End) throw ParseError("empty polynomial");
    Poly p = expr();
    if (peek().kind != Tok::End) fail("unexpected token '" + peek().text + "'");
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(peek().pos));
  }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    ++pos_;
  }

  Poly expr() {
    Poly acc(vars_);
    bool negate = false;
    if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) negate = next().kind == Tok::Minus;
    Poly t = term();
    acc += negate ? -t : t;
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      bool minus = next().kind == Tok::Minus;
      Poly u = term();
      acc += minus ? -u : u;
    }
    return acc;
  }

  bool starts_factor() const {
    auto k = peek().kind;
    return k == Tok::Number || k == Tok::Ident || k == Tok::LParen;
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      if (peek().kind == Tok::Star) {
        ++pos_;
        acc = acc * factor();
      } else if (starts_factor()) {
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  Poly factor() {
    Poly base = primary();
    if (peek().kind == Tok::Caret) {
      ++pos_;
      if (peek().kind != Tok::Number) fail("expected exponent");
      unsigned long e = std::stoul(next().text);
      Limits lim;
      base = pow(base, static_cast<unsigned>(e), lim);
    }
    return base;
  }

  Poly primary() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      std::string lit = next().text;
      if (peek().kind == Tok::Slash) {
        ++pos_;
        if (peek().kind != Tok::Number) fail("expected denominator");
        lit += "/" + next().text;
      }
      return Poly::constant(vars_, exact::parse_rat(lit));
    }
    if (t.kind == Tok::Ident) {
      auto idx = vars_.index_of(t.text);
      if (!idx) fail("unknown variable '" + t.text + "'");
      ++pos_;
      return Poly::variable(vars_, *idx);
    }
    if (t.kind == Tok::LParen) {
      ++pos_;
      Poly inner = expr();
      expect(Tok::RParen, "')'");
      return inner;
    }
    fail("unexpected token '" + t.text + "'");
  }

  std::vector<Token> toks_;
  VarSet vars_;
  std::size_t pos_ = 0;
};

std::string coefficient_string(const Rat& c) { return exact::to_string(c); }

}  // namespace

unsigned total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0U); }

bool GrlexGreater::operator()(const Exponent& a, const Exponent& b) const {
  unsigned da = total_degree(a);
  unsigned db = total_degree(b);
  if (da != db) return da > db;
  return a > b;
}

std::vector<Exponent> monomials_of_degree(std::size_t n, unsigned d) {
  std::vector<Exponent> out;
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Exponent cur(n, 0);
  monomials_rec(n, 0, d, cur, out);
  return out;
}

std::vector<Exponent> monomials_up_to_degree(std::size_t n, unsigned d) {
  std::vector<Exponent> out;
  for (unsigned k = 0; k <= d; ++k) {
    auto block = monomials_of_degree(n, k);
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

// ---- VarSet -------------------------------------------------------------

VarSet::VarSet() {
  static const auto empty = std::make_shared<const std::vector<std::string>>();
  names_ = empty;
}

VarSet::VarSet(std::vector<std::string> names) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!valid_name(n)) throw DomainError("invalid variable name '" + n + "'");
    if (!seen.insert(n).second) throw DomainError("duplicate variable name '" + n + "'");
  }
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::optional<std::size_t> VarSet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_->size(); ++i)
    if ((*names_)[i] == name) return i;
  return std::nullopt;
}

std::size_t VarSet::require(std::string_view name) const {
  auto idx = index_of(name);
  if (!idx) throw DomainError("unknown variable '" + std::string(name) + "'");
  return *idx;
}

VarSet dual_varset(const VarSet& vars) {
  std::vector<std::string> names;
  names.reserve(vars.size());
  for (const auto& n : vars.names()) names.push_back("d" + n);
  return VarSet(std::move(names));
}

bool natural_less(const std::string& a, const std::string& b) {
  auto split = [](const std::string& s) {
    std::size_t k = s.size();
    while (k > 0 && std::isdigit(static_cast<unsigned char>(s[k - 1]))) --k;
    return std::pair{s.substr(0, k), s.substr(k)};
  };
  auto [pa, na] = split(a);
  auto [pb, nb] = split(b);
  if (pa != pb) return pa < pb;
  if (na.empty() != nb.empty()) return na.empty();
  std::string ta = na.substr(std::min(na.find_first_not_of('0'), na.size()));
  std::string tb = nb.substr(std::min(nb.find_first_not_of('0'), nb.size()));
  if (ta.size() != tb.size()) return ta.size() < tb.size();
  if (ta != tb) return ta < tb;
  return a < b;
}

std::string fresh_name(const VarSet& vars, const std::string& base) {
  std::string candidate = base;
  while (vars.contains(candidate)) candidate += "0";
  return candidate;
}

// ---- Poly ---------------------------------------------------------------

Poly Poly::constant(VarSet vars, const Rat& c) {
  Poly p(std::move(vars));
  p.add_term(Exponent(p.arity(), 0), c);
  return p;
}

Poly Poly::variable(VarSet vars, std::size_t index) {
  Poly p(std::move(vars));
  Exponent e(p.arity(), 0);
  e.at(index) = 1;
  p.add_term(e, 1);
  return p;
}

Poly Poly::monomial(VarSet vars, Exponent e, const Rat& c) {
  Poly p(std::move(vars));
  if (e.size() != p.arity()) throw DomainError("monomial exponent length does not match arity");
  p.add_term(e, c);
  return p;
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(total_degree(terms_.begin()->first));
}

int Poly::min_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(total_degree(terms_.rbegin()->first));
}

bool Poly::is_homogeneous() const { return degree() == min_degree(); }

Rat Poly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

void Poly::add_term(const Exponent& e, const Rat& c) {
  if (e.size() != arity()) throw DomainError("exponent length does not match arity");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::part_of_degree(unsigned d) const {
  Poly out(vars_);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) == d) out.terms_.emplace_hint(out.terms_.end(), e, c);
  return out;
}

Poly Poly::part_le(unsigned d) const {
  Poly out(vars_);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) <= d) out.terms_.emplace_hint(out.terms_.end(), e, c);
  return out;
}

Poly Poly::part_ge(unsigned d) const {
  Poly out(vars_);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) >= d) out.terms_.emplace_hint(out.terms_.end(), e, c);
  return out;
}

Poly Poly::derivative(std::size_t index) const {
  if (index >= arity()) throw DomainError("derivative: variable index out of range");
  Poly out(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[index] == 0) continue;
    Exponent f = e;
    --f[index];
    out.add_term(f, c * e[index]);
  }
  return out;
}

Poly Poly::with_vars(VarSet vars) const {
  if (vars.size() != arity()) throw DomainError("with_vars: arity mismatch");
  Poly out(std::move(vars));
  out.terms_ = terms_;
  return out;
}

void Poly::require_same_vars(const Poly& other) const {
  if (!(vars_ == other.vars_)) throw DomainError("polynomials live over different variable sets");
}

Poly& Poly::operator+=(const Poly& other) {
  require_same_vars(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  require_same_vars(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) { return mul(a, b, Limits{}); }

// ---- operations ---------------------------------------------------------

Poly apply(const Poly& sigma, const Poly& f) {
  if (sigma.arity() != f.arity())
    throw DomainError("apply: operator has arity " + std::to_string(sigma.arity()) + ", polynomial has arity " +
                      std::to_string(f.arity()));
  const std::size_t n = f.arity();
  Poly out(f.vars());
  for (const auto& [a, s] : sigma.terms()) {
    for (const auto& [m, c] : f.terms()) {
      bool divides = true;
      for (std::size_t i = 0; i < n && divides; ++i) divides = a[i] <= m[i];
      if (!divides) continue;
      exact::Int scale = 1;
      Exponent r(n);
      for (std::size_t i = 0; i < n; ++i) {
        r[i] = m[i] - a[i];
        for (unsigned k = r[i] + 1; k <= m[i]; ++k) scale *= k;
      }
      out.add_term(r, s * c * Rat(scale));
    }
  }
  return out;
}

Poly mul(const Poly& f, const Poly& g, const Limits& limits) {
  if (!(f.vars() == g.vars())) throw DomainError("polynomials live over different variable sets");
  if (!f.is_zero() && !g.is_zero()) guard_degree(f.degree() + g.degree(), limits);
  Poly out(f.vars());
  const std::size_t n = f.arity();
  Exponent e(n);
  for (const auto& [a, c] : f.terms()) {
    for (const auto& [b, d] : g.terms()) {
      for (std::size_t i = 0; i < n; ++i) e[i] = a[i] + b[i];
      out.add_term(e, c * d);
    }
    guard_terms(out.size(), limits);
  }
  return out;
}

Poly pow(const Poly& f, unsigned d, const Limits& limits) {
  if (!f.is_zero() && d > 0) guard_degree(static_cast<long>(f.degree()) * d, limits);
  Poly result = Poly::constant(f.vars(), 1);
  Poly base = f;
  while (d > 0) {
    if (d & 1U) result = mul(result, base, limits);
    d >>= 1U;
    if (d > 0) base = mul(base, base, limits);
  }
  return result;
}

Poly boxtimes_power(const Poly& f, unsigned d, const Limits& limits) {
  std::vector<std::string> names;
  for (unsigned j = 1; j <= d; ++j)
    for (const auto& n : f.vars().names()) names.push_back(n + std::to_string(j));
  std::set<std::string> uniq(names.begin(), names.end());
  if (uniq.size() != names.size()) {
    names.clear();
    for (unsigned j = 1; j <= d; ++j)
      for (const auto& n : f.vars().names()) names.push_back(n + "c" + std::to_string(j));
  }
  VarSet vars(std::move(names));
  const std::size_t n = f.arity();
  Poly result = Poly::constant(vars, 1);
  for (unsigned j = 0; j < d; ++j) {
    Poly copy(vars);
    for (const auto& [e, c] : f.terms()) {
      Exponent big(vars.size(), 0);
      std::copy(e.begin(), e.end(), big.begin() + static_cast<long>(j * n));
      copy.add_term(big, c);
    }
    result = mul(result, copy, limits);
  }
  return result;
}

Poly twist(const Poly& F, std::string_view v) {
  const std::size_t idx = F.vars().require(v);
  Poly out(F.vars());
  for (const auto& [e, c] : F.terms()) out.add_term(e, c / Rat(exact::factorial(e[idx])));
  return out;
}

Poly dehomogenize(const Poly& F, std::string_view v) {
  const std::size_t idx = F.vars().require(v);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < F.arity(); ++i)
    if (i != idx) names.push_back(F.vars().name(i));
  Poly out{VarSet(std::move(names))};
  for (const auto& [e, c] : F.terms()) {
    Exponent f;
    f.reserve(e.size() - 1);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != idx) f.push_back(e[i]);
    out.add_term(f, c);
  }
  return out;
}

Poly homogenize(const Poly& f, std::string_view v, unsigned d, std::size_t position) {
  if (f.vars().contains(v)) throw DomainError("homogenize: variable '" + std::string(v) + "' already present");
  if (f.degree() > static_cast<int>(d))
    throw DomainError("homogenize: target degree " + std::to_string(d) + " is below deg f = " +
                      std::to_string(f.degree()));
  if (position > f.arity()) throw DomainError("homogenize: insertion position out of range");
  std::vector<std::string> names = f.vars().names();
  names.insert(names.begin() + static_cast<long>(position), std::string(v));
  Poly out{VarSet(std::move(names))};
  for (const auto& [e, c] : f.terms()) {
    Exponent g = e;
    g.insert(g.begin() + static_cast<long>(position), d - total_degree(e));
    out.add_term(g, c);
  }
  return out;
}

Poly restrict_zero(const Poly& F, const std::vector<std::string>& kill) {
  std::vector<bool> killed(F.arity(), false);
  for (const auto& k : kill) killed[F.vars().require(k)] = true;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < F.arity(); ++i)
    if (!killed[i]) names.push_back(F.vars().name(i));
  Poly out{VarSet(std::move(names))};
  for (const auto& [e, c] : F.terms()) {
    Exponent f;
    bool vanishes = false;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (killed[i])
        vanishes = vanishes || e[i] > 0;
      else
        f.push_back(e[i]);
    }
    if (!vanishes) out.add_term(f, c);
  }
  return out;
}

Poly embed(const Poly& f, const VarSet& target) {
  std::vector<std::size_t> map(f.arity());
  for (std::size_t i = 0; i < f.arity(); ++i) map[i] = target.require(f.vars().name(i));
  Poly out(target);
  for (const auto& [e, c] : f.terms()) {
    Exponent g(target.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) g[map[i]] = e[i];
    out.add_term(g, c);
  }
  return out;
}

Poly ldf(const Poly& f) {
  if (f.is_zero()) throw DomainError("ldf of the zero polynomial");
  return f.part_of_degree(static_cast<unsigned>(f.min_degree()));
}

Poly tdf(const Poly& f) {
  if (f.is_zero()) throw DomainError("tdf of the zero polynomial");
  return f.part_of_degree(static_cast<unsigned>(f.degree()));
}

Poly parse(std::string_view text, const std::optional<VarSet>& vars) {
  auto toks = lex(text);
  VarSet vs;
  if (vars) {
    vs = *vars;
  } else {
    std::set<std::string> names;
    for (const auto& t : toks)
      if (t.kind == Tok::Ident) names.insert(t.text);
    std::vector<std::string> sorted(names.begin(), names.end());
    std::sort(sorted.begin(), sorted.end(), natural_less);
    vs = VarSet(std::move(sorted));
  }
  return Parser(std::move(toks), vs).run();
}

std::string monomial_string(const VarSet& vars, const Exponent& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars.name(i);
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out;
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const bool negative = c < 0;
    Rat mag = negative ? Rat(-c) : c;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    std::string mono = monomial_string(p.vars(), e);
    if (mono.empty())
      out += coefficient_string(mag);
    else if (mag == 1)
      out += mono;
    else
      out += coefficient_string(mag) + "*" + mono;
  }
  return out;
}

}  // namespace apolarium::poly
