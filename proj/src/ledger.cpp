#include <algorithm>

#include "apolarium/apolar.hpp"
#include "apolarium/cli.hpp"
#include "apolarium/encompass.hpp"
#include "apolarium/exact.hpp"
#include "apolarium/poly.hpp"
#include "apolarium/sweet.hpp"
#include "apolarium/tensor3.hpp"

namespace apolarium::cli {

namespace {

using exact::Int;
using exact::QMatrix;
using exact::Rat;
using exact::RatVector;
using nlohmann::json;
using poly::parse;
using poly::Poly;

const char* const kCubic12 = "x3^3+x1*x2*x4+x3*x4^2+x2^2*x5+x2*x3*x5+x1*x5^2+x5^3";
const char* const kTwistCubic = "x1^3+x2^3+x0*(x1*y1+x2*y2)+x0^2*y0";

LedgerOutcome equal_outcome(const json& observed, const json& expected) {
  return {observed == expected, observed, expected};
}

std::string big(const Int& v) { return v.get_str(); }

LedgerOutcome dim_entry(const char* text, std::size_t expected, const Limits& lim) {
  return equal_outcome(apolar::apolar_dim(parse(text), lim), expected);
}

LedgerOutcome power_dim_entry(const char* text, unsigned d, std::size_t expected, const Limits& lim) {
  return equal_outcome(apolar::apolar_dim(poly::pow(parse(text), d, lim), lim), expected);
}

LedgerOutcome cat_entry(const Poly& f, unsigned k, std::size_t expected) {
  return equal_outcome(apolar::catalecticant_rank(f, k), expected);
}

Poly in_vars(const char* text, const Poly& like) { return parse(text, like.vars()); }

}  // namespace

const std::vector<std::string>& out_of_scope() {
  static const std::vector<std::string> items = {
      "smoothability and non-smoothability statements",
      "border, cactus and Waring ranks beyond the computed catalecticant and substitution bounds",
      "numerical bounds on the matrix multiplication exponent below 2.38",
      "the probabilistic restriction of Kronecker powers to disjoint copies",
  };
  return items;
}

std::vector<LedgerEntry> regression_ledger() {
  std::vector<LedgerEntry> v;
  auto add = [&](std::string id, std::string anchor, std::function<LedgerOutcome(const Limits&)> fn,
                 bool info = false) { v.push_back({std::move(id), std::move(anchor), info, std::move(fn)}); };

  add("a01-apolar-dim-product-of-9", "apolar algebra of x1...x9", [](const Limits& l) {
    auto f = parse("x1*x2*x3*x4*x5*x6*x7*x8*x9");
    json observed = {{"dim", apolar::apolar_dim(f, l)}, {"hilbert", apolar::hilbert_function(f, l)}};
    json expected = {{"dim", 512}, {"hilbert", {1, 9, 36, 84, 126, 126, 84, 36, 9, 1}}};
    return equal_outcome(observed, expected);
  });
  add("a02-apolar-dim-x1^2", "apolar algebra of x1^2", [](const Limits& l) { return dim_entry("x1^2", 3, l); });
  add("a03-apolar-dim-x1^4", "apolar algebra of f^2, f = x1^2",
      [](const Limits& l) { return power_dim_entry("x1^2", 2, 5, l); });
  add("a04-apolar-dim-(x1^2+x2)^2", "apolar algebra of g^2, g = x1^2+x2",
      [](const Limits& l) { return power_dim_entry("x1^2+x2", 2, 6, l); });
  add("a05-apolar-dim-cubic", "degree of the non-smoothable cubic", [](const Limits& l) {
    return dim_entry(kCubic12, 12, l);
  });
  add("a06-apolar-dim-cubic-squared", "degree of the square of the cubic",
      [](const Limits& l) { return power_dim_entry(kCubic12, 2, 67, l); });
  add("a07-action-examples", "apolarity action on x1^2 and x1^2+x2", [](const Limits&) {
    auto f = parse("x1^2");
    auto g = parse("x1^2+x2");
    auto d1 = parse("dx1", poly::dual_varset(f.vars()));
    auto d11 = parse("dx1^2", poly::dual_varset(g.vars()));
    json observed = {poly::to_string(poly::apply(d1, f)), poly::to_string(poly::apply(d11, g))};
    return equal_outcome(observed, json{"2*x1", "2"});
  });
  add("a08-twist", "twist of x0^2x1 + x0^3x2 + x1", [](const Limits&) {
    auto F = parse("x0^2*x1+x0^3*x2+x1");
    auto t = poly::twist(F, "x0");
    return equal_outcome(poly::to_string(t), poly::to_string(in_vars("1/2*x0^2*x1+1/6*x0^3*x2+x1", F)));
  });
  add("a09-dehomogenize", "dehomogenization of x0x3+x1^2+x2^2", [](const Limits&) {
    auto Q = parse("x0*x3+x1^2+x2^2");
    auto q = poly::dehomogenize(Q, "x0");
    return equal_outcome(poly::to_string(q), "x1^2 + x2^2 + x3");
  });
  add("b01-cat-rank-(x0^3+x1^3)^2", "middle catalecticant of (x0^3+x1^3)^2", [](const Limits& l) {
    return cat_entry(poly::pow(parse("x0^3+x1^3"), 2, l), 3, 4);
  });
  add("b02-cat-rank-q3-squared", "catalecticant of (x1^2+x2^2+x3^2)^2", [](const Limits& l) {
    return cat_entry(poly::pow(parse("x1^2+x2^2+x3^2"), 2, l), 2, 6);
  });
  add("b03-cat-rank-F-squared", "middle catalecticant of F^2 (untwisted)", [](const Limits& l) {
    return cat_entry(poly::pow(parse(kTwistCubic), 2, l), 3, 25);
  });
  add("b04-cat-rank-x1^3x2", "border rank 2 of x1^3 x2", [](const Limits&) {
    return equal_outcome(apolar::max_catalecticant_rank(parse("x1^3*x2")), 2);
  });
  add("c01-twist-theorem-quadric", "twisted catalecticant of Q^d, Q = x0x3+x1^2+x2^2", [](const Limits& l) {
    json observed = json::array();
    for (unsigned d = 1; d <= 3; ++d) {
      auto r = encompass::verify_main_theorem(parse("x0*x3+x1^2+x2^2"), "x0", d, l);
      observed.push_back({{"d", d}, {"rank", r.twisted_rank_at_d}, {"expected", big(r.expected)}});
    }
    json expected = json::array();
    const int ranks[] = {4, 10, 20};
    for (unsigned d = 1; d <= 3; ++d) {
      expected.push_back({{"d", d}, {"rank", ranks[d - 1]}, {"expected", std::to_string(ranks[d - 1])}});
    }
    return equal_outcome(observed, expected);
  });
  add("c02-twist-necessity", "twisted 21 against untwisted 25 for F^2", [](const Limits& l) {
    auto r = encompass::verify_main_theorem(parse(kTwistCubic), "x0", 2, l);
    json observed = {{"twisted", r.twisted_rank}, {"untwisted", r.untwisted_rank}, {"binom(7,2)", big(r.expected)}};
    return equal_outcome(observed, json{{"twisted", 21}, {"untwisted", 25}, {"binom(7,2)", "21"}});
  });
  add("c03-tautological-apolarity", "annihilator of F|_{x0=1} kills tw(F^d)", [](const Limits& l) {
    json observed = json::array();
    bool all = true;
    for (const char* s : {"x0^3+x1^3", "x0*x2+x1^2", "x0*x3+x1^2+x2^2", kTwistCubic}) {
      for (unsigned d = 1; d <= 2; ++d) {
        auto F = poly::pow(parse(s), d, l);
        bool pass = apolar::verify_tautological_apolarity(F, "x0", std::nullopt, true, l).pass();
        all = all && pass;
        observed.push_back({{"F", s}, {"d", d}, {"pass", pass}});
      }
    }
    return LedgerOutcome{all, observed, "every check passes"};
  });
  add("d01-encompassing", "x1^2+x2 encompassing, x1^2+x2^2 not", [](const Limits& l) {
    json observed = {encompass::is_encompassing(parse("x1^2+x2"), l),
                     encompass::is_encompassing(parse("x1^2+x2^2"), l)};
    return equal_outcome(observed, json{true, false});
  });
  add("d02-almost-encompassing", "quadratic forms and f_{>=2} are almost encompassing", [](const Limits& l) {
    json observed = {encompass::is_almost_encompassing(parse("x1^2+x2^2"), l),
                     encompass::is_almost_encompassing(parse("x1^2"), l)};
    return equal_outcome(observed, json{true, true});
  });
  add("d03-growth", "dim Ap(f^2) for x1^2 and x1^2+x2", [](const Limits& l) {
    json observed = json::array();
    for (const char* s : {"x1^2", "x1^2+x2"}) {
      auto g = encompass::check_maximal_growth(parse(s), 2, l);
      observed.push_back({g.lhs, big(g.rhs), g.equal});
    }
    return equal_outcome(observed, json{{5, "6", false}, {6, "6", true}});
  });
  add("e01-extension-quadric", "g = f + y1 for the quadric", [](const Limits& l) {
    auto f = parse("x1^2+x2^2");
    auto r = encompass::encompassing_extension(f, std::vector<Poly>{parse("1/2*dx1^2", poly::dual_varset(f.vars()))}, l);
    json observed = {{"g", poly::to_string(r.g)}, {"G", poly::to_string(r.G)}};
    json expected = {{"g", poly::to_string(in_vars("x1^2+x2^2+y1", r.g))},
                     {"G", poly::to_string(in_vars("x1^2+x2^2+x0*y1", r.G))}};
    return equal_outcome(observed, expected);
  });
  add("e02-extension-cubic", "g = f + x1y1 + x2y2 + y3 for the cubic", [](const Limits& l) {
    auto f = parse("x1^3+x2^3");
    auto dual = poly::dual_varset(f.vars());
    auto r = encompass::encompassing_extension(
        f, std::vector<Poly>{parse("1/6*dx1^2", dual), parse("1/6*dx2^2", dual), parse("1/6*dx1^3", dual)}, l);
    return equal_outcome(poly::to_string(r.g), poly::to_string(in_vars("x1^3+x2^3+x1*y1+x2*y2+y3", r.g)));
  });
  add("e03-extension-quartic", "printed quartic extension (not reproduced literally)", [](const Limits& l) {
    auto f = parse("x1^4+x2^4");
    auto dual = poly::dual_varset(f.vars());
    auto r = encompass::encompassing_extension(
        f,
        std::vector<Poly>{parse("1/12*dx1^2", dual), parse("1/12*dx2^2", dual), parse("1/24*dx1^3", dual),
                          parse("1/24*dx2^3", dual), parse("1/24*dx1^4", dual)},
        l);
    return LedgerOutcome{encompass::is_encompassing(r.g, l), poly::to_string(r.g),
                         "f(x1+y1,...) + sum y_{n+i}(y_{n+i}+x_i^2) + sum y_{2n+i}x_i + y_{3n+1}"};
  }, true);
  add("e04-first-smoothing-hilbert", "HF of Ap(x1^2+x2^2+x3) against the printed (1,n-2,1)", [](const Limits& l) {
    auto f = parse("x1^2+x2^2+x3");
    json observed = {{"hilbert", apolar::hilbert_function(f, l)},
                     {"hilbert_d2", apolar::hilbert_function(poly::pow(f, 2, l), l)}};
    return LedgerOutcome{true, observed, {{"hilbert", {1, 1, 1}}}};
  }, true);
  add("f01-tensor-TB", "T_B has three unit entries", [](const Limits&) {
    auto t = sweet::tensor_TB();
    json observed = json::array();
    for (const auto& [ix, val] : t.entries()) observed.push_back({ix[0], ix[1], ix[2], exact::to_string(val)});
    return equal_outcome(observed, json{{0, 0, 0, "1"}, {0, 1, 1, "1"}, {1, 0, 1, "1"}});
  });
  add("f02-algebra-ATk-pattern", "A_{T,1} for slices [[2,0],[0,0]] and [[1,3],[3,0]]", [](const Limits&) {
    tensor::PartiallySymmetricTensor t{2, {QMatrix::from_rows({{2, 0}, {0, 0}}), QMatrix::from_rows({{1, 3}, {3, 0}})}};
    auto a = tensor::algebra_A_Tk(t, 1);
    bool ok = a.dims() == tensor::Index3{6, 6, 6};
    for (std::size_t i = 0; i < 6 && ok; ++i) {
      for (std::size_t j = 0; j < 6; ++j) {
        RatVector expect(6, Rat(0));
        if (i == 0) expect[j] = 1;
        else if (j == 0) expect[i] = 1;
        else if (i == 1 && j == 1) expect = {0, 0, 0, 0, 2, 1};
        else if ((i == 1 && j == 2) || (i == 2 && j == 1)) expect = {0, 0, 0, 0, 0, 3};
        for (std::size_t k = 0; k < 6; ++k) ok = ok && a.get({i, j, k}) == expect[k];
      }
    }
    return LedgerOutcome{ok, {{"dims", {6, 6, 6}}, {"nnz", a.nnz()}, {"pattern_matches", ok}}, "x1x1 = 2a+b, x1x2 = 3b"};
  });
  add("f03-cw-is-apolar-structure-tensor", "cw(n) is the structure tensor of Ap(x1^2+...+x_{n-2}^2)", [](const Limits& l) {
    json observed = json::array();
    bool ok = true;
    for (std::size_t n : {4u, 5u}) {
      std::string q;
      for (std::size_t i = 1; i + 2 <= n; ++i) q += (i > 1 ? "+x" : "x") + std::to_string(i) + "^2";
      bool same = apolar::structure_tensor_of_apolar(parse(q), l).tensor == tensor::cw(n);
      ok = ok && same;
      observed.push_back({{"n", n}, {"equal", same}});
    }
    return LedgerOutcome{ok, observed, "equal for n = 4, 5"};
  });
  add("f04-one-generic-identity-slice", "one-generic extension has identity first slice", [](const Limits&) {
    auto t = tensor::one_generic_extension(tensor::cw(3), 4);
    bool ok = tensor::slice(t, 0, 0) == QMatrix::identity(7);
    return LedgerOutcome{ok, ok, true};
  });
  add("g01-cw-blocks", "six blocks of cw(n)", [](const Limits&) {
    json observed = json::array();
    for (std::size_t n : {4u, 5u}) {
      std::vector<std::vector<std::size_t>> formats;
      for (const auto& b : sweet::support_blocks(tensor::cw(n), sweet::cw_blocking(n))) {
        std::vector<std::size_t> f(b.format.begin(), b.format.end());
        std::sort(f.begin(), f.end());
        formats.push_back(f);
      }
      std::sort(formats.begin(), formats.end());
      observed.push_back(formats);
    }
    json expected = json::array();
    for (std::size_t n : {4u, 5u}) {
      std::vector<std::size_t> large{1, n - 2, n - 2};
      std::vector<std::size_t> small{1, 1, 1};
      expected.push_back({small, small, small, large, large, large});
    }
    return equal_outcome(observed, expected);
  });
  add("g02-group-tensor-degenerates-to-cw", "T_{Z/3} degenerates to cw(3)", [](const Limits&) {
    auto b = sweet::cw_blocking(3);
    auto d = sweet::toric_degenerate(tensor::group_tensor({{3}}), b, sweet::label_weights(b));
    bool ok = d == tensor::cw(3);
    return LedgerOutcome{ok, {{"equal", ok}, {"nnz", d.nnz()}}, {{"equal", true}, {"nnz", 6}}};
  });
  add("g03-same-sweet-pieces", "SP(T_G) equals SP of its degeneration", [](const Limits& l) {
    json observed = json::array();
    bool ok = true;
    auto run_case = [&](const tensor::AbelianGroup& g, const sweet::BlockDistribution& p, unsigned n) {
      auto b = sweet::cw_blocking(g.order());
      auto tg = tensor::group_tensor(g);
      auto degen = sweet::toric_degenerate(tg, b, sweet::label_weights(b));
      auto a = sweet::sp_extract(tg, b, p, n, l, false);
      auto c = sweet::sp_extract(degen, b, p, n, l);
      bool same = a.tensor == c.tensor && c.tensor.nnz() > 0;
      ok = ok && same;
      observed.push_back({{"group", g.orders}, {"N", n}, {"nnz", c.tensor.nnz()}, {"equal", same}});
    };
    auto large = sweet::cw_distribution(Rat(1) / 3, 0);
    sweet::BlockDistribution point{{{sweet::Label{1}, sweet::Label{1}, sweet::Label{-2}}}, {Rat(1)}};
    run_case({{3}}, large, 3);
    run_case({{2, 2}}, point, 2);
    run_case({{2, 2}}, large, 3);
    return LedgerOutcome{ok, observed, "equal and nonzero"};
  });
  add("g04-sweet-piece-of-TB", "SP_3(T_B) is the 3x3x3 disjointness tensor", [](const Limits& l) {
    using sweet::Label;
    auto p = sweet::uniform_distribution({{Label{0}, Label{0}, Label{0}}, {Label{0}, Label{1}, Label{-1}},
                                          {Label{1}, Label{0}, Label{-1}}});
    auto sp = sweet::sp_extract(sweet::tensor_TB(), sweet::grading_blocking({0, 1}), p, 3, l);
    json observed = {{"dims", sp.tensor.dims()}, {"nnz", sp.tensor.nnz()}, {"p_T", sp.p_T}};
    return equal_outcome(observed, json{{"dims", {3, 3, 3}}, {"nnz", 6}, {"p_T", 3}});
  });
  add("g05-chimney-zero-layers", "zero layers of CW chimneys dominate the formula term", [](const Limits& l) {
    json observed = json::array();
    bool ok = true;
    const unsigned cases[][2] = {{3, 3}, {4, 3}, {3, 6}};
    for (const auto& c : cases) {
      auto p = sweet::cw_distribution(Rat(1) / 3, 0);
      auto ch = sweet::chimney(tensor::group_tensor({{c[0]}}), sweet::cw_blocking(c[0]), p, c[1], {0, 1}, l);
      Int layers = static_cast<unsigned long>(sweet::zero_layers(ch, 2));
      Int term = sweet::formula_sweet_term(c[0], c[1], Rat(1) / 3, 0);
      ok = ok && layers >= term;
      observed.push_back({{"n", c[0]}, {"N", c[1]}, {"zero_layers", big(layers)}, {"formula_term", big(term)}});
    }
    return LedgerOutcome{ok, observed, "zero_layers >= formula_term"};
  });
  add("g06-pratt", "rank bound of T_N: 4 at k = 1, 31 at k = 2", [](const Limits&) {
    json observed = json::array();
    bool ok = sweet::formula_pratt(1) == 4 && sweet::formula_pratt(2) == 31;
    for (unsigned k = 1; k <= 4; ++k) {
      auto f = sweet::formula_pratt(k);
      auto e = sweet::even_symdiff_count(k);
      ok = ok && f == e && f == sweet::even_symdiff_closed(k);
      observed.push_back({{"k", k}, {"formula", big(f)}, {"enumeration", big(e)}});
    }
    return LedgerOutcome{ok, observed, "formula = enumeration, 4 and 31 at k = 1, 2"};
  });
  add("g07-veronese-subalgebra-dim", "dimension of the Veronese subalgebra for k = 1", [](const Limits&) {
    json observed = {{"enumeration", big(sweet::veronese_subalgebra_dim_bruteforce(1))},
                     {"formula", big(sweet::veronese_subalgebra_dim_formula(1))}};
    return LedgerOutcome{true, observed, "reported only"};
  }, true);
  add("h01-veronese-hilbert", "Veronese of x1...x9 has HF (1,84,84,1)", [](const Limits&) {
    std::vector<Int> b9;
    for (long i = 0; i <= 9; ++i) b9.push_back(exact::binomial(9, i));
    json observed = json::array();
    for (const auto& x : sweet::veronese_dims(b9, 3)) observed.push_back(big(x));
    return equal_outcome(observed, json{"1", "84", "84", "1"});
  });

  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return v;
}

}  // namespace apolarium::cli
