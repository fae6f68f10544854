#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "apolarium/apolar.hpp"
#include "apolarium/errors.hpp"

using namespace apolarium;
using namespace apolarium::apolar;
using poly::parse;

namespace {

// Span of sigma o f over every dual monomial sigma of degree <= deg f.
std::size_t brute_dim(const Poly& f) {
  std::vector<Poly> images;
  for (const auto& a : poly::monomials_up_to_degree(f.arity(), static_cast<unsigned>(f.degree())))
    images.push_back(poly::apply(Poly::monomial(f.vars(), a), f));
  return span_dim(images);
}

// dim D_{>=i} o f straight from the definition.
std::vector<std::size_t> brute_hf(const Poly& f) {
  const unsigned d = static_cast<unsigned>(f.degree());
  std::vector<std::size_t> ge;
  for (unsigned i = 0; i <= d + 1; ++i) {
    std::vector<Poly> images{Poly(f.vars())};
    for (unsigned k = i; k <= d; ++k)
      for (const auto& a : poly::monomials_of_degree(f.arity(), k))
        images.push_back(poly::apply(Poly::monomial(f.vars(), a), f));
    ge.push_back(span_dim(images));
  }
  std::vector<std::size_t> hf;
  for (std::size_t i = 0; i + 1 < ge.size(); ++i) hf.push_back(ge[i] - ge[i + 1]);
  while (!hf.empty() && hf.back() == 0) hf.pop_back();
  return hf;
}

const char* const kCubic12 = "x3^3+x1*x2*x4+x3*x4^2+x2^2*x5+x2*x3*x5+x1*x5^2+x5^3";
const char* const kTwistCubic = "x1^3+x2^3+x0*(x1*y1+x2*y2)+x0^2*y0";

}  // namespace

TEST_CASE("apolar dimensions") {
  Poly prod = parse("x1*x2*x3*x4*x5*x6*x7*x8*x9");
  CHECK(apolar_dim(prod) == 512);
  CHECK(hilbert_function(prod) == std::vector<std::size_t>{1, 9, 36, 84, 126, 126, 84, 36, 9, 1});
  CHECK(apolar_dim(parse("x1^2")) == 3);
  CHECK(apolar_dim(parse("x1^4")) == 5);
  CHECK(apolar_dim(poly::pow(parse("x1^2+x2"), 2)) == 6);
  Poly c = parse(kCubic12);
  CHECK(apolar_dim(c) == 12);
  CHECK(apolar_dim(poly::pow(c, 2)) == 67);
  CHECK_THROWS_AS(apolar_dim(Poly(c.vars())), DomainError);
}

TEST_CASE("hilbert function examples") {
  CHECK(hilbert_function(parse("x1^2+x2")) == std::vector<std::size_t>{1, 1, 1});
  CHECK(hilbert_function(parse("x1")) == std::vector<std::size_t>{1, 1});
  CHECK(hilbert_function(parse(kCubic12)) == std::vector<std::size_t>{1, 5, 5, 1});
}

TEST_CASE("filtrations are monotone and consistent") {
  auto ps = partials_space(parse("x1^3*x2+x2^2+x1"));
  CHECK(ps.filt_ge.front() == ps.dim());
  CHECK(ps.filt_ge.back() == 0);
  CHECK(ps.filt_le.back() == ps.dim());
  for (std::size_t i = 0; i + 1 < ps.filt_ge.size(); ++i) {
    CHECK(ps.filt_ge[i] >= ps.filt_ge[i + 1]);
    CHECK(ps.filt_le[i] <= ps.filt_le[i + 1]);
  }
  for (const auto& b : ps.basis) CHECK(ps.contains(b));
}

TEST_CASE("conciseness") {
  CHECK(is_concise(parse("x1^2+x2")));
  CHECK_FALSE(is_concise(parse("(x1+x2)^2")));
  CHECK(is_concise(parse("x1^2+x2^2")));
}

TEST_CASE("annihilators") {
  auto a = annihilator_upto(parse("x1*x2"), 2);
  REQUIRE(a.size() == 2);
  CHECK(poly::to_string(a[0]) == "dx1^2");
  CHECK(poly::to_string(a[1]) == "dx2^2");
  auto b = annihilator_upto(parse("x1^2"), 3);
  REQUIRE(b.size() == 1);
  CHECK(poly::to_string(b[0]) == "dx1^3");
  CHECK(annihilator_upto(parse("1+x1^3"), 3).empty());
}

TEST_CASE("catalecticants") {
  CHECK(catalecticant_rank(parse("(x0^3+x1^3)^2"), 3) == 4);
  CHECK(catalecticant_rank(parse("(x1^2+x2^2+x3^2)^2"), 2) == 6);
  CHECK(catalecticant_rank(poly::pow(parse(kTwistCubic), 2), 3) == 25);
  CHECK(max_catalecticant_rank(parse("x0^5")) == 1);
  CHECK(max_catalecticant_rank(parse("(x0^3+x1^3)^2")) == 4);
  CHECK(max_catalecticant_rank(parse("x1^3*x2")) == 2);
  CHECK_THROWS_AS(catalecticant_matrix(parse("x1^2+x2"), 1), DomainError);
  CHECK_THROWS_AS(catalecticant_matrix(parse("x1^2"), 3), DomainError);
  Poly F = parse("x0^2*x1^3 + x0*x1*x2^3 - 2*x2^5");
  for (unsigned k = 0; k <= 5; ++k) CHECK(catalecticant_rank(F, k) == catalecticant_rank(F, 5 - k));
}

TEST_CASE("structure tensor of Ap(f)") {
  auto s1 = structure_tensor_of_apolar(parse("x1^2"));
  CHECK(s1.basis == std::vector<poly::Exponent>{{0}, {1}, {2}});
  CHECK(s1.tensor.nnz() == 6);
  CHECK(structure_tensor_of_apolar(parse("x1^2+x2^2")).tensor == tensor::cw(4));
  CHECK(structure_tensor_of_apolar(parse("x1^2+x2^2+x3^2")).tensor == tensor::cw(5));
  auto pt = pairing_table(parse(kCubic12));
  CHECK(pt.gram.is_symmetric());
  CHECK(exact::inverse(pt.gram).has_value());
}

TEST_CASE("tautological apolarity") {
  CHECK(verify_tautological_apolarity(parse("(x0^3+x1^3)^2"), "x0", 6).pass());
  // Ann((1+x1^3)^2) starts in degree 7, so the untwisted form passes too.
  CHECK(verify_tautological_apolarity(parse("(x0^3+x1^3)^2"), "x0", 6, false).checks.empty());
  auto q = verify_tautological_apolarity(parse("(x0*x3+x1^2+x2^2)^2"), "x0", 4);
  CHECK(q.checks.size() > 10);
  CHECK(q.pass());
  CHECK_FALSE(verify_tautological_apolarity(parse("(x0*x3+x1^2+x2^2)^2"), "x0", 4, false).pass());
  CHECK_FALSE(verify_tautological_apolarity(parse("(x0*x2+x1^2)^2"), "x0", std::nullopt, false).pass());
  auto big = verify_tautological_apolarity(poly::pow(parse(kTwistCubic), 2), "x0");
  CHECK(big.pass());
  CHECK_FALSE(verify_tautological_apolarity(poly::pow(parse(kTwistCubic), 2), "x0", std::nullopt, false).pass());
  for (const auto& c : q.checks) CHECK(c.homogenized.is_homogeneous());
}

TEST_CASE("boxtimes dimensions") {
  for (const char* s : {"x1^2", "x1^2+x2", "x1*x2+x3^3"}) {
    auto b = boxtimes_apolar_dim(parse(s), 2);
    CHECK(b.dim == b.expected);
  }
  CHECK(boxtimes_apolar_dim(parse("x1^2"), 2).dim == 9);
  CHECK(boxtimes_apolar_dim(parse("x1^2+x2"), 1).dim == 3);
}

TEST_CASE("random properties against brute force") {
  std::mt19937_64 rng(3);
  poly::VarSet v({"x1", "x2", "x3"});
  for (int t = 0; t < 25; ++t) {
    Poly f(v);
    auto monos = poly::monomials_up_to_degree(3, 4);
    for (int k = 0; k < 4; ++k) f.add_term(monos[rng() % monos.size()], Rat(static_cast<long>(rng() % 7) - 3));
    if (f.is_zero()) continue;
    auto ps = partials_space(f);
    CHECK(ps.dim() == brute_dim(f));
    auto hf = hilbert_function(f);
    CHECK(hf == brute_hf(f));
    std::size_t sum = 0;
    for (auto h : hf) sum += h;
    CHECK(sum == ps.dim());
    CHECK(hf.front() == 1);
    for (const auto& g : annihilator_upto(f)) CHECK(poly::apply(g, f).is_zero());
    std::size_t monos_le = poly::monomials_up_to_degree(3, static_cast<unsigned>(f.degree()) + 1).size();
    CHECK(annihilator_upto(f).size() == monos_le - ps.dim());
    CHECK(span_dim(lowest_form_basis(ps)) == ps.dim());
    CHECK(exact::inverse(pairing_table(f).gram).has_value());
    for (unsigned d = 2; d <= 3; ++d) {
      std::size_t l = ps.dim();
      CHECK(exact::Int(apolar_dim(poly::pow(f, d))) <= exact::binomial(static_cast<long>(l + d - 1), d));
    }
  }
}
