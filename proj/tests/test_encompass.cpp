#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "apolarium/encompass.hpp"
#include "apolarium/errors.hpp"

using namespace apolarium;
using namespace apolarium::encompass;
using poly::parse;

namespace {

const char* const kTwistCubic = "x1^3+x2^3+x0*(x1*y1+x2*y2)+x0^2*y0";

Poly in_vars(const char* text, const Poly& like) { return parse(text, like.vars()); }

// dim of span of all d-fold products of the partials of f.
std::size_t products_dim(const Poly& f, unsigned d) {
  auto basis = apolar::partials_space(f).basis;
  std::vector<Poly> prods;
  std::vector<std::size_t> idx(d, 0);
  std::function<void(std::size_t, std::size_t, Poly)> rec = [&](std::size_t pos, std::size_t from, Poly acc) {
    if (pos == d) {
      prods.push_back(acc);
      return;
    }
    for (std::size_t i = from; i < basis.size(); ++i) rec(pos + 1, i, acc * basis[i]);
  };
  rec(0, 0, Poly::constant(f.vars(), 1));
  return apolar::span_dim(prods);
}

}  // namespace

TEST_CASE("encompassing examples") {
  CHECK(is_encompassing(parse("x1^2+x2")));
  CHECK_FALSE(is_encompassing(parse("x1^2+x2^2")));
  CHECK_FALSE(is_encompassing(parse("x1^2")));
  CHECK(is_encompassing(parse("x1")));
  CHECK(is_encompassing(parse("x1^2+x2^2+x3")));
  CHECK(is_encompassing(poly::dehomogenize(parse(kTwistCubic), "x0")));
}

TEST_CASE("almost encompassing examples") {
  CHECK(is_almost_encompassing(parse("x1^2+x2^2")));
  CHECK(is_almost_encompassing(parse("x1*x2+x3^2")));
  CHECK_FALSE(is_almost_encompassing(parse("x1^2+x2")));
  CHECK(is_almost_encompassing(parse("x1^2+x2").part_ge(2)));
  CHECK_FALSE(is_almost_encompassing(parse("x1^4")));
}

TEST_CASE("maximal growth") {
  auto a = check_maximal_growth(parse("x1^2"), 2);
  CHECK(a.lhs == 5);
  CHECK(a.rhs == 6);
  CHECK_FALSE(a.equal);
  auto b = check_maximal_growth(parse("x1^2+x2"), 2);
  CHECK(b.lhs == 6);
  CHECK(b.equal);
  auto c = check_maximal_growth(parse("x1^2+x2"), 3);
  CHECK(c.lhs == 10);
  CHECK(c.rhs == 10);
  CHECK(growth_table(parse("x1^2"), 3) == std::vector<std::size_t>{3, 5, 7});
  CHECK(growth_table(parse("x1^2+x2"), 3) == std::vector<std::size_t>{3, 6, 10});
  CHECK(growth_table(parse("x1"), 2) == std::vector<std::size_t>{2, 3});
}

TEST_CASE("gradient probe") {
  auto p = gradient_generic_rank(parse("x1^2+x2"), 0);
  CHECK(p.rank == 2);
  CHECK(p.target == 2);
  CHECK(p.points_tried == 1);
  auto q = gradient_generic_rank(parse("x1^2+x2^2"), 0);
  CHECK(q.rank <= 2);
  CHECK(q.target == 3);
  CHECK(q.points_tried == 3);
  CHECK(gradient_generic_rank(parse("x1"), 5).rank == 1);
  CHECK_THROWS_AS(gradient_generic_rank(parse("(x1+x2)^2"), 0), DomainError);
  CHECK(gradient_generic_rank(parse("x1^3+x2^2+x1*x2"), 9).rank == gradient_generic_rank(parse("x1^3+x2^2+x1*x2"), 9).rank);
}

TEST_CASE("extension: quadric, explicit sigma") {
  Poly f = parse("x1^2+x2^2");
  auto dual = poly::dual_varset(f.vars());
  auto r = encompassing_extension(f, std::vector<Poly>{parse("1/2*dx1^2", dual)});
  CHECK(r.y_names == std::vector<std::string>{"y1"});
  CHECK(r.g == in_vars("x1^2+x2^2+y1", r.g));
  CHECK(r.G == parse("x1^2+x2^2+x0*y1", r.G.vars()));
  CHECK(poly::restrict_zero(r.G, {"y1"}) == parse("x1^2+x2^2", poly::VarSet({"x0", "x1", "x2"})));
}

TEST_CASE("extension: cubic") {
  Poly f = parse("x1^3+x2^3");
  auto dual = poly::dual_varset(f.vars());
  // Literal form f + x1 y1 + x2 y2 + y3 needs sigma_i = alpha_i^2 / 6.
  auto lit = encompassing_extension(
      f, std::vector<Poly>{parse("1/6*dx1^2", dual), parse("1/6*dx2^2", dual), parse("1/6*dx1^3", dual)});
  CHECK(lit.g == in_vars("x1^3+x2^3+x1*y1+x2*y2+y3", lit.g));
  // alpha_i^2 / 2 acts as 3 x_i.
  auto half = encompassing_extension(
      f, std::vector<Poly>{parse("1/2*dx1^2", dual), parse("1/2*dx2^2", dual), parse("1/6*dx1^3", dual)});
  CHECK(half.g == in_vars("x1^3+x2^3+3*x1*y1+3*x2*y2+y3", half.g));
}

TEST_CASE("extension: quartic") {
  Poly f = parse("x1^4+x2^4");
  auto dual = poly::dual_varset(f.vars());
  auto r = encompassing_extension(f, std::vector<Poly>{parse("1/12*dx1^2", dual), parse("1/12*dx2^2", dual),
                                                       parse("1/24*dx1^3", dual), parse("1/24*dx2^3", dual),
                                                       parse("1/24*dx1^4", dual)});
  CHECK(r.g == in_vars("x1^4+x2^4 + y1*x1^2 + y2*x2^2 + 1/12*y1^2 + 1/12*y2^2 + y3*x1 + y4*x2 + y5", r.g));
  CHECK(is_encompassing(r.g));
}

TEST_CASE("extension: validation") {
  Poly f = parse("x1^2+x2^2");
  auto dual = poly::dual_varset(f.vars());
  CHECK_THROWS_AS(encompassing_extension(f, std::vector<Poly>{parse("dx1", dual)}), DomainError);
  CHECK_THROWS_AS(encompassing_extension(f, std::vector<Poly>{parse("dx1*dx2", dual)}), DomainError);
  CHECK_THROWS_AS(encompassing_extension(f, std::vector<Poly>{}), DomainError);
  CHECK_THROWS_AS(encompassing_extension(parse("(x1+x2)^2")), DomainError);
}

TEST_CASE("extension invariants with default sigma") {
  for (const char* s : {"x1^2+x2^2", "x1^3+x2^3", "x1^4+x2^4", "x1*x2*x3", "x1^3+x1*x2^2+x2", "x1^2*x2+x2^3+x1"}) {
    Poly f = parse(s);
    auto r = encompassing_extension(f);
    CHECK(poly::restrict_zero(r.g, r.y_names) == f);
    CHECK(is_encompassing(r.g));
    CHECK(apolar::apolar_dim(r.g) == apolar::apolar_dim(f));
    CHECK(apolar::hilbert_function(r.g) == apolar::hilbert_function(f));
    CHECK(r.G.is_homogeneous());
    CHECK(r.G.degree() == f.degree());
    CHECK(r.g.arity() + 1 == apolar::apolar_dim(f));
    for (const auto& sg : r.sigma_list) CHECK(sg.min_degree() >= 2);
  }
}

TEST_CASE("main theorem: twisted catalecticants") {
  Poly Q = parse("x0*x3+x1^2+x2^2");
  std::size_t expect[] = {4, 10, 20};
  for (unsigned d = 1; d <= 3; ++d) {
    auto r = verify_main_theorem(Q, "x0", d);
    CHECK(r.assumptions_hold());
    CHECK(r.twisted_rank == expect[d - 1]);
    CHECK(r.holds());
  }
  auto small = verify_main_theorem(parse("x0*x2+x1^2"), "x0", 1);
  CHECK(small.twisted_rank == 3);
  CHECK(small.holds());
  auto big = verify_main_theorem(parse(kTwistCubic), "x0", 2);
  CHECK(big.assumptions_hold());
  CHECK(big.twisted_rank == 21);
  CHECK(big.untwisted_rank == 25);
  CHECK(big.expected == 21);
}

TEST_CASE("encompassing polynomials: products of partials are independent") {
  for (const char* s : {"x1^2+x2", "x1^3+x1*x2+x3", "x1^2+x2^2+x3"}) {
    Poly f = parse(s);
    REQUIRE(is_encompassing(f));
    std::size_t l = apolar::apolar_dim(f);
    CHECK(l == f.arity() + 1);
    for (unsigned d = 1; d <= static_cast<unsigned>(f.degree()); ++d)
      CHECK(exact::Int(products_dim(f, d)) == exact::binomial(static_cast<long>(l + d - 1), d));
  }
}
