#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>

#include "apolarium/errors.hpp"
#include "apolarium/sweet.hpp"

using namespace apolarium;
using namespace apolarium::sweet;
using apolarium::tensor::AbelianGroup;
using apolarium::tensor::cw;
using apolarium::tensor::group_tensor;
using apolarium::tensor::kronecker_power;

namespace {

Rat q(long a, long b) { return Rat(a) / b; }

LabelTriple tri(long a, long b, long c) { return {Label{a}, Label{b}, Label{c}}; }

// Counts of each scalar label along a concatenated r = 1 label sequence.
std::map<long, long> counts_of(const Label& seq) {
  std::map<long, long> out;
  for (long x : seq) ++out[x];
  return out;
}

std::map<long, long> target_of(const Marginal& m, unsigned n) {
  std::map<long, long> out;
  for (const auto& [l, p] : m) out[l[0]] = Rat(p * n).get_num().get_si();
  return out;
}

// Projection of the full Kronecker power onto marginal-matching indices on
// the axes flagged in `restrict`.
Tensor3 oracle_projection(const Tensor3& t, const Blocking& b, const BlockDistribution& p, unsigned n,
                          std::array<bool, 3> restrict) {
  auto full = kronecker_power(t, n);
  auto pb = power_blocking(b, n);
  auto m = marginals(p);
  std::array<std::vector<std::size_t>, 3> kept;
  for (std::size_t a = 0; a < 3; ++a) {
    auto target = target_of(m[a], n);
    for (std::size_t i = 0; i < full.dim(static_cast<int>(a)); ++i) {
      if (!restrict[a] || counts_of(pb.labels[a][i]) == target) kept[a].push_back(i);
    }
  }
  Tensor3 out({kept[0].size(), kept[1].size(), kept[2].size()});
  for (const auto& [ix, v] : full.entries()) {
    Index3 local;
    bool in = true;
    for (std::size_t a = 0; a < 3 && in; ++a) {
      auto it = std::lower_bound(kept[a].begin(), kept[a].end(), ix[a]);
      if (it == kept[a].end() || *it != ix[a]) in = false;
      else local[a] = static_cast<std::size_t>(it - kept[a].begin());
    }
    if (in) out.set(local, v);
  }
  return out;
}

Tensor3 kxy_mod_squares() {
  // basis 1, x, y, xy
  tensor::MultTable table(4, std::vector<exact::RatVector>(4, exact::RatVector(4, Rat(0))));
  auto put = [&](int i, int j, int k) { table[i][j][k] = 1; };
  for (int i = 0; i < 4; ++i) {
    put(0, i, i);
    put(i, 0, i);
  }
  put(1, 2, 3);
  put(2, 1, 3);
  return tensor::structure_tensor(table);
}

// Blocking of T_{Z/2 x Z/2}: neutral 0, (1,1) is the distinguished element.
Blocking klein_blocking() { return cw_blocking(4); }

}  // namespace

TEST_CASE("support blocks of cw(n) under the standard blocking") {
  for (std::size_t n : {3u, 4u, 5u}) {
    auto blocks = support_blocks(cw(n), cw_blocking(n));
    REQUIRE(blocks.size() == 6);
    std::size_t large = 0;
    std::size_t small = 0;
    for (const auto& blk : blocks) {
      std::vector<std::size_t> f(blk.format.begin(), blk.format.end());
      std::sort(f.begin(), f.end());
      if (f == std::vector<std::size_t>{1, 1, 1}) ++small;
      if (f == std::vector<std::size_t>{1, n - 2, n - 2}) ++large;
    }
    CHECK(small + (n == 3 ? 0 : large) == 6);
    if (n > 3) CHECK(large == 3);
    CHECK(is_tight(cw(n), cw_blocking(n)));
  }
}

TEST_CASE("T_B blocks and tightness") {
  auto tb = tensor_TB();
  auto blocks = support_blocks(tb, grading_blocking({0, 1}));
  REQUIRE(blocks.size() == 3);
  CHECK(blocks[0].labels == tri(0, 0, 0));
  CHECK(blocks[1].labels == tri(0, 1, -1));
  CHECK(blocks[2].labels == tri(1, 0, -1));
  CHECK(is_tight(tb, grading_blocking({0, 1})));

  Blocking flat_third = grading_blocking({0, 1});
  flat_third.labels[2] = {Label{0}, Label{0}};
  CHECK_FALSE(is_tight(tb, flat_third));

  Tensor3 single({2, 2, 2});
  single.set({1, 1, 0}, 5);
  CHECK(support_blocks(single, grading_blocking({0, 1})).size() == 1);

  Blocking bad = grading_blocking({0, 1});
  bad.labels[0][1] = Label{1, 0};
  CHECK_THROWS_AS(support_blocks(tb, bad), DomainError);
}

TEST_CASE("tightness survives Kronecker powers") {
  auto tb = tensor_TB();
  auto b = grading_blocking({0, 1});
  CHECK(is_tight(kronecker_power(tb, 2), power_blocking(b, 2)));
  CHECK(is_tight(kronecker_power(cw(3), 2), power_blocking(cw_blocking(3), 2)));
  CHECK_FALSE(is_tight(group_tensor({{3}}), cw_blocking(3)));
}

TEST_CASE("marginals") {
  auto p = uniform_distribution({tri(0, 0, 0), tri(0, 1, -1), tri(1, 0, -1)});
  auto m = marginals(p);
  CHECK(m[0].at(Label{0}) == q(2, 3));
  CHECK(m[0].at(Label{1}) == q(1, 3));
  CHECK(m[2].at(Label{-1}) == q(2, 3));
  CHECK(marginals_equal(m));

  BlockDistribution point{{tri(1, 1, -2)}, {Rat(1)}};
  auto mp = marginals(point);
  for (const auto& axis : mp) {
    REQUIRE(axis.size() == 1);
    CHECK(axis.begin()->second == 1);
  }

  Rat pp = q(1, 9);
  Rat qq = q(2, 9);
  auto mc = marginals(cw_distribution(pp, qq));
  CHECK(mc[0].at(Label{0}) == pp + 2 * qq);
  CHECK(mc[0].at(Label{1}) == 2 * pp);
  CHECK(mc[0].at(Label{2}) == qq);
  CHECK(mc[2].at(Label{-2}) == pp + 2 * qq);
  CHECK(marginals_equal(mc));

  BlockDistribution bad{{tri(0, 0, 0), tri(0, 1, -1)}, {q(1, 2), q(1, 3)}};
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("marginal uniqueness") {
  CHECK(marginal_uniqueness(cw_distribution(q(1, 9), q(2, 9))) == Uniqueness::unique);
  CHECK(marginal_uniqueness(cw_distribution(q(1, 3), 0)) == Uniqueness::unique);
  auto square = uniform_distribution({tri(0, 0, 0), tri(0, 1, 0), tri(1, 0, 0), tri(1, 1, 0)});
  CHECK(marginal_uniqueness(square) == Uniqueness::non_unique);
  CHECK(marginal_uniqueness(BlockDistribution{{tri(0, 0, 0)}, {Rat(1)}}) == Uniqueness::unique);
}

TEST_CASE("sp_extract of T_B at N = 3 is the disjointness tensor") {
  auto tb = tensor_TB();
  auto b = grading_blocking({0, 1});
  auto p = uniform_distribution({tri(0, 0, 0), tri(0, 1, -1), tri(1, 0, -1)});
  auto sp = sp_extract(tb, b, p, 3);
  CHECK(sp.tensor.dims() == Index3{3, 3, 3});
  CHECK(sp.tensor.nnz() == 6);
  // Kept indices are the singletons (axes 0, 1) and the 2-sets (axis 2) of [3].
  for (std::size_t a = 0; a < 3; ++a) {
    for (auto f : sp.kept[a]) CHECK(std::popcount(f) == (a == 2 ? 2 : 1));
  }
  for (const auto& [ix, v] : sp.tensor.entries()) {
    auto A = sp.kept[0][ix[0]];
    auto B = sp.kept[1][ix[1]];
    auto C = sp.kept[2][ix[2]];
    CHECK((A & B) == 0);
    CHECK((A | B) == C);
    CHECK(v == 1);
  }
  CHECK(sp.tensor == oracle_projection(tb, b, p, 3, {true, true, true}));
  CHECK(check_sweet_piece(sp).ok());
  CHECK(sp.p_T == 3);
}

TEST_CASE("sp_extract matches the full-power projection") {
  auto cw3 = cw(3);
  auto b3 = cw_blocking(3);
  auto large = cw_distribution(q(1, 3), 0);
  auto sp = sp_extract(cw3, b3, large, 3);
  CHECK(sp.tensor.nnz() > 0);
  CHECK(sp.tensor == oracle_projection(cw3, b3, large, 3, {true, true, true}));
  CHECK(sp.p_axes[0] == sp.p_axes[1]);
  CHECK(sp.p_axes[1] == sp.p_axes[2]);
  auto check = check_sweet_piece(sp);
  CHECK(check.ok());

  auto cw4 = cw(4);
  auto mixed = cw_distribution(q(1, 6), q(1, 6));
  auto sp4 = sp_extract(cw4, cw_blocking(4), mixed, 6);
  CHECK(sp4.tensor == oracle_projection(cw4, cw_blocking(4), mixed, 6, {true, true, true}));
  CHECK(check_sweet_piece(sp4).ok());

  CHECK_THROWS_AS(sp_extract(cw3, b3, large, 2), DomainError);
  CHECK_THROWS_AS(sp_extract(group_tensor({{3}}), b3, large, 3), DomainError);
}

TEST_CASE("toric degeneration of group tensors") {
  auto tg = group_tensor({{3}});
  auto b = cw_blocking(3);
  auto degen = toric_degenerate(tg, b, label_weights(b));
  CHECK(degen == cw(3));
  CHECK(degen.nnz() == 6);

  Weights zero{std::vector<long>(3, 0), std::vector<long>(3, 0), std::vector<long>(3, 0)};
  CHECK(toric_degenerate(tg, b, zero) == tg);

  Weights negative = label_weights(b);
  negative[2] = {0, -5, -5};
  CHECK_THROWS_AS(toric_degenerate(tg, b, negative), DomainError);
  Weights uneven = label_weights(b);
  uneven[0] = {0, 1, 1};
  CHECK_THROWS_AS(toric_degenerate(tg, b, uneven), DomainError);

  auto klein = group_tensor({{2, 2}});
  auto kd = toric_degenerate(klein, klein_blocking(), label_weights(klein_blocking()));
  CHECK(kd == kxy_mod_squares());
  auto blocks = support_blocks(kd, klein_blocking());
  CHECK(blocks.size() == 6);
  CHECK(is_tight(kd, klein_blocking()));
}

TEST_CASE("group tensor and its degeneration share sweet pieces") {
  auto tg = group_tensor({{3}});
  auto b = cw_blocking(3);
  auto degen = toric_degenerate(tg, b, label_weights(b));
  auto p = cw_distribution(q(1, 3), 0);
  auto sp_g = sp_extract(tg, b, p, 3, {}, false);
  auto sp_d = sp_extract(degen, b, p, 3);
  CHECK(sp_d.tensor.nnz() > 0);
  CHECK(sp_g.tensor == sp_d.tensor);
  CHECK(sp_g.kept == sp_d.kept);
  CHECK(sp_g.tensor == oracle_projection(tg, b, p, 3, {true, true, true}));

  auto klein = group_tensor({{2, 2}});
  auto kb = klein_blocking();
  auto kd = toric_degenerate(klein, kb, label_weights(kb));
  BlockDistribution point{{tri(1, 1, -2)}, {Rat(1)}};
  CHECK(marginal_uniqueness(point) == Uniqueness::unique);
  auto k2g = sp_extract(klein, kb, point, 2, {}, false);
  auto k2d = sp_extract(kd, kb, point, 2);
  CHECK(k2d.tensor.nnz() > 0);
  CHECK(k2g.tensor == k2d.tensor);

  auto k3g = sp_extract(klein, kb, p, 3, {}, false);
  auto k3d = sp_extract(kd, kb, p, 3);
  CHECK(k3d.tensor.nnz() > 0);
  CHECK(k3g.tensor == k3d.tensor);
  CHECK(check_sweet_piece(k3d).ok());
}

TEST_CASE("chimneys") {
  auto z2 = group_tensor({{2}});
  auto b = grading_blocking({0, 1});
  auto p = uniform_distribution({tri(0, 0, 0), tri(0, 1, -1), tri(1, 0, -1)});
  auto ch = chimney(z2, b, p, 3, {0, 1});
  CHECK(ch.dims() == Index3{3, 3, 8});
  CHECK(zero_layers(ch, 2) == 4);
  CHECK(ch == oracle_projection(z2, b, p, 3, {true, true, false}));
  CHECK(substitution_bound(8, zero_layers(ch, 2), Ambient::z2_power) == 4);

  auto side = chimney(z2, b, p, 3, {0, 2});
  CHECK(side.dims() == Index3{3, 8, 3});
  CHECK(side == oracle_projection(z2, b, p, 3, {true, false, true}));

  auto ch2 = chimney(z2, b, p, 6, {0, 1});
  CHECK(zero_layers(ch2, 2) == 33);
  CHECK(substitution_bound(64, zero_layers(ch2, 2), Ambient::z2_power) == 31);

  BlockDistribution point{{tri(1, 1, -2)}, {Rat(1)}};
  auto full = chimney(cw(3), cw_blocking(3), point, 2, {0, 1});
  CHECK(full.dims() == Index3{1, 1, 9});
  CHECK(zero_layers(kronecker_power(cw(3), 2), 2) == 0);

  CHECK_THROWS_AS(chimney(z2, b, p, 3, {1, 1}), DomainError);
}

TEST_CASE("CW chimney zero layers dominate the formula term") {
  struct Case {
    unsigned n, big_n;
  };
  for (auto [n, big_n] : {Case{3, 3}, Case{4, 3}, Case{3, 6}}) {
    auto tg = group_tensor({{n}});
    auto p = cw_distribution(q(1, 3), 0);
    auto ch = chimney(tg, cw_blocking(n), p, big_n, {0, 1});
    Int term = formula_sweet_term(n, big_n, q(1, 3), 0);
    Int layers = static_cast<unsigned long>(zero_layers(ch, 2));
    CAPTURE(n);
    CAPTURE(big_n);
    CHECK(layers >= term);
    Int ambient;
    mpz_ui_pow_ui(ambient.get_mpz_t(), n, big_n);
    CHECK(substitution_bound(ambient, layers, Ambient::group_power) <= formula_sweet_rank(n, big_n, q(1, 3), 0));
  }
}

TEST_CASE("substitution bound whitelist") {
  CHECK(substitution_bound(8, 4, Ambient::z2_power) == 4);
  CHECK(substitution_bound(27, 0, Ambient::group_power) == 27);
  CHECK_THROWS_AS(substitution_bound(10, 1, Ambient::other), DomainError);
  CHECK(substitution_bound(10, 1, Ambient::other, true) == 9);
  CHECK_THROWS_AS(substitution_bound(3, 4, Ambient::z2_power), DomainError);
}

TEST_CASE("sweet-rank formula") {
  CHECK(formula_sweet_rank(3, 3, q(1, 3), 0) == 26);
  CHECK(formula_sweet_rank(4, 3, q(1, 3), 0) == 63);
  CHECK(formula_sweet_rank(3, 6, q(1, 3), 0) == 717);
  CHECK(formula_sweet_term(3, 6, q(1, 3), 0) == 12);
  CHECK_THROWS_AS(formula_sweet_rank(3, 4, q(1, 3), 0), DomainError);
  CHECK_THROWS_AS(formula_sweet_rank(3, 3, q(1, 6), q(1, 6)), DomainError);
}

TEST_CASE("Pratt bound and symmetric differences") {
  CHECK(formula_pratt(1) == 4);
  CHECK(formula_pratt(2) == 31);
  for (unsigned k = 1; k <= 4; ++k) {
    CAPTURE(k);
    CHECK(even_symdiff_count(k) == formula_pratt(k));
    CHECK(even_symdiff_closed(k) == formula_pratt(k));
  }
}

TEST_CASE("omega bound") {
  CHECK(omega_bound(3, 27, 3) == doctest::Approx(2.0));
  CHECK(omega_bound(2, 8, 1) == doctest::Approx(3.0));
  CHECK(std::abs(omega_bound(2, 7, 1) - std::log2(7.0)) < 1e-9);
  CHECK_THROWS_AS(omega_bound(1, 8, 1), DomainError);
  CHECK_THROWS_AS(omega_bound(2, 1, 2), DomainError);
}

TEST_CASE("Veronese dimensions") {
  std::vector<Int> b9;
  std::vector<Int> b6;
  for (long i = 0; i <= 9; ++i) b9.push_back(exact::binomial(9, i));
  for (long i = 0; i <= 6; ++i) b6.push_back(exact::binomial(6, i));
  CHECK(veronese_dims(b9, 3) == std::vector<Int>{1, 84, 84, 1});
  CHECK(veronese_dims(b6, 2) == std::vector<Int>{1, 15, 15, 1});
  CHECK(veronese_dims(b6, 1) == b6);
}

TEST_CASE("graded dimensions of tensor powers of a (1,m,1) algebra") {
  for (unsigned m : {1u, 2u, 3u}) {
    for (unsigned big_n : {1u, 2u, 3u, 5u}) {
      // coefficients of (1 + m t + t^2)^N
      std::vector<Int> poly{1};
      for (unsigned s = 0; s < big_n; ++s) {
        std::vector<Int> next(poly.size() + 2, 0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
          next[i] += poly[i];
          next[i + 1] += poly[i] * m;
          next[i + 2] += poly[i];
        }
        poly = next;
      }
      CHECK(tensor_power_graded_dims(m, big_n) == poly);
    }
  }
}

TEST_CASE("Veronese subalgebra of (K[x,y]/(x^2,y^2))^(3k): enumeration against formula") {
  for (unsigned k : {1u, 2u}) {
    Int expected = 0;
    for (unsigned j = 0; j * k <= 6 * k; ++j) expected += exact::binomial(6 * k, j * k);
    CHECK(veronese_subalgebra_dim_bruteforce(k) == expected);
  }
  MESSAGE("k=1 enumeration " << veronese_subalgebra_dim_bruteforce(1).get_str() << ", closed formula "
                             << veronese_subalgebra_dim_formula(1).get_str());
}

TEST_CASE("JSON round trips") {
  auto b = cw_blocking(4);
  CHECK(blocking_from_json(to_json(b)).labels == b.labels);
  auto p = cw_distribution(q(1, 9), q(2, 9));
  auto back = distribution_from_json(to_json(p));
  CHECK(back.support == p.support);
  CHECK(back.probs == p.probs);
  CHECK_THROWS_AS(blocking_from_json(nlohmann::json::parse(R"({"labels": [[0],[0]]})")), ParseError);
  CHECK_THROWS_AS(distribution_from_json(nlohmann::json::parse(R"({"support": [[0,0,0]], "probs": ["1/2"]})")),
                  ParseError);
  auto w = weights_from_json(nlohmann::json::parse("[[0,1,2],[0,1,2],[0,-1,-2]]"));
  CHECK(w == label_weights(cw_blocking(3)));
}
