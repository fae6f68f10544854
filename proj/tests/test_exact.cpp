#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "apolarium/errors.hpp"
#include "apolarium/exact.hpp"

using namespace apolarium;
using namespace apolarium::exact;

namespace {

QMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<int> d(-3, 3);
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      m(i, j) = Rat(d(rng), 1 + (d(rng) + 3) % 3);
      m(i, j).canonicalize();
    }
  return m;
}

RatVector times(const QMatrix& m, const RatVector& v) {
  RatVector out(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

}  // namespace

TEST_CASE("rational literals") {
  CHECK(parse_rat("3") == Rat(3));
  CHECK(parse_rat("-6/4") == Rat(-3, 2));
  CHECK(to_string(parse_rat("10/4")) == "5/2");
  CHECK(to_string(Rat(0)) == "0");
  CHECK_THROWS_AS(parse_rat("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rat("1/-2"), ParseError);
  CHECK_THROWS_AS(parse_rat("x"), ParseError);
}

TEST_CASE("factorial and binomial") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(6) == 720);
  CHECK(binomial(9, 3) == 84);
  CHECK(binomial(7, 2) == 21);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(3, -1) == 0);
}

TEST_CASE("rank examples") {
  CHECK(rank(QMatrix::identity(2)) == 2);
  CHECK(rank(QMatrix(3, 4)) == 0);
  CHECK(rank(QMatrix::from_rows({{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("kernel examples") {
  CHECK(kernel_basis(QMatrix::identity(3)).empty());
  CHECK(kernel_basis(QMatrix(2, 3)).size() == 3);
  auto k = kernel_basis(QMatrix::from_rows({{1, 1}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0] == RatVector{-1, 1});
}

TEST_CASE("incremental echelon") {
  IncrementalEchelon e(3);
  CHECK(e.insert(RatVector{1, 0, 0}));
  CHECK_FALSE(e.insert(RatVector{2, 0, 0}));
  CHECK(e.insert(RatVector{0, 1, 0}));
  CHECK_FALSE(e.insert(RatVector{1, 1, 0}));
  CHECK(e.rank() == 2);
  CHECK_THROWS_AS(e.insert(RatVector{1, 1}), DomainError);
}

TEST_CASE("random matrices: rank, kernel, solve, inverse") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t r = 1 + rng() % 5;
    std::size_t c = 1 + rng() % 5;
    QMatrix m = random_matrix(rng, r, c);
    if (trial % 3 == 0 && r > 1)
      for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * 2;
    auto rk = rank(m);
    CHECK(rk == rank(m.transpose()));
    auto ker = kernel_basis(m);
    CHECK(ker.size() + rk == c);
    for (const auto& v : ker) {
      auto img = times(m, v);
      CHECK(std::all_of(img.begin(), img.end(), [](const Rat& x) { return x == 0; }));
    }

    std::vector<RatVector> rows;
    for (std::size_t i = 0; i < r; ++i) rows.emplace_back(m.row(i).begin(), m.row(i).end());
    std::shuffle(rows.begin(), rows.end(), rng);
    CHECK(rank(QMatrix::from_rows(rows)) == rk);

    RatVector x(c);
    for (auto& v : x) v = Rat(static_cast<long>(rng() % 7) - 3);
    auto b = times(m, x);
    auto sol = solve(m, b);
    REQUIRE(sol.has_value());
    CHECK(times(m, *sol) == b);

    if (r == c) {
      auto inv = inverse(m);
      CHECK(inv.has_value() == (rk == r));
      if (inv) CHECK(m * *inv == QMatrix::identity(r));
    }
  }
}
