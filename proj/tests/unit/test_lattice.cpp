#include "doctest.h"

#include <random>

#include "biauto/error.hpp"
#include "biauto/lattice.hpp"

using namespace biauto;
using namespace biauto::lattice;

namespace {

Vec times(const Vec& c, const Matrix& m, std::size_t cols) {
  Vec out(cols, 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) out[j] += c[i] * m[i][j];
  return out;
}

Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<Int> d(-4, 4);
  Matrix m(rows, Vec(cols));
  for (auto& r : m)
    for (auto& x : r) x = d(rng);
  return m;
}

}  // namespace

TEST_CASE("basic arithmetic") {
  CHECK(gcd(12, -18) == 6);
  CHECK(lcm(4, 6) == 12);
  CHECK(mod(-3, 5) == 2);
  CHECK(primitive({4, -6}) == Vec{2, -3});
  CHECK_THROWS_AS(mul(INT64_MAX, 2), Error);
  CHECK_THROWS_AS(add(INT64_MAX, 1), Error);
}

TEST_CASE("left kernel against brute force") {
  std::mt19937 rng(5);
  for (int t = 0; t < 30; ++t) {
    auto m = random_matrix(rng, 3, 2);
    auto k = left_kernel(m, 2);
    for (const auto& row : k) CHECK(is_zero(times(row, m, 2)));
    // every small kernel vector is an integer combination of the basis
    for (Int a = -3; a <= 3; ++a)
      for (Int b = -3; b <= 3; ++b)
        for (Int c = -3; c <= 3; ++c) {
          Vec v{a, b, c};
          if (!is_zero(times(v, m, 2))) continue;
          Matrix aug = k;
          aug.push_back(v);
          CHECK(hermite_basis(aug, 3) == hermite_basis(k, 3));
        }
  }
}

TEST_CASE("Smith normal form") {
  std::mt19937 rng(11);
  for (int t = 0; t < 30; ++t) {
    auto m = random_matrix(rng, 2, 3);
    auto s = smith(m, 3);
    // M V has the row lattice of the diagonal form
    Matrix mv(2, Vec(3, 0));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) mv[i][j] += m[i][k] * s.column_transform[k][j];
    Matrix d(2, Vec(3, 0));
    for (std::size_t i = 0; i < 2; ++i) d[i][i] = s.diagonal[i];
    CHECK(hermite_basis(mv, 3) == hermite_basis(d, 3));
    if (s.diagonal[0] != 0 && s.diagonal[1] != 0) CHECK(s.diagonal[1] % s.diagonal[0] == 0);
    // the product of the invariant factors is the gcd of maximal minors
    Int g = 0;
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = a + 1; b < 3; ++b) g = gcd(g, m[0][a] * m[1][b] - m[0][b] * m[1][a]);
    CHECK(std::abs(s.diagonal[0] * s.diagonal[1]) == g);
  }
}

TEST_CASE("solve in span") {
  auto r = solve_in_span({{1, 0}, {1, 1}}, {3, 2});
  REQUIRE(r);
  CHECK((*r)[0] == Rational(1));
  CHECK((*r)[1] == Rational(2));
  CHECK_FALSE(solve_in_span({{1, 0, 0}}, {0, 1, 0}));
  auto h = solve_in_span({{2, 0}}, {1, 0});
  REQUIRE(h);
  CHECK((*h)[0] == Rational(1, 2));
  CHECK_THROWS_AS(solve_in_span({{1, 1}, {2, 2}}, {1, 1}), Error);
  CHECK(rank({{1, 1}, {2, 2}}, 2) == 1);
}
