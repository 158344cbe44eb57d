#include <doctest.h>

#include <random>

#include "gottcalc/decompose.hpp"
#include "gottcalc/oracle.hpp"
#include "gottcalc/suspension.hpp"

using namespace gottcalc;

namespace {

ShiftMultiset multiset(std::initializer_list<std::pair<const Degree, BigInt>> l) { return ShiftMultiset(l); }

ShiftPolynomial poly(std::initializer_list<std::pair<const Degree, BigInt>> l) {
  return ShiftPolynomial::from_coefficients(std::map<Degree, BigInt>(l));
}

}  // namespace

TEST_CASE("sphere splitting rules") {
  CHECK(sphere_splitting(SpaceExpr::sphere(4)).shifts() == multiset({{4, 1}}));
  CHECK(sphere_splitting(SpaceExpr::point()).shifts().empty());
  CHECK(sphere_splitting(SpaceExpr::torus(3)).shifts() == multiset({{1, 3}, {2, 3}, {3, 1}}));
  CHECK(sphere_splitting(parse("susp(wedge(S1, S2), 2)")).shifts() == multiset({{3, 1}, {4, 1}}));
  DeclaredShifts declared{{"X", {5, 10}}};
  CHECK(sphere_splitting(SpaceExpr::atom("X"), declared).shifts() == multiset({{5, 1}, {10, 1}}));
}

TEST_CASE("unsplittable sources report the blocker") {
  auto r = sphere_splitting(parse("wedge(S1, B)"));
  REQUIRE_FALSE(r.splittable());
  CHECK(r.failure().blocker == SpaceExpr::atom("B"));
  auto m = sphere_splitting(parse("prod(S1, map(S1, Y))"));
  REQUIRE_FALSE(m.splittable());
  CHECK(m.failure().blocker.is(SpaceKind::Map));
  CHECK_THROWS_AS(shift_polynomial(parse("susp(B)")), NotSplittableError);
}

TEST_CASE("shift polynomial examples") {
  CHECK(shift_polynomial(SpaceExpr::bouquet(5)) == poly({{0, 1}, {1, 5}}));
  CHECK(shift_polynomial(SpaceExpr::torus(2)) == poly({{0, 1}, {1, 2}, {2, 1}}));
  CHECK(to_string(shift_polynomial(SpaceExpr::torus(3))) == "1 + 3t + 3t^2 + t^3");
  auto w = parse("wedge(S2, S2, S2)");
  CHECK(shift_polynomial(w) == poly({{0, 1}, {2, 3}}));
  CHECK(shift_polynomial(SpaceExpr::product({w, w, w})) == poly({{0, 1}, {2, 9}, {4, 27}, {6, 27}}));
  CHECK(shift_polynomial(SpaceExpr::point()) == ShiftPolynomial{});
}

TEST_CASE("polynomial construction is validated") {
  CHECK_THROWS(ShiftPolynomial::from_coefficients({{0, 2}}));
  CHECK_THROWS(ShiftPolynomial::from_coefficients({{1, 1}}));
  CHECK_THROWS(ShiftPolynomial::from_coefficients({{0, 1}, {1, -1}}));
  CHECK(ShiftPolynomial::from_coefficients({{0, 1}, {3, 0}}).degree() == 0);
  CHECK(poly({{0, 1}, {1, 3}}).value_at_one() == 4);
}

TEST_CASE("property: torus polynomials are binomial rows") {
  for (int n = 1; n <= 12; ++n) {
    auto p = shift_polynomial(SpaceExpr::torus(n));
    // Pascal's rule from the previous row, independently of any binomial function
    std::vector<BigInt> row{1};
    for (int k = 0; k < n; ++k) {
      std::vector<BigInt> next(row.size() + 1, 0);
      for (std::size_t j = 0; j < row.size(); ++j) {
        next[j] += row[j];
        next[j + 1] += row[j];
      }
      row = next;
    }
    for (int j = 0; j <= n; ++j) CHECK(p.coefficient(j) == row[j]);
  }
}

TEST_CASE("property: multiset rule, polynomial rule and desugar agree") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 400; ++i) {
    auto a = random_splittable_source(rng, 3), b = random_splittable_source(rng, 3);
    auto pa = shift_polynomial(a), pb = shift_polynomial(b);
    CHECK(shift_polynomial(SpaceExpr::product({a, b})) == pa * pb);
    auto split = sphere_splitting(a);
    REQUIRE(split.splittable());
    CHECK(split.shifts() == pa.shifts());
    CHECK(ShiftPolynomial::from_shifts(split.shifts()) == pa);
    CHECK(sphere_splitting(desugar(a)).shifts() == split.shifts());
    for (const auto& [shift, count] : split.shifts()) CHECK(shift >= 1);
  }
}
