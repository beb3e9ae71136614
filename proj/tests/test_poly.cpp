#include <doctest.h>

#include "ppinv/errors.hpp"
#include "ppinv/poly.hpp"
#include "support.hpp"

using namespace ppinv;
using testing::naive_table;
using testing::random_poly;

namespace {

Poly P(const FieldPtr& f, std::vector<Rank> c) { return Poly(f, std::move(c)); }

}  // namespace

TEST_CASE("evaluation") {
  const auto f5 = Field::prime(5);
  CHECK(evaluate(P(f5, {1, 0, 1}), 2) == 0);
  const auto f9 = FieldSpec::parse("3^2:1,0,1").base();
  CHECK(evaluate(P(f9, {0, 0, 0, 2}), 3) == 3);
  CHECK(evaluate(P(f5, {}), 3) == 0);
  CHECK(evaluate(P(f5, {4}), 0) == 4);
}

TEST_CASE("exponent folding") {
  CHECK(fold_exponent(0, 5) == 0);
  CHECK(fold_exponent(5, 5) == 1);
  CHECK(fold_exponent(6, 5) == 2);
  CHECK(fold_exponent(9, 5) == 1);
  const auto f5 = Field::prime(5);
  CHECK(reduce_mod_qx(Poly::monomial(f5, 1, 5)) == Poly::x(f5));
  CHECK(reduce_mod_qx(Poly::monomial(f5, 1, 6)) == Poly::monomial(f5, 1, 2));
  CHECK(reduce_mod_qx(Poly::monomial(f5, 1, 9)) == Poly::x(f5));
  CHECK(tabulate(Poly::monomial(f5, 1, 9)).values == naive_table(Poly::x(f5)));
}

TEST_CASE("composition examples") {
  const auto f5 = Field::prime(5);
  CHECK(compose(Poly::monomial(f5, 1, 2), P(f5, {1, 1})) == P(f5, {1, 2, 1}));
  const Poly c = Poly::monomial(f5, 1, 3);
  CHECK(compose(c, c) == Poly::x(f5));
}

TEST_CASE("tabulate and interpolate examples") {
  const auto f5 = Field::prime(5);
  CHECK(tabulate(Poly::x(f5)) == MapTable::identity(f5));
  CHECK(tabulate(Poly(f5)).values == std::vector<Rank>(5, 0));
  CHECK(tabulate(Poly::monomial(f5, 1, 2)).values == std::vector<Rank>{0, 1, 4, 4, 1});
  CHECK(interpolate(MapTable::identity(f5)) == Poly::x(f5));
  CHECK(interpolate(MapTable::constant(f5, 3)) == Poly::constant(f5, 3));
  const auto f3 = Field::prime(3);
  CHECK(interpolate(tabulate(Poly::monomial(f3, 1, 2))) == Poly::monomial(f3, 1, 2));
  CHECK_THROWS(MapTable(f5, {0, 1, 2}));
}

TEST_CASE("parsing and printing") {
  const auto f5 = Field::prime(5);
  CHECK(parse_poly(f5, "0,0,0,1") == Poly::monomial(f5, 1, 3));
  CHECK(parse_poly(f5, "1,2,0,0") == P(f5, {1, 2}));
  CHECK(to_csv(Poly::monomial(f5, 1, 3)) == "0,0,0,1");
  CHECK(to_csv(Poly(f5)) == "0");
  CHECK_THROWS_AS(parse_poly(f5, "0,5"), ParseError);
  CHECK_THROWS_AS(parse_poly(f5, "0,,1"), ParseError);
  CHECK_THROWS_AS(parse_poly(f5, "x"), ParseError);
  CHECK_THROWS_AS(parse_poly(f5, ""), ParseError);
}

TEST_CASE("frobenius power of a polynomial") {
  const auto spec = FieldSpec::smallest(3, 1, 2);
  const auto& F = spec.top();
  for (int s = 0; s < 20; ++s) {
    const Poly f = random_poly(F, 8);
    const auto t = tabulate(frobenius_power(f, 1));
    for (Rank a = 0; a < F->size(); ++a) CHECK(t[a] == F->pow(evaluate(f, a), 3));
  }
}

TEST_CASE("interpolation round trip on fields up to 343") {
  for (const auto& spec : {FieldSpec::parse("2"), FieldSpec::parse("7"), FieldSpec::smallest(2, 3),
                           FieldSpec::smallest(3, 2), FieldSpec::smallest(5, 1, 2),
                           FieldSpec::smallest(2, 6), FieldSpec::smallest(7, 1, 3)}) {
    const auto& F = spec.ambient();
    CAPTURE(spec.to_string());
    const int rounds = F->size() > 100 ? 40 : 200;
    for (int s = 0; s < rounds; ++s) {
      const Poly f = random_poly(F, 2 * F->size());
      const Poly r = reduce_mod_qx(f);
      CHECK(reduce_mod_qx(r) == r);
      CHECK(tabulate(r) == tabulate(f));
      CHECK(tabulate(f).values == naive_table(f));
      CHECK(interpolate(tabulate(f)) == r);
      CHECK(equal_reduced(f, r));
      CHECK(same_map(f, r));
    }
  }
}

TEST_CASE("composition agrees with table composition over F_25") {
  const auto spec = FieldSpec::smallest(5, 2);
  const auto& F = spec.base();
  for (int s = 0; s < 100; ++s) {
    const Poly f = random_poly(F, 30);
    const Poly g = random_poly(F, 30);
    CHECK(tabulate(compose(f, g)) == compose_tables(tabulate(f), tabulate(g)));
  }
}

TEST_CASE("composition ring laws over F_9") {
  const auto F = FieldSpec::parse("3^2:1,0,1").base();
  const Poly x = Poly::x(F);
  for (int s = 0; s < 100; ++s) {
    const Poly f = random_poly(F, 12);
    const Poly g = random_poly(F, 12);
    const Poly h = random_poly(F, 12);
    CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
    CHECK(compose(f, x) == reduce_mod_qx(f));
    CHECK(compose(x, f) == reduce_mod_qx(f));
  }
}

TEST_CASE("products and powers in the quotient ring") {
  const auto F = Field::prime(7);
  for (int s = 0; s < 50; ++s) {
    const Poly a = random_poly(F, 10);
    const Poly b = random_poly(F, 10);
    const auto ta = tabulate(a), tb = tabulate(b), tp = tabulate(mul_mod_qx(a, b));
    for (Rank v = 0; v < 7; ++v) CHECK(tp[v] == F->mul(ta[v], tb[v]));
    const auto tq = tabulate(pow_mod_qx(a, 11));
    for (Rank v = 0; v < 7; ++v) CHECK(tq[v] == F->pow(ta[v], 11));
  }
}

TEST_CASE("image of a table") {
  const auto f5 = Field::prime(5);
  CHECK(image(tabulate(Poly::monomial(f5, 1, 2))) == RankSet{0, 1, 4});
  CHECK(image(tabulate(Poly::monomial(f5, 1, 2)), RankSet{1, 2}) == RankSet{1, 4});
}
