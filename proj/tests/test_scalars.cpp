#include <doctest.h>

#include "random.hpp"

using namespace symchain;
using symchain::testing::Rng;

namespace {

// Evaluation at a rational point is a ring map, so it checks polynomial
// arithmetic without going through the term-map code.
mpq_class eval(const Scalar& s, const std::vector<mpq_class>& point) {
  mpq_class total = 0;
  for (const auto& [e, c] : std::get<Terms>(s.payload())) {
    mpq_class term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
    }
    total += term;
  }
  return total;
}

Scalar q(const Ring& r, const char* text) { return Scalar::parse(r, text); }

}  // namespace

TEST_CASE("ring descriptors") {
  CHECK(Ring::parse("ZZ") == Ring::integers());
  CHECK(Ring::parse("QQ") == Ring::rationals());
  CHECK(Ring::parse("GF(7)") == Ring::prime_field(7));
  CHECK(Ring::parse("ZLoc(3)") == Ring::localized(3));
  CHECK(Ring::parse("QQ[x,y]") == Ring::graded({"x", "y"}));
  CHECK(Ring::parse("QQ[x,y]").name() == "QQ[x,y]");
  CHECK_THROWS_AS(Ring::prime_field(6), Error);
  CHECK_THROWS_AS(Ring::localized(9), Error);
  CHECK_THROWS_AS(Ring::graded({"x", "x"}), Error);
  CHECK_THROWS_AS(Ring::parse("RR"), Error);
}

TEST_CASE("arith examples") {
  Ring qq = Ring::rationals();
  CHECK(arith(ArithOp::Add, q(qq, "1/2"), q(qq, "1/3")) == q(qq, "5/6"));
  Ring gf5 = Ring::prime_field(5);
  CHECK(arith(ArithOp::Mul, Scalar(gf5, 2L), Scalar(gf5, 3L)) == Scalar(gf5, 1L));
  Ring g = Ring::graded({"x", "y"});
  Scalar xy = arith(ArithOp::Mul, Scalar::variable(g, 0), Scalar::variable(g, 1));
  CHECK(xy.to_string() == "x*y");
  CHECK(xy.is_homogeneous());
  CHECK(xy.degree() == 2);
  CHECK(arith(ArithOp::Neg, q(qq, "2/3"), q(qq, "0")) == q(qq, "-2/3"));
  CHECK_THROWS_AS(Scalar(qq, 1L) + Scalar(gf5, 1L), RingMismatch);
}

TEST_CASE("units and inverses") {
  Ring zz = Ring::integers(), l3 = Ring::localized(3), g = Ring::graded({"x", "y"});
  CHECK_FALSE(is_unit(Scalar(zz, 2L)));
  CHECK(is_unit(Scalar(zz, -1L)));
  CHECK(is_unit(Scalar(l3, 2L)));
  CHECK(inverse(Scalar(l3, 2L)) == q(l3, "1/2"));
  CHECK_FALSE(is_unit(Scalar(l3, 6L)));
  CHECK_FALSE(is_unit(Scalar::variable(g, 0)));
  CHECK(is_unit(Scalar(g, 3L)));
  CHECK_THROWS_AS(inverse(Scalar(zz, 2L)), NonUnit);
  CHECK_THROWS_AS(inverse(Scalar(l3, 3L)), NonUnit);
  CHECK_THROWS_AS(q(l3, "1/3"), ParseError);
}

TEST_CASE("two_is_unit") {
  CHECK_FALSE(two_is_unit(Ring::integers()));
  CHECK(two_is_unit(Ring::rationals()));
  CHECK(two_is_unit(Ring::localized(3)));
  CHECK_FALSE(two_is_unit(Ring::localized(2)));
  CHECK_FALSE(two_is_unit(Ring::prime_field(2)));
  CHECK(two_is_unit(Ring::prime_field(7)));
  CHECK(two_is_unit(Ring::graded({"x"})));
}

TEST_CASE("canonical forms") {
  Ring qq = Ring::rationals(), gf7 = Ring::prime_field(7), l3 = Ring::localized(3);
  CHECK(q(qq, "4/6").to_string() == "2/3");
  CHECK(q(qq, "-0").to_string() == "0");
  CHECK(Scalar(gf7, -1L).to_string() == "6");
  CHECK(q(l3, "10/4").to_string() == "5/2");
  Ring g = Ring::graded({"x", "y"});
  Scalar p = q(g, "3*x^2*y - y^3 + x*y*x");
  CHECK(p.to_string() == q(g, "-y^3 + 4*x^2*y").to_string());
  CHECK(Scalar::parse(g, p.to_string()) == p);
  CHECK(q(g, "x - x").is_zero());
  CHECK(q(g, "x - x").is_homogeneous());
  CHECK_FALSE(q(g, "x + y^2").is_homogeneous());
}

TEST_CASE("scalar grammar errors carry a column") {
  Ring g = Ring::graded({"x", "y"});
  try {
    Scalar::parse(g, "x^");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(Scalar::parse(g, "z"), ForeignElement);
  CHECK_THROWS_AS(Scalar::parse(Ring::rationals(), "x"), ForeignElement);
  CHECK_THROWS_AS(Scalar::parse(g, "2 3"), ParseError);
  CHECK_THROWS_AS(Scalar::parse(g, ""), ParseError);
}

TEST_CASE("ring axioms on random triples") {
  Rng rng(11);
  for (const Ring& ring : {Ring::integers(), Ring::rationals(), Ring::prime_field(7), Ring::localized(3)}) {
    for (int t = 0; t < 200; ++t) {
      Scalar a = testing::random_scalar(ring, rng), b = testing::random_scalar(ring, rng),
             c = testing::random_scalar(ring, rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + (-a) == Scalar::zero(ring));
      if (a.is_unit()) CHECK(a * a.inverse() == Scalar::one(ring));
      CHECK(Scalar::parse(ring, a.to_string()) == a);
    }
  }
}

TEST_CASE("GF(p) against machine modular arithmetic") {
  Ring gf = Ring::prime_field(11);
  for (long a = -15; a <= 15; ++a) {
    for (long b = -15; b <= 15; b += 4) {
      long prod = ((a * b) % 11 + 11) % 11;
      long sum = ((a + b) % 11 + 11) % 11;
      CHECK(Scalar(gf, a) * Scalar(gf, b) == Scalar(gf, prod));
      CHECK(Scalar(gf, a) + Scalar(gf, b) == Scalar(gf, sum));
    }
  }
}

TEST_CASE("polynomial arithmetic agrees with evaluation") {
  Ring g = Ring::graded({"x", "y", "z"});
  Rng rng(5);
  std::vector<mpq_class> point{mpq_class(2, 3), mpq_class(-5), mpq_class(7, 2)};
  for (int t = 0; t < 100; ++t) {
    int da = testing::uniform(rng, 0, 3), db = testing::uniform(rng, 0, 3);
    Scalar a = testing::random_homogeneous(g, rng, da), b = testing::random_homogeneous(g, rng, db);
    CHECK(eval(a * b, point) == eval(a, point) * eval(b, point));
    CHECK(eval(a - b, point) == eval(a, point) - eval(b, point));
    if (!a.is_zero() && !b.is_zero()) {
      CHECK((a * b).is_homogeneous());
      CHECK((a * b).degree() == da + db);
    }
  }
}

TEST_CASE("ring maps") {
  Ring zz = Ring::integers(), gf5 = Ring::prime_field(5), l3 = Ring::localized(3), qq = Ring::rationals();
  CHECK(map_scalar(Scalar(zz, 7L), gf5) == Scalar(gf5, 2L));
  CHECK(map_scalar(q(l3, "1/2"), Ring::prime_field(3)) == Scalar(Ring::prime_field(3), 2L));
  CHECK(map_scalar(q(l3, "1/2"), qq) == q(qq, "1/2"));
  CHECK_THROWS_AS(map_scalar(Scalar(qq, 1L), zz), UnsupportedRing);
  CHECK(is_supported_ring_map(zz, qq));
  CHECK_FALSE(is_supported_ring_map(l3, Ring::prime_field(5)));
}
