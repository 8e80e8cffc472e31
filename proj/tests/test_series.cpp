#include <doctest.h>

#include "random.hpp"
#include "symchain/linalg.hpp"

using namespace symchain;
using symchain::testing::Rng;

namespace {

using Laurent = std::map<int, long long>;

Laurent trimmed(Laurent p) {
  std::erase_if(p, [](const auto& kv) { return kv.second == 0; });
  return p;
}

// ½[P(t)² + P(-t²)] by direct expansion.
Laurent series_rhs(const std::map<int, std::size_t>& ranks) {
  Laurent out;
  for (const auto& [a, ra] : ranks) {
    for (const auto& [b, rb] : ranks) out[a + b] += static_cast<long long>(ra * rb);
    out[2 * a] += (a % 2 == 0 ? 1 : -1) * static_cast<long long>(ra);
  }
  for (auto& [n, c] : out) {
    REQUIRE(c % 2 == 0);
    c /= 2;
  }
  return trimmed(out);
}

std::map<int, std::size_t> ranks_of(const FreeComplex& x) {
  std::map<int, std::size_t> r;
  for (int n : x.degrees()) r[n] = x.rank(n);
  return r;
}

FreeComplex with_ranks(const Ring& ring, std::map<int, std::size_t> ranks) { return FreeComplex(ring, ranks, {}); }

FreeComplex kxy() {
  Ring g = Ring::graded({"x", "y"});
  return koszul({Scalar::variable(g, 0), Scalar::variable(g, 1)});
}

}  // namespace

TEST_CASE("rank series") {
  CHECK(rank_series(kxy()).to_string() == "1+2t+t^2");
  CHECK(rank_series(sym2(kxy()).complex).to_string() == "1+2t+2t^2+2t^3+t^4");
  CHECK(rank_series(zero_complex(Ring::rationals())).to_string() == "0");
  RankSeries shifted = rank_series(shift(kxy(), -2));
  CHECK(shifted.to_string() == "t^-2+2t^-1+1");
  CHECK(RankSeries::parse(shifted.to_string()) == shifted);
  CHECK(RankSeries::parse("3+2t") == RankSeries{{{0, 3}, {1, 2}}});
  CHECK_THROWS_AS(RankSeries::parse("3+"), ParseError);
}

TEST_CASE("series identity examples") {
  FreeComplex x = with_ranks(Ring::rationals(), {{0, 3}, {1, 2}});
  SeriesIdentity s = verify_series_identity(x);
  CHECK(s.holds());
  CHECK(s.lhs.to_string() == "6+6t+t^2");
  CHECK(s.rhs.to_string() == "6+6t+t^2");

  SeriesIdentity k = verify_series_identity(kxy());
  CHECK(k.holds());
  CHECK(k.rhs.to_string() == "1+2t+2t^2+2t^3+t^4");

  SeriesIdentity z = verify_series_identity(zero_complex(Ring::integers()));
  CHECK(z.holds());
  CHECK(z.lhs.to_string() == "0");
}

TEST_CASE("series identity on random complexes of every backend") {
  Rng rng(30);
  for (const Ring& ring : {Ring::integers(), Ring::rationals(), Ring::prime_field(2), Ring::localized(3),
                           Ring::graded({"x", "y"})}) {
    for (int t = 0; t < 15; ++t) {
      FreeComplex x = testing::random_complex(ring, rng);
      SeriesIdentity s = verify_series_identity(x);
      CHECK(s.holds());
      CHECK(s.rhs.coeffs == series_rhs(ranks_of(x)));
    }
  }
}

TEST_CASE("rank formula over random profiles") {
  Rng rng(31);
  for (int t = 0; t < 200; ++t) {
    std::map<int, std::size_t> ranks;
    for (int n = -2; n <= 3; ++n) {
      int r = testing::uniform(rng, 0, 4);
      if (r > 0) ranks[n] = r;
    }
    Laurent expect = series_rhs(ranks);
    for (int n = -5; n <= 7; ++n) {
      CHECK(static_cast<long long>(sym2_rank_formula(ranks, n)) == (expect.count(n) ? expect.at(n) : 0));
    }
  }
}

TEST_CASE("poinc examples") {
  PoincReport b = poinc_check({1}, -1, 4);
  CHECK(b.constant);
  CHECK(b.expansion[0] == 0);
  CHECK(b.cases == std::vector<char>{'b'});
  CHECK(b.forced == 1);
  CHECK(b.consistent);

  PoincReport d = poinc_check({2}, -1, 4);
  CHECK(d.expansion[0] == 2);
  CHECK(d.cases == std::vector<char>{'d'});
  CHECK(d.forced == 2);

  PoincReport r = poinc_check({1, 1}, -1, 4);
  CHECK_FALSE(r.constant);
  CHECK(r.expansion == std::vector<long long>{0, 2, 2, 0, 0});
  CHECK(r.cases.empty());

  PoincReport c = poinc_check({1}, 1, 4);
  CHECK(c.cases == std::vector<char>{'a', 'c'});
  CHECK(c.forced == 1);

  CHECK_THROWS_AS(poinc_check({0, 1}, 1, 4), ContractViolation);
  CHECK_THROWS_AS(poinc_check({1}, 1, 1), ContractViolation);
}

TEST_CASE("poinc brute force") {
  const int order = 20;
  for (int sign : {1, -1}) {
    for (long long r0 = 1; r0 <= 3; ++r0) {
      for (int code = 0; code < 81; ++code) {
        std::vector<long long> q{r0};
        for (int k = 0, c = code; k < 4; ++k, c /= 3) q.push_back(c % 3);
        // Full product and substitution; degree 8 is below the truncation.
        std::vector<long long> e(order + 1, 0);
        for (std::size_t i = 0; i < q.size(); ++i) {
          for (std::size_t j = 0; j < q.size(); ++j) e[i + j] += q[i] * q[j];
          e[2 * i] += sign * (i % 2 == 0 ? 1 : -1) * q[i];
        }
        bool constant = std::all_of(e.begin() + 1, e.end(), [](long long v) { return v == 0; });
        PoincReport rep = poinc_check(q, sign, order);
        CHECK(rep.expansion == e);
        CHECK(rep.constant == constant);
        CHECK(rep.consistent);
        CHECK(rep.higher_vanish == (code == 0));
        if (constant) CHECK(code == 0);
        if (sign == 1) CHECK(e[0] != 0);
        if (constant && sign == -1 && e[0] == 0) CHECK(r0 == 1);
        if (constant && sign == -1 && e[0] == 2) CHECK(r0 == 2);
        if (constant && sign == 1 && e[0] == 2) CHECK(r0 == 1);
      }
    }
  }
}

TEST_CASE("minimize examples") {
  Ring qq = Ring::rationals();
  FreeComplex k11 = koszul({Scalar(qq, 1L), Scalar(qq, 1L)});
  Minimization m = minimize(k11);
  CHECK(m.minimal.empty());
  CHECK(is_quasi_iso(m.q) == Verdict::True);

  FreeComplex k = kxy();
  CHECK(is_minimal(k));
  CHECK(minimize(k).minimal == k);
  CHECK(is_minimal(sym2(k).complex));
  CHECK(pd_finite(k).sym2_length == 4);

  Ring l3 = Ring::localized(3);
  FreeComplex r = free_module(l3, 0);
  FreeComplex unit(l3, {{0, 1}, {1, 1}}, {{1, SparseMatrix::identity(l3, 1)}});
  Rng rng(32);
  for (int t = 0; t < 10; ++t) {
    FreeComplex x = testing::random_complex(l3, rng);
    FreeComplex mx = minimize(x).minimal;
    FreeComplex padded = minimize(direct_sum(x, shift(unit, testing::uniform(rng, -1, 2)))).minimal;
    CHECK(rank_series(padded) == rank_series(mx));
    CHECK(homology(padded).degrees == homology(mx).degrees);
  }
  CHECK_THROWS_AS(minimize(free_module(Ring::integers(), 0)), UnsupportedRing);
  CHECK_THROWS_AS(is_minimal(free_module(Ring::integers(), 0)), UnsupportedRing);
}

TEST_CASE("minimize properties") {
  Rng rng(33);
  for (const Ring& ring : {Ring::localized(3), Ring::rationals(), Ring::prime_field(5), Ring::graded({"x", "y"})}) {
    for (int t = 0; t < 12; ++t) {
      FreeComplex x = testing::random_complex(ring, rng);
      Minimization m = minimize(x);
      CHECK(is_minimal(m.minimal));
      CHECK_FALSE(m.minimal.validate().has_value());
      CHECK(is_chain_map(m.q));
      CHECK(is_chain_map(m.section));
      CHECK(holds(is_quasi_iso(m.q)));
      CHECK(compose(m.q, m.section) == identity_map(m.minimal));
      for (int n : x.degrees()) CHECK(m.minimal.rank(n) <= x.rank(n));
      CHECK(minimize(m.minimal).minimal == m.minimal);
      if (ring.is_field()) {
        HomologyReport h = homology(x);
        for (int n : x.degrees()) {
          CHECK(m.minimal.d(n).is_zero());
          CHECK(m.minimal.rank(n) == *h.at(n).dimension);
        }
      }
    }
  }
}

TEST_CASE("minimal complexes from different pivot orders are isomorphic") {
  Rng rng(34);
  for (const Ring& ring : {Ring::localized(3), Ring::prime_field(7)}) {
    for (int t = 0; t < 15; ++t) {
      FreeComplex x = testing::random_complex(ring, rng);
      Minimization a = minimize(x, PivotOrder::Ascending);
      Minimization b = minimize(x, PivotOrder::Descending);
      CHECK(rank_series(a.minimal) == rank_series(b.minimal));
      // A quasi-isomorphism between minimal complexes is an isomorphism.
      ChainMap ab = compose(b.q, a.section);
      CHECK(is_chain_map(ab));
      CHECK(is_isomorphism(ab));
    }
  }
}

TEST_CASE("pd finite reports") {
  Ring l3 = Ring::localized(3);
  PdReport s = pd_finite(shift(free_module(l3, 0), 2));
  CHECK(s.length == 0);
  CHECK(s.sym2_length == 0);

  // Minimal complex with nonzero ranks in degrees 1 and 3.
  FreeComplex x(l3, {{1, 2}, {3, 1}}, {});
  PdReport p = pd_finite(x);
  CHECK(p.rank_inequality);
  CHECK(sym2(x).complex.rank(4) >= 2);

  CHECK_FALSE(pd_finite(zero_complex(l3)).length.has_value());
  Rng rng(35);
  for (int t = 0; t < 10; ++t) CHECK(pd_finite(testing::random_complex(l3, rng, {3, 4, true})).rank_inequality);
}
