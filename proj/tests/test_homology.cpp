#include <doctest.h>

#include "oracles.hpp"
#include "random.hpp"
#include "symchain/linalg.hpp"

using namespace symchain;
using symchain::testing::Rng;

namespace {

FpAbelianGroup group(std::size_t free, std::vector<long> torsion = {}) {
  FpAbelianGroup g;
  g.free_rank = free;
  for (long t : torsion) g.torsion.emplace_back(t);
  return g;
}

// Number of monomials x^i y^j with i < a, j < b and i + j = d.
std::size_t box_count(int a, int b, int d) {
  std::size_t c = 0;
  for (int i = 0; i < a; ++i) {
    if (d - i >= 0 && d - i < b) ++c;
  }
  return c;
}

// Presentation of S²(M) (sign +1) or of M⊗M/<x⊗y + y⊗x> (sign -1) for
// M = coker A, on generators e_a e_b with a <= b. With sign -1 the diagonal
// e_a e_a carries the extra relation 2 e_a e_a.
SparseMatrix square_oracle(const SparseMatrix& a, int sign) {
  const Ring& ring = a.ring();
  std::size_t r = a.rows();
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> idx;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i; j < r; ++j) idx[{i, j}] = idx.size();
  }
  std::vector<std::map<std::size_t, Scalar>> cols;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    for (std::size_t b = 0; b < r; ++b) {
      // (Σ_i A_ic e_i) e_b
      std::map<std::size_t, Scalar> col;
      for (std::size_t i = 0; i < r; ++i) {
        Scalar v = a.at(i, c);
        if (v.is_zero()) continue;
        std::size_t lo = std::min(i, b), hi = std::max(i, b);
        if (i > b && sign < 0) v = -v;
        auto [it, fresh] = col.emplace(idx.at({lo, hi}), v);
        if (!fresh) it->second = it->second + v;
      }
      cols.push_back(col);
    }
  }
  if (sign < 0) {
    for (std::size_t i = 0; i < r; ++i) cols.push_back({{idx.at({i, i}), Scalar(ring, 2L)}});
  }
  SparseMatrix out(ring, idx.size(), cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    for (const auto& [row, v] : cols[k]) out.set(row, k, v);
  }
  return out;
}

FpAbelianGroup coker_group(const SparseMatrix& rel) {
  ModuleInvariants inv = cokernel_invariants(rel);
  return FpAbelianGroup{inv.free_rank, inv.torsion};
}

}  // namespace

TEST_CASE("homology examples over ZZ") {
  Ring zz = Ring::integers();
  HomologyReport k3 = homology(koszul({Scalar(zz, 3L)}));
  CHECK(k3.at(0).group == group(0, {3}));
  CHECK(k3.at(1).group == group(0));
  CHECK(k3.at(0).to_string(zz) == "Z/3");

  HomologyReport s = homology(sym2(koszul({Scalar(zz, 1L), Scalar(zz, 1L)})).complex);
  CHECK(s.at(3).group == group(0, {2}));
  CHECK(s.inf() == 3);
  CHECK(s.at(17).is_zero());
}

TEST_CASE("graded homology of S²(K(x,y))") {
  Ring g = Ring::graded({"x", "y"});
  FreeComplex s = sym2(koszul({Scalar::variable(g, 0), Scalar::variable(g, 1)})).complex;
  HomologyReport h = homology(s, 6);
  CHECK(h.bound == 6);
  CHECK(h.at(0).hilbert == HilbertTable{{0, 1}});
  CHECK(h.at(2).hilbert == HilbertTable{{2, 1}});
  for (int n : {1, 3, 4}) CHECK(h.at(n).is_zero());
}

TEST_CASE("graded homology against monomial counts") {
  Ring g = Ring::graded({"x", "y"});
  Scalar x = Scalar::variable(g, 0), y = Scalar::variable(g, 1);
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      Scalar xa = Scalar::one(g), yb = Scalar::one(g);
      for (int k = 0; k < a; ++k) xa = xa * x;
      for (int k = 0; k < b; ++k) yb = yb * y;
      HomologyReport h = homology(koszul({xa, yb}), 8);
      HilbertTable expect;
      for (int d = 0; d <= 8; ++d) {
        if (std::size_t c = box_count(a, b, d)) expect[d] = c;
      }
      CHECK(h.at(0).hilbert == expect);
      CHECK(h.at(1).is_zero());
      CHECK(h.at(2).is_zero());
    }
  }
  // K(x, x) has H_1 generated in internal degree 1 and isomorphic to R/(x) up to shift.
  HomologyReport hx = homology(koszul({x, x}), 4);
  HilbertTable h1;
  for (int d = 1; d <= 4; ++d) h1[d] = 1;
  CHECK(hx.at(1).hilbert == h1);
}

TEST_CASE("presented homology") {
  Ring zz = Ring::integers();
  auto wk = std::get<PresentedComplex>(weak_sym2(koszul({Scalar(zz, 3L)})));
  HomologyReport h = homology_presented(wk);
  CHECK(h.at(2).group == group(0, {2}));
  CHECK(h.at(1).group == group(0));
  CHECK(h.at(0).group == group(0, {3}));

  auto ws = std::get<PresentedComplex>(weak_sym2(shift(free_module(zz, 0), 1)));
  HomologyReport hs = homology_presented(ws);
  CHECK(hs.at(2).group == group(0, {2}));
  CHECK(hs.inf() == 2);
  for (int n = -3; n <= 6; ++n) {
    if (n != 2) CHECK(hs.at(n).is_zero());
  }

  Rng rng(2);
  for (const Ring& ring : {Ring::integers(), Ring::localized(3)}) {
    for (int t = 0; t < 20; ++t) {
      FreeComplex x = testing::random_complex(ring, rng);
      HomologyReport a = homology(x), b = homology_presented(PresentedComplex::from_free(x));
      for (int n = x.lo() - 1; n <= x.hi() + 1; ++n) CHECK(a.at(n) == b.at(n));
    }
  }
  CHECK_THROWS_AS(homology_presented(PresentedComplex::from_free(free_module(Ring::rationals(), 0))), UnsupportedRing);
}

TEST_CASE("homology over ZZ and ZLoc(p) against determinantal divisors") {
  Rng rng(21);
  for (const Ring& ring : {Ring::integers(), Ring::localized(2), Ring::localized(3)}) {
    for (int t = 0; t < 40; ++t) {
      FreeComplex x = testing::random_complex(ring, rng);
      HomologyReport h = homology(x);
      for (int n = x.lo() - 1; n <= x.hi() + 1; ++n) CHECK(*h.at(n).group == testing::homology_oracle(x, n));
    }
  }
}

TEST_CASE("Euler characteristic") {
  Rng rng(22);
  for (const Ring& ring : {Ring::rationals(), Ring::prime_field(3), Ring::integers()}) {
    for (int t = 0; t < 30; ++t) {
      FreeComplex x = testing::random_complex(ring, rng);
      HomologyReport h = homology(x);
      long ranks = 0, homs = 0;
      for (int n : x.degrees()) {
        long sign = n % 2 == 0 ? 1 : -1;
        ranks += sign * static_cast<long>(x.rank(n));
        const DegreeHomology d = h.at(n);
        homs += sign * static_cast<long>(d.dimension ? *d.dimension : d.group->free_rank);
      }
      CHECK(ranks == homs);
    }
  }
}

TEST_CASE("universal coefficients under base change") {
  Rng rng(23);
  for (int t = 0; t < 30; ++t) {
    FreeComplex x = testing::random_complex(Ring::integers(), rng);
    HomologyReport hz = homology(x);
    HomologyReport hq = homology(map_complex(x, Ring::rationals()));
    for (long p : {2L, 3L, 5L}) {
      HomologyReport hp = homology(map_complex(x, Ring::prime_field(p)));
      for (int n = x.lo() - 1; n <= x.hi() + 1; ++n) {
        auto divisible = [&](int k) {
          std::size_t c = 0;
          const DegreeHomology hk = hz.at(k);
          for (const auto& f : hk.group->torsion) c += f % p == 0 ? 1 : 0;
          return c;
        };
        CHECK(*hp.at(n).dimension == hz.at(n).group->free_rank + divisible(n) + divisible(n - 1));
      }
    }
    for (int n = x.lo() - 1; n <= x.hi() + 1; ++n) CHECK(*hq.at(n).dimension == hz.at(n).group->free_rank);
  }
}

TEST_CASE("quasi-isomorphisms and exactness") {
  Ring qq = Ring::rationals();
  FreeComplex k11 = koszul({Scalar(qq, 1L), Scalar(qq, 1L)});
  CHECK(is_exact(k11) == Verdict::True);
  CHECK(is_quasi_iso(identity_map(k11)) == Verdict::True);
  CHECK(is_quasi_iso(zero_map(k11, zero_complex(qq))) == Verdict::True);
  CHECK(is_quasi_iso(zero_map(free_module(qq, 0), free_module(qq, 0))) == Verdict::False);

  Ring g = Ring::graded({"x", "y"});
  FreeComplex k = koszul({Scalar::variable(g, 0), Scalar::variable(g, 1)});
  CHECK(is_quasi_iso(sym2(k).proj) == Verdict::False);
  CHECK(is_quasi_iso(identity_map(k)) == Verdict::TrueUpToBound);
  CHECK(inf_h(k) == 0);
  CHECK(inf_h(shift(free_module(qq, 0), 2)) == 2);
  CHECK_FALSE(inf_h(k11).has_value());

  Rng rng(24);
  for (int t = 0; t < 15; ++t) {
    FreeComplex x = testing::random_complex(Ring::localized(3), rng);
    CHECK(holds(is_quasi_iso(identity_map(x))));
    CHECK(is_quasi_iso(zero_map(x, x)) == (is_exact(x) == Verdict::True ? Verdict::True : Verdict::False));
  }
  CHECK_THROWS_AS(is_quasi_iso(ChainMap(free_module(qq, 0), free_module(Ring::integers(), 0))), RingMismatch);
}

TEST_CASE("inf of S² for minimal complexes and H_{2i}") {
  Rng rng(25);
  Ring l3 = Ring::localized(3);
  int checked = 0;
  for (int t = 0; t < 60 && checked < 25; ++t) {
    FreeComplex x = testing::random_complex(l3, rng, {2, 3, true});
    if (x.empty()) continue;
    ++checked;
    int i = *inf_h(x);
    CHECK(i == x.lo());
    HomologyReport hs = homology(sym2(x).complex);
    if (hs.inf()) {
      CHECK(*hs.inf() >= 2 * i);
      if (i % 2 == 0) CHECK(*hs.inf() == 2 * i);
    }
    SparseMatrix a = x.d(i + 1);
    CHECK(*hs.at(2 * i).group == coker_group(square_oracle(a, i % 2 == 0 ? 1 : -1)));
  }
  CHECK(checked >= 20);

  Ring g = Ring::graded({"x", "y"});
  FreeComplex k = koszul({Scalar::variable(g, 0), Scalar::variable(g, 1)});
  for (int s = 0; s <= 3; ++s) {
    HomologyReport h = homology(sym2(shift(k, s)).complex);
    REQUIRE(h.inf().has_value());
    CHECK(*h.inf() >= 2 * s);
    if (s % 2 == 0) CHECK(*h.inf() == 2 * s);
  }
}

TEST_CASE("degree bound") {
  Ring g = Ring::graded({"x", "y"});
  FreeComplex k = koszul({Scalar::variable(g, 0), Scalar::variable(g, 1)});
  // max internal degree of K⊗K is 4, total rank 4.
  CHECK(default_degree_bound(k) == 10);
  CHECK(homology(k).bound == 10);
  CHECK(homology(free_module(Ring::integers(), 0)).bound == -1);
}
