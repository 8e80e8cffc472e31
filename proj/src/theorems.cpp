#include "symchain/theorems.hpp"

#include <sstream>

#include "symchain/linalg.hpp"

namespace symchain {

std::string VerdictReport::vector_string() const {
  std::string s;
  for (const auto& c : conditions) {
    s += c.verdict == Verdict::False ? 'F' : (c.verdict == Verdict::True ? 'T' : 'B');
  }
  return s;
}

bool VerdictReport::consistent() const {
  if (conditions.empty()) return true;
  if (!equivalence) {
    for (const auto& c : conditions) {
      if (!holds(c.verdict)) return false;
    }
    return true;
  }
  bool first = holds(conditions.front().verdict);
  for (const auto& c : conditions) {
    if (holds(c.verdict) != first) return false;
  }
  return true;
}

std::string VerdictReport::to_string() const {
  std::ostringstream os;
  os << "theorem: " << theorem << "\n";
  os << "ring: " << ring << "\n";
  os << "bound: " << (bound >= 0 ? std::to_string(bound) : std::string("exact")) << "\n";
  os << "conditions: " << vector_string() << "\n";
  for (std::size_t k = 0; k < conditions.size(); ++k) {
    const auto& c = conditions[k];
    os << "  (" << k + 1 << ") " << c.name << ": " << symchain::to_string(c.verdict);
    if (!c.witness.empty()) os << " [" << c.witness << "]";
    os << "\n";
  }
  if (j) os << "j: " << *j << "\n";
  for (const auto& n : notes) os << "note: " << n << "\n";
  os << "verdict: " << (ok() ? "consistent" : "INCONSISTENT") << "\n";
  return os.str();
}

std::optional<int> single_free_module_degree(const FreeComplex& minimal) {
  auto degs = minimal.degrees();
  if (degs.size() != 1 || minimal.rank(degs[0]) != 1) return std::nullopt;
  return degs[0];
}

namespace {

void require_backend(const Ring& ring) {
  if (!ring.is_local() || !two_is_unit(ring)) {
    throw UnsupportedRing("theorem checks need a local ring with 2 a unit, got " + ring.name());
  }
}

std::optional<int> bound_for(const FreeComplex& x) {
  if (!x.is_graded()) return std::nullopt;
  return default_degree_bound(x);
}

VerdictReport start(const std::string& id, const FreeComplex& x) {
  require_backend(x.ring());
  VerdictReport r;
  r.theorem = id;
  r.ring = x.ring().name();
  if (auto b = bound_for(x)) r.bound = *b;
  return r;
}

Condition exactness(const std::string& name, const FreeComplex& c, std::optional<int> bound) {
  HomologyReport h = homology(c, bound);
  Condition out{name, Verdict::False, ""};
  if (auto n = h.inf()) {
    out.witness = "H_" + std::to_string(*n) + " = " + h.at(*n).to_string(c.ring());
  } else {
    out.verdict = h.bounded() ? Verdict::TrueUpToBound : Verdict::True;
  }
  return out;
}

Condition quasi_iso(const std::string& name, const ChainMap& f, std::optional<int> bound) {
  Condition c = exactness(name, cone(f), bound);
  if (!c.witness.empty()) c.witness = "cone " + c.witness;
  return c;
}

Condition boolean(const std::string& name, bool value, std::string witness = "") {
  return Condition{name, value ? Verdict::True : Verdict::False, std::move(witness)};
}

std::string shape_of(const FreeComplex& m) {
  RankSeries s = rank_series(m);
  return "minimal rank series " + s.to_string();
}

}  // namespace

VerdictReport check_symm07(const FreeComplex& x) {
  VerdictReport r = start("symm07", x);
  auto bound = bound_for(x);
  Sym2 s = sym2(x);
  SplitDecomposition sd = split_decomposition(x);
  r.conditions.push_back(quasi_iso("proj quasi-isomorphism", s.proj, bound));
  r.conditions.push_back(exactness("Im(alpha) exact", sd.im_alpha, bound));
  r.conditions.push_back(quasi_iso("j quasi-isomorphism", sd.j, bound));
  FreeComplex m = minimize(x).minimal;
  auto deg = single_free_module_degree(m);
  r.conditions.push_back(boolean("X ~ 0 or Sigma^{2n} R", m.empty() || (deg && *deg % 2 == 0), shape_of(m)));
  return r;
}

VerdictReport check_symm07pp(const FreeComplex& x) {
  VerdictReport r = start("symm07pp", x);
  auto bound = bound_for(x);
  SplitDecomposition sd = split_decomposition(x);
  r.conditions.push_back(quasi_iso("alpha quasi-isomorphism", alpha(x), bound));
  r.conditions.push_back(quasi_iso("q quasi-isomorphism", sd.q, bound));
  r.conditions.push_back(quasi_iso("iota quasi-isomorphism", sd.iota, bound));
  r.conditions.push_back(exactness("S2(X) exact", sd.s2, bound));
  r.conditions.push_back(exactness("ker(alpha) exact", sd.ker_alpha, bound));
  FreeComplex m = minimize(x).minimal;
  auto deg = single_free_module_degree(m);
  r.conditions.push_back(boolean("X ~ 0 or Sigma^{2n+1} R", m.empty() || (deg && *deg % 2 != 0), shape_of(m)));
  return r;
}

VerdictReport check_s2fpd01(const FreeComplex& x) {
  VerdictReport r = start("s2fpd01", x);
  r.bound = -1;
  PdReport pd = pd_finite(x);
  auto len = [](const std::optional<int>& l) { return l ? "length " + std::to_string(*l) : std::string("zero complex"); };
  // Bounded complexes have bounded minimal models, so both sides are finite.
  r.conditions.push_back(boolean("pd(X) finite", true, len(pd.length)));
  r.conditions.push_back(boolean("pd(S2(X)) finite", true, len(pd.sym2_length)));
  r.extra_ok = pd.rank_inequality;
  r.notes.push_back(std::string("rank S2(P)_{p+q} >= r_p r_q: ") + (pd.rank_inequality ? "holds" : "FAILS"));
  return r;
}

VerdictReport check_s2fpd02(const FreeComplex& x) {
  VerdictReport r = start("s2fpd02", x);
  r.bound = -1;
  FreeComplex m = minimize(x).minimal;
  bool shape = false;
  if (auto d = single_free_module_degree(m)) shape = *d % 2 == 0;
  if (m.total_rank() == 2) {
    bool all_odd = true;
    for (int n : m.degrees()) all_odd = all_odd && n % 2 != 0;
    shape = shape || all_odd;
  }
  r.conditions.push_back(boolean("X ~ Sigma^{2n} R or Sigma^{2n+1} R + Sigma^{2m+1} R", shape, shape_of(m)));
  FreeComplex ms = minimize(sym2(x).complex).minimal;
  auto j = single_free_module_degree(ms);
  r.conditions.push_back(boolean("S2(X) ~ Sigma^j R, j even", j && *j % 2 == 0, shape_of(ms)));
  r.conditions.push_back(boolean("S2(X) ~ Sigma^j R", j.has_value(), shape_of(ms)));
  r.j = j;
  return r;
}

namespace {

/// Presentation of H⊗H modulo x⊗y - s·y⊗x... written as generators e_a⊗e_b
/// of H = coker(A) and relation columns [A⊗1 | 1⊗A | symmetrizers].
struct Presentation {
  SparseMatrix rel;
  std::vector<int> gens;
  std::vector<int> rels;
};

Presentation square_presentation(const SparseMatrix& a, const std::vector<int>& g0, const std::vector<int>& g1,
                                 bool graded, int sym_sign) {
  const Ring& ring = a.ring();
  const std::size_t r = a.rows(), c = a.cols();
  Presentation p{SparseMatrix(ring, r * r, 0), {}, {}};
  SparseMatrix left = kron(a, SparseMatrix::identity(ring, r));
  SparseMatrix right = kron(SparseMatrix::identity(ring, r), a);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = i; k < r; ++k) {
      if (i == k && sym_sign < 0) continue;  // x⊗x - x⊗x = 0
      pairs.emplace_back(i, k);
    }
  }
  SparseMatrix sym(ring, r * r, pairs.size());
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    auto [i, k] = pairs[t];
    sym.add_to(i * r + k, t, Scalar::one(ring));
    sym.add_to(k * r + i, t, Scalar(ring, static_cast<long>(sym_sign)));
  }
  p.rel = hstack(hstack(left, right), sym);
  if (graded) {
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t k = 0; k < r; ++k) p.gens.push_back(g0[i] + g0[k]);
    }
    for (std::size_t col = 0; col < c; ++col) {
      for (std::size_t k = 0; k < r; ++k) p.rels.push_back(g1[col] + g0[k]);
    }
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t col = 0; col < c; ++col) p.rels.push_back(g0[i] + g1[col]);
    }
    for (auto [i, k] : pairs) p.rels.push_back(g0[i] + g0[k]);
  }
  return p;
}

}  // namespace

VerdictReport check_symm09(const FreeComplex& x) {
  VerdictReport r = start("symm09", x);
  r.equivalence = false;
  auto bound = bound_for(x);
  FreeComplex m = minimize(x).minimal;
  if (m.empty()) {
    r.notes.push_back("X is exact: inf(X) is undefined, nothing to check");
    return r;
  }
  // For a minimal complex the lowest module carries nonzero homology.
  const int i = m.lo();
  HomologyReport hs = homology(sym2(x).complex, bound);
  auto inf_s = hs.inf();
  r.notes.push_back("inf(X) = " + std::to_string(i) + ", inf(S2(X)) = " +
                    (inf_s ? std::to_string(*inf_s) : std::string("none")));
  r.conditions.push_back(boolean("inf(S2 X) >= 2 inf(X)", !inf_s || *inf_s >= 2 * i));
  if (i % 2 == 0) {
    r.conditions.push_back(boolean("inf(S2 X) = 2 inf(X) for even inf", inf_s && *inf_s == 2 * i));
  }

  const int sym_sign = (i % 2 == 0) ? -1 : 1;
  Presentation p = square_presentation(m.d(i + 1), m.gdeg(i), m.gdeg(i + 1), x.is_graded(), sym_sign);
  DegreeHomology actual = hs.at(2 * i);
  DegreeHomology expected;
  if (x.ring().is_field()) {
    expected.dimension = p.rel.rows() - rank(p.rel);
  } else if (x.is_graded()) {
    expected.hilbert = cokernel_hilbert(p.rel, p.gens, p.rels, *bound);
  } else {
    ModuleInvariants inv = cokernel_invariants(p.rel);
    expected.group = FpAbelianGroup{inv.free_rank, inv.torsion};
  }
  Condition iso = boolean(i % 2 == 0 ? "H_{2i}(S2 X) = S2(H_i X)" : "H_{2i}(S2 X) = H_i⊗H_i / <x⊗y + y⊗x>",
                          actual == expected,
                          "expected " + expected.to_string(x.ring()) + ", got " + actual.to_string(x.ring()));
  if (iso.verdict == Verdict::True && bound) iso.verdict = Verdict::TrueUpToBound;
  r.conditions.push_back(iso);
  return r;
}

}  // namespace symchain
