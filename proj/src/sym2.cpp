#include "symchain/sym2.hpp"

#include <algorithm>

#include "symchain/kernels.hpp"
#include "symchain/linalg.hpp"

namespace symchain {

namespace {

Scalar sign(const Ring& ring, long exponent) {
  return (exponent % 2 == 0) ? Scalar::one(ring) : -Scalar::one(ring);
}

Scalar half(const Ring& ring) {
  if (!two_is_unit(ring)) throw TwoNotUnit("2 is not a unit in " + ring.name());
  return Scalar(ring, 2L).inverse();
}

/// Position of x_a ⊗ x_b inside (X⊗Y)_{a.p+b.p}.
class TensorIndex {
 public:
  TensorIndex(const FreeComplex& x, const FreeComplex& y) : x_(x), y_(y) {}

  std::size_t operator()(const Label& a, const Label& b) const {
    int n = a.p + b.p;
    auto& offsets = cache_[n];
    if (offsets.empty()) {
      for (const auto& blk : tensor_blocks(x_, y_, n)) offsets[blk.p] = blk.offset;
    }
    return offsets.at(a.p) + a.i * y_.rank(b.p) + b.i;
  }

  /// Enumerates (index, a, b) over the basis of (X⊗Y)_n.
  template <typename F>
  void for_each(int n, F&& f) const {
    for (const auto& blk : tensor_blocks(x_, y_, n)) {
      std::size_t ry = y_.rank(blk.q);
      for (std::size_t i = 0; i < x_.rank(blk.p); ++i) {
        for (std::size_t j = 0; j < ry; ++j) f(blk.offset + i * ry + j, Label{blk.p, i}, Label{blk.q, j});
      }
    }
  }

 private:
  const FreeComplex& x_;
  const FreeComplex& y_;
  mutable std::map<int, std::map<int, std::size_t>> cache_;
};

std::map<int, std::vector<int>> sym_gdeg(const FreeComplex& x, const SymBasis& basis) {
  std::map<int, std::vector<int>> out;
  if (!x.is_graded()) return out;
  for (int n : basis.degrees()) {
    auto& g = out[n];
    for (const auto& gen : basis.generators(n)) g.push_back(x.gdeg(gen.a.p)[gen.a.i] + x.gdeg(gen.b.p)[gen.b.i]);
  }
  return out;
}

std::map<int, std::size_t> sym_ranks(const SymBasis& basis) {
  std::map<int, std::size_t> out;
  for (int n : basis.degrees()) out[n] = basis.size(n);
  return out;
}

/// ρ_{n-1} d^{X⊗X}_n σ_n for every degree.
std::map<int, SparseMatrix> induced_differentials(const FreeComplex& xx, const SymReduction& red) {
  std::map<int, SparseMatrix> out;
  for (int n : red.basis.degrees()) {
    if (red.basis.size(n - 1) == 0) continue;
    out.emplace(n, matmul(red.rho.at(n - 1), matmul(xx.d(n), red.sigma.at(n))));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- basis

SymBasis::SymBasis(const FreeComplex& x, bool weak) : weak_(weak) {
  auto degs = x.degrees();
  for (int p : degs) {
    for (int q : degs) {
      if (q < p) continue;
      for (std::size_t i = 0; i < x.rank(p); ++i) {
        for (std::size_t j = 0; j < x.rank(q); ++j) {
          SymGenerator g{Label{p, i}, Label{q, j}};
          if (g.b < g.a) continue;
          if (!weak && g.odd_diagonal()) continue;
          gens_[p + q].push_back(g);
        }
      }
    }
  }
  for (auto& [n, list] : gens_) {
    std::sort(list.begin(), list.end());
    auto& idx = index_[n];
    for (std::size_t k = 0; k < list.size(); ++k) idx.emplace(list[k], k);
  }
}

const std::vector<SymGenerator>& SymBasis::generators(int n) const {
  static const std::vector<SymGenerator> none;
  auto it = gens_.find(n);
  return it == gens_.end() ? none : it->second;
}

std::optional<std::size_t> SymBasis::index(int n, const SymGenerator& g) const {
  auto it = index_.find(n);
  if (it == index_.end()) return std::nullopt;
  auto jt = it->second.find(g);
  if (jt == it->second.end()) return std::nullopt;
  return jt->second;
}

std::vector<int> SymBasis::degrees() const {
  std::vector<int> out;
  for (const auto& [n, g] : gens_) out.push_back(n);
  return out;
}

SymReduction sym_reduction(const FreeComplex& x, bool weak) {
  SymReduction red{SymBasis(x, weak), {}, {}};
  const Ring& ring = x.ring();
  FreeComplex xx = tensor(x, x);
  TensorIndex tix(x, x);
  for (int n : xx.degrees()) {
    const std::size_t s = red.basis.size(n);
    SparseMatrix rho(ring, s, xx.rank(n));
    tix.for_each(n, [&](std::size_t col, const Label& a, const Label& b) {
      if (!(b < a)) {
        if (auto k = red.basis.index(n, {a, b})) rho.set(*k, col, Scalar::one(ring));
      } else {
        if (auto k = red.basis.index(n, {b, a})) rho.set(*k, col, sign(ring, long(a.p) * b.p));
      }
    });
    SparseMatrix sigma(ring, xx.rank(n), s);
    for (std::size_t k = 0; k < s; ++k) {
      const auto& g = red.basis.generators(n)[k];
      sigma.set(tix(g.a, g.b), k, Scalar::one(ring));
    }
    red.rho.emplace(n, std::move(rho));
    red.sigma.emplace(n, std::move(sigma));
  }
  return red;
}

// ---------------------------------------------------------------- α and S²

ChainMap alpha(const FreeComplex& x) {
  const Ring& ring = x.ring();
  FreeComplex xx = tensor(x, x);
  TensorIndex tix(x, x);
  std::map<int, SparseMatrix> maps;
  for (int n : xx.degrees()) {
    SparseMatrix m(ring, xx.rank(n), xx.rank(n));
    tix.for_each(n, [&](std::size_t col, const Label& a, const Label& b) {
      m.add_to(col, col, Scalar::one(ring));
      m.add_to(tix(b, a), col, -sign(ring, long(a.p) * b.p));
    });
    maps.emplace(n, std::move(m));
  }
  return ChainMap(xx, xx, std::move(maps));
}

Sym2 sym2(const FreeComplex& x) {
  SymReduction red = sym_reduction(x, false);
  FreeComplex xx = tensor(x, x);
  FreeComplex s(x.ring(), sym_ranks(red.basis), induced_differentials(xx, red), sym_gdeg(x, red.basis));
  std::map<int, SparseMatrix> proj;
  for (int n : red.basis.degrees()) proj.emplace(n, red.rho.at(n));
  ChainMap p(xx, s, std::move(proj));
  return Sym2{std::move(s), std::move(p), std::move(red)};
}

bool sym2_well_defined(const FreeComplex& x) {
  SymReduction red = sym_reduction(x, false);
  FreeComplex xx = tensor(x, x);
  ChainMap a = alpha(x);
  TensorIndex tix(x, x);
  for (int n : xx.degrees()) {
    if (red.basis.size(n - 1) == 0) continue;
    SparseMatrix rd = matmul(red.rho.at(n - 1), xx.d(n));
    if (!matmul(rd, a.at(n)).is_zero()) return false;
    for (int p : x.degrees()) {
      if (p % 2 == 0 || 2 * p != n) continue;
      for (std::size_t i = 0; i < x.rank(p); ++i) {
        std::size_t col = tix(Label{p, i}, Label{p, i});
        if (!rd.select_cols({col}).is_zero()) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------- presented complexes

PresentedComplex::PresentedComplex(Ring ring, std::map<int, std::size_t> gens, std::map<int, SparseMatrix> relations,
                                   std::map<int, SparseMatrix> diffs)
    : ring_(std::move(ring)) {
  for (const auto& [n, g] : gens) {
    if (g > 0) gens_[n] = g;
  }
  for (auto& [n, r] : relations) {
    if (r.rows() != generators(n)) throw DimensionMismatch("relations in degree " + std::to_string(n));
    if (r.cols() > 0 && r.rows() > 0) rel_.emplace(n, std::move(r));
  }
  for (auto& [n, m] : diffs) {
    if (m.rows() != generators(n - 1) || m.cols() != generators(n)) {
      throw DimensionMismatch("presented differential in degree " + std::to_string(n));
    }
    if (!m.is_zero()) d_.emplace(n, std::move(m));
  }
}

PresentedComplex PresentedComplex::from_free(const FreeComplex& x) {
  std::map<int, std::size_t> gens;
  std::map<int, SparseMatrix> diffs;
  for (int n : x.degrees()) {
    gens[n] = x.rank(n);
    diffs.emplace(n, x.d(n));
  }
  return PresentedComplex(x.ring(), gens, {}, std::move(diffs));
}

std::size_t PresentedComplex::generators(int n) const {
  auto it = gens_.find(n);
  return it == gens_.end() ? 0 : it->second;
}

std::vector<int> PresentedComplex::degrees() const {
  std::vector<int> out;
  for (const auto& [n, g] : gens_) out.push_back(n);
  return out;
}

SparseMatrix PresentedComplex::relations(int n) const {
  auto it = rel_.find(n);
  if (it != rel_.end()) return it->second;
  return SparseMatrix(ring_, generators(n), 0);
}

SparseMatrix PresentedComplex::d(int n) const {
  auto it = d_.find(n);
  if (it != d_.end()) return it->second;
  return SparseMatrix(ring_, generators(n - 1), generators(n));
}

bool PresentedComplex::validate() const {
  for (int n : degrees()) {
    if (generators(n - 1) == 0) continue;
    if (!in_column_span(relations(n - 1), matmul(d(n), relations(n)))) return false;
    if (generators(n - 2) > 0 && !in_column_span(relations(n - 2), matmul(d(n - 1), d(n)))) return false;
  }
  return true;
}

std::variant<FreeComplex, PresentedComplex> weak_sym2(const FreeComplex& x) {
  if (two_is_unit(x.ring())) return sym2(x).complex;
  SymReduction red = sym_reduction(x, true);
  FreeComplex xx = tensor(x, x);
  const Ring& ring = x.ring();
  std::map<int, SparseMatrix> relations;
  for (int n : red.basis.degrees()) {
    const auto& gens = red.basis.generators(n);
    std::vector<std::size_t> diag;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      if (gens[k].odd_diagonal()) diag.push_back(k);
    }
    SparseMatrix r(ring, gens.size(), diag.size());
    for (std::size_t c = 0; c < diag.size(); ++c) r.set(diag[c], c, Scalar(ring, 2L));
    relations.emplace(n, std::move(r));
  }
  return PresentedComplex(ring, sym_ranks(red.basis), std::move(relations), induced_differentials(xx, red));
}

// ---------------------------------------------------------------- functoriality

ChainMap sym2_map(const ChainMap& f) {
  Sym2 sx = sym2(f.source());
  Sym2 sy = sym2(f.target());
  ChainMap ff = tensor_map(f, f);
  std::map<int, SparseMatrix> maps;
  for (int n : sx.complex.degrees()) {
    if (sy.complex.rank(n) == 0) continue;
    maps.emplace(n, matmul(sy.reduction.rho.at(n), matmul(ff.at(n), sx.reduction.sigma.at(n))));
  }
  return ChainMap(sx.complex, sy.complex, std::move(maps));
}

// ---------------------------------------------------------------- split decomposition

namespace {

void require_split_backend(const Ring& ring) {
  if (!two_is_unit(ring)) throw TwoNotUnit("split decomposition needs 2 to be a unit in " + ring.name());
  if (ring.kind() == Ring::Kind::Integers) throw UnsupportedRing("split decomposition over ZZ");
}

/// Subcomplex of `ambient` spanned degreewise by the given unit bases, with
/// its inclusion map.
std::pair<FreeComplex, ChainMap> subcomplex(const FreeComplex& ambient, const std::map<int, UnitBasis>& bases) {
  const Ring& ring = ambient.ring();
  std::map<int, std::size_t> ranks;
  std::map<int, std::vector<int>> gdeg;
  for (const auto& [n, b] : bases) {
    ranks[n] = b.size();
    if (ring.is_graded()) {
      for (std::size_t r : b.pivot_rows) gdeg[n].push_back(ambient.gdeg(n)[r]);
    }
  }
  std::map<int, SparseMatrix> diffs;
  for (const auto& [n, b] : bases) {
    auto below = bases.find(n - 1);
    if (below == bases.end() || b.size() == 0 || below->second.size() == 0) continue;
    diffs.emplace(n, below->second.coordinates(matmul(ambient.d(n), b.basis)));
  }
  FreeComplex sub(ring, ranks, std::move(diffs), gdeg);
  std::map<int, SparseMatrix> incl;
  for (const auto& [n, b] : bases) {
    if (b.size() > 0) incl.emplace(n, b.basis);
  }
  ChainMap inclusion(sub, ambient, std::move(incl));
  return {std::move(sub), std::move(inclusion)};
}

}  // namespace

SplitDecomposition split_decomposition(const FreeComplex& x) {
  const Ring& ring = x.ring();
  require_split_backend(ring);
  Scalar h = half(ring);
  ChainMap a = alpha(x);
  const FreeComplex& xx = a.source();
  Sym2 s = sym2(x);

  std::map<int, UnitBasis> im_bases, ker_bases;
  for (int n : xx.degrees()) {
    im_bases.emplace(n, unit_image_basis(a.at(n)));
    ker_bases.emplace(n, unit_kernel_basis(a.at(n)));
  }
  auto [im, iota] = subcomplex(xx, im_bases);
  auto [ker, j] = subcomplex(xx, ker_bases);

  std::map<int, SparseMatrix> qm;
  for (int n : im.degrees()) qm.emplace(n, im_bases.at(n).coordinates(a.at(n)));
  ChainMap q(xx, im, std::move(qm));

  FreeComplex target = direct_sum(im, s.complex);
  std::map<int, SparseMatrix> fwd, back;
  for (int n : xx.degrees()) {
    fwd.emplace(n, vstack(scale(h, q.at(n)), s.proj.at(n)));
    SparseMatrix complement = mat_sub(SparseMatrix::identity(ring, xx.rank(n)), scale(h, a.at(n)));
    SparseMatrix lift = s.complex.rank(n) > 0 ? matmul(complement, s.reduction.sigma.at(n))
                                             : SparseMatrix(ring, xx.rank(n), 0);
    back.emplace(n, hstack(iota.at(n), lift));
  }
  ChainMap iso(xx, target, std::move(fwd));
  ChainMap iso_inverse(target, xx, std::move(back));
  return SplitDecomposition{map_scale(h, a), std::move(im), std::move(ker), std::move(iota), std::move(q),
                            std::move(j), s.proj, s.complex, std::move(iso), std::move(iso_inverse)};
}

// ---------------------------------------------------------------- isomorphisms

ChainMap sum_decomposition_iso(const FreeComplex& x, const FreeComplex& y) {
  if (x.ring() != y.ring()) throw RingMismatch("sum_decomposition_iso: ring mismatch");
  const Ring& ring = x.ring();
  FreeComplex z = direct_sum(x, y);
  Sym2 sz = sym2(z);
  SymReduction rx = sym_reduction(x, false);
  SymReduction ry = sym_reduction(y, false);
  FreeComplex sx = sym2(x).complex, sy = sym2(y).complex, xy = tensor(x, y);
  FreeComplex target = direct_sum(direct_sum(sx, xy), sy);
  TensorIndex ixx(x, x), iyy(y, y), ixy(x, y);

  // Generator x_{p,i} of Z_p is from X when i < rank X_p.
  auto split = [&](const Label& l) -> std::pair<bool, Label> {
    if (l.i < x.rank(l.p)) return {true, l};
    return {false, Label{l.p, l.i - x.rank(l.p)}};
  };

  std::map<int, SparseMatrix> maps;
  for (int n : sz.complex.degrees()) {
    if (target.rank(n) == 0) continue;
    SparseMatrix m(ring, target.rank(n), sz.complex.rank(n));
    const std::size_t off_xy = sx.rank(n);
    const std::size_t off_yy = off_xy + xy.rank(n);
    const auto& gens = sz.reduction.basis.generators(n);
    for (std::size_t k = 0; k < gens.size(); ++k) {
      auto [ax, a] = split(gens[k].a);
      auto [bx, b] = split(gens[k].b);
      if (ax && bx) {
        SparseMatrix col = rx.rho.at(n).select_cols({ixx(a, b)});
        for (std::size_t r = 0; r < col.rows(); ++r) {
          for (const auto& [c, v] : col.row(r)) m.add_to(r, k, v);
        }
      } else if (!ax && !bx) {
        SparseMatrix col = ry.rho.at(n).select_cols({iyy(a, b)});
        for (std::size_t r = 0; r < col.rows(); ++r) {
          for (const auto& [c, v] : col.row(r)) m.add_to(off_yy + r, k, v);
        }
      } else if (ax) {
        m.add_to(off_xy + ixy(a, b), k, Scalar::one(ring));
      } else {
        m.add_to(off_xy + ixy(b, a), k, sign(ring, long(a.p) * b.p));
      }
    }
    maps.emplace(n, std::move(m));
  }
  return ChainMap(sz.complex, target, std::move(maps));
}

ChainMap shift_iso(const FreeComplex& x, int n) {
  FreeComplex shifted = shift(x, 2 * n);
  Sym2 src = sym2(shifted);
  Sym2 base = sym2(x);
  FreeComplex target = shift(base.complex, 4 * n);
  std::map<int, SparseMatrix> maps;
  for (int m : src.complex.degrees()) {
    SparseMatrix mat(x.ring(), target.rank(m), src.complex.rank(m));
    const auto& gens = src.reduction.basis.generators(m);
    for (std::size_t k = 0; k < gens.size(); ++k) {
      SymGenerator g{{gens[k].a.p - 2 * n, gens[k].a.i}, {gens[k].b.p - 2 * n, gens[k].b.i}};
      auto idx = base.reduction.basis.index(m - 4 * n, g);
      if (!idx) throw ContractViolation("shift_iso: generator without image");
      mat.set(*idx, k, Scalar::one(x.ring()));
    }
    maps.emplace(m, std::move(mat));
  }
  return ChainMap(src.complex, target, std::move(maps));
}

// ---------------------------------------------------------------- homotopies

namespace {

/// (u⊗s + s⊗v)_n : (X⊗X)_n -> (Y⊗Y)_{n+1} with the sign (-1)^{|x|} on u⊗s.
SparseMatrix mixed_tensor(const ChainMap& u, const Homotopy& s, const ChainMap& v, int n) {
  const FreeComplex& x = u.source();
  const FreeComplex& y = u.target();
  const Ring& ring = x.ring();
  auto ty = tensor_blocks(y, y, n + 1);
  std::size_t rows = 0;
  for (const auto& b : ty) rows += y.rank(b.p) * y.rank(b.q);
  auto tx = tensor_blocks(x, x, n);
  std::size_t cols = 0;
  for (const auto& b : tx) cols += x.rank(b.p) * x.rank(b.q);
  SparseMatrix m(ring, rows, cols);
  auto offset = [&](int p) -> std::optional<std::size_t> {
    for (const auto& b : ty) {
      if (b.p == p) return b.offset;
    }
    return std::nullopt;
  };
  for (const auto& b : tx) {
    if (auto r = offset(b.p); r && y.rank(b.q + 1) > 0 && y.rank(b.p) > 0) {
      SparseMatrix blk = kron(u.at(b.p), s.at(b.q));
      place_block(m, *r, b.offset, b.p % 2 == 0 ? blk : negate(blk));
    }
    if (auto r = offset(b.p + 1); r && y.rank(b.q) > 0 && y.rank(b.p + 1) > 0) {
      place_block(m, *r, b.offset, kron(s.at(b.p), v.at(b.q)));
    }
  }
  return m;
}

}  // namespace

InducedHomotopy induced_homotopy(const ChainMap& f, const ChainMap& g, const Homotopy& s) {
  const Ring& ring = f.source().ring();
  Scalar h = half(ring);
  if (!is_homotopy(s, f, g)) throw ContractViolation("induced_homotopy: s is not a homotopy from f to g");
  FreeComplex xx = tensor(f.source(), f.source());
  FreeComplex yy = tensor(f.target(), f.target());
  std::map<int, SparseMatrix> sig;
  for (int n : xx.degrees()) {
    if (yy.rank(n + 1) == 0) continue;
    SparseMatrix total = mat_add(mixed_tensor(f, s, g, n), mixed_tensor(g, s, f, n));
    sig.emplace(n, scale(h, total));
  }
  Homotopy sigma(xx, yy, sig);

  Sym2 sx = sym2(f.source());
  Sym2 sy = sym2(f.target());
  std::map<int, SparseMatrix> bar;
  for (int n : sx.complex.degrees()) {
    if (sy.complex.rank(n + 1) == 0) continue;
    bar.emplace(n, matmul(sy.reduction.rho.at(n + 1), matmul(sigma.at(n), sx.reduction.sigma.at(n))));
  }
  Homotopy sigma_bar(sx.complex, sy.complex, std::move(bar));
  return InducedHomotopy{std::move(sigma), std::move(sigma_bar)};
}

// ---------------------------------------------------------------- base change

BaseChange base_change(const FreeComplex& x, const Ring& target) {
  FreeComplex image = map_complex(x, target);
  FreeComplex s_image = sym2(image).complex;
  FreeComplex image_s = map_complex(sym2(x).complex, target);
  std::map<int, SparseMatrix> maps;
  for (int n : s_image.degrees()) {
    if (image_s.rank(n) != s_image.rank(n)) throw ContractViolation("base_change: symmetric bases differ");
    maps.emplace(n, SparseMatrix::identity(target, s_image.rank(n)));
  }
  ChainMap iso(s_image, image_s, std::move(maps));
  return BaseChange{std::move(image), std::move(s_image), std::move(image_s), std::move(iso)};
}

}  // namespace symchain
