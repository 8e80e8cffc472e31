#include "symchain/complex.hpp"

#include <algorithm>

#include "symchain/linalg.hpp"

namespace symchain {

namespace {

const std::vector<int>& no_degrees() {
  static const std::vector<int> empty;
  return empty;
}

std::string shape(const SparseMatrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

Scalar sign(const Ring& ring, int exponent) {
  return (exponent % 2 == 0) ? Scalar::one(ring) : -Scalar::one(ring);
}

void require_same_ring(const Ring& a, const Ring& b, const char* what) {
  if (a != b) throw RingMismatch(std::string(what) + ": " + a.name() + " vs " + b.name());
}

}  // namespace

// ---------------------------------------------------------------- FreeComplex

FreeComplex::FreeComplex(Ring ring) : ring_(std::move(ring)) {}

FreeComplex::FreeComplex(Ring ring, std::map<int, std::size_t> ranks, std::map<int, SparseMatrix> diffs,
                         std::map<int, std::vector<int>> gdeg)
    : ring_(std::move(ring)) {
  for (const auto& [n, r] : ranks) {
    if (r > 0) ranks_[n] = r;
  }
  for (auto& [n, m] : diffs) {
    if (m.ring() != ring_) throw RingMismatch("differential d_" + std::to_string(n) + " is over " + m.ring().name());
    if (m.rows() != rank(n - 1) || m.cols() != rank(n)) {
      throw DimensionMismatch("differential d_" + std::to_string(n) + " has shape " + shape(m) + ", expected " +
                              std::to_string(rank(n - 1)) + "x" + std::to_string(rank(n)));
    }
    if (rank(n) > 0 && rank(n - 1) > 0 && !m.is_zero()) d_.emplace(n, std::move(m));
  }
  if (ring_.is_graded()) {
    for (const auto& [n, r] : ranks_) {
      auto it = gdeg.find(n);
      if (it == gdeg.end() || it->second.size() != r) {
        throw ContractViolation("graded complex needs " + std::to_string(r) + " internal degrees in degree " +
                                std::to_string(n));
      }
      gdeg_[n] = it->second;
    }
  } else {
    for (const auto& [n, g] : gdeg) {
      if (!g.empty()) throw ContractViolation("internal degrees given for ungraded ring " + ring_.name());
    }
  }
}

int FreeComplex::lo() const { return ranks_.empty() ? 0 : ranks_.begin()->first; }
int FreeComplex::hi() const { return ranks_.empty() ? -1 : ranks_.rbegin()->first; }

std::size_t FreeComplex::rank(int n) const {
  auto it = ranks_.find(n);
  return it == ranks_.end() ? 0 : it->second;
}

std::size_t FreeComplex::total_rank() const {
  std::size_t t = 0;
  for (const auto& [n, r] : ranks_) t += r;
  return t;
}

std::vector<int> FreeComplex::degrees() const {
  std::vector<int> out;
  for (const auto& [n, r] : ranks_) out.push_back(n);
  return out;
}

SparseMatrix FreeComplex::d(int n) const {
  auto it = d_.find(n);
  if (it != d_.end()) return it->second;
  return SparseMatrix(ring_, rank(n - 1), rank(n));
}

const std::vector<int>& FreeComplex::gdeg(int n) const {
  auto it = gdeg_.find(n);
  return it == gdeg_.end() ? no_degrees() : it->second;
}

int FreeComplex::max_gdeg() const {
  int m = 0;
  for (const auto& [n, g] : gdeg_) {
    for (int v : g) m = std::max(m, v);
  }
  return m;
}

std::optional<Violation> FreeComplex::validate() const {
  if (ring_.is_graded()) {
    for (const auto& [n, m] : d_) {
      const auto& src = gdeg(n);
      const auto& tgt = gdeg(n - 1);
      for (std::size_t i = 0; i < m.rows(); ++i) {
        for (const auto& [j, v] : m.row(i)) {
          if (!v.is_homogeneous()) return Violation{n, i, j, "entry " + v.to_string() + " is not homogeneous"};
          if (v.degree() != src[j] - tgt[i]) {
            return Violation{n, i, j,
                             "entry " + v.to_string() + " has internal degree " + std::to_string(v.degree()) +
                                 ", expected " + std::to_string(src[j] - tgt[i])};
          }
        }
      }
    }
  }
  for (const auto& [n, m] : d_) {
    auto below = d_.find(n - 1);
    if (below == d_.end()) continue;
    SparseMatrix c = matmul(below->second, m);
    for (std::size_t i = 0; i < c.rows(); ++i) {
      if (!c.row(i).empty()) {
        auto [j, v] = *c.row(i).begin();
        return Violation{n, i, j, "d_" + std::to_string(n - 1) + "*d_" + std::to_string(n) + " has entry " +
                                      v.to_string()};
      }
    }
  }
  return std::nullopt;
}

bool operator==(const FreeComplex& a, const FreeComplex& b) {
  return a.ring_ == b.ring_ && a.ranks_ == b.ranks_ && a.d_ == b.d_ && a.gdeg_ == b.gdeg_;
}

// ---------------------------------------------------------------- maps

namespace {

std::map<int, SparseMatrix> checked_maps(const FreeComplex& s, const FreeComplex& t, std::map<int, SparseMatrix> maps,
                                         int offset, const char* what) {
  require_same_ring(s.ring(), t.ring(), what);
  std::map<int, SparseMatrix> out;
  for (auto& [n, m] : maps) {
    if (m.ring() != s.ring()) throw RingMismatch(std::string(what) + ": component ring " + m.ring().name());
    if (m.rows() != t.rank(n + offset) || m.cols() != s.rank(n)) {
      throw DimensionMismatch(std::string(what) + " component " + std::to_string(n) + " has shape " + shape(m));
    }
    if (m.rows() > 0 && m.cols() > 0 && !m.is_zero()) out.emplace(n, std::move(m));
  }
  return out;
}

}  // namespace

ChainMap::ChainMap(FreeComplex source, FreeComplex target, std::map<int, SparseMatrix> maps)
    : source_(std::move(source)), target_(std::move(target)) {
  maps_ = checked_maps(source_, target_, std::move(maps), 0, "chain map");
}

SparseMatrix ChainMap::at(int n) const {
  auto it = maps_.find(n);
  if (it != maps_.end()) return it->second;
  return SparseMatrix(source_.ring(), target_.rank(n), source_.rank(n));
}

std::vector<int> ChainMap::degrees() const {
  std::vector<int> out;
  for (int n : source_.degrees()) {
    if (target_.rank(n) > 0) out.push_back(n);
  }
  return out;
}

bool operator==(const ChainMap& a, const ChainMap& b) {
  return a.source_ == b.source_ && a.target_ == b.target_ && a.maps_ == b.maps_;
}

Homotopy::Homotopy(FreeComplex source, FreeComplex target, std::map<int, SparseMatrix> maps)
    : source_(std::move(source)), target_(std::move(target)) {
  maps_ = checked_maps(source_, target_, std::move(maps), 1, "homotopy");
}

SparseMatrix Homotopy::at(int n) const {
  auto it = maps_.find(n);
  if (it != maps_.end()) return it->second;
  return SparseMatrix(source_.ring(), target_.rank(n + 1), source_.rank(n));
}

// ---------------------------------------------------------------- constructions

FreeComplex zero_complex(const Ring& ring) { return FreeComplex(ring); }

FreeComplex free_module(const Ring& ring, int n, std::size_t rank) {
  std::map<int, std::vector<int>> gdeg;
  if (ring.is_graded()) gdeg[n] = std::vector<int>(rank, 0);
  return FreeComplex(ring, {{n, rank}}, {}, gdeg);
}

FreeComplex shift(const FreeComplex& x, int i) {
  std::map<int, std::size_t> ranks;
  std::map<int, SparseMatrix> diffs;
  std::map<int, std::vector<int>> gdeg;
  Scalar s = sign(x.ring(), i);
  for (int n : x.degrees()) {
    ranks[n + i] = x.rank(n);
    if (x.is_graded()) gdeg[n + i] = x.gdeg(n);
    if (x.rank(n - 1) > 0) diffs.emplace(n + i, s.is_one() ? x.d(n) : negate(x.d(n)));
  }
  return FreeComplex(x.ring(), ranks, std::move(diffs), gdeg);
}

FreeComplex direct_sum(const FreeComplex& x, const FreeComplex& y) {
  require_same_ring(x.ring(), y.ring(), "direct_sum");
  std::map<int, std::size_t> ranks;
  std::map<int, std::vector<int>> gdeg;
  for (const FreeComplex* c : {&x, &y}) {
    for (int n : c->degrees()) {
      ranks[n] += c->rank(n);
      auto& g = gdeg[n];
      g.insert(g.end(), c->gdeg(n).begin(), c->gdeg(n).end());
    }
  }
  std::map<int, SparseMatrix> diffs;
  for (const auto& [n, r] : ranks) {
    if (ranks.count(n - 1)) diffs.emplace(n, block_diag(x.d(n), y.d(n)));
  }
  if (!x.is_graded()) gdeg.clear();
  return FreeComplex(x.ring(), ranks, std::move(diffs), gdeg);
}

std::vector<TensorBlock> tensor_blocks(const FreeComplex& x, const FreeComplex& y, int n) {
  std::vector<TensorBlock> out;
  std::size_t offset = 0;
  auto xs = x.degrees();
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) {
    int p = *it;
    int q = n - p;
    if (y.rank(q) == 0) continue;
    out.push_back({p, q, offset});
    offset += x.rank(p) * y.rank(q);
  }
  return out;
}

namespace {

std::size_t blocks_size(const FreeComplex& x, const FreeComplex& y, const std::vector<TensorBlock>& blocks) {
  std::size_t s = 0;
  for (const auto& b : blocks) s += x.rank(b.p) * y.rank(b.q);
  return s;
}

}  // namespace

FreeComplex tensor(const FreeComplex& x, const FreeComplex& y) {
  require_same_ring(x.ring(), y.ring(), "tensor");
  const Ring& ring = x.ring();
  if (x.empty() || y.empty()) return FreeComplex(ring);
  std::map<int, std::size_t> ranks;
  std::map<int, std::vector<int>> gdeg;
  std::map<int, std::vector<TensorBlock>> layout;
  for (int n = x.lo() + y.lo(); n <= x.hi() + y.hi(); ++n) {
    layout[n] = tensor_blocks(x, y, n);
    ranks[n] = blocks_size(x, y, layout[n]);
    if (ring.is_graded()) {
      auto& g = gdeg[n];
      for (const auto& b : layout[n]) {
        for (int a : x.gdeg(b.p)) {
          for (int c : y.gdeg(b.q)) g.push_back(a + c);
        }
      }
    }
  }
  std::map<int, SparseMatrix> diffs;
  for (int n = x.lo() + y.lo() + 1; n <= x.hi() + y.hi(); ++n) {
    SparseMatrix d(ring, ranks[n - 1], ranks[n]);
    const auto& below = layout[n - 1];
    auto offset_of = [&](int p) -> std::optional<std::size_t> {
      for (const auto& b : below) {
        if (b.p == p) return b.offset;
      }
      return std::nullopt;
    };
    for (const auto& b : layout[n]) {
      if (auto row = offset_of(b.p - 1); row && x.rank(b.p - 1) > 0) {
        place_block(d, *row, b.offset, kron(x.d(b.p), SparseMatrix::identity(ring, y.rank(b.q))));
      }
      if (auto row = offset_of(b.p); row && y.rank(b.q - 1) > 0) {
        SparseMatrix blk = kron(SparseMatrix::identity(ring, x.rank(b.p)), y.d(b.q));
        place_block(d, *row, b.offset, b.p % 2 == 0 ? blk : negate(blk));
      }
    }
    diffs.emplace(n, std::move(d));
  }
  return FreeComplex(ring, ranks, std::move(diffs), gdeg);
}

ChainMap tensor_map(const ChainMap& f, const ChainMap& g) {
  FreeComplex src = tensor(f.source(), g.source());
  FreeComplex tgt = tensor(f.target(), g.target());
  std::map<int, SparseMatrix> maps;
  for (int n : src.degrees()) {
    if (tgt.rank(n) == 0) continue;
    SparseMatrix m(src.ring(), tgt.rank(n), src.rank(n));
    auto tb = tensor_blocks(f.target(), g.target(), n);
    for (const auto& b : tensor_blocks(f.source(), g.source(), n)) {
      for (const auto& c : tb) {
        if (c.p == b.p) place_block(m, c.offset, b.offset, kron(f.at(b.p), g.at(b.q)));
      }
    }
    maps.emplace(n, std::move(m));
  }
  return ChainMap(std::move(src), std::move(tgt), std::move(maps));
}

FreeComplex koszul(const std::vector<Scalar>& elements) {
  if (elements.empty()) throw ContractViolation("koszul: empty element list");
  const Ring& ring = elements.front().ring();
  for (const auto& e : elements) require_same_ring(ring, e.ring(), "koszul");
  auto degree_of = [&](const Scalar& e) {
    if (!ring.is_graded()) return 0;
    if (e.is_zero() || !e.is_homogeneous()) {
      throw ContractViolation("koszul: element " + e.to_string() + " is not a nonzero homogeneous polynomial");
    }
    return e.degree();
  };
  auto graded = [&](std::map<int, std::vector<int>> g) {
    return ring.is_graded() ? g : std::map<int, std::vector<int>>{};
  };
  auto single = [&](const Scalar& e) {
    SparseMatrix d(ring, 1, 1);
    d.set(0, 0, e);
    return FreeComplex(ring, {{0, 1}, {1, 1}}, {{1, d}}, graded({{0, {0}}, {1, {degree_of(e)}}}));
  };
  if (elements.size() == 1) return single(elements[0]);
  if (elements.size() == 2) {
    const Scalar& x = elements[0];
    const Scalar& y = elements[1];
    int dx = degree_of(x), dy = degree_of(y);
    SparseMatrix d1(ring, 1, 2), d2(ring, 2, 1);
    d1.set(0, 0, x);
    d1.set(0, 1, y);
    d2.set(0, 0, y);
    d2.set(1, 0, -x);
    return FreeComplex(ring, {{0, 1}, {1, 2}, {2, 1}}, {{1, d1}, {2, d2}},
                       graded({{0, {0}}, {1, {dx, dy}}, {2, {dx + dy}}}));
  }
  FreeComplex k = single(elements[0]);
  for (std::size_t i = 1; i < elements.size(); ++i) k = tensor(k, single(elements[i]));
  return k;
}

FreeComplex cone(const ChainMap& f) {
  const FreeComplex& x = f.source();
  const FreeComplex& y = f.target();
  const Ring& ring = x.ring();
  std::map<int, std::size_t> ranks;
  std::map<int, std::vector<int>> gdeg;
  int lo = std::min(x.lo() + 1, y.lo());
  int hi = std::max(x.hi() + 1, y.hi());
  if (x.empty()) lo = y.lo(), hi = y.hi();
  if (y.empty()) lo = x.lo() + 1, hi = x.hi() + 1;
  for (int n = lo; n <= hi; ++n) {
    ranks[n] = x.rank(n - 1) + y.rank(n);
    if (ring.is_graded()) {
      auto& g = gdeg[n];
      g = x.gdeg(n - 1);
      g.insert(g.end(), y.gdeg(n).begin(), y.gdeg(n).end());
    }
  }
  std::map<int, SparseMatrix> diffs;
  for (int n = lo + 1; n <= hi; ++n) {
    SparseMatrix d(ring, ranks[n - 1], ranks[n]);
    place_block(d, 0, 0, negate(x.d(n - 1)));
    place_block(d, x.rank(n - 2), 0, f.at(n - 1));
    place_block(d, x.rank(n - 2), x.rank(n - 1), y.d(n));
    diffs.emplace(n, std::move(d));
  }
  return FreeComplex(ring, ranks, std::move(diffs), gdeg);
}

// ---------------------------------------------------------------- map algebra

ChainMap identity_map(const FreeComplex& x) {
  std::map<int, SparseMatrix> maps;
  for (int n : x.degrees()) maps.emplace(n, SparseMatrix::identity(x.ring(), x.rank(n)));
  return ChainMap(x, x, std::move(maps));
}

ChainMap zero_map(const FreeComplex& x, const FreeComplex& y) { return ChainMap(x, y); }

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  if (f.target() != g.source()) throw DimensionMismatch("compose: target of f is not the source of g");
  std::map<int, SparseMatrix> maps;
  for (int n : f.degrees()) {
    if (g.target().rank(n) > 0) maps.emplace(n, matmul(g.at(n), f.at(n)));
  }
  return ChainMap(f.source(), g.target(), std::move(maps));
}

ChainMap map_add(const ChainMap& f, const ChainMap& g) {
  if (f.source() != g.source() || f.target() != g.target()) throw DimensionMismatch("map_add: different endpoints");
  std::map<int, SparseMatrix> maps;
  for (int n : f.degrees()) maps.emplace(n, mat_add(f.at(n), g.at(n)));
  return ChainMap(f.source(), f.target(), std::move(maps));
}

ChainMap map_scale(const Scalar& c, const ChainMap& f) {
  std::map<int, SparseMatrix> maps;
  for (int n : f.degrees()) maps.emplace(n, scale(c, f.at(n)));
  return ChainMap(f.source(), f.target(), std::move(maps));
}

ChainMap map_sub(const ChainMap& f, const ChainMap& g) {
  return map_add(f, map_scale(-Scalar::one(g.source().ring()), g));
}

ChainMap shift_map(const ChainMap& f, int i) {
  std::map<int, SparseMatrix> maps;
  for (int n : f.degrees()) maps.emplace(n + i, f.at(n));
  return ChainMap(shift(f.source(), i), shift(f.target(), i), std::move(maps));
}

ChainMap direct_sum_map(const ChainMap& f, const ChainMap& g) {
  FreeComplex src = direct_sum(f.source(), g.source());
  FreeComplex tgt = direct_sum(f.target(), g.target());
  std::map<int, SparseMatrix> maps;
  for (int n : src.degrees()) {
    if (tgt.rank(n) > 0) maps.emplace(n, block_diag(f.at(n), g.at(n)));
  }
  return ChainMap(std::move(src), std::move(tgt), std::move(maps));
}

bool is_chain_map(const ChainMap& f) {
  const FreeComplex& x = f.source();
  const FreeComplex& y = f.target();
  int lo = std::min(x.lo(), y.lo());
  int hi = std::max(x.hi(), y.hi());
  for (int n = lo; n <= hi + 1; ++n) {
    if (matmul(f.at(n - 1), x.d(n)) != matmul(y.d(n), f.at(n))) return false;
  }
  return true;
}

bool is_homotopy(const Homotopy& s, const ChainMap& f, const ChainMap& g) {
  const FreeComplex& x = f.source();
  const FreeComplex& y = f.target();
  if (g.source() != x || g.target() != y || s.source() != x || s.target() != y) {
    throw DimensionMismatch("is_homotopy: endpoints differ");
  }
  for (int n : x.degrees()) {
    SparseMatrix lhs = mat_sub(f.at(n), g.at(n));
    SparseMatrix rhs = mat_add(matmul(y.d(n + 1), s.at(n)), matmul(s.at(n - 1), x.d(n)));
    if (lhs != rhs) return false;
  }
  return true;
}

namespace {

// Image of a degree-preserving map matrix modulo the maximal ideal, over the
// residue field. Entries of positive internal degree vanish there.
SparseMatrix residue_matrix(const SparseMatrix& m) {
  const Ring& ring = m.ring();
  if (ring.is_field()) return m;
  Ring k = ring.kind() == Ring::Kind::Localized ? Ring::prime_field(ring.prime()) : Ring::rationals();
  SparseMatrix out(k, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (const auto& [j, v] : m.row(i)) {
      if (ring.is_graded()) {
        const auto& terms = std::get<Terms>(v.payload());
        auto it = terms.find(Exponents(ring.num_variables(), 0));
        if (it != terms.end()) out.set(i, j, Scalar(k, it->second));
      } else {
        out.set(i, j, map_scalar(v, k));
      }
    }
  }
  return out;
}

}  // namespace

bool is_isomorphism(const ChainMap& f) {
  if (!is_chain_map(f)) return false;
  const FreeComplex& x = f.source();
  const FreeComplex& y = f.target();
  for (int n : x.degrees()) {
    if (y.rank(n) != x.rank(n)) return false;
  }
  for (int n : y.degrees()) {
    if (y.rank(n) != x.rank(n)) return false;
  }
  for (int n : x.degrees()) {
    SparseMatrix m = f.at(n);
    if (x.ring().kind() == Ring::Kind::Integers) {
      if (!invert(m)) return false;
    } else if (rank(residue_matrix(m)) != m.rows()) {
      // Local rings: invertible iff invertible modulo the maximal ideal.
      return false;
    }
  }
  return true;
}

FreeComplex map_complex(const FreeComplex& x, const Ring& target) {
  if (!is_supported_ring_map(x.ring(), target)) {
    throw UnsupportedRing("no ring map " + x.ring().name() + " -> " + target.name());
  }
  std::map<int, std::size_t> ranks;
  std::map<int, SparseMatrix> diffs;
  std::map<int, std::vector<int>> gdeg;
  for (int n : x.degrees()) {
    ranks[n] = x.rank(n);
    if (target.is_graded()) gdeg[n] = x.gdeg(n);
    if (x.rank(n - 1) > 0) diffs.emplace(n, map_matrix(x.d(n), target));
  }
  return FreeComplex(target, ranks, std::move(diffs), gdeg);
}

ChainMap map_chain_map(const ChainMap& f, const Ring& target) {
  std::map<int, SparseMatrix> maps;
  for (int n : f.degrees()) maps.emplace(n, map_matrix(f.at(n), target));
  return ChainMap(map_complex(f.source(), target), map_complex(f.target(), target), std::move(maps));
}

}  // namespace symchain
