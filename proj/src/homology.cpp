#include "symchain/homology.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "symchain/kernels.hpp"
#include "symchain/linalg.hpp"

namespace symchain {

// ---------------------------------------------------------------- reports

std::string FpAbelianGroup::to_string(const std::string& base) const {
  std::vector<std::string> parts;
  if (free_rank == 1) parts.push_back(base);
  if (free_rank > 1) parts.push_back(base + "^" + std::to_string(free_rank));
  for (const auto& t : torsion) parts.push_back(base + "/" + t.get_str());
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

bool DegreeHomology::is_zero() const {
  if (dimension) return *dimension == 0;
  if (group) return group->is_zero();
  if (hilbert) return hilbert->empty();
  return true;
}

std::string DegreeHomology::to_string(const Ring& ring) const {
  if (dimension) return *dimension == 0 ? "0" : ring.name() + "^" + std::to_string(*dimension);
  if (group) return group->to_string(ring.kind() == Ring::Kind::Integers ? "Z" : ring.name());
  if (hilbert) {
    if (hilbert->empty()) return "0";
    std::ostringstream os;
    os << "hilbert{";
    bool first = true;
    for (const auto& [d, v] : *hilbert) {
      os << (first ? "" : ", ") << d << ":" << v;
      first = false;
    }
    os << "}";
    return os.str();
  }
  return "0";
}

DegreeHomology HomologyReport::at(int n) const {
  auto it = degrees.find(n);
  if (it != degrees.end()) return it->second;
  DegreeHomology zero;
  if (ring.is_field()) {
    zero.dimension = 0;
  } else if (ring.is_graded()) {
    zero.hilbert = HilbertTable{};
  } else {
    zero.group = FpAbelianGroup{};
  }
  return zero;
}

std::optional<int> HomologyReport::inf() const {
  for (const auto& [n, h] : degrees) {
    if (!h.is_zero()) return n;
  }
  return std::nullopt;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::False:
      return "false";
    case Verdict::True:
      return "true";
    case Verdict::TrueUpToBound:
      return "true-up-to-bound";
  }
  return "false";
}

// ---------------------------------------------------------------- graded slices

int default_degree_bound(const FreeComplex& x) {
  if (const char* env = std::getenv("SYMCHAIN_DEGREE_BOUND")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0) return static_cast<int>(v);
  }
  return 2 * x.max_gdeg() + static_cast<int>(x.total_rank()) + 2;
}

std::size_t slice_dimension(std::size_t nvars, const std::vector<int>& gens, int d) {
  std::size_t total = 0;
  for (int a : gens) {
    if (d >= a) total += monomials_of_degree(nvars, d - a).size();
  }
  return total;
}

namespace {

struct SliceBasis {
  std::vector<std::size_t> offsets;                     // per generator
  std::vector<std::vector<Exponents>> monomials;        // per generator
  std::vector<std::map<Exponents, std::size_t>> index;  // per generator
  std::size_t size = 0;
};

SliceBasis slice_basis(std::size_t nvars, const std::vector<int>& gens, int d) {
  SliceBasis b;
  for (int a : gens) {
    b.offsets.push_back(b.size);
    b.monomials.push_back(d >= a ? monomials_of_degree(nvars, d - a) : std::vector<Exponents>{});
    auto& idx = b.index.emplace_back();
    for (std::size_t k = 0; k < b.monomials.back().size(); ++k) idx.emplace(b.monomials.back()[k], k);
    b.size += b.monomials.back().size();
  }
  return b;
}

}  // namespace

SparseMatrix graded_slice(const SparseMatrix& m, const std::vector<int>& tgt, const std::vector<int>& src, int d) {
  const Ring& ring = m.ring();
  if (!ring.is_graded()) throw UnsupportedRing("graded_slice over " + ring.name());
  const std::size_t nv = ring.num_variables();
  Ring qq = Ring::rationals();
  SliceBasis rows = slice_basis(nv, tgt, d);
  SliceBasis cols = slice_basis(nv, src, d);
  SparseMatrix out(qq, rows.size, cols.size);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (const auto& [j, v] : m.row(i)) {
      const auto& terms = std::get<Terms>(v.payload());
      for (std::size_t k = 0; k < cols.monomials[j].size(); ++k) {
        const Exponents& mono = cols.monomials[j][k];
        for (const auto& [e, c] : terms) {
          Exponents prod(nv);
          for (std::size_t t = 0; t < nv; ++t) prod[t] = e[t] + mono[t];
          auto it = rows.index[i].find(prod);
          if (it == rows.index[i].end()) {
            throw ContractViolation("graded_slice: entry " + v.to_string() + " does not match generator degrees");
          }
          out.add_to(rows.offsets[i] + it->second, cols.offsets[j] + k, Scalar(qq, c));
        }
      }
    }
  }
  return out;
}

HilbertTable cokernel_hilbert(const SparseMatrix& rel, const std::vector<int>& gens, const std::vector<int>& rels,
                              int bound) {
  const std::size_t nv = rel.ring().num_variables();
  int lo = 0;
  for (int a : gens) lo = std::min(lo, a);
  std::vector<int> ds;
  for (int d = lo; d <= bound; ++d) ds.push_back(d);
  std::vector<SparseMatrix> slices(ds.size(), SparseMatrix(Ring::rationals(), 0, 0));
  parallel_for(ds.size(), [&](std::size_t k) { slices[k] = graded_slice(rel, gens, rels, ds[k]); });
  auto ranks = kernels::batch_rank(slices);
  HilbertTable out;
  for (std::size_t k = 0; k < ds.size(); ++k) {
    std::size_t dim = slice_dimension(nv, gens, ds[k]) - ranks[k];
    if (dim > 0) out[ds[k]] = dim;
  }
  return out;
}

// ---------------------------------------------------------------- free complexes

namespace {

HomologyReport field_homology(const FreeComplex& x) {
  HomologyReport rep{x.ring(), {}, -1};
  std::vector<int> ns;
  std::vector<SparseMatrix> ds;
  for (int n = x.lo(); n <= x.hi() + 1; ++n) {
    ns.push_back(n);
    ds.push_back(x.d(n));
  }
  auto ranks = kernels::batch_rank(ds);
  for (std::size_t k = 0; k + 1 < ns.size(); ++k) {
    int n = ns[k];
    if (x.rank(n) == 0) continue;
    DegreeHomology h;
    h.dimension = x.rank(n) - ranks[k] - ranks[k + 1];
    rep.degrees[n] = h;
  }
  return rep;
}

HomologyReport euclidean_homology(const FreeComplex& x) {
  HomologyReport rep{x.ring(), {}, -1};
  auto degs = x.degrees();
  std::vector<DegreeHomology> out(degs.size());
  parallel_for(degs.size(), [&](std::size_t k) {
    int n = degs[k];
    ModuleInvariants inv = cokernel_invariants(x.d(n + 1));
    // coker(d_{n+1}) = free part of rank r_n - rank d_{n+1}; cycles drop rank d_n.
    FpAbelianGroup g;
    g.free_rank = inv.free_rank - rank(x.d(n));
    g.torsion = inv.torsion;
    out[k].group = g;
  });
  for (std::size_t k = 0; k < degs.size(); ++k) rep.degrees[degs[k]] = out[k];
  return rep;
}

HomologyReport graded_homology(const FreeComplex& x, int bound) {
  HomologyReport rep{x.ring(), {}, bound};
  if (x.empty()) return rep;
  const std::size_t nv = x.ring().num_variables();
  int dmin = 0;
  for (int n : x.degrees()) {
    for (int a : x.gdeg(n)) dmin = std::min(dmin, a);
  }
  struct Job {
    int n;
    int d;
  };
  std::vector<Job> jobs;
  for (int n = x.lo(); n <= x.hi() + 1; ++n) {
    for (int d = dmin; d <= bound; ++d) jobs.push_back({n, d});
  }
  std::vector<SparseMatrix> slices(jobs.size(), SparseMatrix(Ring::rationals(), 0, 0));
  parallel_for(jobs.size(), [&](std::size_t k) {
    slices[k] = graded_slice(x.d(jobs[k].n), x.gdeg(jobs[k].n - 1), x.gdeg(jobs[k].n), jobs[k].d);
  });
  auto ranks = kernels::batch_rank(slices);
  std::map<std::pair<int, int>, std::size_t> rank_at;
  for (std::size_t k = 0; k < jobs.size(); ++k) rank_at[{jobs[k].n, jobs[k].d}] = ranks[k];
  for (int n : x.degrees()) {
    HilbertTable table;
    for (int d = dmin; d <= bound; ++d) {
      std::size_t dim = slice_dimension(nv, x.gdeg(n), d) - rank_at[{n, d}] - rank_at[{n + 1, d}];
      if (dim > 0) table[d] = dim;
    }
    DegreeHomology h;
    h.hilbert = std::move(table);
    rep.degrees[n] = std::move(h);
  }
  return rep;
}

}  // namespace

HomologyReport homology(const FreeComplex& x, std::optional<int> bound) {
  const Ring& ring = x.ring();
  if (ring.is_field()) return field_homology(x);
  if (ring.is_euclidean()) return euclidean_homology(x);
  return graded_homology(x, bound ? *bound : default_degree_bound(x));
}

HomologyReport homology_presented(const PresentedComplex& x) {
  const Ring& ring = x.ring();
  if (!ring.is_euclidean()) throw UnsupportedRing("homology_presented needs ZZ or ZLoc(p), got " + ring.name());
  HomologyReport rep{ring, {}, -1};
  auto degs = x.degrees();
  std::vector<DegreeHomology> out(degs.size());
  parallel_for(degs.size(), [&](std::size_t k) {
    int n = degs[k];
    const std::size_t g = x.generators(n);
    // Cycles: v with d(v) in the relation span of degree n-1.
    SparseMatrix z = SparseMatrix::identity(ring, g);
    if (x.generators(n - 1) > 0) {
      std::vector<std::size_t> top(g);
      for (std::size_t i = 0; i < g; ++i) top[i] = i;
      z = lattice_kernel(hstack(x.d(n), x.relations(n - 1))).select_rows(top);
    }
    SparseMatrix b = hstack(x.relations(n), x.d(n + 1));
    SNFResult s = smith_normal_form(z);
    auto factors = s.invariant_factors();
    const std::size_t r = factors.size();
    SparseMatrix ub = matmul(s.U, b);
    SparseMatrix coords(ring, r, ub.cols());
    for (std::size_t i = 0; i < ub.rows(); ++i) {
      for (const auto& [j, v] : ub.row(i)) {
        if (i >= r) throw ContractViolation("homology_presented: boundaries are not cycles in degree " + std::to_string(n));
        coords.set(i, j, v.exact_div(factors[i]));
      }
    }
    ModuleInvariants inv = cokernel_invariants(coords);
    out[k].group = FpAbelianGroup{inv.free_rank, inv.torsion};
  });
  for (std::size_t k = 0; k < degs.size(); ++k) rep.degrees[degs[k]] = out[k];
  return rep;
}

Verdict is_exact(const FreeComplex& x, std::optional<int> bound) {
  HomologyReport rep = homology(x, bound);
  if (!rep.is_zero()) return Verdict::False;
  return rep.bounded() ? Verdict::TrueUpToBound : Verdict::True;
}

Verdict is_quasi_iso(const ChainMap& f, std::optional<int> bound) {
  if (f.source().ring() != f.target().ring()) throw RingMismatch("is_quasi_iso: backend mismatch");
  if (f.source().is_graded() && !bound) {
    bound = std::max(default_degree_bound(f.source()), default_degree_bound(f.target()));
  }
  return is_exact(cone(f), bound);
}

std::optional<int> inf_h(const FreeComplex& x, std::optional<int> bound) { return homology(x, bound).inf(); }

}  // namespace symchain
