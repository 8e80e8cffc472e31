#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symchain/sym2.hpp"

namespace symchain {

/// Z^r ⊕ Z/d_1 ⊕ ... with d_1 | d_2 | ..., every d_i >= 2. Over ZLoc(p) the
/// factors are powers of p.
struct FpAbelianGroup {
  std::size_t free_rank = 0;
  std::vector<mpz_class> torsion;

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  /// e.g. "0", "Z^2", "Z/2", "Z + Z/3 + Z/6".
  std::string to_string(const std::string& base = "Z") const;
  friend bool operator==(const FpAbelianGroup&, const FpAbelianGroup&) = default;
};

/// Internal degree -> dimension over QQ, nonzero entries only.
using HilbertTable = std::map<int, std::size_t>;

/// Homology in one homological degree; exactly one member is set, matching
/// the ring of the complex.
struct DegreeHomology {
  std::optional<std::size_t> dimension;  // fields
  std::optional<FpAbelianGroup> group;   // ZZ, ZLoc(p)
  std::optional<HilbertTable> hilbert;   // graded, up to the bound

  bool is_zero() const;
  std::string to_string(const Ring& ring) const;
  friend bool operator==(const DegreeHomology&, const DegreeHomology&) = default;
};

struct HomologyReport {
  Ring ring;
  /// Degrees of the support of the complex; other degrees are zero.
  std::map<int, DegreeHomology> degrees;
  /// Internal degree bound used for graded complexes; -1 otherwise.
  int bound = -1;

  bool bounded() const { return bound >= 0; }
  /// Zero homology for degrees outside the support.
  DegreeHomology at(int n) const;
  /// Least degree with nonzero homology, nullopt if none (within the bound).
  std::optional<int> inf() const;
  bool is_zero() const { return !inf().has_value(); }
};

/// max internal degree in X⊗X + total rank of X + 2, unless
/// SYMCHAIN_DEGREE_BOUND is set.
int default_degree_bound(const FreeComplex& x);

HomologyReport homology(const FreeComplex& x, std::optional<int> bound = std::nullopt);

/// Homology of a complex of finitely presented modules over ZZ or ZLoc(p).
HomologyReport homology_presented(const PresentedComplex& x);

enum class Verdict { False, True, TrueUpToBound };
std::string to_string(Verdict v);
inline bool holds(Verdict v) { return v != Verdict::False; }

/// f is a quasi-isomorphism iff its mapping cone is exact.
Verdict is_quasi_iso(const ChainMap& f, std::optional<int> bound = std::nullopt);
Verdict is_exact(const FreeComplex& x, std::optional<int> bound = std::nullopt);
std::optional<int> inf_h(const FreeComplex& x, std::optional<int> bound = std::nullopt);

/// Hilbert function up to `bound` of coker(rel) for a graded presentation:
/// generators of internal degrees `gens`, relation columns of degrees `rels`.
HilbertTable cokernel_hilbert(const SparseMatrix& rel, const std::vector<int>& gens, const std::vector<int>& rels,
                              int bound);

/// Matrix over QQ of the QQ-linear map induced by a homogeneous matrix on
/// internal degree `d`: source generators of degrees `src`, target `tgt`.
/// Basis of each slice: generators in order, monomials in descending lex.
SparseMatrix graded_slice(const SparseMatrix& m, const std::vector<int>& tgt, const std::vector<int>& src, int d);
std::size_t slice_dimension(std::size_t nvars, const std::vector<int>& gens, int d);

}  // namespace symchain
