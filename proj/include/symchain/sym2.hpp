#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "symchain/complex.hpp"

namespace symchain {

/// Basis element x_{p,i}: the i-th generator of X_p.
struct Label {
  int p;
  std::size_t i;
  friend auto operator<=>(const Label&, const Label&) = default;
};

/// Canonical symmetric generator x_a ⊗ x_b with a <= b.
struct SymGenerator {
  Label a;
  Label b;
  friend auto operator<=>(const SymGenerator&, const SymGenerator&) = default;
  /// p = q odd and i = j.
  bool odd_diagonal() const { return a == b && a.p % 2 != 0; }
};

/// Ordered canonical generators per degree. The strict basis (for S²) omits
/// odd diagonal squares; the weak basis (for s²) keeps them.
class SymBasis {
 public:
  SymBasis(const FreeComplex& x, bool weak);

  bool weak() const { return weak_; }
  const std::vector<SymGenerator>& generators(int n) const;
  std::size_t size(int n) const { return generators(n).size(); }
  std::optional<std::size_t> index(int n, const SymGenerator& g) const;
  /// Degrees with at least one generator, ascending.
  std::vector<int> degrees() const;

 private:
  bool weak_;
  std::map<int, std::vector<SymGenerator>> gens_;
  std::map<int, std::map<SymGenerator, std::size_t>> index_;
};

/// ρ_n : (X⊗X)_n -> free module on the basis, and a section σ_n with ρσ = id.
struct SymReduction {
  SymBasis basis;
  std::map<int, SparseMatrix> rho;
  std::map<int, SparseMatrix> sigma;
};

/// Build ρ and σ for X with the given basis flavor.
SymReduction sym_reduction(const FreeComplex& x, bool weak);

/// α_X(x⊗x') = x⊗x' - (-1)^{|x||x'|} x'⊗x as an endomorphism of X⊗X.
ChainMap alpha(const FreeComplex& x);

struct Sym2 {
  FreeComplex complex;
  ChainMap proj;  // X⊗X -> S²(X), equal to ρ degreewise
  SymReduction reduction;
};

/// S²(X) with d^S_n = ρ_{n-1} d^{X⊗X}_n σ_n.
Sym2 sym2(const FreeComplex& x);

/// Complex of finitely presented modules: in degree n the module is the
/// cokernel of relations(n) (generators = rows); d(n) acts on generators.
class PresentedComplex {
 public:
  PresentedComplex(Ring ring, std::map<int, std::size_t> gens, std::map<int, SparseMatrix> relations,
                   std::map<int, SparseMatrix> diffs);
  /// Free complex viewed as presented with no relations.
  static PresentedComplex from_free(const FreeComplex& x);

  const Ring& ring() const { return ring_; }
  std::size_t generators(int n) const;
  std::vector<int> degrees() const;
  SparseMatrix relations(int n) const;
  SparseMatrix d(int n) const;

  /// d maps relations into relations and d∘d lands in relations.
  bool validate() const;

 private:
  Ring ring_;
  std::map<int, std::size_t> gens_;
  std::map<int, SparseMatrix> rel_;
  std::map<int, SparseMatrix> d_;
};

/// s²(X): equal to S²(X) when 2 is a unit, otherwise presented with one
/// relation 2·(x⊗x) per odd diagonal square.
std::variant<FreeComplex, PresentedComplex> weak_sym2(const FreeComplex& x);

/// S²(f) = ρ^Y (f⊗f) σ^X.
ChainMap sym2_map(const ChainMap& f);

/// ρ_{n-1} d^{X⊗X}_n vanishes on Im(α_n) and on odd diagonal squares, so the
/// induced differential does not depend on the section.
bool sym2_well_defined(const FreeComplex& x);

struct SplitDecomposition {
  ChainMap e;  // ½α, idempotent
  FreeComplex im_alpha;
  FreeComplex ker_alpha;
  ChainMap iota;  // Im(α) -> X⊗X
  ChainMap q;     // X⊗X -> Im(α), induced by α
  ChainMap j;     // ker(α) -> X⊗X
  ChainMap p;     // X⊗X -> S²(X)
  FreeComplex s2;
  ChainMap iso;          // X⊗X -> Im(α) ⊕ S²(X), (½q, p)
  ChainMap iso_inverse;  // [ι, (1 - ½α)σ]
};

/// Requires 2 to be a unit and a field, ZLoc(p) or graded backend.
SplitDecomposition split_decomposition(const FreeComplex& x);

/// S²(X⊕Y) -> S²(X) ⊕ (X⊗Y) ⊕ S²(Y).
ChainMap sum_decomposition_iso(const FreeComplex& x, const FreeComplex& y);

/// S²(Σ^{2n}X) -> Σ^{4n} S²(X), class x⊗y to class x⊗y.
ChainMap shift_iso(const FreeComplex& x, int n);

struct InducedHomotopy {
  Homotopy sigma;      // f⊗f ≃ g⊗g on X⊗X
  Homotopy sigma_bar;  // S²(f) ≃ S²(g)
};

/// σ = ½(f⊗s + s⊗g + g⊗s + s⊗f) and its image on symmetric squares.
InducedHomotopy induced_homotopy(const ChainMap& f, const ChainMap& g, const Homotopy& s);

struct BaseChange {
  FreeComplex complex;    // φ*X
  FreeComplex sym2_of_image;  // S²(φ*X)
  FreeComplex image_of_sym2;  // φ*S²(X)
  ChainMap iso;           // S²(φ*X) -> φ*S²(X), the identity on canonical bases
};

BaseChange base_change(const FreeComplex& x, const Ring& target);

}  // namespace symchain
