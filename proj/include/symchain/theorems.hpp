#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symchain/series.hpp"

namespace symchain {

struct Condition {
  std::string name;
  Verdict verdict = Verdict::False;
  std::string witness;  // where a condition fails, or extra detail
};

/// Independently evaluated conditions of one theorem on one complex.
struct VerdictReport {
  std::string theorem;
  std::string ring;
  int bound = -1;  // graded degree bound, -1 when exact
  /// Equivalence theorems need all conditions to agree; the others need all to hold.
  bool equivalence = true;
  std::vector<Condition> conditions;
  std::optional<int> j;  // degree of S²(X) ≃ Σ^j R when it applies
  std::vector<std::string> notes;
  bool extra_ok = true;  // auxiliary checks attached to the theorem

  /// e.g. "TTFF"; 'B' marks true up to the degree bound.
  std::string vector_string() const;
  bool consistent() const;
  bool ok() const { return consistent() && extra_ok; }
  std::string to_string() const;
};

/// Thm: proj quasi-iso <=> Im(α) ≃ 0 <=> j quasi-iso <=> X ≃ 0 or Σ^{2n}R.
VerdictReport check_symm07(const FreeComplex& x);
/// Thm: α, q, ι quasi-isos <=> S²(X) ≃ 0 <=> ker(α) ≃ 0 <=> X ≃ 0 or Σ^{2n+1}R.
VerdictReport check_symm07pp(const FreeComplex& x);
/// pd(X) finite <=> pd(S²(X)) finite, with the rank inequality of the proof.
VerdictReport check_s2fpd01(const FreeComplex& x);
/// X ≃ Σ^{2n}R or Σ^{2n+1}R ⊕ Σ^{2m+1}R <=> S²(X) ≃ Σ^j R, j even <=> S²(X) ≃ Σ^j R.
VerdictReport check_s2fpd02(const FreeComplex& x);
/// inf(S²X) >= 2 inf(X), equality for even inf, and H_{2i}(S²X) from H_i(X).
VerdictReport check_symm09(const FreeComplex& x);

/// Shape of a minimal complex: rank 1 in exactly one degree, returned.
std::optional<int> single_free_module_degree(const FreeComplex& minimal);

}  // namespace symchain
