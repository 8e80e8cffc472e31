#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "symchain/matrix.hpp"

namespace symchain {

/// D = U·A·V with D diagonal, d_i | d_{i+1}, U and V invertible.
struct SNFResult {
  SparseMatrix U;
  SparseMatrix D;
  SparseMatrix V;

  /// Nonzero diagonal entries, in order.
  std::vector<Scalar> invariant_factors() const;
  std::size_t rank() const { return invariant_factors().size(); }
};

/// Smith normal form over ZZ (nonnegative diagonal) or ZLoc(p) (diagonal p^e).
/// Pivots on the entry of least absolute value / least p-adic valuation.
SNFResult smith_normal_form(const SparseMatrix& a);

/// Rank over the fraction field. Fields, ZZ and ZLoc(p).
std::size_t rank(const SparseMatrix& a);

/// Columns form a basis of the null space. Fields only.
SparseMatrix kernel_basis(const SparseMatrix& a);

/// Some X with A·X = B, or nullopt when B is not in the column space. Fields only.
std::optional<SparseMatrix> solve(const SparseMatrix& a, const SparseMatrix& b);

/// Two-sided inverse of a square matrix, or nullopt. Fields, ZZ and ZLoc(p).
std::optional<SparseMatrix> invert(const SparseMatrix& a);

/// Column basis of ker(A) over ZZ or ZLoc(p), read off the Smith form.
SparseMatrix lattice_kernel(const SparseMatrix& a);

/// Basis of a column span with an identity block on `pivot_rows`: the
/// coordinates of any vector of the span are its entries at those rows.
struct UnitBasis {
  SparseMatrix basis;
  std::vector<std::size_t> pivot_rows;

  std::size_t size() const { return pivot_rows.size(); }
  /// Coordinates of the columns of `v` (assumed to lie in the span).
  SparseMatrix coordinates(const SparseMatrix& v) const { return v.select_rows(pivot_rows); }
};

/// Reduced column-echelon basis of Im(A), eliminating with unit pivots only.
/// Works over any ring when the image is a summand reachable by unit pivots
/// (e.g. constant matrices with 2 invertible); throws NonUnit otherwise.
UnitBasis unit_image_basis(const SparseMatrix& a);

/// Basis of ker(A) with an identity block on the free columns, eliminating
/// with unit pivots only. Same applicability as unit_image_basis.
UnitBasis unit_kernel_basis(const SparseMatrix& a);

/// Invariants of the cokernel of a relation matrix (generators = rows).
struct ModuleInvariants {
  std::size_t free_rank = 0;
  std::vector<mpz_class> torsion;  // normalized nonunit invariant factors, dividing chain
};

/// Cokernel invariants over a field, ZZ or ZLoc(p).
ModuleInvariants cokernel_invariants(const SparseMatrix& relations);

/// True when every column of `v` lies in the column span of `a`.
/// Fields via rank; ZZ and ZLoc(p) via the Smith form of `a`.
bool in_column_span(const SparseMatrix& a, const SparseMatrix& v);

/// Determinant of a square matrix over a field, ZZ or ZLoc(p).
Scalar determinant(const SparseMatrix& a);

}  // namespace symchain
