#pragma once

// Dense brute-force reference computations. They share no code with the
// elimination routines of the library and are only fit for small inputs.

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "symchain/homology.hpp"

namespace symchain::testing {

using IntMatrix = std::vector<std::vector<mpz_class>>;

/// Determinant by the Leibniz expansion.
mpz_class leibniz(const IntMatrix& m);
/// gcd of all k x k minors (the k-th determinantal divisor).
mpz_class determinantal_divisor(const IntMatrix& m, std::size_t cols, std::size_t k);
/// Rank by dense elimination over QQ.
std::size_t dense_rank(std::vector<std::vector<mpq_class>> a);
std::vector<std::vector<mpq_class>> to_rational(const IntMatrix& m);

/// Integer matrix with the same column span over ZZ or ZLoc(p): each column is
/// multiplied by the lcm of its denominators, a unit in either ring.
IntMatrix integral_columns(const SparseMatrix& a);
/// Invariant factors d_k / d_{k-1} of an integer matrix, k = 1..rank.
std::vector<mpz_class> invariant_factors(const IntMatrix& m, std::size_t cols);
/// H_n of a complex over ZZ or ZLoc(p): free rank from ranks, torsion from the
/// invariant factors of d_{n+1} (only their p-parts over ZLoc(p)).
FpAbelianGroup homology_oracle(const FreeComplex& x, int n);

}  // namespace symchain::testing
