#pragma once

// Seeded generators for property tests. Every generator draws from the
// caller's engine so a test is reproducible from its seed alone.

#include <random>

#include "symchain/series.hpp"

namespace symchain::testing {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi);

/// Small integer (or fraction over QQ) element; nonunits over ZLoc(p) when `in_max` is set.
Scalar random_scalar(const Ring& ring, Rng& rng, bool in_max = false);
/// Homogeneous polynomial of the given degree with small integer coefficients.
Scalar random_homogeneous(const Ring& ring, Rng& rng, int degree);
SparseMatrix random_matrix(const Ring& ring, Rng& rng, std::size_t rows, std::size_t cols, double density = 0.6);

struct ComplexShape {
  std::size_t max_rank = 3;
  int max_length = 4;  // number of degrees in the support window
  bool minimal = false;
};

/// Bounded free complex with d∘d = 0 over a field, ZZ, ZLoc(p) or a graded ring.
/// Over graded rings it is a direct sum of shifted Koszul complexes and free modules.
FreeComplex random_complex(const Ring& ring, Rng& rng, const ComplexShape& shape = {});

/// Null-homotopic chain map d s + s d plus c·id when x == y.
ChainMap random_chain_map(const FreeComplex& x, const FreeComplex& y, Rng& rng);
Homotopy random_homotopy(const FreeComplex& x, const FreeComplex& y, Rng& rng);
/// g = f - (d s + s d), so s witnesses f ≃ g.
ChainMap homotopic_partner(const ChainMap& f, const Homotopy& s);

}  // namespace symchain::testing
