#pragma once

// OpenMP kernels for the data-parallel loops of the library, each paired with a
// serial reference implementation. Tests check the two agree; the benchmark
// target times them against each other.

#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

#include "symchain/matrix.hpp"

namespace symchain {

/// Runs body(i) for i in [0, n) on the OpenMP team. The first exception thrown
/// by any iteration is rethrown on the calling thread after the loop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

namespace kernels {

/// Row-parallel sparse product.
SparseMatrix matmul(const SparseMatrix& a, const SparseMatrix& b);
/// Ranks of a batch of matrices over a field, one task per matrix.
std::vector<std::size_t> batch_rank(const std::vector<SparseMatrix>& matrices);

}  // namespace kernels

namespace serial {

SparseMatrix matmul(const SparseMatrix& a, const SparseMatrix& b);
std::vector<std::size_t> batch_rank(const std::vector<SparseMatrix>& matrices);

}  // namespace serial

}  // namespace symchain
