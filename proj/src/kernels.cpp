#include "symchain/kernels.hpp"

#include <omp.h>

#include <mutex>

#include "symchain/linalg.hpp"

namespace symchain {

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  std::exception_ptr first;
  std::mutex guard;
  const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}

namespace {

void check_product(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.ring() != b.ring()) throw RingMismatch("matmul: ring mismatch " + a.ring().name() + " vs " + b.ring().name());
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                            std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

SparseMatrix::Row product_row(const SparseMatrix& a, const SparseMatrix& b, std::size_t i) {
  SparseMatrix::Row acc;
  for (const auto& [k, av] : a.row(i)) {
    for (const auto& [j, bv] : b.row(k)) {
      auto it = acc.find(j);
      if (it == acc.end()) {
        acc.emplace(j, av * bv);
      } else {
        it->second += av * bv;
      }
    }
  }
  return acc;
}

SparseMatrix assemble(const SparseMatrix& a, const SparseMatrix& b, std::vector<SparseMatrix::Row>& rows) {
  SparseMatrix out(a.ring(), a.rows(), b.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (auto& [j, v] : rows[i]) out.set(i, j, v);
  }
  return out;
}

}  // namespace

namespace kernels {

SparseMatrix matmul(const SparseMatrix& a, const SparseMatrix& b) {
  check_product(a, b);
  std::vector<SparseMatrix::Row> rows(a.rows());
  const auto m = static_cast<long>(a.rows());
  // Only fan out when there is enough work to amortize the team start-up.
  if (a.nnz() * 4 < 256) return serial::matmul(a, b);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < m; ++i) rows[static_cast<std::size_t>(i)] = product_row(a, b, static_cast<std::size_t>(i));
  return assemble(a, b, rows);
}

std::vector<std::size_t> batch_rank(const std::vector<SparseMatrix>& matrices) {
  std::vector<std::size_t> out(matrices.size());
  parallel_for(matrices.size(), [&](std::size_t i) { out[i] = rank(matrices[i]); });
  return out;
}

}  // namespace kernels

namespace serial {

SparseMatrix matmul(const SparseMatrix& a, const SparseMatrix& b) {
  check_product(a, b);
  std::vector<SparseMatrix::Row> rows(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) rows[i] = product_row(a, b, i);
  return assemble(a, b, rows);
}

std::vector<std::size_t> batch_rank(const std::vector<SparseMatrix>& matrices) {
  std::vector<std::size_t> out;
  out.reserve(matrices.size());
  for (const auto& m : matrices) out.push_back(rank(m));
  return out;
}

}  // namespace serial

}  // namespace symchain
