#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "symchain/scalar.hpp"

namespace symchain {

/// Exact sparse matrix over one ring. Rows are ordered maps column -> nonzero entry.
class SparseMatrix {
 public:
  using Row = std::map<std::size_t, Scalar>;

  SparseMatrix(Ring ring, std::size_t rows, std::size_t cols);

  static SparseMatrix identity(const Ring& ring, std::size_t n);
  static SparseMatrix from_dense(const Ring& ring, const std::vector<std::vector<Scalar>>& rows);
  /// Convenience for tests and fixtures: entries parsed with Scalar::parse.
  static SparseMatrix from_strings(const Ring& ring, std::size_t rows, std::size_t cols,
                                   const std::vector<std::vector<std::string>>& entries);

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const;
  bool is_zero() const { return nnz() == 0; }

  Scalar at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Scalar& value);
  void add_to(std::size_t i, std::size_t j, const Scalar& value);
  const Row& row(std::size_t i) const { return data_[i]; }

  SparseMatrix transpose() const;
  SparseMatrix select_rows(const std::vector<std::size_t>& rows) const;
  SparseMatrix select_cols(const std::vector<std::size_t>& cols) const;
  SparseMatrix drop_row(std::size_t i) const;
  SparseMatrix drop_col(std::size_t j) const;
  std::vector<std::vector<Scalar>> dense() const;
  /// Dense row-major entry strings, the fixture and file representation.
  std::vector<std::vector<std::string>> to_strings() const;
  std::string to_string() const;

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);
  friend bool operator!=(const SparseMatrix& a, const SparseMatrix& b) { return !(a == b); }

 private:
  void check_index(std::size_t i, std::size_t j) const;

  Ring ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Row> data_;
};

SparseMatrix matmul(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix mat_add(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix mat_sub(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix scale(const Scalar& c, const SparseMatrix& a);
SparseMatrix negate(const SparseMatrix& a);

SparseMatrix hstack(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix vstack(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix block_diag(const SparseMatrix& a, const SparseMatrix& b);
/// Writes `block` into `target` with its top-left corner at (row, col).
void place_block(SparseMatrix& target, std::size_t row, std::size_t col, const SparseMatrix& block);
/// Kronecker product; entry (i*b.rows()+k, j*b.cols()+l) = a(i,j)*b(k,l).
SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);
/// Entrywise image under a supported ring map.
SparseMatrix map_matrix(const SparseMatrix& a, const Ring& target);

}  // namespace symchain
