#include "symchain/matrix.hpp"

#include <sstream>

#include "symchain/kernels.hpp"

namespace symchain {

SparseMatrix::SparseMatrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows) {}

SparseMatrix SparseMatrix::identity(const Ring& ring, std::size_t n) {
  SparseMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace(i, Scalar::one(ring));
  return m;
}

SparseMatrix SparseMatrix::from_dense(const Ring& ring, const std::vector<std::vector<Scalar>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  SparseMatrix m(ring, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionMismatch("ragged dense matrix");
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

SparseMatrix SparseMatrix::from_strings(const Ring& ring, std::size_t rows, std::size_t cols,
                                        const std::vector<std::vector<std::string>>& entries) {
  if (entries.size() != rows) throw DimensionMismatch("row count mismatch");
  SparseMatrix m(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (entries[i].size() != cols) throw DimensionMismatch("column count mismatch in row " + std::to_string(i));
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, Scalar::parse(ring, entries[i][j]));
  }
  return m;
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

void SparseMatrix::check_index(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) {
    throw DimensionMismatch("index (" + std::to_string(i) + "," + std::to_string(j) + ") outside " +
                            std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

Scalar SparseMatrix::at(std::size_t i, std::size_t j) const {
  check_index(i, j);
  auto it = data_[i].find(j);
  return it == data_[i].end() ? Scalar::zero(ring_) : it->second;
}

void SparseMatrix::set(std::size_t i, std::size_t j, const Scalar& value) {
  check_index(i, j);
  if (value.ring() != ring_) throw RingMismatch("entry ring " + value.ring().name() + " in " + ring_.name() + " matrix");
  if (value.is_zero()) {
    data_[i].erase(j);
  } else {
    data_[i].insert_or_assign(j, value);
  }
}

void SparseMatrix::add_to(std::size_t i, std::size_t j, const Scalar& value) {
  check_index(i, j);
  if (value.is_zero()) return;
  auto it = data_[i].find(j);
  if (it == data_[i].end()) {
    set(i, j, value);
    return;
  }
  it->second += value;
  if (it->second.is_zero()) data_[i].erase(it);
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (const auto& [j, v] : data_[i]) t.data_[j].emplace(i, v);
  }
  return t;
}

SparseMatrix SparseMatrix::select_rows(const std::vector<std::size_t>& rows) const {
  SparseMatrix m(ring_, rows.size(), cols_);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k] >= rows_) throw DimensionMismatch("row index out of range");
    m.data_[k] = data_[rows[k]];
  }
  return m;
}

SparseMatrix SparseMatrix::select_cols(const std::vector<std::size_t>& cols) const {
  // A source column may be selected more than once.
  std::vector<std::vector<std::size_t>> where(cols_);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (cols[k] >= cols_) throw DimensionMismatch("column index out of range");
    where[cols[k]].push_back(k);
  }
  SparseMatrix m(ring_, rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (const auto& [j, v] : data_[i]) {
      for (std::size_t k : where[j]) m.data_[i].emplace(k, v);
    }
  }
  return m;
}

SparseMatrix SparseMatrix::drop_row(std::size_t i) const {
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < rows_; ++k) {
    if (k != i) keep.push_back(k);
  }
  return select_rows(keep);
}

SparseMatrix SparseMatrix::drop_col(std::size_t j) const {
  SparseMatrix m(ring_, rows_, cols_ - 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (const auto& [c, v] : data_[i]) {
      if (c < j) {
        m.data_[i].emplace(c, v);
      } else if (c > j) {
        m.data_[i].emplace(c - 1, v);
      }
    }
  }
  return m;
}

std::vector<std::vector<Scalar>> SparseMatrix::dense() const {
  std::vector<std::vector<Scalar>> out(rows_, std::vector<Scalar>(cols_, Scalar::zero(ring_)));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (const auto& [j, v] : data_[i]) out[i][j] = v;
  }
  return out;
}

std::vector<std::vector<std::string>> SparseMatrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_, std::vector<std::string>(cols_, "0"));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (const auto& [j, v] : data_[i]) out[i][j] = v.to_string();
  }
  return out;
}

std::string SparseMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  auto s = to_strings();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) os << ",";
    os << "[";
    for (std::size_t j = 0; j < s[i].size(); ++j) {
      if (j) os << ",";
      os << s[i][j];
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.ring_ != b.ring_) return false;
  return a.data_ == b.data_;
}

SparseMatrix matmul(const SparseMatrix& a, const SparseMatrix& b) { return kernels::matmul(a, b); }

SparseMatrix mat_add(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.ring() != b.ring()) throw RingMismatch("mat_add: ring mismatch");
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("mat_add: shape mismatch");
  SparseMatrix out = a;
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (const auto& [j, v] : b.row(i)) out.add_to(i, j, v);
  }
  return out;
}

SparseMatrix negate(const SparseMatrix& a) {
  SparseMatrix out(a.ring(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (const auto& [j, v] : a.row(i)) out.set(i, j, -v);
  }
  return out;
}

SparseMatrix mat_sub(const SparseMatrix& a, const SparseMatrix& b) { return mat_add(a, negate(b)); }

SparseMatrix scale(const Scalar& c, const SparseMatrix& a) {
  if (c.ring() != a.ring()) throw RingMismatch("scale: ring mismatch");
  SparseMatrix out(a.ring(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (const auto& [j, v] : a.row(i)) out.set(i, j, c * v);
  }
  return out;
}

void place_block(SparseMatrix& target, std::size_t row, std::size_t col, const SparseMatrix& block) {
  if (row + block.rows() > target.rows() || col + block.cols() > target.cols()) {
    throw DimensionMismatch("block does not fit");
  }
  for (std::size_t i = 0; i < block.rows(); ++i) {
    for (const auto& [j, v] : block.row(i)) target.set(row + i, col + j, v);
  }
}

SparseMatrix hstack(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("hstack: row mismatch");
  SparseMatrix out(a.ring(), a.rows(), a.cols() + b.cols());
  place_block(out, 0, 0, a);
  place_block(out, 0, a.cols(), b);
  return out;
}

SparseMatrix vstack(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.cols()) throw DimensionMismatch("vstack: column mismatch");
  SparseMatrix out(a.ring(), a.rows() + b.rows(), a.cols());
  place_block(out, 0, 0, a);
  place_block(out, a.rows(), 0, b);
  return out;
}

SparseMatrix block_diag(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  place_block(out, 0, 0, a);
  place_block(out, a.rows(), a.cols(), b);
  return out;
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.ring() != b.ring()) throw RingMismatch("kron: ring mismatch");
  SparseMatrix out(a.ring(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (const auto& [j, av] : a.row(i)) {
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (const auto& [l, bv] : b.row(k)) out.set(i * b.rows() + k, j * b.cols() + l, av * bv);
      }
    }
  }
  return out;
}

SparseMatrix map_matrix(const SparseMatrix& a, const Ring& target) {
  SparseMatrix out(target, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (const auto& [j, v] : a.row(i)) out.set(i, j, map_scalar(v, target));
  }
  return out;
}

}  // namespace symchain
