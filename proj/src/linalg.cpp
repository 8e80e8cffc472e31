#include "symchain/linalg.hpp"

#include <algorithm>
#include <utility>

namespace symchain {

namespace {

using Dense = std::vector<std::vector<Scalar>>;

void require_field(const Ring& ring, const char* what) {
  if (!ring.is_field()) throw UnsupportedRing(std::string(what) + ": requires a field, got " + ring.name());
}

void require_euclidean(const Ring& ring, const char* what) {
  if (!ring.is_euclidean()) throw UnsupportedRing(std::string(what) + ": requires ZZ or ZLoc(p), got " + ring.name());
}

struct Rref {
  Dense m;
  std::vector<std::size_t> pivot_cols;
};

// Row-reduces with unit pivots only. Throws NonUnit if a column has nonzero
// entries below the current row but none of them is a unit.
Rref unit_rref(Dense m, std::size_t cols) {
  Rref out;
  std::size_t r = 0;
  const std::size_t rows = m.size();
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pick = rows;
    bool nonzero = false;
    for (std::size_t i = r; i < rows; ++i) {
      if (m[i][c].is_zero()) continue;
      nonzero = true;
      if (m[i][c].is_unit()) {
        pick = i;
        break;
      }
    }
    if (pick == rows) {
      if (nonzero) throw NonUnit("elimination needs a unit pivot in column " + std::to_string(c));
      continue;
    }
    std::swap(m[r], m[pick]);
    Scalar inv = m[r][c].inverse();
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Scalar f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
      }
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.m = std::move(m);
  return out;
}

SparseMatrix from_dense_rows(const Ring& ring, const Dense& d, std::size_t rows, std::size_t cols) {
  SparseMatrix out(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) out.set(i, j, d[i][j]);
  }
  return out;
}

Ring fraction_field(const Ring& ring) {
  if (ring.is_field()) return ring;
  if (ring.is_euclidean()) return Ring::rationals();
  throw UnsupportedRing("no fraction-field computation over " + ring.name());
}

}  // namespace

// ---------------------------------------------------------------- Smith form

std::vector<Scalar> SNFResult::invariant_factors() const {
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) {
    Scalar d = D.at(i, i);
    if (d.is_zero()) break;
    out.push_back(d);
  }
  return out;
}

SNFResult smith_normal_form(const SparseMatrix& a) {
  require_euclidean(a.ring(), "smith_normal_form");
  const Ring& ring = a.ring();
  const std::size_t m = a.rows(), n = a.cols();
  Dense d = a.dense();
  Dense u = SparseMatrix::identity(ring, m).dense();
  Dense v = SparseMatrix::identity(ring, n).dense();

  auto swap_rows = [&](std::size_t i, std::size_t k) {
    if (i == k) return;
    std::swap(d[i], d[k]);
    std::swap(u[i], u[k]);
  };
  auto swap_cols = [&](std::size_t j, std::size_t k) {
    if (j == k) return;
    for (auto& row : d) std::swap(row[j], row[k]);
    for (auto& row : v) std::swap(row[j], row[k]);
  };
  // row_i -= q * row_t
  auto row_axpy = [&](std::size_t i, std::size_t t, const Scalar& q) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!d[t][j].is_zero()) d[i][j] -= q * d[t][j];
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (!u[t][j].is_zero()) u[i][j] -= q * u[t][j];
    }
  };
  // col_j -= q * col_t
  auto col_axpy = [&](std::size_t j, std::size_t t, const Scalar& q) {
    for (std::size_t i = 0; i < m; ++i) {
      if (!d[i][t].is_zero()) d[i][j] -= q * d[i][t];
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!v[i][t].is_zero()) v[i][j] -= q * v[i][t];
    }
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // Least-norm pivot in the trailing block.
    std::size_t pi = m, pj = n;
    mpz_class best;
    for (std::size_t i = t; i < m; ++i) {
      for (std::size_t j = t; j < n; ++j) {
        if (d[i][j].is_zero()) continue;
        mpz_class nv = d[i][j].euclidean_norm();
        if (pi == m || nv < best) {
          best = nv;
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == m) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d[i][t].is_zero()) continue;
        auto [q, r] = d[i][t].div_rem(d[t][t]);
        row_axpy(i, t, q);
        if (!r.is_zero()) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d[t][j].is_zero()) continue;
        auto [q, r] = d[t][j].div_rem(d[t][t]);
        col_axpy(j, t, q);
        if (!r.is_zero()) clean = false;
      }
      if (!clean) {
        // Move the smallest remainder in row/column t onto the pivot.
        std::size_t bi = t, bj = t;
        mpz_class bn = d[t][t].euclidean_norm();
        for (std::size_t i = t + 1; i < m; ++i) {
          if (!d[i][t].is_zero() && d[i][t].euclidean_norm() < bn) {
            bn = d[i][t].euclidean_norm();
            bi = i;
            bj = t;
          }
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (!d[t][j].is_zero() && d[t][j].euclidean_norm() < bn) {
            bn = d[t][j].euclidean_norm();
            bi = t;
            bj = j;
          }
        }
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      // Divisibility of the trailing block by the pivot.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (d[i][j].is_zero()) continue;
          if (!d[i][j].div_rem(d[t][t]).second.is_zero()) {
            bad = i;
            break;
          }
        }
      }
      if (bad == m) break;
      row_axpy(t, bad, -Scalar::one(ring));
    }

    auto [unit, normal] = d[t][t].unit_normal();
    Scalar inv = unit.inverse();
    if (!inv.is_one()) {
      for (auto& x : d[t]) x *= inv;
      for (auto& x : u[t]) x *= inv;
    }
  }

  return SNFResult{from_dense_rows(ring, u, m, m), from_dense_rows(ring, d, m, n), from_dense_rows(ring, v, n, n)};
}

// ---------------------------------------------------------------- field routines

std::size_t rank(const SparseMatrix& a) {
  Ring k = fraction_field(a.ring());
  SparseMatrix mapped = a.ring() == k ? a : map_matrix(a, k);
  return unit_rref(mapped.dense(), mapped.cols()).pivot_cols.size();
}

SparseMatrix kernel_basis(const SparseMatrix& a) {
  require_field(a.ring(), "kernel_basis");
  return unit_kernel_basis(a).basis;
}

std::optional<SparseMatrix> solve(const SparseMatrix& a, const SparseMatrix& b) {
  require_field(a.ring(), "solve");
  if (a.rows() != b.rows()) throw DimensionMismatch("solve: row mismatch");
  const std::size_t n = a.cols();
  Rref r = unit_rref(hstack(a, b).dense(), n + b.cols());
  for (std::size_t c : r.pivot_cols) {
    if (c >= n) return std::nullopt;
  }
  SparseMatrix x(a.ring(), n, b.cols());
  for (std::size_t k = 0; k < r.pivot_cols.size(); ++k) {
    for (std::size_t j = 0; j < b.cols(); ++j) x.set(r.pivot_cols[k], j, r.m[k][n + j]);
  }
  return x;
}

std::optional<SparseMatrix> invert(const SparseMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("invert: matrix is not square");
  if (a.ring().is_field()) {
    if (rank(a) != a.rows()) return std::nullopt;
    return solve(a, SparseMatrix::identity(a.ring(), a.rows()));
  }
  require_euclidean(a.ring(), "invert");
  SNFResult s = smith_normal_form(a);
  SparseMatrix dinv(a.ring(), a.rows(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Scalar di = s.D.at(i, i);
    if (!di.is_unit()) return std::nullopt;
    dinv.set(i, i, di.inverse());
  }
  return matmul(matmul(s.V, dinv), s.U);
}

SparseMatrix lattice_kernel(const SparseMatrix& a) {
  require_euclidean(a.ring(), "lattice_kernel");
  SNFResult s = smith_normal_form(a);
  std::size_t r = s.rank();
  std::vector<std::size_t> cols;
  for (std::size_t j = r; j < a.cols(); ++j) cols.push_back(j);
  return s.V.select_cols(cols);
}

UnitBasis unit_image_basis(const SparseMatrix& a) {
  Rref r = unit_rref(a.transpose().dense(), a.rows());
  SparseMatrix basis(a.ring(), a.rows(), r.pivot_cols.size());
  for (std::size_t k = 0; k < r.pivot_cols.size(); ++k) {
    for (std::size_t i = 0; i < a.rows(); ++i) basis.set(i, k, r.m[k][i]);
  }
  return UnitBasis{std::move(basis), r.pivot_cols};
}

UnitBasis unit_kernel_basis(const SparseMatrix& a) {
  Rref r = unit_rref(a.dense(), a.cols());
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t c : r.pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  SparseMatrix basis(a.ring(), a.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    basis.set(free_cols[k], k, Scalar::one(a.ring()));
    for (std::size_t p = 0; p < r.pivot_cols.size(); ++p) {
      basis.set(r.pivot_cols[p], k, -r.m[p][free_cols[k]]);
    }
  }
  return UnitBasis{std::move(basis), free_cols};
}

ModuleInvariants cokernel_invariants(const SparseMatrix& relations) {
  ModuleInvariants out;
  if (relations.ring().is_field()) {
    out.free_rank = relations.rows() - rank(relations);
    return out;
  }
  require_euclidean(relations.ring(), "cokernel_invariants");
  SNFResult s = smith_normal_form(relations);
  auto factors = s.invariant_factors();
  out.free_rank = relations.rows() - factors.size();
  for (const auto& f : factors) {
    if (f.is_unit()) continue;
    out.torsion.push_back(f.constant_value().get_num());
  }
  return out;
}

bool in_column_span(const SparseMatrix& a, const SparseMatrix& v) {
  if (a.rows() != v.rows()) throw DimensionMismatch("in_column_span: row mismatch");
  if (v.is_zero()) return true;
  if (a.ring().is_field()) return rank(a) == rank(hstack(a, v));
  require_euclidean(a.ring(), "in_column_span");
  // A·x = v  <=>  D·(V^{-1}x) = U·v.
  SNFResult s = smith_normal_form(a);
  SparseMatrix uv = matmul(s.U, v);
  auto factors = s.invariant_factors();
  for (std::size_t i = 0; i < uv.rows(); ++i) {
    for (const auto& [j, value] : uv.row(i)) {
      if (i >= factors.size()) return false;
      if (!value.div_rem(factors[i]).second.is_zero()) return false;
    }
  }
  return true;
}

Scalar determinant(const SparseMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("determinant: matrix is not square");
  Ring k = fraction_field(a.ring());
  Dense m = (a.ring() == k ? a : map_matrix(a, k)).dense();
  const std::size_t n = m.size();
  Scalar det = Scalar::one(k);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return Scalar::zero(a.ring());
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    Scalar inv = m[c][c].inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      Scalar f = m[i][c] * inv;
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return a.ring() == k ? det : Scalar(a.ring(), det.constant_value());
}

}  // namespace symchain
