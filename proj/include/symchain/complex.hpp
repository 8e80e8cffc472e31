#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symchain/matrix.hpp"

namespace symchain {

/// First failing invariant found by FreeComplex::validate.
struct Violation {
  int degree = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  std::string message;
};

/// Bounded complex of finite-rank free modules. Degrees with rank zero are
/// not stored; d(n) for such degrees is an empty (or zero) matrix.
///
/// Over graded rings every generator carries an internal degree, and each
/// nonzero entry (i,j) of d(n) must be homogeneous of degree
/// gdeg(n)[j] - gdeg(n-1)[i].
class FreeComplex {
 public:
  explicit FreeComplex(Ring ring);
  /// `diffs[n]` is d_n : X_n -> X_{n-1}; missing entries are zero. Shapes and
  /// rings are checked here; d^2 = 0 and homogeneity are checked by validate().
  FreeComplex(Ring ring, std::map<int, std::size_t> ranks, std::map<int, SparseMatrix> diffs,
              std::map<int, std::vector<int>> gdeg = {});

  const Ring& ring() const { return ring_; }
  bool is_graded() const { return ring_.is_graded(); }
  bool empty() const { return ranks_.empty(); }
  /// Support bounds; empty() complexes report lo() = 0, hi() = -1.
  int lo() const;
  int hi() const;
  std::size_t rank(int n) const;
  std::size_t total_rank() const;
  /// Degrees with nonzero rank, ascending.
  std::vector<int> degrees() const;
  /// d_n as a rank(n-1) x rank(n) matrix.
  SparseMatrix d(int n) const;
  /// Internal generator degrees at n (empty for ungraded rings or rank 0).
  const std::vector<int>& gdeg(int n) const;
  /// Largest internal generator degree over the whole complex (0 if none).
  int max_gdeg() const;

  std::optional<Violation> validate() const;

  friend bool operator==(const FreeComplex& a, const FreeComplex& b);
  friend bool operator!=(const FreeComplex& a, const FreeComplex& b) { return !(a == b); }

 private:
  Ring ring_;
  std::map<int, std::size_t> ranks_;
  std::map<int, SparseMatrix> d_;
  std::map<int, std::vector<int>> gdeg_;
};

/// Degree-preserving family f_n : X_n -> Y_n.
class ChainMap {
 public:
  ChainMap(FreeComplex source, FreeComplex target, std::map<int, SparseMatrix> maps = {});

  const FreeComplex& source() const { return source_; }
  const FreeComplex& target() const { return target_; }
  /// f_n as a rank_Y(n) x rank_X(n) matrix (zero outside the stored degrees).
  SparseMatrix at(int n) const;
  /// Degrees where both source and target are nonzero.
  std::vector<int> degrees() const;

  friend bool operator==(const ChainMap& a, const ChainMap& b);
  friend bool operator!=(const ChainMap& a, const ChainMap& b) { return !(a == b); }

 private:
  FreeComplex source_;
  FreeComplex target_;
  std::map<int, SparseMatrix> maps_;
};

/// Degree +1 family s_n : X_n -> Y_{n+1}.
class Homotopy {
 public:
  Homotopy(FreeComplex source, FreeComplex target, std::map<int, SparseMatrix> maps = {});

  const FreeComplex& source() const { return source_; }
  const FreeComplex& target() const { return target_; }
  SparseMatrix at(int n) const;

 private:
  FreeComplex source_;
  FreeComplex target_;
  std::map<int, SparseMatrix> maps_;
};

FreeComplex zero_complex(const Ring& ring);
/// R concentrated in degree n (internal degree 0 when graded).
FreeComplex free_module(const Ring& ring, int n, std::size_t rank = 1);

/// (Σ^i X)_n = X_{n-i}, differential multiplied by (-1)^i.
FreeComplex shift(const FreeComplex& x, int i);
FreeComplex direct_sum(const FreeComplex& x, const FreeComplex& y);

/// Block layout of (X⊗Y)_n: blocks X_p⊗Y_q listed by decreasing p, each
/// block row-major (index offset + i*rank(Y_q) + j).
struct TensorBlock {
  int p;
  int q;
  std::size_t offset;
};
std::vector<TensorBlock> tensor_blocks(const FreeComplex& x, const FreeComplex& y, int n);

/// Koszul-sign tensor product: d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy.
FreeComplex tensor(const FreeComplex& x, const FreeComplex& y);
ChainMap tensor_map(const ChainMap& f, const ChainMap& g);

/// K(x) for one element, K(x,y) with bases e2; e11, e12; e0 for two, and the
/// left-associated iterated tensor product for three or more.
FreeComplex koszul(const std::vector<Scalar>& elements);

/// Cone_n = X_{n-1} ⊕ Y_n with d(x, y) = (-dx, f(x) + dy).
FreeComplex cone(const ChainMap& f);

ChainMap identity_map(const FreeComplex& x);
ChainMap zero_map(const FreeComplex& x, const FreeComplex& y);
/// g ∘ f.
ChainMap compose(const ChainMap& g, const ChainMap& f);
ChainMap map_add(const ChainMap& f, const ChainMap& g);
ChainMap map_sub(const ChainMap& f, const ChainMap& g);
ChainMap map_scale(const Scalar& c, const ChainMap& f);
/// Σ^i f with the same matrices on the shifted complexes.
ChainMap shift_map(const ChainMap& f, int i);
/// Block-diagonal map X⊕X' -> Y⊕Y'.
ChainMap direct_sum_map(const ChainMap& f, const ChainMap& g);

bool is_chain_map(const ChainMap& f);
/// f_n - g_n = d^Y_{n+1} s_n + s_{n-1} d^X_n for all n.
bool is_homotopy(const Homotopy& s, const ChainMap& f, const ChainMap& g);
/// Degreewise invertible chain map.
bool is_isomorphism(const ChainMap& f);

/// Entrywise image under a supported ring map (base change).
FreeComplex map_complex(const FreeComplex& x, const Ring& target);
ChainMap map_chain_map(const ChainMap& f, const Ring& target);

}  // namespace symchain
