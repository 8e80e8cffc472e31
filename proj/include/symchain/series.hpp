#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symchain/homology.hpp"

namespace symchain {

/// Laurent polynomial with integer coefficients, zero terms not stored.
struct RankSeries {
  std::map<int, long long> coeffs;

  long long at(int n) const;
  /// Ascending powers, e.g. "1+2t+2t^2+2t^3+t^4"; "0" for the zero series.
  std::string to_string() const;
  static RankSeries parse(const std::string& text);
  friend bool operator==(const RankSeries&, const RankSeries&) = default;
};

RankSeries rank_series(const FreeComplex& x);

struct SeriesIdentity {
  RankSeries lhs;  // rank series of S²(X)
  RankSeries rhs;  // ½[P(t)² + P(-t²)]
  bool holds() const { return lhs == rhs; }
};

SeriesIdentity verify_series_identity(const FreeComplex& x);

/// Closed-form rank of S²(X)_n from the ranks r_l of X.
std::size_t sym2_rank_formula(const std::map<int, std::size_t>& ranks, int n);

struct PoincReport {
  std::vector<long long> expansion;  // coefficients of t^0..t^N
  bool constant = false;             // no nonzero coefficient in degrees 1..N
  bool higher_vanish = false;        // r_i = 0 for 0 < i <= N
  std::vector<char> cases;           // applicable lemma cases among a..d
  std::optional<long long> forced;   // value of Q forced by case b, c or d
  /// The lemma's conclusions hold on this data (to order N).
  bool consistent = false;
};

/// Q(t)^2 + sign*Q(-t^2) to order N, where Q = Σ coeffs[i] t^i.
PoincReport poinc_check(const std::vector<long long>& coeffs, int sign, int order);

enum class PivotOrder { Ascending, Descending };

struct Minimization {
  FreeComplex minimal;
  ChainMap q;        // X -> minimal, a quasi-isomorphism
  ChainMap section;  // minimal -> X with q∘section = id
};

/// No differential entry is a unit. Fields, ZLoc(p) and graded rings.
bool is_minimal(const FreeComplex& x);
/// Splits off contractible summands 0 -> R -> R -> 0 one unit pivot at a time.
Minimization minimize(const FreeComplex& x, PivotOrder order = PivotOrder::Ascending);

struct PdReport {
  std::optional<int> length;       // hi - lo of minimize(X); nullopt for the zero complex
  std::optional<int> sym2_length;  // same for minimize(S²(X))
  /// rank S²(P)_{p+q} >= r_p r_q for every p < q in the support of P = minimize(X).
  bool rank_inequality = true;
};

PdReport pd_finite(const FreeComplex& x);

}  // namespace symchain
