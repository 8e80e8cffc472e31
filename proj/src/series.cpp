#include "symchain/series.hpp"

#include <algorithm>
#include <cctype>

namespace symchain {

// ---------------------------------------------------------------- rank series

long long RankSeries::at(int n) const {
  auto it = coeffs.find(n);
  return it == coeffs.end() ? 0 : it->second;
}

std::string RankSeries::to_string() const {
  if (coeffs.empty()) return "0";
  std::string out;
  for (const auto& [n, c] : coeffs) {
    long long mag = c < 0 ? -c : c;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? "-" : "+";
    }
    if (n == 0 || mag != 1) out += std::to_string(mag);
    if (n != 0) out += "t";
    if (n != 0 && n != 1) out += "^" + std::to_string(n);
  }
  return out;
}

RankSeries RankSeries::parse(const std::string& text) {
  RankSeries s;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) { throw ParseError("rank series: " + why, 1, pos + 1); };
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto number = [&]() -> long long {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("expected digits");
    return std::stoll(text.substr(start, pos - start));
  };
  skip();
  if (text.substr(pos) == "0") return s;
  bool first = true;
  while (true) {
    skip();
    if (pos >= text.size()) break;
    long long sgn = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sgn = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      fail("expected + or -");
    }
    first = false;
    long long c = 1;
    bool has_coeff = false;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      c = number();
      has_coeff = true;
    }
    int e = 0;
    if (pos < text.size() && text[pos] == '*') ++pos;
    if (pos < text.size() && text[pos] == 't') {
      ++pos;
      e = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        int esign = 1;
        if (pos < text.size() && text[pos] == '-') {
          esign = -1;
          ++pos;
        }
        e = esign * static_cast<int>(number());
      }
    } else if (!has_coeff) {
      fail("expected a term");
    }
    s.coeffs[e] += sgn * c;
    if (s.coeffs[e] == 0) s.coeffs.erase(e);
  }
  return s;
}

RankSeries rank_series(const FreeComplex& x) {
  RankSeries s;
  for (int n : x.degrees()) s.coeffs[n] = static_cast<long long>(x.rank(n));
  return s;
}

SeriesIdentity verify_series_identity(const FreeComplex& x) {
  SeriesIdentity out;
  out.lhs = rank_series(sym2(x).complex);
  RankSeries p = rank_series(x);
  std::map<int, long long> twice;
  for (const auto& [a, ca] : p.coeffs) {
    for (const auto& [b, cb] : p.coeffs) twice[a + b] += ca * cb;
    // P(-t^2): coefficient of t^{2a} is (-1)^a r_a.
    twice[2 * a] += (a % 2 == 0 ? 1 : -1) * ca;
  }
  for (const auto& [n, c] : twice) {
    if (c % 2 != 0) throw ContractViolation("series identity: odd coefficient");
    if (c != 0) out.rhs.coeffs[n] = c / 2;
  }
  return out;
}

std::size_t sym2_rank_formula(const std::map<int, std::size_t>& ranks, int n) {
  auto r = [&](int l) -> std::size_t {
    auto it = ranks.find(l);
    return it == ranks.end() ? 0 : it->second;
  };
  std::size_t total = 0;
  // Sum over m < n/2, i.e. 2m < n.
  for (const auto& [m, rm] : ranks) {
    if (2 * m < n) total += rm * r(n - m);
  }
  if (n % 2 != 0) return total;
  std::size_t rh = r(n / 2);
  int mod4 = ((n % 4) + 4) % 4;
  return total + (mod4 == 0 ? rh * (rh + 1) / 2 : rh * (rh - (rh > 0 ? 1 : 0)) / 2);
}

// ---------------------------------------------------------------- Lemma on power series

PoincReport poinc_check(const std::vector<long long>& coeffs, int sign, int order) {
  if (order < 2) throw ContractViolation("poinc_check: truncation order must be at least 2");
  if (sign != 1 && sign != -1) throw ContractViolation("poinc_check: sign must be +1 or -1");
  if (coeffs.empty() || coeffs[0] <= 0) throw ContractViolation("poinc_check: r_0 must be positive");
  for (long long c : coeffs) {
    if (c < 0) throw ContractViolation("poinc_check: coefficients must be nonnegative");
  }
  auto r = [&](long long i) -> long long { return i < static_cast<long long>(coeffs.size()) ? coeffs[i] : 0; };
  PoincReport rep;
  rep.expansion.assign(order + 1, 0);
  for (int k = 0; k <= order; ++k) {
    long long v = 0;
    for (int i = 0; i <= k; ++i) v += r(i) * r(k - i);
    if (k % 2 == 0) v += sign * ((k / 2) % 2 == 0 ? 1 : -1) * r(k / 2);
    rep.expansion[k] = v;
  }
  rep.constant = true;
  for (int k = 1; k <= order; ++k) rep.constant = rep.constant && rep.expansion[k] == 0;
  rep.higher_vanish = true;
  for (int i = 1; i <= order; ++i) rep.higher_vanish = rep.higher_vanish && r(i) == 0;

  const long long value = rep.expansion[0];
  if (sign == 1) {
    rep.cases.push_back('a');
    if (rep.constant && value == 2) {
      rep.cases.push_back('c');
      rep.forced = 1;
    }
  } else if (rep.constant && value == 0) {
    rep.cases.push_back('b');
    rep.forced = 1;
  } else if (rep.constant && value == 2) {
    rep.cases.push_back('d');
    rep.forced = 2;
  }

  rep.consistent = true;
  if (sign == 1 && value == 0) rep.consistent = false;
  if (rep.constant && value >= 0) {
    if (!rep.higher_vanish) rep.consistent = false;
    if (rep.forced && r(0) != *rep.forced) rep.consistent = false;
  }
  return rep;
}

// ---------------------------------------------------------------- minimization

namespace {

void require_local(const Ring& ring) {
  if (!ring.is_local()) throw UnsupportedRing("minimality needs a local ring, got " + ring.name());
}

struct Working {
  std::map<int, std::size_t> ranks;
  std::map<int, SparseMatrix> d;
  std::map<int, std::vector<int>> gdeg;
  std::map<int, SparseMatrix> q;  // original_n -> current_n
  std::map<int, SparseMatrix> s;  // current_n -> original_n
};

struct Pivot {
  int n;
  std::size_t i;
  std::size_t j;
};

std::optional<Pivot> find_pivot(const Working& w, PivotOrder order) {
  std::vector<int> degs;
  for (const auto& [n, m] : w.d) degs.push_back(n);
  if (order == PivotOrder::Descending) std::reverse(degs.begin(), degs.end());
  for (int n : degs) {
    const SparseMatrix& m = w.d.at(n);
    std::vector<std::size_t> rows(m.rows());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    if (order == PivotOrder::Descending) std::reverse(rows.begin(), rows.end());
    for (std::size_t i : rows) {
      const auto& row = m.row(i);
      if (order == PivotOrder::Ascending) {
        for (const auto& [j, v] : row) {
          if (v.is_unit()) return Pivot{n, i, j};
        }
      } else {
        for (auto it = row.rbegin(); it != row.rend(); ++it) {
          if (it->second.is_unit()) return Pivot{n, i, it->first};
        }
      }
    }
  }
  return std::nullopt;
}

void eliminate(Working& w, const Pivot& pv, const Ring& ring) {
  const int n = pv.n;
  const SparseMatrix dn = w.d.at(n);
  const Scalar uinv = dn.at(pv.i, pv.j).inverse();
  SparseMatrix c = dn.select_cols({pv.j}).drop_row(pv.i);  // column j without row i
  SparseMatrix b = dn.select_rows({pv.i}).drop_col(pv.j);  // row i without column j
  SparseMatrix rest = dn.drop_row(pv.i).drop_col(pv.j);
  SparseMatrix cu = scale(uinv, c);
  w.d.at(n) = mat_sub(rest, matmul(cu, b));
  if (w.d.count(n - 1)) w.d.at(n - 1) = w.d.at(n - 1).drop_col(pv.i);
  if (w.d.count(n + 1)) w.d.at(n + 1) = w.d.at(n + 1).drop_row(pv.j);

  // q_n drops coordinate j; q_{n-1}(v) = v_rest - c u^{-1} v_i.
  w.q.at(n) = w.q.at(n).drop_row(pv.j);
  SparseMatrix qi = w.q.at(n - 1).select_rows({pv.i});
  w.q.at(n - 1) = mat_sub(w.q.at(n - 1).drop_row(pv.i), matmul(cu, qi));

  // Section: degree n sends e_k to e_k - u^{-1} b_k e_j; degree n-1 is the inclusion.
  const std::size_t rn = w.ranks[n];
  SparseMatrix step(ring, rn, rn - 1);
  for (std::size_t k = 0, col = 0; k < rn; ++k) {
    if (k == pv.j) continue;
    step.set(k, col, Scalar::one(ring));
    step.set(pv.j, col, -(uinv * b.at(0, col)));
    ++col;
  }
  w.s.at(n) = matmul(w.s.at(n), step);
  w.s.at(n - 1) = w.s.at(n - 1).drop_col(pv.i);

  w.ranks[n] -= 1;
  w.ranks[n - 1] -= 1;
  if (!w.gdeg.empty()) {
    w.gdeg[n].erase(w.gdeg[n].begin() + static_cast<long>(pv.j));
    w.gdeg[n - 1].erase(w.gdeg[n - 1].begin() + static_cast<long>(pv.i));
  }
}

}  // namespace

bool is_minimal(const FreeComplex& x) {
  require_local(x.ring());
  for (int n : x.degrees()) {
    SparseMatrix m = x.d(n);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (const auto& [j, v] : m.row(i)) {
        if (v.is_unit()) return false;
      }
    }
  }
  return true;
}

Minimization minimize(const FreeComplex& x, PivotOrder order) {
  const Ring& ring = x.ring();
  require_local(ring);
  Working w;
  for (int n : x.degrees()) {
    w.ranks[n] = x.rank(n);
    if (x.is_graded()) w.gdeg[n] = x.gdeg(n);
    if (x.rank(n - 1) > 0) w.d.emplace(n, x.d(n));
    w.q.emplace(n, SparseMatrix::identity(ring, x.rank(n)));
    w.s.emplace(n, SparseMatrix::identity(ring, x.rank(n)));
  }
  while (auto pv = find_pivot(w, order)) eliminate(w, *pv, ring);

  std::map<int, SparseMatrix> diffs;
  for (auto& [n, m] : w.d) {
    if (w.ranks[n] > 0 && w.ranks[n - 1] > 0) diffs.emplace(n, m);
  }
  FreeComplex m(ring, w.ranks, std::move(diffs), w.gdeg);
  std::map<int, SparseMatrix> qmaps, smaps;
  for (int n : m.degrees()) {
    qmaps.emplace(n, w.q.at(n));
    smaps.emplace(n, w.s.at(n));
  }
  ChainMap q(x, m, std::move(qmaps));
  ChainMap section(m, x, std::move(smaps));
  return Minimization{std::move(m), std::move(q), std::move(section)};
}

PdReport pd_finite(const FreeComplex& x) {
  PdReport rep;
  FreeComplex p = minimize(x).minimal;
  FreeComplex sp = sym2(p).complex;
  FreeComplex msp = minimize(sym2(x).complex).minimal;
  if (!p.empty()) rep.length = p.hi() - p.lo();
  if (!msp.empty()) rep.sym2_length = msp.hi() - msp.lo();
  for (int a : p.degrees()) {
    for (int b : p.degrees()) {
      if (a < b && sp.rank(a + b) < p.rank(a) * p.rank(b)) rep.rank_inequality = false;
    }
  }
  return rep;
}

}  // namespace symchain
