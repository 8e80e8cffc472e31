// Replays the worked examples stored under fixtures/ as exact assertions.
#include <algorithm>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "symchain/io.hpp"
#include "symchain/kernels.hpp"

#ifndef SYMCHAIN_FIXTURE_DIR
#define SYMCHAIN_FIXTURE_DIR "fixtures"
#endif

namespace symchain::io {

using Json = nlohmann::ordered_json;

namespace {

class Checker {
 public:
  explicit Checker(FixtureResult& r) : r_(r) {}

  void expect(bool ok, const std::string& what) {
    ++r_.assertions;
    if (!ok) r_.failures.push_back(what);
  }

  /// Byte comparison against the stored canonical entry strings.
  void matrix(const std::string& label, const SparseMatrix& actual, const Json& expected) {
    auto got = actual.to_strings();
    std::vector<std::vector<std::string>> want = expected.get<std::vector<std::vector<std::string>>>();
    expect(got == want, label + ": got " + actual.to_string());
  }

  void matrices(const std::string& label, const std::function<SparseMatrix(int)>& actual, const Json& expected) {
    for (auto it = expected.begin(); it != expected.end(); ++it) {
      int n = std::stoi(it.key());
      matrix(label + "_" + it.key(), actual(n), it.value());
    }
  }

  void homology_strings(const std::string& label, const HomologyReport& h, const Json& expected) {
    for (auto it = expected.begin(); it != expected.end(); ++it) {
      int n = std::stoi(it.key());
      std::string got = h.at(n).to_string(h.ring);
      expect(got == it.value().get<std::string>(), label + " H_" + it.key() + ": got " + got);
    }
  }

  void hilbert(const std::string& label, const HomologyReport& h, const Json& expected) {
    for (auto it = expected.begin(); it != expected.end(); ++it) {
      int n = std::stoi(it.key());
      HilbertTable want;
      for (auto e = it.value().begin(); e != it.value().end(); ++e) want[std::stoi(e.key())] = e.value().get<std::size_t>();
      auto got = h.at(n);
      expect(got.hilbert && *got.hilbert == want, label + " H_" + it.key() + ": got " + got.to_string(h.ring));
    }
  }

 private:
  FixtureResult& r_;
};

Ring ring_of(const Json& j, const char* key = "ring") { return Ring::parse(j.at(key).get<std::string>()); }

std::vector<Scalar> elements(const Ring& ring, const Json& j) {
  std::vector<Scalar> out;
  for (const auto& e : j) out.push_back(Scalar::parse(ring, e.get<std::string>()));
  return out;
}

/// Re-expresses m : X_n -> X_{n-1} in a permuted basis; perm[n][k] is the
/// position in our basis of the k-th fixture basis vector.
SparseMatrix permuted(const SparseMatrix& m, const std::map<int, std::vector<std::size_t>>& perm, int row_deg,
                      int col_deg) {
  SparseMatrix out = m;
  if (perm.count(row_deg)) out = out.select_rows(perm.at(row_deg));
  if (perm.count(col_deg)) out = out.select_cols(perm.at(col_deg));
  return out;
}

std::map<int, std::vector<std::size_t>> read_perm(const Json& j) {
  std::map<int, std::vector<std::size_t>> out;
  for (auto it = j.begin(); it != j.end(); ++it) out[std::stoi(it.key())] = it.value().get<std::vector<std::size_t>>();
  return out;
}

FreeComplex suspended_free(const Ring& ring, int n) { return shift(free_module(ring, 0), n); }

// ---------------------------------------------------------------- fixtures

void koszul01(const Json& f, Checker& c) {
  Ring ring = ring_of(f);
  FreeComplex k = koszul(elements(ring, f.at("elements")));
  FreeComplex kk = tensor(k, k);
  ChainMap a = alpha(k);
  FreeComplex s = sym2(k).complex;
  c.matrices("K d", [&](int n) { return k.d(n); }, f.at("koszul"));
  c.matrices("K⊗K d", [&](int n) { return kk.d(n); }, f.at("tensor"));
  c.matrices("alpha", [&](int n) { return a.at(n); }, f.at("alpha"));
  c.matrices("S2 d", [&](int n) { return s.d(n); }, f.at("sym2"));
  c.expect(!kk.validate() && !s.validate(), "d∘d = 0 on K⊗K and S2(K)");
}

void symm03(const Json& f, Checker& c) {
  Ring ring = ring_of(f);
  FreeComplex k = koszul(elements(ring, f.at("elements")));
  FreeComplex kk = tensor(k, k);
  auto perm = read_perm(f.at("tensor_basis"));
  c.matrices("K⊗K d", [&](int n) { return permuted(kk.d(n), perm, n - 1, n); }, f.at("tensor"));
  ChainMap a = alpha(k);
  c.matrices("alpha", [&](int n) { return permuted(a.at(n), perm, n, n); }, f.at("alpha"));
  c.matrices("S2 d", [&](int n) { return sym2(k).complex.d(n); }, f.at("sym2"));

  const Json& z = f.at("integers");
  Ring zz = ring_of(z);
  FreeComplex kz = koszul(elements(zz, z.at("elements")));
  auto weak = weak_sym2(kz);
  c.expect(std::holds_alternative<PresentedComplex>(weak), "s2 over ZZ carries 2-torsion relations");
  if (auto* p = std::get_if<PresentedComplex>(&weak)) {
    c.homology_strings("s2(K)", homology_presented(*p), z.at("weak_sym2_homology"));
  }
  c.homology_strings("S2(K)", homology(sym2(kz).complex), z.at("sym2_homology"));
}

void koszul01p(const Json& f, Checker& c) {
  Ring ring = ring_of(f);
  FreeComplex k = koszul(elements(ring, f.at("elements")));
  HomologyReport h = homology(sym2(k).complex, f.at("bound").get<int>());
  c.hilbert("S2(K)", h, f.at("sym2_hilbert"));
  c.expect(h.bounded() && h.bound == f.at("bound").get<int>(), "report carries the degree bound");
}

void koszul01pp(const Json& f, Checker& c) {
  Ring ring = ring_of(f);
  FreeComplex k = koszul(elements(ring, f.at("elements")));
  int bound = f.at("bound").get<int>();
  // K resolves R/(x,y): homology concentrated in degree 0.
  c.hilbert("K", homology(k, bound), f.at("koszul_hilbert"));
  HomologyReport hs = homology(sym2(k).complex, bound);
  int n = f.at("nonzero_degree").get<int>();
  c.expect(!hs.at(n).is_zero(), "H_" + std::to_string(n) + "(S2 K) is nonzero");
  // S²(R/(x,y)) is a module in degree 0, so a quasi-isomorphism would kill H_n.
  c.expect(n != 0, "witness degree differs from 0");
}

void symm05c(const Json& f, Checker& c) {
  Ring ring = ring_of(f);
  FreeComplex k = koszul(elements(ring, f.at("elements")));
  c.expect(is_exact(k) == Verdict::True, "K(1,1) is exact");
  ChainMap z = zero_map(k, k);
  c.expect(is_quasi_iso(z) == Verdict::True, "zero map on K is a quasi-isomorphism");
  HomologyReport hs = homology(sym2(k).complex);
  c.homology_strings("S2(K)", hs, f.at("sym2_homology"));
  ChainMap sz = sym2_map(z);
  bool all_zero = true;
  for (int n : sz.degrees()) all_zero = all_zero && sz.at(n).nnz() == 0;
  c.expect(all_zero, "S2(0) is the zero morphism");
  c.expect(is_quasi_iso(sz) == Verdict::False, "S2(0) is not a quasi-isomorphism");
}

void notadd01(const Json& f, Checker& c) {
  Ring ring = ring_of(f);
  FreeComplex x = free_module(ring, 0), y = free_module(ring, 0);
  FreeComplex xy = direct_sum(x, y);
  ChainMap f1 = direct_sum_map(identity_map(x), zero_map(y, y));
  ChainMap f2 = direct_sum_map(zero_map(x, x), identity_map(y));
  c.expect(map_add(f1, f2) == identity_map(xy), "f1 + f2 = id");
  ChainMap sum = map_add(sym2_map(f1), sym2_map(f2));
  c.matrices("S2(f1)+S2(f2)", [&](int n) { return sum.at(n); }, f.at("sum"));
  c.expect(sum != identity_map(sym2(xy).complex), "S2(f1) + S2(f2) != id");
}

void ex0401(const Json& f, Checker& c) {
  Ring ring = ring_of(f);
  for (const auto& cs : f.at("cases")) {
    std::size_t m = cs.at("m").get<std::size_t>(), n = cs.at("n").get<std::size_t>();
    std::map<int, std::size_t> ranks;
    if (n) ranks[0] = n;
    if (m) ranks[1] = m;
    std::map<int, SparseMatrix> d;
    if (m && n) d.emplace(1, SparseMatrix(ring, n, m));
    FreeComplex x(ring, ranks, d);
    FreeComplex s = sym2(x).complex;
    auto want = cs.at("ranks").get<std::vector<std::size_t>>();
    std::vector<std::size_t> got{s.rank(0), s.rank(1), s.rank(2)};
    std::ostringstream os;
    os << "m=" << m << " n=" << n << ": got (" << got[0] << "," << got[1] << "," << got[2] << ")";
    c.expect(got == want, os.str());
  }
  const Json& kx = f.at("koszul");
  Ring gr = ring_of(kx);
  FreeComplex s = sym2(koszul(elements(gr, kx.at("elements")))).complex;
  c.matrices("S2(K(x)) d", [&](int n) { return s.d(n); }, kx.at("sym2"));
}

void symm045(const Json& f, Checker& c) {
  Ring ring = ring_of(f);
  FreeComplex sr = suspended_free(ring, 1);
  c.expect(sym2(sr).complex.empty(), "S2(ΣR) = 0");
  FreeComplex t = tensor(sr, sr);
  c.expect(t == suspended_free(ring, 2), "ΣR ⊗ ΣR = Σ²R");
  Ring zz = ring_of(f, "integer_ring");
  auto weak = weak_sym2(suspended_free(zz, 1));
  c.expect(std::holds_alternative<PresentedComplex>(weak), "s2(ΣZ) is presented");
  if (auto* p = std::get_if<PresentedComplex>(&weak)) {
    c.homology_strings("s2(ΣZ)", homology_presented(*p), f.at("weak_sym2_homology"));
  }
}

const std::map<std::string, std::function<void(const Json&, Checker&)>>& handlers() {
  static const std::map<std::string, std::function<void(const Json&, Checker&)>> table{
      {"koszul01", koszul01}, {"symm03", symm03},   {"koszul01'", koszul01p}, {"koszul01''", koszul01pp},
      {"symm05c", symm05c},   {"notadd01", notadd01}, {"ex0401", ex0401},     {"symm045", symm045},
  };
  return table;
}

}  // namespace

bool CorpusSummary::all_passed() const {
  return !fixtures.empty() &&
         std::all_of(fixtures.begin(), fixtures.end(), [](const FixtureResult& r) { return r.passed; });
}

std::string CorpusSummary::to_string() const {
  std::ostringstream os;
  std::size_t passed = 0;
  for (const auto& r : fixtures) {
    os << (r.passed ? "PASS " : "FAIL ") << r.id << " (" << r.assertions << " assertions)\n";
    for (const auto& f : r.failures) os << "  " << f << "\n";
    passed += r.passed ? 1 : 0;
  }
  os << passed << "/" << fixtures.size() << " fixtures passed\n";
  return os.str();
}

std::filesystem::path default_fixture_dir() { return SYMCHAIN_FIXTURE_DIR; }

FixtureResult run_fixture(const std::filesystem::path& file) {
  FixtureResult r;
  r.id = file.stem().string();
  try {
    Json f = Json::parse(read_file(file));
    r.id = f.at("id").get<std::string>();
    auto it = handlers().find(r.id);
    if (it == handlers().end()) {
      r.failures.push_back("no handler for fixture id '" + r.id + "'");
      return r;
    }
    Checker c(r);
    it->second(f, c);
  } catch (const std::exception& e) {
    r.failures.push_back(std::string("error: ") + e.what());
  }
  r.passed = r.failures.empty() && r.assertions > 0;
  return r;
}

CorpusSummary run_example_corpus(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  CorpusSummary s;
  s.fixtures.resize(files.size());
  parallel_for(files.size(), [&](std::size_t k) { s.fixtures[k] = run_fixture(files[k]); });
  std::sort(s.fixtures.begin(), s.fixtures.end(),
            [](const FixtureResult& a, const FixtureResult& b) { return a.id < b.id; });
  return s;
}

}  // namespace symchain::io
