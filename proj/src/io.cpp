#include "symchain/io.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace symchain::io {

using Json = nlohmann::ordered_json;

namespace {

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

/// Position of the first occurrence of the quoted literal `token`, or 1:1.
std::pair<std::size_t, std::size_t> locate(std::string_view text, const std::string& token) {
  std::string quoted = "\"" + token + "\"";
  std::size_t at = text.find(quoted);
  if (at == std::string_view::npos) return {1, 1};
  return line_col(text, at + 1);
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {
    try {
      root_ = Json::parse(text);
    } catch (const Json::parse_error& e) {
      auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
      throw ParseError("malformed JSON: " + std::string(e.what()), line, col);
    }
    if (!root_.is_object()) throw ParseError("document must be a JSON object", 1, 1);
  }

  const Json& root() const { return root_; }

  [[noreturn]] void fail(const std::string& what, const std::string& near) const {
    auto [line, col] = locate(text_, near);
    throw ParseError(what, line, col);
  }

  const Json& field(const Json& obj, const std::string& key) const {
    if (!obj.is_object() || !obj.contains(key)) fail("missing key '" + key + "'", obj.is_object() ? "format" : key);
    return obj.at(key);
  }

  std::string string_field(const Json& obj, const std::string& key) const {
    const Json& v = field(obj, key);
    if (!v.is_string()) fail("key '" + key + "' must be a string", key);
    return v.get<std::string>();
  }

  long long int_value(const Json& v, const std::string& where) const {
    if (!v.is_number_integer()) fail(where + " must be an integer", where);
    return v.get<long long>();
  }

  std::vector<long long> int_list(const Json& v, const std::string& where) const {
    if (!v.is_array()) fail(where + " must be a list", where);
    std::vector<long long> out;
    for (const auto& e : v) out.push_back(int_value(e, where));
    return out;
  }

  Ring ring(const Json& obj) const {
    std::string name = string_field(obj, "ring");
    try {
      return Ring::parse(name);
    } catch (const Error& e) {
      fail(e.what(), name);
    }
  }

  SparseMatrix matrix(const Ring& ring, const Json& m, std::size_t rows, std::size_t cols,
                      const std::string& where) const {
    if (!m.is_array() || m.size() != rows) {
      fail(where + ": expected " + std::to_string(rows) + " rows", "matrix");
    }
    SparseMatrix out(ring, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      const Json& row = m[i];
      if (!row.is_array() || row.size() != cols) {
        fail(where + ": row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries", "matrix");
      }
      for (std::size_t j = 0; j < cols; ++j) {
        if (!row[j].is_string()) fail(where + ": entries must be strings", "matrix");
        const std::string tok = row[j].get<std::string>();
        try {
          Scalar s = Scalar::parse(ring, tok);
          if (!s.is_zero()) out.set(i, j, s);
        } catch (const ForeignElement& e) {
          auto [line, col] = locate(text_, tok);
          throw ValidationError(where + " entry (" + std::to_string(i) + "," + std::to_string(j) + ") '" + tok +
                                "' is not an element of " + ring.name() + " (line " + std::to_string(line) +
                                ", column " + std::to_string(col) + ")");
        } catch (const ParseError& e) {
          auto [line, col] = locate(text_, tok);
          throw ParseError(e.detail(), line, col + e.column() - 1);
        }
      }
    }
    return out;
  }

 private:
  std::string_view text_;
  Json root_;
};

struct Graded {
  std::map<int, std::size_t> ranks;
  std::map<int, std::vector<int>> gdeg;
};

/// Reads "support" plus a per-degree list under `count_key` ("ranks" or "generators").
Graded read_support(const Reader& rd, const Json& obj, const std::string& count_key, bool graded) {
  Graded g;
  auto support = rd.int_list(rd.field(obj, "support"), "support");
  auto counts = rd.int_list(rd.field(obj, count_key), count_key);
  if (support.empty()) {
    if (!counts.empty()) rd.fail(count_key + " must be empty for the zero complex", count_key);
    return g;
  }
  if (support.size() != 2 || support[0] > support[1]) rd.fail("support must be [lo, hi] with lo <= hi", "support");
  const int lo = static_cast<int>(support[0]);
  const std::size_t len = static_cast<std::size_t>(support[1] - support[0] + 1);
  if (counts.size() != len) rd.fail(count_key + " must have one entry per degree of the support", count_key);
  for (std::size_t k = 0; k < len; ++k) {
    if (counts[k] < 0) rd.fail(count_key + " must be nonnegative", count_key);
    if (counts[k] > 0) g.ranks[lo + static_cast<int>(k)] = static_cast<std::size_t>(counts[k]);
  }
  if (graded) {
    const Json& degs = rd.field(obj, "degrees");
    if (!degs.is_array() || degs.size() != len) rd.fail("degrees must have one list per degree of the support", "degrees");
    for (std::size_t k = 0; k < len; ++k) {
      auto d = rd.int_list(degs[k], "degrees");
      if (d.size() != static_cast<std::size_t>(counts[k])) rd.fail("degrees: list length must match the rank", "degrees");
      if (!d.empty()) g.gdeg[lo + static_cast<int>(k)] = std::vector<int>(d.begin(), d.end());
    }
  } else if (obj.contains("degrees")) {
    rd.fail("degrees are only allowed over graded rings", "degrees");
  }
  return g;
}

std::map<int, SparseMatrix> read_blocks(const Reader& rd, const Json& obj, const std::string& key, const Ring& ring,
                                        const std::function<std::pair<std::size_t, std::size_t>(int)>& shape) {
  std::map<int, SparseMatrix> out;
  if (!obj.contains(key)) return out;
  const Json& list = obj.at(key);
  if (!list.is_array()) rd.fail(key + " must be a list", key);
  for (const auto& entry : list) {
    int n = static_cast<int>(rd.int_value(rd.field(entry, "degree"), "degree"));
    auto [rows, cols] = shape(n);
    if (out.count(n)) rd.fail(key + ": degree " + std::to_string(n) + " given twice", key);
    out.emplace(n, rd.matrix(ring, rd.field(entry, "matrix"), rows, cols, key + " degree " + std::to_string(n)));
  }
  return out;
}

void require_format(const Reader& rd, const Json& obj, const char* expected) {
  std::string f = rd.string_field(obj, "format");
  if (f != expected) rd.fail("expected format '" + std::string(expected) + "', got '" + f + "'", f);
}

FreeComplex complex_from(const Reader& rd, const Json& obj) {
  require_format(rd, obj, kComplexFormat);
  Ring ring = rd.ring(obj);
  Graded g = read_support(rd, obj, "ranks", ring.is_graded());
  auto rank = [&](int n) { return g.ranks.count(n) ? g.ranks.at(n) : std::size_t{0}; };
  auto diffs = read_blocks(rd, obj, "differentials", ring, [&](int n) { return std::make_pair(rank(n - 1), rank(n)); });
  std::optional<FreeComplex> x;
  try {
    x.emplace(ring, g.ranks, std::move(diffs), g.gdeg);
  } catch (const Error& e) {
    throw ValidationError(e.what());
  }
  if (auto v = x->validate()) {
    throw ValidationError("invalid complex at degree " + std::to_string(v->degree) + ": " + v->message);
  }
  return *x;
}

ChainMap map_from(const Reader& rd, const Json& obj) {
  require_format(rd, obj, kMapFormat);
  FreeComplex src = complex_from(rd, rd.field(obj, "source"));
  FreeComplex tgt = complex_from(rd, rd.field(obj, "target"));
  if (src.ring() != tgt.ring()) throw ValidationError("source and target rings differ");
  auto comps = read_blocks(rd, obj, "components", src.ring(),
                           [&](int n) { return std::make_pair(tgt.rank(n), src.rank(n)); });
  std::optional<ChainMap> f;
  try {
    f.emplace(src, tgt, std::move(comps));
  } catch (const Error& e) {
    throw ValidationError(e.what());
  }
  if (!is_chain_map(*f)) throw ValidationError("components do not commute with the differentials");
  return *f;
}

PresentedComplex presented_from(const Reader& rd, const Json& obj) {
  require_format(rd, obj, kPresentedFormat);
  Ring ring = rd.ring(obj);
  Graded g = read_support(rd, obj, "generators", false);
  auto gens = [&](int n) { return g.ranks.count(n) ? g.ranks.at(n) : std::size_t{0}; };
  std::map<int, SparseMatrix> rels;
  if (obj.contains("relations")) {
    for (const auto& entry : obj.at("relations")) {
      int n = static_cast<int>(rd.int_value(rd.field(entry, "degree"), "degree"));
      const Json& m = rd.field(entry, "matrix");
      std::size_t cols = (m.is_array() && !m.empty() && m[0].is_array()) ? m[0].size() : 0;
      rels.emplace(n, rd.matrix(ring, m, gens(n), cols, "relations degree " + std::to_string(n)));
    }
  }
  auto diffs = read_blocks(rd, obj, "differentials", ring, [&](int n) { return std::make_pair(gens(n - 1), gens(n)); });
  std::optional<PresentedComplex> x;
  try {
    x.emplace(ring, g.ranks, std::move(rels), std::move(diffs));
  } catch (const Error& e) {
    throw ValidationError(e.what());
  }
  if (!x->validate()) throw ValidationError("differential does not preserve relations or d∘d is not a relation");
  return *x;
}

// ---------------------------------------------------------------- writing

Json matrix_json(const SparseMatrix& m) {
  Json rows = Json::array();
  for (const auto& r : m.to_strings()) rows.push_back(r);
  return rows;
}

Json block(int n, const SparseMatrix& m) {
  Json b = Json::object();
  b["degree"] = n;
  b["matrix"] = matrix_json(m);
  return b;
}

Json support_json(int lo, int hi, bool empty) {
  Json s = Json::array();
  if (!empty) {
    s.push_back(lo);
    s.push_back(hi);
  }
  return s;
}

Json complex_json(const FreeComplex& x) {
  Json doc = Json::object();
  doc["format"] = kComplexFormat;
  doc["ring"] = x.ring().name();
  doc["support"] = support_json(x.lo(), x.hi(), x.empty());
  Json ranks = Json::array(), degs = Json::array(), diffs = Json::array();
  for (int n = x.lo(); !x.empty() && n <= x.hi(); ++n) {
    ranks.push_back(x.rank(n));
    if (x.is_graded()) degs.push_back(x.gdeg(n));
    if (n > x.lo() && x.rank(n) > 0 && x.rank(n - 1) > 0) diffs.push_back(block(n, x.d(n)));
  }
  doc["ranks"] = ranks;
  if (x.is_graded()) doc["degrees"] = degs;
  doc["differentials"] = diffs;
  return doc;
}

Json map_json(const ChainMap& f) {
  Json doc = Json::object();
  doc["format"] = kMapFormat;
  doc["source"] = complex_json(f.source());
  doc["target"] = complex_json(f.target());
  Json comps = Json::array();
  for (int n : f.degrees()) comps.push_back(block(n, f.at(n)));
  doc["components"] = comps;
  return doc;
}

/// Objects break one key per line; arrays of objects one element per line;
/// everything else is written compactly.
void emit(const Json& v, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  if (v.is_object()) {
    os << "{\n";
    std::size_t k = 0;
    for (auto it = v.begin(); it != v.end(); ++it, ++k) {
      os << pad << Json(it.key()).dump() << ": ";
      emit(it.value(), indent + 2, os);
      os << (k + 1 < v.size() ? ",\n" : "\n");
    }
    os << std::string(static_cast<std::size_t>(indent), ' ') << "}";
  } else if (v.is_array() && !v.empty() && v[0].is_object()) {
    os << "[\n";
    for (std::size_t k = 0; k < v.size(); ++k) os << pad << v[k].dump() << (k + 1 < v.size() ? ",\n" : "\n");
    os << std::string(static_cast<std::size_t>(indent), ' ') << "]";
  } else {
    os << v.dump();
  }
}

std::string render(const Json& doc) {
  std::ostringstream os;
  emit(doc, 0, os);
  os << "\n";
  return os.str();
}

}  // namespace

std::string serialize(const FreeComplex& x) { return render(complex_json(x)); }

std::string serialize(const ChainMap& f) { return render(map_json(f)); }

std::string serialize(const PresentedComplex& x) {
  Json doc = Json::object();
  doc["format"] = kPresentedFormat;
  doc["ring"] = x.ring().name();
  auto degs = x.degrees();
  doc["support"] = support_json(degs.empty() ? 0 : degs.front(), degs.empty() ? -1 : degs.back(), degs.empty());
  Json gens = Json::array(), rels = Json::array(), diffs = Json::array();
  if (!degs.empty()) {
    for (int n = degs.front(); n <= degs.back(); ++n) {
      gens.push_back(x.generators(n));
      SparseMatrix r = x.relations(n);
      if (x.generators(n) > 0 && r.cols() > 0) rels.push_back(block(n, r));
      if (n > degs.front() && x.generators(n) > 0 && x.generators(n - 1) > 0) diffs.push_back(block(n, x.d(n)));
    }
  }
  doc["generators"] = gens;
  doc["relations"] = rels;
  doc["differentials"] = diffs;
  return render(doc);
}

Document parse(std::string_view text) {
  Reader rd(text);
  std::string f = rd.string_field(rd.root(), "format");
  if (f == kComplexFormat) return complex_from(rd, rd.root());
  if (f == kMapFormat) return map_from(rd, rd.root());
  if (f == kPresentedFormat) return presented_from(rd, rd.root());
  rd.fail("unknown format '" + f + "'", f);
}

FreeComplex parse_complex(std::string_view text) {
  Reader rd(text);
  return complex_from(rd, rd.root());
}

ChainMap parse_chain_map(std::string_view text) {
  Reader rd(text);
  return map_from(rd, rd.root());
}

PresentedComplex parse_presented(std::string_view text) {
  Reader rd(text);
  return presented_from(rd, rd.root());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Document load(const std::filesystem::path& path) { return parse(read_file(path)); }

// ---------------------------------------------------------------- reports

std::string homology_report(const HomologyReport& h) {
  std::ostringstream os;
  os << "ring: " << h.ring.name() << "\n";
  os << "bound: " << (h.bounded() ? std::to_string(h.bound) : std::string("exact")) << "\n";
  for (const auto& [n, d] : h.degrees) os << "H_" << n << ": " << d.to_string(h.ring) << "\n";
  return os.str();
}

std::string homology_report_json(const HomologyReport& h) {
  Json doc = Json::object();
  doc["ring"] = h.ring.name();
  doc["bound"] = h.bounded() ? Json(h.bound) : Json(nullptr);
  Json degs = Json::array();
  for (const auto& [n, d] : h.degrees) {
    Json e = Json::object();
    e["degree"] = n;
    e["value"] = d.to_string(h.ring);
    if (d.hilbert) {
      Json t = Json::object();
      for (const auto& [k, v] : *d.hilbert) t[std::to_string(k)] = v;
      e["hilbert"] = t;
    }
    degs.push_back(e);
  }
  doc["homology"] = degs;
  return doc.dump(2) + "\n";
}

std::string verdict_report_json(const VerdictReport& r) {
  Json doc = Json::object();
  doc["theorem"] = r.theorem;
  doc["ring"] = r.ring;
  doc["bound"] = r.bound >= 0 ? Json(r.bound) : Json(nullptr);
  doc["vector"] = r.vector_string();
  Json conds = Json::array();
  for (const auto& c : r.conditions) {
    Json e = Json::object();
    e["name"] = c.name;
    e["verdict"] = to_string(c.verdict);
    if (!c.witness.empty()) e["witness"] = c.witness;
    conds.push_back(e);
  }
  doc["conditions"] = conds;
  doc["equivalence"] = r.equivalence;
  doc["consistent"] = r.ok();
  doc["j"] = r.j ? Json(*r.j) : Json(nullptr);
  doc["notes"] = r.notes;
  return doc.dump(2) + "\n";
}

}  // namespace symchain::io
