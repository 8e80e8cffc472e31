#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "symchain/theorems.hpp"

namespace symchain::io {

inline constexpr const char* kComplexFormat = "symchain-complex/1";
inline constexpr const char* kMapFormat = "symchain-map/1";
inline constexpr const char* kPresentedFormat = "symchain-presented/1";

/// A document that parsed but describes an invalid object (bad shape, d∘d != 0,
/// entries outside the declared ring, non-chain map).
class ValidationError : public Error {
 public:
  using Error::Error;
};

using Document = std::variant<FreeComplex, ChainMap, PresentedComplex>;

// Canonical text: fixed key order, one key per line, dense row-major matrices
// of canonical scalar strings. Equal objects give byte-identical output.
std::string serialize(const FreeComplex& x);
std::string serialize(const ChainMap& f);
std::string serialize(const PresentedComplex& x);

/// Dispatches on the "format" key.
Document parse(std::string_view text);
FreeComplex parse_complex(std::string_view text);
ChainMap parse_chain_map(std::string_view text);
PresentedComplex parse_presented(std::string_view text);

std::string read_file(const std::filesystem::path& path);
Document load(const std::filesystem::path& path);

// ---------------------------------------------------------------- reports

std::string homology_report(const HomologyReport& h);
std::string homology_report_json(const HomologyReport& h);
std::string verdict_report_json(const VerdictReport& r);

// ---------------------------------------------------------------- corpus

struct FixtureResult {
  std::string id;
  bool passed = false;
  std::vector<std::string> failures;  // one line per failed assertion
  std::size_t assertions = 0;
};

struct CorpusSummary {
  std::vector<FixtureResult> fixtures;  // sorted by id
  bool all_passed() const;
  std::string to_string() const;
};

/// Directory of the bundled fixtures (compile-time default).
std::filesystem::path default_fixture_dir();
/// Replays every fixture in `dir`; fixtures run in parallel.
CorpusSummary run_example_corpus(const std::filesystem::path& dir = default_fixture_dir());
FixtureResult run_fixture(const std::filesystem::path& file);

}  // namespace symchain::io
