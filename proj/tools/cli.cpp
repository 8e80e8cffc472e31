#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>

#include "symchain/io.hpp"

namespace symchain::cli {

namespace {

FreeComplex load_complex(const std::string& path) {
  io::Document d = io::load(path);
  if (auto* x = std::get_if<FreeComplex>(&d)) return *x;
  throw io::ValidationError(path + ": expected a complex document");
}

ChainMap load_map(const std::string& path) {
  io::Document d = io::load(path);
  if (auto* f = std::get_if<ChainMap>(&d)) return *f;
  throw io::ValidationError(path + ": expected a chain map document");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
  }
  return out;
}

std::string poinc_text(const PoincReport& r) {
  std::ostringstream os;
  os << "expansion:";
  for (long long v : r.expansion) os << " " << v;
  os << "\nconstant: " << (r.constant ? "true" : "false") << "\n";
  os << "higher coefficients vanish: " << (r.higher_vanish ? "true" : "false") << "\n";
  os << "cases:";
  if (r.cases.empty()) os << " none";
  for (char c : r.cases) os << " (" << c << ")";
  os << "\n";
  if (r.forced) os << "forced Q: " << *r.forced << "\n";
  os << "consistent: " << (r.consistent ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact second symmetric powers of bounded free chain complexes", "symchain"};
  app.require_subcommand(1);

  std::string file, file2, ring_text, elements_text, coeffs_text, sign_text, theorem, fixture_dir;
  int shift_by = 0, order = 0;
  std::optional<int> bound;
  bool verify = false, json = false, descending = false;

  auto* validate = app.add_subcommand("validate", "Parse and validate a document");
  validate->add_option("file", file)->required();

  auto* shift_cmd = app.add_subcommand("shift", "Suspend a complex");
  shift_cmd->add_option("file", file)->required();
  shift_cmd->add_option("-n", shift_by, "Shift amount")->required();

  auto* dsum = app.add_subcommand("dsum", "Direct sum of two complexes");
  dsum->add_option("a", file)->required();
  dsum->add_option("b", file2)->required();

  auto* tensor_cmd = app.add_subcommand("tensor", "Tensor product of two complexes");
  tensor_cmd->add_option("a", file)->required();
  tensor_cmd->add_option("b", file2)->required();

  auto* koszul_cmd = app.add_subcommand("koszul", "Koszul complex on a list of elements");
  koszul_cmd->add_option("--ring", ring_text, "Ring descriptor, e.g. QQ[x,y]")->required();
  koszul_cmd->add_option("--elements", elements_text, "Comma separated elements")->required();

  auto* sym2_cmd = app.add_subcommand("sym2", "Second symmetric power S2(X)");
  sym2_cmd->add_option("file", file)->required();
  auto* weak_cmd = app.add_subcommand("weak-sym2", "Weak symmetric power s2(X)");
  weak_cmd->add_option("file", file)->required();
  auto* alpha_cmd = app.add_subcommand("alpha", "The map alpha on X⊗X");
  alpha_cmd->add_option("file", file)->required();

  auto* homology_cmd = app.add_subcommand("homology", "Homology of a complex or presented complex");
  homology_cmd->add_option("file", file)->required();
  homology_cmd->add_option("--bound", bound, "Internal degree bound (graded rings)");
  homology_cmd->add_flag("--json", json, "Machine readable output");

  auto* qi_cmd = app.add_subcommand("quasi-iso", "Decide whether a chain map is a quasi-isomorphism");
  qi_cmd->add_option("file", file)->required();
  qi_cmd->add_option("--bound", bound, "Internal degree bound (graded rings)");

  auto* series_cmd = app.add_subcommand("series", "Rank series of S2(X)");
  series_cmd->add_option("file", file)->required();
  series_cmd->add_flag("--verify", verify, "Check the rank series identity");

  auto* minimize_cmd = app.add_subcommand("minimize", "Minimal complex quasi-isomorphic to X");
  minimize_cmd->add_option("file", file)->required();
  minimize_cmd->add_flag("--descending", descending, "Scan pivots from the top degree down");

  auto* poinc_cmd = app.add_subcommand("poinc", "Expand Q(t)^2 +- Q(-t^2) and classify");
  poinc_cmd->add_option("--coeffs", coeffs_text, "Comma separated r_0,r_1,...")->required();
  poinc_cmd->add_option("--sign", sign_text, "+ or -")->required()->check(CLI::IsMember({"+", "-"}));
  poinc_cmd->add_option("--order", order, "Truncation order N")->required();

  auto* check_cmd = app.add_subcommand("check", "Evaluate the conditions of a theorem");
  check_cmd->add_option("theorem", theorem)
      ->required()
      ->check(CLI::IsMember({"symm07", "symm07pp", "s2fpd01", "s2fpd02", "symm09"}));
  check_cmd->add_option("file", file)->required();
  check_cmd->add_flag("--json", json, "Machine readable output");

  auto* corpus_cmd = app.add_subcommand("corpus", "Worked example fixtures");
  auto* corpus_run = corpus_cmd->add_subcommand("run", "Replay every fixture");
  corpus_cmd->require_subcommand(1);
  corpus_run->add_option("--dir", fixture_dir, "Fixture directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (*validate) {
      io::Document d = io::load(file);
      if (auto* x = std::get_if<FreeComplex>(&d)) {
        out << "valid complex over " << x->ring().name() << ", rank series " << rank_series(*x).to_string() << "\n";
      } else if (auto* f = std::get_if<ChainMap>(&d)) {
        out << "valid chain map over " << f->source().ring().name() << "\n";
      } else {
        out << "valid presented complex over " << std::get<PresentedComplex>(d).ring().name() << "\n";
      }
      return kOk;
    }
    if (*shift_cmd) {
      out << io::serialize(shift(load_complex(file), shift_by));
      return kOk;
    }
    if (*dsum) {
      out << io::serialize(direct_sum(load_complex(file), load_complex(file2)));
      return kOk;
    }
    if (*tensor_cmd) {
      out << io::serialize(tensor(load_complex(file), load_complex(file2)));
      return kOk;
    }
    if (*koszul_cmd) {
      Ring ring = Ring::parse(ring_text);
      std::vector<Scalar> xs;
      for (const auto& e : split_list(elements_text)) xs.push_back(Scalar::parse(ring, e));
      out << io::serialize(koszul(xs));
      return kOk;
    }
    if (*sym2_cmd) {
      out << io::serialize(sym2(load_complex(file)).complex);
      return kOk;
    }
    if (*weak_cmd) {
      auto w = weak_sym2(load_complex(file));
      std::visit([&](const auto& v) { out << io::serialize(v); }, w);
      return kOk;
    }
    if (*alpha_cmd) {
      out << io::serialize(alpha(load_complex(file)));
      return kOk;
    }
    if (*homology_cmd) {
      io::Document d = io::load(file);
      if (std::holds_alternative<ChainMap>(d)) throw io::ValidationError(file + ": expected a complex document");
      HomologyReport h = std::holds_alternative<PresentedComplex>(d)
                             ? homology_presented(std::get<PresentedComplex>(d))
                             : homology(std::get<FreeComplex>(d), bound);
      out << (json ? io::homology_report_json(h) : io::homology_report(h));
      return kOk;
    }
    if (*qi_cmd) {
      Verdict v = is_quasi_iso(load_map(file), bound);
      out << "quasi-isomorphism: " << to_string(v) << "\n";
      return holds(v) ? kOk : kCheckFailed;
    }
    if (*series_cmd) {
      FreeComplex x = load_complex(file);
      if (!verify) {
        out << "X: " << rank_series(x).to_string() << "\n";
        out << "S2(X): " << rank_series(sym2(x).complex).to_string() << "\n";
        return kOk;
      }
      SeriesIdentity id = verify_series_identity(x);
      if (id.holds()) {
        out << "identity holds: " << id.lhs.to_string() << "\n";
        return kOk;
      }
      out << "identity fails: S2 ranks " << id.lhs.to_string() << ", formula " << id.rhs.to_string() << "\n";
      return kCheckFailed;
    }
    if (*minimize_cmd) {
      Minimization m = minimize(load_complex(file), descending ? PivotOrder::Descending : PivotOrder::Ascending);
      out << io::serialize(m.minimal);
      return kOk;
    }
    if (*poinc_cmd) {
      std::vector<long long> coeffs;
      for (const auto& c : split_list(coeffs_text)) coeffs.push_back(std::stoll(c));
      PoincReport r = poinc_check(coeffs, sign_text == "+" ? 1 : -1, order);
      out << poinc_text(r);
      return r.consistent ? kOk : kCheckFailed;
    }
    if (*check_cmd) {
      static const std::map<std::string, std::function<VerdictReport(const FreeComplex&)>> checks{
          {"symm07", check_symm07},   {"symm07pp", check_symm07pp}, {"s2fpd01", check_s2fpd01},
          {"s2fpd02", check_s2fpd02}, {"symm09", check_symm09},
      };
      VerdictReport r = checks.at(theorem)(load_complex(file));
      out << (json ? io::verdict_report_json(r) : r.to_string());
      return r.ok() ? kOk : kCheckFailed;
    }
    if (*corpus_run) {
      io::CorpusSummary s = fixture_dir.empty() ? io::run_example_corpus() : io::run_example_corpus(fixture_dir);
      out << s.to_string();
      return s.all_passed() ? kOk : kCheckFailed;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const io::ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "bad number: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace symchain::cli
