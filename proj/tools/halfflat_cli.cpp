// halfflat: batch front end for the library. Reports are `key: value` lines on
// stdout; exit code 0 = positive verdict, 1 = negative verdict, 2 = input error.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

#include "halfflat/appendix.hpp"
#include "halfflat/classification.hpp"
#include "halfflat/classify3d.hpp"
#include "halfflat/halfflat.hpp"
#include "halfflat/obstruct.hpp"
#include "halfflat/search.hpp"
#include "halfflat/structure_file.hpp"

using namespace halfflat;

namespace {

constexpr int kPositive = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const char* yes_no(bool b) { return b ? "true" : "false"; }

std::string signature_str(const Inertia& in) {
  std::ostringstream os;
  os << "(" << in.positive << "," << in.negative << ")";
  return os.str();
}

std::string matrix_str(const Matrix<Scalar>& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << to_string(m(i, j));
  }
  os << "]";
  return os.str();
}

StructureFile load(const std::string& path, std::optional<int> dim = std::nullopt) {
  StructureFile file = read_structure_file(path);
  if (dim && file.algebra.dim() != *dim)
    throw InputError("expected a " + std::to_string(*dim) + "-dimensional algebra, got dimension " +
                     std::to_string(file.algebra.dim()));
  return file;
}

Scalar parse_mu(const std::string& text) {
  try {
    return parse_scalar(text);
  } catch (const std::invalid_argument&) {
    throw InputError("cannot read mu '" + text + "' (expected an integer or p/q)");
  }
}

int run_verify(const std::string& path) {
  const StructureFile file = load(path, 6);
  if (!file.omega || !file.rho) throw InputError("verify needs both 'form omega' and 'form rho'");
  auto report = verify(file.algebra, *file.omega, *file.rho);
  std::cout << "d_rho_zero: " << yes_no(report.d_rho_zero) << "\n";
  std::cout << "d_omega2_zero: " << yes_no(report.d_omega2_zero) << "\n";
  std::cout << "compatible: " << yes_no(report.compatible) << "\n";
  if (report.lambda) std::cout << "lambda: " << to_string(*report.lambda) << "\n";
  if (report.norm_c4) std::cout << "norm_c4: " << to_string(*report.norm_c4) << "\n";
  std::cout << "type: " << to_string(report.structure.kind) << "\n";
  if (report.g_raw) {
    std::cout << "signature: " << signature_str(report.structure.signature) << "\n";
    std::cout << "metric_raw: " << matrix_str(*report.g_raw) << "\n";
  }
  if (!report.d_rho_zero) std::cout << "d_rho: " << format_form(report.d_rho, file.basis) << "\n";
  if (!report.d_omega2_zero) std::cout << "d_omega2: " << format_form(report.d_omega2, file.basis) << "\n";
  std::cout << "half_flat: " << yes_no(report.half_flat()) << "\n";
  return report.half_flat() ? kPositive : kNegative;
}

int run_classify3d(const std::string& path) {
  const StructureFile file = load(path, 3);
  const BianchiClass cls = classify(file.algebra);
  std::cout << "class: " << cls.display << "\n";
  std::cout << "tag: " << cls.tag << "\n";
  std::cout << "bianchi: " << cls.bianchi << "\n";
  std::cout << "unimodular: " << yes_no(cls.unimodular) << "\n";
  std::cout << "invariant: " << cls.invariant() << "\n";
  if (cls.mu) std::cout << "mu: " << to_string(*cls.mu) << "\n";
  return kPositive;
}

int run_obstruct(const std::string& path, int scan, std::uint64_t seed) {
  const StructureFile file = load(path, 6);
  if (!split_direct_sum(file.algebra))
    throw InputError("obstruct expects a direct sum with d preserving {e1,e2,e3} and {f1,f2,f3}");
  const ObstructionReport report = obstruct(file.algebra);
  std::cout << "verdict: " << to_string(report.verdict) << "\n";
  if (!report.v.empty()) {
    std::cout << "V: " << format_form(report.v[0], file.basis) << ", " << format_form(report.v[1], file.basis) << "\n";
    std::cout << "coherent: " << yes_no(report.coherent) << "\n";
    std::cout << "h03: " << yes_no(report.h03) << "\n";
    std::cout << "h04: " << yes_no(report.h04) << "\n";
    std::cout << "rank_d_L3W: " << report.rank3 << "\n";
    std::cout << "rank_d_L4W: " << report.rank4 << "\n";
  }
  if (report.refined) std::cout << "refined: " << *report.refined << "\n";
  if (!report.detail.empty()) std::cout << "detail: " << report.detail << "\n";
  if (scan > 0) {
    const LambdaScan s = lambda_nonneg_scan(file.algebra, scan, seed);
    std::cout << "scan_samples: " << s.samples << "\n";
    std::cout << "scan_seed: " << s.seed << "\n";
    std::cout << "scan_negative: " << s.negative << "\n";
    if (s.min_lambda) std::cout << "scan_min_lambda: " << to_string(*s.min_lambda) << "\n";
    std::cout << "scan_note: " << s.note << "\n";
  }
  return report.verdict == ObstructionVerdict::NoHalfFlatSU3 ? kNegative : kPositive;
}

StructureKind parse_target(const std::string& t) {
  if (t == "su3") return StructureKind::SU3;
  if (t == "su12") return StructureKind::SU12;
  if (t == "sl3r") return StructureKind::SL3R;
  throw InputError("unknown target '" + t + "'");
}

std::string float_list(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

int run_search(const std::string& path, const std::string& target, const SearchOptions& opts, long max_den) {
  const StructureFile file = load(path, 6);
  const SearchResult r = find_halfflat(file.algebra, parse_target(target), opts);
  std::cout << "found: " << yes_no(r.found) << "\n";
  std::cout << "target: " << to_string(r.target) << "\n";
  std::cout << "seed: " << r.seed << "\n";
  std::cout << "restarts_used: " << r.restarts_used << "\n";
  if (r.found) {
    const auto exact = rationalize(r, file.algebra, max_den);
    std::cout << "rationalized: " << yes_no(exact.has_value()) << "\n";
    if (exact) {
      std::cout << "form omega = " << format_form(exact->first, file.basis) << "\n";
      std::cout << "form rho = " << format_form(exact->second, file.basis) << "\n";
    }
    // Float section: coordinates over the sorted monomials of degree 2 and 3.
    std::cout << "[float]\n";
    std::printf("residual_d_rho: %.3e\nresidual_d_omega2: %.3e\nresidual_omega_rho: %.3e\n", r.residuals.d_rho,
                r.residuals.d_omega2, r.residuals.omega_rho);
    std::printf("lambda: %.6g\nmin_eig: %.6g\n", r.residuals.lambda, r.residuals.min_eig);
    std::cout << "omega: " << float_list(r.omega) << "\n";
    std::cout << "rho: " << float_list(r.rho) << "\n";
  }
  return r.found ? kPositive : kNegative;
}

int run_catalog(const std::string& tag, const std::string& mu, bool pairs) {
  if (pairs) {
    const auto corpus = appendix::all_rows();
    int mismatches = 0;
    for (const auto& pair : pair_classes()) {
      const PairResolution res = resolve(pair, corpus);
      std::cout << pair.label() << ": " << to_string(res.status);
      if (!res.refined.empty()) std::cout << " refined=" << res.refined.front();
      if (res.corrected_witnesses) std::cout << " (corrected)";
      std::cout << "\n";
      if (!res.matches_classification()) ++mismatches;
    }
    std::cout << "mismatches: " << mismatches << "\n";
    return mismatches ? kNegative : kPositive;
  }
  if (tag.empty()) {
    for (const auto& e : catalog_entries())
      std::cout << e.tag << ": " << e.display << " bianchi=" << e.bianchi << " unimodular=" << yes_no(e.unimodular)
                << (e.parametric ? " parametric" : "") << "\n";
    return kPositive;
  }
  std::optional<Scalar> m;
  if (!mu.empty()) m = parse_mu(mu);
  try {
    std::cout << emit_structure({default_basis(3), catalog(tag, m), {}, {}});
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return kPositive;
}

int run_appendix(int table, const std::string& mu) {
  std::optional<Scalar> m;
  if (!mu.empty()) m = parse_mu(mu);
  const auto rows = appendix::rows(table, m);
  if (rows.empty()) throw InputError("no row of table " + std::to_string(table) + " is defined at mu = " + mu);
  int passed = 0;
  for (const auto& row : rows) {
    const auto check = appendix::check_row(row);
    std::cout << row.label() << ": " << (check.passed() ? "pass" : "FAIL " + check.residual);
    if (check.metric_factor) std::cout << " metric_factor=" << to_string(*check.metric_factor);
    std::cout << "\n";
    if (!check.passed() && appendix::typo_candidate(row)) {
      const auto fixed = appendix::check_row(*appendix::typo_candidate(row));
      std::cout << row.label() << " corrected: " << (fixed.passed() ? "pass" : "FAIL " + fixed.residual) << "\n";
    }
    passed += check.passed();
  }
  std::cout << "passed: " << passed << "/" << rows.size() << "\n";
  return passed == static_cast<int>(rows.size()) ? kPositive : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Half-flat structures on six-dimensional Lie algebras"};
  app.require_subcommand(1);

  std::string file;
  auto* verify_cmd = app.add_subcommand("verify", "Exact half-flat verdict for the forms in a file");
  verify_cmd->add_option("file", file, "structure file with omega and rho")->required();

  auto* classify_cmd = app.add_subcommand("classify3d", "Bianchi class of a three-dimensional algebra");
  classify_cmd->add_option("file", file, "three-dimensional structure file")->required();

  int scan = 0;
  std::uint64_t scan_seed = 1;
  auto* obstruct_cmd = app.add_subcommand("obstruct", "Coherent-splitting obstruction for a direct sum");
  obstruct_cmd->add_option("file", file, "six-dimensional direct sum")->required();
  obstruct_cmd->add_option("--scan", scan, "also scan this many random closed 3-forms for lambda < 0");
  obstruct_cmd->add_option("--seed", scan_seed, "seed of the lambda scan");

  std::string target = "su3";
  SearchOptions opts;
  long max_den = 64;
  auto* search_cmd = app.add_subcommand("search", "Floating-point search for a half-flat structure");
  search_cmd->add_option("file", file, "six-dimensional structure file")->required();
  search_cmd->add_option("--target", target, "su3, su12 or sl3r")->check(CLI::IsMember({"su3", "su12", "sl3r"}));
  search_cmd->add_option("--restarts", opts.restarts, "restart budget")->check(CLI::PositiveNumber);
  search_cmd->add_option("--seed", opts.seed, "random seed");
  search_cmd->add_option("--tol", opts.tol, "residual tolerance")->check(CLI::PositiveNumber);
  search_cmd->add_option("--max-den", max_den, "largest denominator when rationalizing")->check(CLI::PositiveNumber);

  std::string tag, mu;
  bool pairs = false;
  auto* catalog_cmd = app.add_subcommand("catalog", "List or print the standard three-dimensional algebras");
  catalog_cmd->add_option("tag", tag, "catalog tag, e.g. e11 or r3mu");
  catalog_cmd->add_option("--mu", mu, "family parameter p/q");
  catalog_cmd->add_flag("--pairs", pairs, "resolve all direct-sum classes against the classification");

  int table = 3;
  auto* appendix_cmd = app.add_subcommand("appendix", "Verify the built-in corpus of explicit structures");
  appendix_cmd->add_option("--table", table, "table number")->required()->check(CLI::IsMember({3, 4, 5}));
  appendix_cmd->add_option("--mu", mu, "instantiate parametric rows at this mu only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*verify_cmd) return run_verify(file);
    if (*classify_cmd) return run_classify3d(file);
    if (*obstruct_cmd) return run_obstruct(file, scan, scan_seed);
    if (*search_cmd) return run_search(file, target, opts, max_den);
    if (*catalog_cmd) return run_catalog(tag, mu, pairs);
    if (*appendix_cmd) return run_appendix(table, mu);
  } catch (const ParseError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
  } catch (const DegreeError& e) {
    std::cerr << "degree error: " << e.what() << "\n";
  } catch (const InvalidLieAlgebra& e) {
    std::cerr << "invalid Lie algebra: " << e.what() << "\n";
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kInputError;
}
