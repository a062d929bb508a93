// tauw: tau-function tables, identity sweeps and verifiable representations.
//
// Exit codes: 0 success, 1 verification failure, 2 infeasible / search
// exhausted, 3 invalid input or unsupported modulus.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tauw/certificate_io.hpp"
#include "tauw/error.hpp"
#include "tauw/identity_suite.hpp"
#include "tauw/modp_basis.hpp"
#include "tauw/tau_core.hpp"
#include "tauw/waring_int.hpp"

namespace {

using namespace tauw;

enum Exit : int { kOk = 0, kVerifyFailed = 1, kInfeasible = 2, kInvalid = 3 };

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Infeasible:
    case ErrorKind::DegenerateContext:
    case ErrorKind::LemmaViolation:
      return kInfeasible;
    case ErrorKind::InternalConsistency:
    case ErrorKind::RelationViolated:
      return kVerifyFailed;
    default:
      return kInvalid;
  }
}

std::optional<std::string> table_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("TAU_TABLE_PATH"); env && *env) return std::string(env);
  return std::nullopt;
}

// Loads the configured table, or builds one from the series when none is set.
TauTable acquire_table(const std::string& flag, std::uint64_t needed) {
  needed = std::max<std::uint64_t>(needed, 2);
  if (auto path = table_path(flag)) {
    TauTable table = load_table(*path);
    if (table.limit() < needed)
      throw Error(ErrorKind::OutOfRange, "table " + *path + " covers " +
                                             std::to_string(table.limit()) + ", need " +
                                             std::to_string(needed));
    return table;
  }
  if (needed > kMaxTableLimit)
    throw Error(ErrorKind::Capacity, "required table limit " + std::to_string(needed) +
                                         " exceeds the largest feasible limit " +
                                         std::to_string(kMaxTableLimit));
  return build_tau_table_series(std::uint32_t(needed));
}

bool force_mismatch() {
  const char* env = std::getenv("TAUW_FORCE_MISMATCH");
  return env && std::string(env) == "1";
}

void emit_json(const json& doc, const std::string& out) {
  const std::string text = doc.dump(1) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) throw Error(ErrorKind::InvalidInput, "cannot write " + out);
  file << text;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// --- table -----------------------------------------------------------------

int cmd_table(std::int64_t limit, const std::string& out) {
  if (limit < 1) throw Error(ErrorKind::InvalidInput, "--limit must be at least 1");
  if (limit > std::int64_t(kMaxTableLimit))
    throw Error(ErrorKind::Capacity, "--limit exceeds the largest feasible limit " +
                                         std::to_string(kMaxTableLimit));
  const TauTable table = build_tau_table_series(std::uint32_t(limit));
  std::ostringstream text;
  write_table(text, table);
  const std::string body = text.str();
  if (out.empty() || out == "-") {
    std::cout << body;
  } else {
    std::ofstream file(out, std::ios::binary);
    if (!file) throw Error(ErrorKind::InvalidInput, "cannot write " + out);
    file << body;
  }
  std::ostream& summary = (out.empty() || out == "-") ? std::cerr : std::cout;
  summary << "limit=" << table.limit() << " checksum=" << std::hex << std::setw(16)
          << std::setfill('0') << fnv1a(body) << std::dec << '\n';
  return kOk;
}

// --- verify ----------------------------------------------------------------

int cmd_verify(const std::string& suite, std::int64_t limit_flag, const std::string& table_flag,
               std::uint32_t cutoff) {
  static const std::vector<std::string> kSuites = {
      "mod691", "mod256", "deligne", "hecke", "multiplicativity",
      "zero-sums", "reference", "agreement", "all"};
  if (std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end())
    throw Error(ErrorKind::InvalidInput, "unknown suite '" + suite + "'");
  if (limit_flag < 0) throw Error(ErrorKind::InvalidInput, "--limit must be positive");

  std::uint64_t limit = limit_flag > 0 ? std::uint64_t(limit_flag) : 0;
  const bool needs_105 = suite == "zero-sums" || suite == "reference" || suite == "all";
  std::uint64_t needed = std::max<std::uint64_t>(limit, needs_105 ? 105 : 1);
  if (limit == 0 && !table_path(table_flag)) needed = std::max<std::uint64_t>(needed, 10000);
  const TauTable table = acquire_table(table_flag, needed);
  if (limit == 0) limit = table.limit();
  const SpfSieve sieve(std::max<std::uint32_t>(table.limit(), 2));

  Report report;
  auto want = [&](const char* name) { return suite == name || suite == "all"; };
  if (want("mod691")) report.merge(check_mod691(1, limit, table, sieve));
  if (want("mod256")) report.merge(check_mod256_odd(1, limit, table, sieve));
  if (want("deligne")) report.merge(check_deligne(limit, table, sieve));
  if (want("hecke")) report.merge(check_hecke(table, sieve));
  if (want("multiplicativity")) report.merge(check_multiplicativity(table));
  if (want("zero-sums")) report.merge(check_zero_sums(table));
  if (want("reference")) report.merge(check_reference_values(table));
  if (want("agreement")) report.merge(check_agreement(table, cutoff));

  std::cout << report.text();
  std::cerr << "suite=" << suite << " checked=" << report.checked()
            << " violations=" << report.violations().size() << '\n';
  return report.ok() ? kOk : kVerifyFailed;
}

// --- represent -------------------------------------------------------------

int cmd_represent(const std::string& target_text, double c_bound, std::int64_t max_terms,
                  bool residue, const std::string& out, const std::string& table_flag) {
  BigInt target;
  try {
    target = BigInt(target_text);
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidInput, "bad --target '" + target_text + "'");
  }
  if (max_terms < 1) throw Error(ErrorKind::InvalidInput, "--max-terms must be positive");

  SumCertificate cert;
  std::optional<TauTable> table;
  if (residue) {
    if (target < 0 || target >= kResidueModulus)
      throw Error(ErrorKind::InvalidInput, "--residue target must lie in [0, 370944)");
    if (std::size_t(max_terms) < kResidueTermCount)
      throw Error(ErrorKind::Infeasible, "residue certificates use exactly 198 terms");
    table = acquire_table(table_flag, kResidueIndexBound);
    cert = represent_residue_198(target.convert_to<std::int64_t>(), *table);
  } else {
    RepresentationParams params;
    params.c_bound = c_bound;
    params.max_terms = std::size_t(max_terms);
    const std::uint64_t bound = integer_index_bound(target, c_bound);
    table = acquire_table(table_flag, std::max<std::uint64_t>(bound, 10));
    cert = represent_integer(target, params, *table);
  }
  if (force_mismatch()) cert.target += 1;

  const SpfSieve sieve(std::max<std::uint32_t>(table->limit(), 2));
  if (!verify_integer_certificate(cert, *table, sieve)) {
    std::cerr << "certificate failed independent verification\n";
    return kVerifyFailed;
  }
  emit_json(to_json(cert), out);
  std::cerr << "terms=" << cert.plus.size() << " max_index=" << cert.meta.max_index << '\n';
  return kOk;
}

// --- modp ------------------------------------------------------------------

int cmd_modp(std::int64_t p, std::int64_t lambda, const std::string& mode,
             const std::string& out, const std::string& table_flag, std::int64_t window_cap) {
  const ModpKind kind = parse_modp_kind(mode);
  if (p < 2) throw Error(ErrorKind::InvalidInput, "--p must be a prime");
  if (kind == ModpKind::Sum96 && 370944 % p == 0)
    throw Error(ErrorKind::UnsupportedModulus,
                std::to_string(p) + " divides 370944; sum96 is unavailable");
  if (lambda < 0 || lambda >= p)
    throw Error(ErrorKind::InvalidInput, "--lambda must lie in [0, p)");
  if (window_cap < 0) throw Error(ErrorKind::InvalidInput, "--window-cap must be positive");

  const std::uint64_t needed =
      window_cap > 0 ? std::uint64_t(window_cap) : std::max<std::uint64_t>(20 * p, 2000);
  const TauTable table = acquire_table(table_flag, std::min<std::uint64_t>(needed, kMaxTableLimit));
  const SpfSieve sieve(std::max<std::uint32_t>(table.limit(), 2));

  ModpCertificate cert;
  if (kind == ModpKind::Sum16) {
    AbcOptions options;
    options.max_hi = std::uint64_t(window_cap);
    cert = Sum16Solver(std::uint64_t(p), table, sieve, options).sum16(std::uint64_t(lambda));
  } else {
    WindowPolicy policy;
    policy.max_hi = std::uint64_t(window_cap);
    const Pm32Solver solver(build_context(std::uint64_t(p), table, sieve, policy));
    cert = kind == ModpKind::Pm32 ? solver.pm32(std::uint64_t(lambda))
                                  : solver.sum96(std::uint64_t(lambda));
  }
  if (force_mismatch()) cert.lambda = (cert.lambda + 1) % cert.p;

  if (!verify_modp_certificate(cert, table, sieve)) {
    std::cerr << "certificate failed independent verification\n";
    return kVerifyFailed;
  }
  emit_json(to_json(cert), out);
  std::cerr << "kind=" << to_string(cert.kind) << " plus=" << cert.plus.size()
            << " minus=" << cert.minus.size() << " max_index=" << cert.meta.max_index
            << " branch=" << cert.meta.branch << '\n';
  return kOk;
}

// --- check -----------------------------------------------------------------

int cmd_check(const std::string& path, const std::string& table_flag) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const json doc = parse_certificate(buffer.str());
  if (!doc.is_object() || !doc.contains("kind"))
    throw Error(ErrorKind::Parse, "certificate lacks a kind");

  std::uint64_t needed = 105;
  const bool integer = doc["kind"] == "integer_sum";
  if (integer) {
    needed = std::max(needed, sum_certificate_from_json(doc).meta.max_index);
    for (std::uint64_t n : sum_certificate_from_json(doc).plus) needed = std::max(needed, n);
  } else {
    const ModpCertificate cert = modp_certificate_from_json(doc);
    needed = std::max({needed, cert.p, cert.meta.window_hi});
  }
  const TauTable table =
      acquire_table(table_flag, std::min<std::uint64_t>(needed, kMaxTableLimit));
  const SpfSieve sieve(std::max<std::uint32_t>(table.limit(), 2));
  const PrimeTauMap primes = PrimeTauMap::from_table(table, sieve);
  const CheckOutcome outcome = check_certificate(doc, primes, sieve);
  std::cout << (outcome.ok ? "OK " : "FAIL ") << outcome.kind << ' ' << outcome.summary << '\n';
  return outcome.ok ? kOk : kVerifyFailed;
}

// --- bench -----------------------------------------------------------------

int cmd_bench(std::int64_t limit, std::int64_t reps) {
  if (limit < 1 || limit > std::int64_t(kMaxTableLimit))
    throw Error(ErrorKind::InvalidInput, "--limit outside [1, 2000000]");
  if (reps < 1) throw Error(ErrorKind::InvalidInput, "--reps must be positive");
  using clock = std::chrono::steady_clock;
  std::vector<double> build_times, sweep_times;
  for (std::int64_t rep = 1; rep <= reps; ++rep) {
    const auto t0 = clock::now();
    const TauTable table = build_tau_table_series(std::uint32_t(limit));
    const auto t1 = clock::now();
    const SpfSieve sieve(std::max<std::uint32_t>(table.limit(), 2));
    const Report report = check_mod691(1, table.limit(), table, sieve);
    const auto t2 = clock::now();
    const double build = std::chrono::duration<double>(t1 - t0).count();
    const double sweep = std::chrono::duration<double>(t2 - t1).count();
    build_times.push_back(build);
    sweep_times.push_back(sweep);
    std::cout << "metric=table_build rep=" << rep << " limit=" << limit << " seconds=" << build
              << " coeffs_per_second=" << double(limit) / std::max(build, 1e-9) << '\n';
    std::cout << "metric=mod691_sweep rep=" << rep << " limit=" << limit << " seconds=" << sweep
              << " violations=" << report.violations().size() << '\n';
  }
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  };
  std::cout << "metric=table_build_median limit=" << limit << " seconds=" << median(build_times)
            << '\n';
  std::cout << "metric=mod691_sweep_median limit=" << limit << " seconds=" << median(sweep_times)
            << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ramanujan tau tables, identity sweeps and verifiable tau-sum representations"};
  app.require_subcommand(1);

  std::int64_t limit = 0, bench_limit = 100000, reps = 1, max_terms = 74000, p = 0, lambda = 0, window_cap = 0;
  std::uint32_t cutoff = 2000;
  double c_bound = 15.0;
  bool residue = false;
  std::string out, table, suite, target, mode = "pm32", cert_path;

  auto* table_cmd = app.add_subcommand("table", "Write a TAU-TABLE v1 file");
  table_cmd->add_option("--limit", limit, "Largest n")->required();
  table_cmd->add_option("--out", out, "Output path (default stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "Run an identity sweep");
  verify_cmd->add_option("--suite", suite,
                         "mod691|mod256|deligne|hecke|multiplicativity|zero-sums|reference|"
                         "agreement|all")
      ->required();
  verify_cmd->add_option("--limit", limit, "Sweep bound (default: table limit)");
  verify_cmd->add_option("--table", table, "TAU-TABLE v1 file (default $TAU_TABLE_PATH)");
  verify_cmd->add_option("--cutoff", cutoff, "Cutoff for the quadratic convolution formulas");

  auto* represent_cmd = app.add_subcommand("represent", "Write an integer tau-sum certificate");
  represent_cmd->add_option("--target", target, "Target integer N")->required();
  represent_cmd->add_option("--c-bound", c_bound, "Index bound coefficient");
  represent_cmd->add_option("--max-terms", max_terms, "Term budget");
  represent_cmd->add_flag("--residue", residue, "198-term representation of N in [0, 370944)");
  represent_cmd->add_option("--out", out, "Certificate path (default stdout)");
  represent_cmd->add_option("--table", table, "TAU-TABLE v1 file");

  auto* modp_cmd = app.add_subcommand("modp", "Write a mod-p tau-sum certificate");
  modp_cmd->add_option("--p", p, "Prime modulus above 23")->required();
  modp_cmd->add_option("--lambda", lambda, "Target residue (default 0)");
  modp_cmd->add_option("--mode", mode, "pm32|sum96|sum16");
  modp_cmd->add_option("--out", out, "Certificate path (default stdout)");
  modp_cmd->add_option("--table", table, "TAU-TABLE v1 file");
  modp_cmd->add_option("--window-cap", window_cap, "Largest window prime (default: table)");

  auto* check_cmd = app.add_subcommand("check", "Independently verify a certificate");
  check_cmd->add_option("certificate", cert_path, "Certificate JSON")->required();
  check_cmd->add_option("--table", table, "TAU-TABLE v1 file");

  auto* bench_cmd = app.add_subcommand("bench", "Time table construction and a sweep");
  bench_cmd->add_option("--limit", bench_limit, "Table limit")->capture_default_str();
  bench_cmd->add_option("--reps", reps, "Repetitions")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  try {
    if (*table_cmd) return cmd_table(limit, out);
    if (*verify_cmd) return cmd_verify(suite, limit, table, cutoff);
    if (*represent_cmd) return cmd_represent(target, c_bound, max_terms, residue, out, table);
    if (*modp_cmd) return cmd_modp(p, lambda, mode, out, table, window_cap);
    if (*check_cmd) return cmd_check(cert_path, table);
    if (*bench_cmd) return cmd_bench(bench_limit, reps);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}
