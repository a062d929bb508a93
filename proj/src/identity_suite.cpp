#include "tauw/identity_suite.hpp"

#include <numeric>
#include <sstream>
#include <utility>

#include "tauw/error.hpp"

namespace tauw {

void Report::add(std::string check, std::uint64_t n, std::string expected,
                 std::string got) {
  violations_.push_back({std::move(check), n, std::move(expected), std::move(got)});
}

void Report::merge(const Report& other) {
  violations_.insert(violations_.end(), other.violations_.begin(), other.violations_.end());
  checked_ += other.checked_;
}

std::string Report::text() const {
  std::ostringstream out;
  for (const auto& v : violations_)
    out << "CHECK " << v.check << " n=" << v.n << " expected=" << v.expected
        << " got=" << v.got << '\n';
  return out.str();
}

const ZeroSumCertificate& zero_block_six() {
  static const ZeroSumCertificate block{{12, 27, 55, 69, 90, 105}};
  return block;
}

const ZeroSumCertificate& zero_block_seven() {
  static const ZeroSumCertificate block{{6, 14, 29, 41, 42, 44, 48}};
  return block;
}

namespace {

void require_cover(std::uint64_t hi, const TauTable& table) {
  if (hi > table.limit())
    throw Error(ErrorKind::OutOfRange, "sweep bound " + std::to_string(hi) +
                                           " exceeds table limit " +
                                           std::to_string(table.limit()));
}

Report check_sigma11_congruence(const char* name, std::uint64_t modulus, bool odd_only,
                                std::uint64_t lo, std::uint64_t hi, const TauTable& table,
                                const SpfSieve& sieve) {
  require_cover(hi, table);
  Report report;
  for (std::uint64_t n = std::max<std::uint64_t>(lo, 1); n <= hi; ++n) {
    if (odd_only && n % 2 == 0) continue;
    const std::uint64_t expected = sigma_mod(11, n, modulus, sieve);
    const std::uint64_t got = mod_u64(table(n), modulus);
    report.count();
    if (expected != got) report.add(name, n, std::to_string(expected), std::to_string(got));
  }
  return report;
}

}  // namespace

Report check_mod691(std::uint64_t lo, std::uint64_t hi, const TauTable& table,
                    const SpfSieve& sieve) {
  return check_sigma11_congruence("mod691", 691, false, lo, hi, table, sieve);
}

Report check_mod256_odd(std::uint64_t lo, std::uint64_t hi, const TauTable& table,
                        const SpfSieve& sieve) {
  return check_sigma11_congruence("mod256", 256, true, lo, hi, table, sieve);
}

bool check_deligne_prime(std::uint64_t q, const TauTable& table, const SpfSieve& sieve) {
  if (!sieve.is_prime(q))
    throw Error(ErrorKind::InvalidInput, std::to_string(q) + " is not prime");
  const BigInt t = to_big(table(q));
  return t * t <= 4 * ipow(q, 11);
}

Report check_deligne(std::uint64_t hi, const TauTable& table, const SpfSieve& sieve) {
  require_cover(hi, table);
  Report report;
  for (std::uint64_t q : sieve.primes()) {
    if (q > hi) break;
    report.count();
    if (!check_deligne_prime(q, table, sieve)) {
      const BigInt t = to_big(table(q));
      report.add("deligne", q, "<=" + BigInt(4 * ipow(q, 11)).str(), BigInt(t * t).str());
    }
  }
  return report;
}

bool check_hecke_q11(std::uint64_t q, const TauTable& table) {
  const BigInt t = to_big(table(q));
  return t * t - to_big(table(q * q)) == ipow(q, 11);
}

Report check_hecke(const TauTable& table, const SpfSieve& sieve) {
  Report report;
  const std::uint64_t limit = table.limit();
  for (std::uint64_t q : sieve.primes()) {
    if (q * q > limit) break;
    const BigInt tq = to_big(table(q));
    const BigInt q11 = ipow(q, 11);
    // q^a, q^{a+1}, q^{a+2} with a = 0, 1, ...
    std::uint64_t lo = 1;
    while (lo * q * q <= limit) {
      const std::uint64_t mid = lo * q;
      const std::uint64_t hi = mid * q;
      const BigInt expected = to_big(table(mid)) * tq - q11 * to_big(table(lo));
      const BigInt got = to_big(table(hi));
      report.count();
      if (expected != got) report.add("hecke", hi, expected.str(), got.str());
      lo = mid;
    }
  }
  return report;
}

Report check_multiplicativity(const TauTable& table) {
  Report report;
  const std::uint64_t limit = table.limit();
  for (std::uint64_t m = 2; m * m <= limit; ++m) {
    const i128 tm = table(m);
    for (std::uint64_t n = m + 1; m * n <= limit; ++n) {
      if (std::gcd(m, n) != 1) continue;
      report.count();
      i128 product = 0;
      const bool overflow = __builtin_mul_overflow(tm, table(n), &product);
      const i128 got = table(m * n);
      if (overflow || product != got)
        report.add("multiplicativity", m * n,
                   BigInt(to_big(tm) * to_big(table(n))).str(), to_string(got));
    }
  }
  return report;
}

bool zero_sum_holds(const ZeroSumCertificate& cert, const TauTable& table) {
  if (cert.indices.empty()) return false;
  BigInt sum = 0;
  for (std::uint64_t n : cert.indices) sum += to_big(table(n));
  return sum == 0;
}

std::array<ZeroSumCertificate, 2> verify_zero_sums(const TauTable& table) {
  if (table.limit() < 105)
    throw Error(ErrorKind::OutOfRange, "zero-sum blocks need a table limit of 105");
  for (const auto* block : {&zero_block_six(), &zero_block_seven()})
    if (!zero_sum_holds(*block, table))
      throw Error(ErrorKind::InternalConsistency, "zero-sum block does not vanish");
  return {zero_block_six(), zero_block_seven()};
}

Report check_zero_sums(const TauTable& table) {
  require_cover(105, table);
  Report report;
  for (const auto* block : {&zero_block_six(), &zero_block_seven()}) {
    BigInt sum = 0;
    for (std::uint64_t n : block->indices) sum += to_big(table(n));
    report.count();
    if (sum != 0) report.add("zero-sum", block->indices.front(), "0", sum.str());
  }
  return report;
}

Report check_reference_values(const TauTable& table) {
  static const std::pair<std::uint64_t, const char*> kValues[] = {
      {1, "1"},           {2, "-24"},          {3, "252"},
      {5, "4830"},        {8, "84480"},        {12, "-370944"},
      {27, "-73279080"},  {55, "2582175960"},  {69, "4698104544"},
      {90, "13173496560"}, {105, "-20380127040"}, {6, "-6048"},
      {14, "401856"},     {29, "128406630"},   {41, "308120442"},
      {42, "101267712"},  {44, "-786948864"},  {48, "248758272"},
  };
  require_cover(105, table);
  Report report;
  for (const auto& [n, value] : kValues) {
    report.count();
    const std::string got = to_string(table(n));
    if (got != value) report.add("reference", n, value, got);
  }
  return report;
}

Report check_agreement(const TauTable& table, std::uint32_t cutoff) {
  Report report;
  const std::uint32_t limit = table.limit();
  cutoff = std::min(cutoff, limit);
  if (cutoff >= 1) {
    const TauTable niebur = build_tau_table_niebur(cutoff);
    const TauTable sigma = build_tau_table_sigma_formula(cutoff);
    for (std::uint32_t n = 1; n <= cutoff; ++n) {
      report.count(2);
      if (niebur(n) != table(n))
        report.add("niebur", n, to_string(table(n)), to_string(niebur(n)));
      if (sigma(n) != table(n))
        report.add("sigma_formula", n, to_string(table(n)), to_string(sigma(n)));
    }
  }
  const SpfSieve sieve(std::max<std::uint32_t>(limit, 2));
  const PrimeTauMap primes = PrimeTauMap::from_table(table, sieve);
  const TauTable mult = build_tau_table_multiplicative(limit, primes, sieve);
  for (std::uint32_t n = 1; n <= limit; ++n) {
    report.count();
    if (mult(n) != table(n))
      report.add("multiplicative", n, to_string(table(n)), to_string(mult(n)));
  }
  return report;
}

}  // namespace tauw
