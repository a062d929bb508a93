#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tauw/divisor_arith.hpp"
#include "tauw/tau_core.hpp"

namespace tauw {

struct Violation {
  std::string check;
  std::uint64_t n = 0;
  std::string expected;
  std::string got;
};

/// Collects every violation of a sweep. Empty means success.
class Report {
 public:
  void add(std::string check, std::uint64_t n, std::string expected, std::string got);
  void merge(const Report& other);

  bool ok() const { return violations_.empty(); }
  std::size_t checked() const { return checked_; }
  void count(std::size_t k = 1) { checked_ += k; }
  const std::vector<Violation>& violations() const { return violations_; }

  /// One `CHECK <name> n=<n> expected=<x> got=<y>` line per violation.
  std::string text() const;

 private:
  std::vector<Violation> violations_;
  std::size_t checked_ = 0;
};

/// Fixed multiset of indices whose tau-values sum to exactly zero.
struct ZeroSumCertificate {
  std::vector<std::uint64_t> indices;
};

const ZeroSumCertificate& zero_block_six();    // {12, 27, 55, 69, 90, 105}
const ZeroSumCertificate& zero_block_seven();  // {6, 14, 29, 41, 42, 44, 48}

// Sweeps over [lo, hi]; the table must cover hi.
Report check_mod691(std::uint64_t lo, std::uint64_t hi, const TauTable& table,
                    const SpfSieve& sieve);
Report check_mod256_odd(std::uint64_t lo, std::uint64_t hi, const TauTable& table,
                        const SpfSieve& sieve);

/// tau(q)^2 <= 4 q^11 in exact integers. Throws invalid-input if q is not prime.
bool check_deligne_prime(std::uint64_t q, const TauTable& table, const SpfSieve& sieve);
Report check_deligne(std::uint64_t hi, const TauTable& table, const SpfSieve& sieve);

/// tau(q)^2 - tau(q^2) == q^11.
bool check_hecke_q11(std::uint64_t q, const TauTable& table);
/// Full recurrence at every prime power inside the table.
Report check_hecke(const TauTable& table, const SpfSieve& sieve);

/// tau(mn) == tau(m) tau(n) for coprime 2 <= m <= n, mn <= limit.
Report check_multiplicativity(const TauTable& table);

bool zero_sum_holds(const ZeroSumCertificate& cert, const TauTable& table);
/// Both zero-sum blocks; throws internal-consistency if either fails.
std::array<ZeroSumCertificate, 2> verify_zero_sums(const TauTable& table);
Report check_zero_sums(const TauTable& table);

/// The published values tau(1), tau(2), ..., tau(105). Needs limit >= 105.
Report check_reference_values(const TauTable& table);

/// Series table vs. Niebur and the sigma formula up to `cutoff`, and vs.
/// multiplicative reconstruction over the whole table.
Report check_agreement(const TauTable& table, std::uint32_t cutoff);

}  // namespace tauw
