#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tauw/integer.hpp"

namespace tauw {

/// Prime decomposition of n with primes strictly increasing and exponents >= 1.
/// n = 1 has no factors.
struct FactorizationMap {
  std::uint64_t n = 1;
  std::vector<std::pair<std::uint64_t, unsigned>> factors;

  std::uint64_t product() const;
};

/// Linear sieve storing the least prime factor of every 2 <= n <= limit.
class SpfSieve {
 public:
  explicit SpfSieve(std::uint32_t limit);

  std::uint32_t limit() const { return limit_; }
  std::uint32_t spf(std::uint32_t n) const;
  bool is_prime(std::uint64_t n) const;
  const std::vector<std::uint32_t>& primes() const { return primes_; }

  /// Throws out-of-range if n exceeds the sieve limit.
  FactorizationMap factorize(std::uint64_t n) const;

  /// Trial division by sieve primes; works past the limit as long as the
  /// remaining cofactor is certified prime (its square root is below the
  /// limit). Throws out-of-range otherwise.
  FactorizationMap factorize_any(std::uint64_t n) const;

 private:
  std::uint32_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

SpfSieve sieve_spf(std::uint32_t limit);

/// sigma_s(n) = sum of d^s over divisors d of n, exact.
BigInt sigma(unsigned s, std::uint64_t n);

/// sigma_s(n) mod m using the sieve for factorization.
std::uint64_t sigma_mod(unsigned s, std::uint64_t n, std::uint64_t m,
                        const SpfSieve& sieve);

class SigmaTable {
 public:
  SigmaTable(unsigned s, const SpfSieve& sieve);

  unsigned exponent() const { return s_; }
  std::uint32_t limit() const { return limit_; }
  const BigInt& operator()(std::uint32_t n) const;
  std::span<const BigInt> values() const { return values_; }

 private:
  unsigned s_;
  std::uint32_t limit_;
  std::vector<BigInt> values_;  // index 0 unused
};

/// Primes q with lo < q <= hi, ascending.
std::vector<std::uint64_t> primes_in(std::int64_t lo, std::int64_t hi);

bool coprime_to_23_factorial(std::uint64_t n);

}  // namespace tauw
