#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <unordered_map>
#include <vector>

#include "tauw/divisor_arith.hpp"
#include "tauw/integer.hpp"

namespace tauw {

enum class TauMethod { Series, Niebur, SigmaFormula, Multiplicative };

const char* to_string(TauMethod method);

/// Largest limit the series engine accepts; past it 128-bit coefficients are
/// no longer guaranteed by the Deligne envelope.
inline constexpr std::uint32_t kMaxTableLimit = 2'000'000;

/// Exact tau(1..limit).
class TauTable {
 public:
  TauTable(TauMethod method, std::vector<i128> values);

  std::uint32_t limit() const { return std::uint32_t(values_.size()); }
  TauMethod method() const { return method_; }
  i128 operator()(std::uint64_t n) const;
  std::span<const i128> values() const { return values_; }

  friend bool operator==(const TauTable& a, const TauTable& b) {
    return a.values_ == b.values_;
  }

 private:
  TauMethod method_;
  std::vector<i128> values_;  // values_[n - 1] = tau(n)
};

/// Expands X * prod (1 - X^n)^24 as the 8th power of Jacobi's sparse cube
/// series sum (-1)^k (2k+1) X^{k(k+1)/2}, seven dense-by-sparse products.
TauTable build_tau_table_series(std::uint32_t limit);

/// Niebur's convolution, with sigma_1 weights. n <= 50000 keeps the
/// accumulator inside 128 bits.
i128 tau_niebur(std::uint32_t n, const SigmaTable& sigma1);

/// (65 sigma_11(n) + 691 sigma_5(n) - 691*252 sum sigma_5(k) sigma_5(n-k)) / 756,
/// with a hard divisibility check.
BigInt tau_sigma_formula(std::uint32_t n, const SigmaTable& sigma5,
                         const SigmaTable& sigma11);

TauTable build_tau_table_niebur(std::uint32_t limit);
TauTable build_tau_table_sigma_formula(std::uint32_t limit);

/// tau(q^alpha) from tau(q) by the Hecke recurrence.
BigInt tau_prime_power(const BigInt& tau_q, std::uint64_t q, unsigned alpha);

/// tau at primes. Any consistent assignment works as a coefficient provider:
/// multiplicative extension plus the Hecke rule defines the rest.
class PrimeTauMap {
 public:
  PrimeTauMap() = default;
  static PrimeTauMap from_table(const TauTable& table, const SpfSieve& sieve);

  void set(std::uint64_t q, BigInt value) { values_[q] = std::move(value); }
  bool contains(std::uint64_t q) const { return values_.count(q) != 0; }
  const BigInt& at(std::uint64_t q) const;
  std::size_t size() const { return values_.size(); }

 private:
  std::map<std::uint64_t, BigInt> values_;
};

/// tau(n) as the product of tau(q^alpha) over the factorization of n.
BigInt tau_multiplicative(std::uint64_t n, const PrimeTauMap& primes,
                          const SpfSieve& sieve);

/// Memoizing multiplicative evaluator used by the certificate verifiers.
class MultiplicativeTau {
 public:
  MultiplicativeTau(const PrimeTauMap& primes, const SpfSieve& sieve)
      : primes_(primes), sieve_(sieve) {}

  BigInt operator()(std::uint64_t n);

 private:
  const PrimeTauMap& primes_;
  const SpfSieve& sieve_;
  std::map<std::pair<std::uint64_t, unsigned>, BigInt> prime_powers_;
};

TauTable build_tau_table_multiplicative(std::uint32_t limit, const PrimeTauMap& primes,
                                        const SpfSieve& sieve);

// TAU-TABLE v1: header line, then "<n>\t<tau(n)>" for n = 1..limit.
void write_table(std::ostream& out, const TauTable& table);
TauTable read_table(std::istream& in);
void save_table(const std::filesystem::path& path, const TauTable& table);
TauTable load_table(const std::filesystem::path& path);

}  // namespace tauw
