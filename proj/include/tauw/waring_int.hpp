#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "tauw/divisor_arith.hpp"
#include "tauw/integer.hpp"
#include "tauw/tau_core.hpp"

namespace tauw {

inline constexpr std::uint32_t kResidueModulus = 370944;  // -tau(12)
inline constexpr std::size_t kResidueTermCount = 198;
inline constexpr std::uint64_t kResidueIndexBound = 105;

/// r = tau(8) r5 + tau(5) r4 + tau(3) r3 + tau(2) r2 + tau(1) r1.
struct DigitVector {
  unsigned r5 = 0, r4 = 0, r3 = 0, r2 = 0, r1 = 0;

  unsigned total() const { return r5 + r4 + r3 + r2 + r1; }
  std::int64_t value() const;
  bool within_bounds() const;

  friend bool operator==(const DigitVector&, const DigitVector&) = default;
};

struct SumMeta {
  std::size_t term_count = 0;
  std::uint64_t max_index = 0;
  BigInt max_abs_tau = 0;
  std::optional<std::uint64_t> index_bound;
  std::optional<std::size_t> max_terms;
};

/// Claimed representation sum tau(plus_i) = target.
struct SumCertificate {
  BigInt target = 0;
  std::vector<std::uint64_t> plus;
  SumMeta meta;
};

struct RepresentationParams {
  double c_bound = 15.0;
  std::size_t max_terms = 74000;
  static constexpr std::size_t canonical_residue_count = kResidueTermCount;
};

struct AdmissibleSet {
  std::vector<std::uint64_t> primes;
  bool certified = false;
};

using SixTuple = std::array<std::uint64_t, 6>;

struct AdmissibilityResult {
  bool admissible = true;
  // Two distinct increasing 6-tuples with equal tau-sums, when not admissible.
  std::optional<std::pair<SixTuple, SixTuple>> relation;
};

DigitVector digits_mod_370944(std::int64_t r);

/// (x, y) with 6x + 7y = gap: pure six-blocks when 6 | gap, otherwise the
/// least x. Throws infeasible for gaps outside the semigroup <6, 7>.
std::pair<std::size_t, std::size_t> pad_count_6x7y(std::int64_t gap);

/// Exactly 198 indices <= 105 summing to r: digit terms over {8,5,3,2,1}
/// padded with copies of the two zero-sum blocks.
SumCertificate represent_residue_198(std::int64_t r, const TauTable& table);

/// Needs |primes| <= 16, distinct primes > 23 inside the table.
AdmissibilityResult is_admissible(std::span<const std::uint64_t> primes,
                                  const TauTable& table);

/// Greedy: keeps each candidate that preserves admissibility, up to cap.
AdmissibleSet grow_admissible(std::span<const std::uint64_t> candidates, std::size_t cap,
                              const TauTable& table);

/// j -> least prime l <= bound with tau(l) = 2^j (mod 8 * 691), j in [1, 12].
std::map<int, std::uint64_t> find_dyadic_tau_primes(std::uint64_t bound,
                                                    const TauTable& table,
                                                    const SpfSieve& sieve);

/// Evaluates sum_{i<6} tau(t_i q) - sum_{i>=6} tau(t_i q) - tau(q^2) through
/// the provider, given sum_{i<6} tau(t_i) = sum_{i>=6} tau(t_i) + tau(q).
/// Throws relation-violated if that relation fails under the provider.
BigInt q11_from_relation(std::uint64_t q, std::span<const std::uint64_t> tilde,
                         const PrimeTauMap& provider);

/// s primes from the pool (repetition allowed) with sum q_i^11 = target,
/// by meet-in-the-middle. s <= 4, |pool| <= 200.
std::optional<std::vector<std::uint64_t>> solve_prime_power_sum(
    const BigInt& target, std::size_t s, std::span<const std::uint64_t> pool);

/// floor(c (|N|^{2/11} + 1)).
std::uint64_t integer_index_bound(const BigInt& target, double c_bound);

/// Greedy descent over tau(n), n <= index bound, then a breadth-first
/// finisher over sums of tau(1..10) once |remainder| <= 10^6.
SumCertificate represent_integer(const BigInt& target, const RepresentationParams& params,
                                 const TauTable& table);

/// Recomputes the sum through the multiplicative path and re-checks meta.
bool verify_integer_certificate(const SumCertificate& cert, const TauTable& table,
                                const SpfSieve& sieve);
bool verify_integer_certificate(const SumCertificate& cert, const PrimeTauMap& primes,
                                const SpfSieve& sieve);

/// Fills meta.term_count, max_index and max_abs_tau from the table.
void fill_sum_meta(SumCertificate& cert, const TauTable& table);

}  // namespace tauw
