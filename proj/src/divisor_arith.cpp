#include "tauw/divisor_arith.hpp"

#include <string>

#include "tauw/error.hpp"

namespace tauw {

std::uint64_t FactorizationMap::product() const {
  std::uint64_t out = 1;
  for (const auto& [q, e] : factors)
    for (unsigned i = 0; i < e; ++i) out *= q;
  return out;
}

SpfSieve::SpfSieve(std::uint32_t limit) : limit_(limit) {
  if (limit < 2)
    throw Error(ErrorKind::InvalidInput,
                "sieve limit must be at least 2, got " + std::to_string(limit));
  spf_.assign(std::size_t(limit) + 1, 0);
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = i;
      primes_.push_back(i);
    }
    for (std::uint32_t q : primes_) {
      const std::uint64_t m = std::uint64_t(q) * i;
      if (q > spf_[i] || m > limit) break;
      spf_[m] = q;
    }
  }
}

std::uint32_t SpfSieve::spf(std::uint32_t n) const {
  if (n < 2 || n > limit_)
    throw Error(ErrorKind::OutOfRange, "spf query " + std::to_string(n) +
                                           " outside [2, " + std::to_string(limit_) + "]");
  return spf_[n];
}

bool SpfSieve::is_prime(std::uint64_t n) const {
  if (n < 2) return false;
  if (n <= limit_) return spf_[n] == n;
  for (std::uint64_t q : primes_) {
    if (q * q > n) return true;
    if (n % q == 0) return false;
  }
  throw Error(ErrorKind::OutOfRange,
              "primality of " + std::to_string(n) + " undecidable with sieve limit " +
                  std::to_string(limit_));
}

FactorizationMap SpfSieve::factorize(std::uint64_t n) const {
  if (n == 0 || n > limit_)
    throw Error(ErrorKind::OutOfRange, "factorize(" + std::to_string(n) +
                                           ") beyond sieve limit " + std::to_string(limit_));
  FactorizationMap out{n, {}};
  auto m = std::uint32_t(n);
  while (m > 1) {
    const std::uint32_t q = spf_[m];
    unsigned e = 0;
    while (m % q == 0) {
      m /= q;
      ++e;
    }
    out.factors.emplace_back(q, e);
  }
  return out;
}

FactorizationMap SpfSieve::factorize_any(std::uint64_t n) const {
  if (n == 0) throw Error(ErrorKind::InvalidInput, "factorize(0)");
  if (n <= limit_) return factorize(n);
  FactorizationMap out{n, {}};
  std::uint64_t m = n;
  for (std::uint64_t q : primes_) {
    if (q * q > m) break;
    if (m % q != 0) continue;
    unsigned e = 0;
    while (m % q == 0) {
      m /= q;
      ++e;
    }
    out.factors.emplace_back(q, e);
  }
  if (m > 1) {
    // m has no factor <= limit, so it is prime once m < (limit + 1)^2.
    if (u128(limit_ + 1) * (limit_ + 1) <= m)
      throw Error(ErrorKind::OutOfRange, "cannot certify cofactor " + std::to_string(m) +
                                             " of " + std::to_string(n) + " as prime");
    out.factors.emplace_back(m, 1);
  }
  return out;
}

SpfSieve sieve_spf(std::uint32_t limit) { return SpfSieve(limit); }

namespace {

// 1 + q^s + ... + q^{se}
BigInt sigma_prime_power(std::uint64_t q, unsigned e, unsigned s) {
  const BigInt step = ipow(q, s);
  BigInt term = 1;
  BigInt sum = 1;
  for (unsigned i = 0; i < e; ++i) {
    term *= step;
    sum += term;
  }
  return sum;
}

}  // namespace

BigInt sigma(unsigned s, std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidInput, "sigma(s, 0)");
  BigInt out = 1;
  std::uint64_t m = n;
  for (std::uint64_t q = 2; q * q <= m; ++q) {
    if (m % q != 0) continue;
    unsigned e = 0;
    while (m % q == 0) {
      m /= q;
      ++e;
    }
    out *= sigma_prime_power(q, e, s);
  }
  if (m > 1) out *= sigma_prime_power(m, 1, s);
  return out;
}

std::uint64_t sigma_mod(unsigned s, std::uint64_t n, std::uint64_t m,
                        const SpfSieve& sieve) {
  u128 out = 1 % m;
  for (const auto& [q, e] : sieve.factorize_any(n).factors) {
    const u128 step = pow_mod(q, s, m);
    u128 term = 1, sum = 1;
    for (unsigned i = 0; i < e; ++i) {
      term = term * step % m;
      sum = (sum + term) % m;
    }
    out = out * sum % m;
  }
  return std::uint64_t(out);
}

SigmaTable::SigmaTable(unsigned s, const SpfSieve& sieve)
    : s_(s), limit_(sieve.limit()), values_(std::size_t(sieve.limit()) + 1) {
  values_[1] = 1;
  for (std::uint32_t n = 2; n <= limit_; ++n) {
    const std::uint32_t q = sieve.spf(n);
    std::uint32_t rest = n;
    unsigned e = 0;
    while (rest % q == 0) {
      rest /= q;
      ++e;
    }
    values_[n] = values_[rest] * sigma_prime_power(q, e, s);
  }
}

const BigInt& SigmaTable::operator()(std::uint32_t n) const {
  if (n == 0 || n > limit_)
    throw Error(ErrorKind::OutOfRange, "sigma table lookup " + std::to_string(n) +
                                           " outside [1, " + std::to_string(limit_) + "]");
  return values_[n];
}

std::vector<std::uint64_t> primes_in(std::int64_t lo, std::int64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi < 2 || hi <= lo) return out;
  const auto top = std::uint64_t(hi);
  std::vector<bool> composite(top + 1, false);
  for (std::uint64_t i = 2; i * i <= top; ++i)
    if (!composite[i])
      for (std::uint64_t j = i * i; j <= top; j += i) composite[j] = true;
  const std::uint64_t start = lo < 2 ? 2 : std::uint64_t(lo) + 1;
  for (std::uint64_t q = start; q <= top; ++q)
    if (!composite[q]) out.push_back(q);
  return out;
}

bool coprime_to_23_factorial(std::uint64_t n) {
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23})
    if (n % q == 0) return false;
  return true;
}

}  // namespace tauw
