#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace tauw {

using BigInt = boost::multiprecision::cpp_int;

// Table coefficients. |tau(n)| <= n^{11/2} d(n) keeps every n <= 2e6 inside
// 128 bits; larger magnitudes go through BigInt.
using i128 = __int128;
using u128 = unsigned __int128;

std::string to_string(i128 v);
i128 parse_i128(std::string_view text);

inline BigInt to_big(i128 v) { return BigInt(v); }

// Returns false if v does not fit in 128 signed bits.
bool fits_i128(const BigInt& v);

BigInt ipow(std::uint64_t base, unsigned exp);

// Non-negative remainder of v modulo m (m > 0).
std::uint64_t mod_u64(const BigInt& v, std::uint64_t m);
std::uint64_t mod_u64(i128 v, std::uint64_t m);

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
// Inverse of a modulo prime m; a must be nonzero mod m.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);

}  // namespace tauw
