#include "tauw/integer.hpp"

#include <algorithm>

#include "tauw/error.hpp"

namespace tauw {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::InternalConsistency: return "internal-consistency";
    case ErrorKind::IncompleteMap: return "incomplete-map";
    case ErrorKind::RelationViolated: return "relation-violated";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::LemmaViolation: return "lemma-violation";
    case ErrorKind::UnsupportedModulus: return "unsupported-modulus";
    case ErrorKind::DegenerateContext: return "degenerate-context";
  }
  return "unknown";
}

std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  u128 mag = neg ? u128(0) - u128(v) : u128(v);
  std::string out;
  while (mag != 0) {
    out.push_back(char('0' + int(mag % 10)));
    mag /= 10;
  }
  if (neg) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

i128 parse_i128(std::string_view text) {
  if (text.empty()) throw Error(ErrorKind::Parse, "empty integer literal");
  std::size_t pos = 0;
  bool neg = false;
  if (text[0] == '-' || text[0] == '+') {
    neg = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw Error(ErrorKind::Parse, "sign without digits");
  constexpr u128 limit = (u128(1) << 127);
  u128 mag = 0;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c < '0' || c > '9')
      throw Error(ErrorKind::Parse, "bad digit in '" + std::string(text) + "'");
    if (mag > (limit - unsigned(c - '0')) / 10)
      throw Error(ErrorKind::Parse, "integer exceeds 128 bits: " + std::string(text));
    mag = mag * 10 + unsigned(c - '0');
  }
  if (!neg && mag == limit)
    throw Error(ErrorKind::Parse, "integer exceeds 128 bits: " + std::string(text));
  return neg ? i128(u128(0) - mag) : i128(mag);
}

bool fits_i128(const BigInt& v) {
  static const BigInt hi = BigInt(1) << 127;
  return v < hi && v >= -hi;
}

BigInt ipow(std::uint64_t base, unsigned exp) {
  return boost::multiprecision::pow(BigInt(base), exp);
}

std::uint64_t mod_u64(const BigInt& v, std::uint64_t m) {
  BigInt r = v % m;
  if (r < 0) r += m;
  return r.convert_to<std::uint64_t>();
}

std::uint64_t mod_u64(i128 v, std::uint64_t m) {
  i128 r = v % i128(m);
  if (r < 0) r += i128(m);
  return std::uint64_t(r);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  u128 result = 1 % m;
  u128 b = base % m;
  while (exp != 0) {
    if (exp & 1) result = result * b % m;
    b = b * b % m;
    exp >>= 1;
  }
  return std::uint64_t(result);
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  if (a % m == 0) throw Error(ErrorKind::InvalidInput, "no inverse of 0");
  return pow_mod(a, m - 2, m);
}

}  // namespace tauw
