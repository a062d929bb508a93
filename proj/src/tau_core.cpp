#include "tauw/tau_core.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "tauw/error.hpp"

namespace tauw {

const char* to_string(TauMethod method) {
  switch (method) {
    case TauMethod::Series: return "series";
    case TauMethod::Niebur: return "niebur";
    case TauMethod::SigmaFormula: return "sigma_formula";
    case TauMethod::Multiplicative: return "multiplicative";
  }
  return "unknown";
}

TauTable::TauTable(TauMethod method, std::vector<i128> values)
    : method_(method), values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorKind::InvalidInput, "empty tau table");
}

i128 TauTable::operator()(std::uint64_t n) const {
  if (n == 0 || n > values_.size())
    throw Error(ErrorKind::OutOfRange, "tau(" + std::to_string(n) +
                                           ") outside table limit " +
                                           std::to_string(values_.size()));
  return values_[n - 1];
}

TauTable build_tau_table_series(std::uint32_t limit) {
  if (limit < 1) throw Error(ErrorKind::InvalidInput, "table limit must be >= 1");
  if (limit > kMaxTableLimit)
    throw Error(ErrorKind::Capacity, "table limit " + std::to_string(limit) +
                                         " exceeds the largest feasible limit " +
                                         std::to_string(kMaxTableLimit));
  // Coefficients of X^0 .. X^{limit-1} of prod (1 - X^n)^24.
  const std::size_t len = limit;
  std::vector<std::pair<std::size_t, std::int64_t>> cube;
  for (std::int64_t k = 0;; ++k) {
    const auto e = std::size_t(k * (k + 1) / 2);
    if (e >= len) break;
    cube.emplace_back(e, (k % 2 == 0 ? 1 : -1) * (2 * k + 1));
  }

  // Unsigned wraparound: intermediate partial sums may leave 128 bits, but
  // each finished coefficient fits, so arithmetic mod 2^128 is exact.
  std::vector<u128> dense(len, 0);
  for (auto [e, c] : cube) dense[e] = u128(i128(c));
  std::vector<u128> next(len);
  for (int round = 0; round < 7; ++round) {
    std::fill(next.begin(), next.end(), 0);
    for (auto [e, c] : cube) {
      const u128 coeff = u128(i128(c));
      u128* dst = next.data() + e;
      const std::size_t span = len - e;
      for (std::size_t i = 0; i < span; ++i) dst[i] += coeff * dense[i];
    }
    dense.swap(next);
  }

  std::vector<i128> values(len);
  for (std::size_t i = 0; i < len; ++i) values[i] = i128(dense[i]);
  return TauTable(TauMethod::Series, std::move(values));
}

i128 tau_niebur(std::uint32_t n, const SigmaTable& sigma1) {
  if (sigma1.exponent() != 1)
    throw Error(ErrorKind::InvalidInput, "Niebur's formula needs a sigma_1 table");
  if (n == 0 || n > sigma1.limit())
    throw Error(ErrorKind::OutOfRange, "sigma table does not cover " + std::to_string(n));
  if (n > 50'000)
    throw Error(ErrorKind::Capacity, "Niebur evaluation capped at n = 50000");
  const i128 nn = n;
  auto sig = [&](std::uint32_t k) { return sigma1(k).convert_to<i128>(); };
  i128 acc = 0;
  for (std::uint32_t k = 1; k < n; ++k) {
    const i128 kk = k;
    const i128 weight = kk * kk * (35 * kk * kk - 52 * kk * nn + 18 * nn * nn);
    acc += weight * sig(k) * sig(n - k);
  }
  return nn * nn * nn * nn * sig(n) - 24 * acc;
}

BigInt tau_sigma_formula(std::uint32_t n, const SigmaTable& sigma5,
                         const SigmaTable& sigma11) {
  if (sigma5.exponent() != 5 || sigma11.exponent() != 11)
    throw Error(ErrorKind::InvalidInput, "expected sigma_5 and sigma_11 tables");
  if (n == 0 || n > sigma5.limit() || n > sigma11.limit())
    throw Error(ErrorKind::OutOfRange, "sigma tables do not cover " + std::to_string(n));
  BigInt conv = 0;
  for (std::uint32_t k = 1; k < n; ++k) conv += sigma5(k) * sigma5(n - k);
  BigInt scaled = 65 * sigma11(n) + 691 * sigma5(n) - 174132 * conv;
  if (scaled % 756 != 0)
    throw Error(ErrorKind::InternalConsistency,
                "756 does not divide the scaled sigma identity at n = " + std::to_string(n));
  return scaled / 756;
}

TauTable build_tau_table_niebur(std::uint32_t limit) {
  const SpfSieve sieve(std::max<std::uint32_t>(limit, 2));
  const SigmaTable sigma1(1, sieve);
  std::vector<i128> values(limit);
  for (std::uint32_t n = 1; n <= limit; ++n) values[n - 1] = tau_niebur(n, sigma1);
  return TauTable(TauMethod::Niebur, std::move(values));
}

TauTable build_tau_table_sigma_formula(std::uint32_t limit) {
  const SpfSieve sieve(std::max<std::uint32_t>(limit, 2));
  const SigmaTable sigma5(5, sieve);
  const SigmaTable sigma11(11, sieve);
  std::vector<i128> values(limit);
  for (std::uint32_t n = 1; n <= limit; ++n) {
    const BigInt v = tau_sigma_formula(n, sigma5, sigma11);
    if (!fits_i128(v))
      throw Error(ErrorKind::Capacity, "sigma formula value exceeds 128 bits");
    values[n - 1] = v.convert_to<i128>();
  }
  return TauTable(TauMethod::SigmaFormula, std::move(values));
}

BigInt tau_prime_power(const BigInt& tau_q, std::uint64_t q, unsigned alpha) {
  if (alpha == 0) return 1;
  const BigInt q11 = ipow(q, 11);
  BigInt prev = 1;
  BigInt cur = tau_q;
  for (unsigned a = 1; a < alpha; ++a) {
    BigInt nxt = cur * tau_q - q11 * prev;
    prev = std::move(cur);
    cur = std::move(nxt);
  }
  return cur;
}

PrimeTauMap PrimeTauMap::from_table(const TauTable& table, const SpfSieve& sieve) {
  PrimeTauMap out;
  for (std::uint32_t q : sieve.primes()) {
    if (q > table.limit()) break;
    out.set(q, to_big(table(q)));
  }
  return out;
}

const BigInt& PrimeTauMap::at(std::uint64_t q) const {
  auto it = values_.find(q);
  if (it == values_.end())
    throw Error(ErrorKind::IncompleteMap, "no tau value for prime " + std::to_string(q));
  return it->second;
}

BigInt tau_multiplicative(std::uint64_t n, const PrimeTauMap& primes,
                          const SpfSieve& sieve) {
  BigInt out = 1;
  for (const auto& [q, e] : sieve.factorize_any(n).factors)
    out *= tau_prime_power(primes.at(q), q, e);
  return out;
}

BigInt MultiplicativeTau::operator()(std::uint64_t n) {
  BigInt out = 1;
  for (const auto& [q, e] : sieve_.factorize_any(n).factors) {
    auto key = std::make_pair(q, e);
    auto it = prime_powers_.find(key);
    if (it == prime_powers_.end())
      it = prime_powers_.emplace(key, tau_prime_power(primes_.at(q), q, e)).first;
    out *= it->second;
  }
  return out;
}

TauTable build_tau_table_multiplicative(std::uint32_t limit, const PrimeTauMap& primes,
                                        const SpfSieve& sieve) {
  MultiplicativeTau eval(primes, sieve);
  std::vector<i128> values(limit);
  for (std::uint32_t n = 1; n <= limit; ++n) {
    const BigInt v = eval(n);
    if (!fits_i128(v))
      throw Error(ErrorKind::Capacity, "multiplicative value exceeds 128 bits at n = " +
                                           std::to_string(n));
    values[n - 1] = v.convert_to<i128>();
  }
  return TauTable(TauMethod::Multiplicative, std::move(values));
}

void write_table(std::ostream& out, const TauTable& table) {
  out << "TAU-TABLE v1 limit=" << table.limit() << '\n';
  std::uint32_t n = 1;
  for (i128 v : table.values()) out << n++ << '\t' << to_string(v) << '\n';
}

TauTable read_table(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": " + why);
  };
  if (!std::getline(in, line)) fail("missing header");
  constexpr std::string_view prefix = "TAU-TABLE v1 limit=";
  if (line.rfind(prefix, 0) != 0) fail("bad header '" + line + "'");
  std::uint64_t limit = 0;
  try {
    const std::string digits = line.substr(prefix.size());
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      fail("bad limit '" + digits + "'");
    limit = std::stoull(digits);
  } catch (const std::out_of_range&) {
    fail("limit out of range");
  }
  if (limit < 1 || limit > kMaxTableLimit) fail("limit " + std::to_string(limit) + " unsupported");

  std::vector<i128> values;
  values.reserve(limit);
  while (std::getline(in, line)) {
    ++line_no;
    if (values.size() == limit) fail("unexpected trailing content");
    const auto tab = line.find('\t');
    if (tab == std::string::npos) fail("missing tab separator");
    const std::string expected = std::to_string(values.size() + 1);
    if (line.compare(0, tab, expected) != 0) fail("expected index " + expected);
    try {
      values.push_back(parse_i128(std::string_view(line).substr(tab + 1)));
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  if (values.size() != limit)
    fail("truncated table: " + std::to_string(values.size()) + " of " +
         std::to_string(limit) + " entries");
  return TauTable(TauMethod::Series, std::move(values));
}

void save_table(const std::filesystem::path& path, const TauTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot open " + path.string() + " for writing");
  write_table(out, table);
  if (!out) throw Error(ErrorKind::InvalidInput, "write failed for " + path.string());
}

TauTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path.string());
  return read_table(in);
}

}  // namespace tauw
