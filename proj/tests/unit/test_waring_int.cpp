#include <algorithm>
#include <random>

#include "doctest.h"
#include "tauw/error.hpp"
#include "tauw/waring_int.hpp"

using namespace tauw;

namespace {

const TauTable& table() {
  static const TauTable t = build_tau_table_series(20000);
  return t;
}

const SpfSieve& sieve() {
  static const SpfSieve s(20000);
  return s;
}

BigInt tau_sum(const std::vector<std::uint64_t>& xs) {
  BigInt s = 0;
  for (auto n : xs) s += to_big(table()(n));
  return s;
}

}  // namespace

TEST_CASE("digit cascade") {
  CHECK(digits_mod_370944(0) == DigitVector{});
  const DigitVector d = digits_mod_370944(370943);
  CHECK(d.value() == 370943);
  CHECK(d.within_bounds());
  // 1 = 252 - 11 * 24 + 13
  CHECK(digits_mod_370944(1) == DigitVector{0, 0, 1, 11, 13});
  CHECK_THROWS_AS((void)digits_mod_370944(370944), Error);
  CHECK_THROWS_AS((void)digits_mod_370944(-1), Error);
  for (std::int64_t r = 0; r < 370944; r += 37) {
    const DigitVector v = digits_mod_370944(r);
    REQUIRE(v.value() == r);
    REQUIRE(v.within_bounds());
  }
}

TEST_CASE("padding counts") {
  using P = std::pair<std::size_t, std::size_t>;
  CHECK(pad_count_6x7y(198) == P{33, 0});
  CHECK(pad_count_6x7y(137) == P{3, 17});
  CHECK(pad_count_6x7y(197) == P{6, 23});
  CHECK(pad_count_6x7y(0) == P{0, 0});
  CHECK(pad_count_6x7y(7) == P{0, 1});
  CHECK(pad_count_6x7y(13) == P{1, 1});
  for (std::int64_t gap : {1, 5, 8, 29}) {
    try {
      (void)pad_count_6x7y(gap);
      FAIL("expected infeasible");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Infeasible);
    }
  }
  for (std::int64_t gap = 30; gap <= 400; ++gap) {
    const auto [x, y] = pad_count_6x7y(gap);
    REQUIRE(std::int64_t(6 * x + 7 * y) == gap);
  }
}

TEST_CASE("residue representation") {
  for (std::int64_t r : {0, 1, 23, 84480, 100000, 370943}) {
    const SumCertificate c = represent_residue_198(r, table());
    CHECK(c.plus.size() == 198);
    CHECK(tau_sum(c.plus) == r);
    CHECK(c.meta.max_index <= 105);
    CHECK(verify_integer_certificate(c, table(), sieve()));
  }
  const SumCertificate zero = represent_residue_198(0, table());
  CHECK(std::count(zero.plus.begin(), zero.plus.end(), 105) == 33);
}

TEST_CASE("admissibility agrees with pairwise 6-subset comparison") {
  const std::vector<std::uint64_t> primes = {29, 31, 37, 41, 43, 47, 53, 59, 61};
  // Oracle: every pair of distinct 6-subsets compared directly.
  auto oracle = [&](const std::vector<std::uint64_t>& set) {
    const unsigned n = unsigned(set.size());
    std::vector<std::pair<unsigned, BigInt>> sums;
    for (unsigned m = 0; m < (1u << n); ++m) {
      if (__builtin_popcount(m) != 6) continue;
      BigInt s = 0;
      for (unsigned i = 0; i < n; ++i)
        if (m >> i & 1) s += to_big(table()(set[i]));
      sums.emplace_back(m, s);
    }
    for (std::size_t i = 0; i < sums.size(); ++i)
      for (std::size_t j = i + 1; j < sums.size(); ++j)
        if (sums[i].second == sums[j].second) return false;
    return true;
  };
  CHECK(is_admissible(primes, table()).admissible == oracle(primes));
  CHECK(is_admissible(std::vector<std::uint64_t>{29, 31, 37}, table()).admissible);

  // Synthetic table where tau(29)+tau(37) = tau(31)+tau(41) forces a relation.
  std::vector<i128> v(table().values().begin(), table().values().end());
  v[41 - 1] = v[29 - 1] + v[37 - 1] - v[31 - 1];
  const TauTable rigged(TauMethod::Series, v);
  const auto res = is_admissible(primes, rigged);
  CHECK_FALSE(res.admissible);
  REQUIRE(res.relation.has_value());
  BigInt a = 0, b = 0;
  for (auto q : res.relation->first) a += to_big(rigged(q));
  for (auto q : res.relation->second) b += to_big(rigged(q));
  CHECK(a == b);
  CHECK(res.relation->first != res.relation->second);

  const std::vector<std::uint64_t> too_small = {23, 29, 31, 37, 41, 43};
  CHECK_THROWS_AS((void)is_admissible(too_small, table()), Error);
  const std::vector<std::uint64_t> repeated = {29, 29, 31, 37, 41, 43};
  CHECK_THROWS_AS((void)is_admissible(repeated, table()), Error);
}

TEST_CASE("greedy admissible growth") {
  const auto cands = primes_in(23, 200);
  const AdmissibleSet s = grow_admissible(cands, 16, table());
  CHECK(s.certified);
  CHECK(s.primes.size() == 16);
}

TEST_CASE("dyadic tau primes") {
  const auto found = find_dyadic_tau_primes(20000, table(), sieve());
  for (const auto& [j, q] : found) {
    CHECK(sieve().is_prime(q));
    CHECK(mod_u64(table()(q), 8 * 691) == (1ull << j) % (8 * 691));
  }
}

TEST_CASE("q^11 from a synthetic relation") {
  // Provider whose values satisfy the six-five relation by construction.
  const std::vector<std::uint64_t> tilde = {29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
  const std::uint64_t q = 73;
  PrimeTauMap provider;
  BigInt five = 0;
  for (std::size_t i = 0; i < 11; ++i) {
    provider.set(tilde[i], BigInt(100 + 7 * i));
    if (i >= 6) five += 100 + 7 * i;
  }
  BigInt six = 0;
  for (std::size_t i = 0; i < 6; ++i) six += 100 + 7 * i;
  provider.set(q, six - five);
  CHECK(q11_from_relation(q, tilde, provider) == ipow(q, 11));

  provider.set(q, six - five + 1);
  try {
    (void)q11_from_relation(q, tilde, provider);
    FAIL("expected relation violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RelationViolated);
  }
  CHECK_THROWS_AS((void)q11_from_relation(29, tilde, provider), Error);
}

TEST_CASE("prime power sums") {
  const auto pool = primes_in(2, 113);
  const std::vector<std::uint64_t> pick = {3, 59, 97};
  BigInt n = 0;
  for (auto q : pick) n += ipow(q, 11);
  const auto sol = solve_prime_power_sum(n, 3, pool);
  REQUIRE(sol.has_value());
  CHECK(*sol == pick);
  CHECK(solve_prime_power_sum(ipow(7, 11), 1, pool) == std::vector<std::uint64_t>{7});
  CHECK_FALSE(solve_prime_power_sum(n + 1, 3, pool).has_value());
  CHECK(solve_prime_power_sum(0, 0, pool).has_value());
  CHECK_THROWS_AS((void)solve_prime_power_sum(n, 5, pool), Error);
}

TEST_CASE("integer index bound") {
  CHECK(integer_index_bound(0, 15) == 15);
  CHECK(integer_index_bound(1, 15) == 30);
  CHECK(integer_index_bound(2048, 15) == 75);  // 2048^{2/11} = 4
  CHECK(integer_index_bound(-2048, 1) == 5);
}

TEST_CASE("integer representation") {
  const RepresentationParams params;
  for (std::int64_t n : {0, 1, -1, 2, 24, -370944, 9999, -10000, 123456789}) {
    const SumCertificate c = represent_integer(n, params, table());
    CHECK(tau_sum(c.plus) == n);
    CHECK(!c.plus.empty());
    CHECK(c.meta.max_index <= integer_index_bound(n, 15));
    CHECK(verify_integer_certificate(c, table(), sieve()));
  }
  SumCertificate c = represent_integer(5000, params, table());
  c.plus.back() += 1;
  fill_sum_meta(c, table());
  CHECK_FALSE(verify_integer_certificate(c, table(), sieve()));
}

TEST_CASE("integer representation limits") {
  RepresentationParams tight;
  tight.max_terms = 2;
  try {
    (void)represent_integer(9999, tight, table());
    FAIL("expected infeasible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Infeasible);
  }
  const TauTable small = build_tau_table_series(20);
  CHECK_THROWS_AS((void)represent_integer(BigInt(1) << 60, RepresentationParams{}, small),
                  Error);
}

TEST_CASE("integer verifier rejects inconsistent meta") {
  SumCertificate c = represent_integer(77, RepresentationParams{}, table());
  REQUIRE(verify_integer_certificate(c, table(), sieve()));
  SumCertificate wrong_count = c;
  wrong_count.meta.term_count += 1;
  CHECK_FALSE(verify_integer_certificate(wrong_count, table(), sieve()));
  SumCertificate wrong_bound = c;
  wrong_bound.meta.index_bound = c.meta.max_index - 1;
  CHECK_FALSE(verify_integer_certificate(wrong_bound, table(), sieve()));
  SumCertificate empty;
  CHECK_FALSE(verify_integer_certificate(empty, table(), sieve()));
}
