#include "tauw/waring_int.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>

#include "tauw/error.hpp"
#include "tauw/identity_suite.hpp"

namespace tauw {

std::int64_t DigitVector::value() const {
  return 84480LL * r5 + 4830LL * r4 + 252LL * r3 - 24LL * r2 + r1;
}

bool DigitVector::within_bounds() const {
  return r5 <= 4 && r4 <= 17 && r3 <= 20 && r2 <= 11 && r1 <= 23 && total() <= 75;
}

DigitVector digits_mod_370944(std::int64_t r) {
  if (r < 0 || r >= kResidueModulus)
    throw Error(ErrorKind::InvalidInput,
                "residue " + std::to_string(r) + " outside [0, 370944)");
  DigitVector d;
  d.r5 = unsigned(r / 84480);
  const std::int64_t rest4 = r % 84480;
  d.r4 = unsigned(rest4 / 4830);
  const std::int64_t rest3 = rest4 % 4830;
  // Round up past tau(3) and tau(2), then correct downward.
  d.r3 = unsigned((rest3 + 251) / 252);
  const std::int64_t rest2 = 252LL * d.r3 - rest3;
  d.r2 = unsigned((rest2 + 23) / 24);
  d.r1 = unsigned(24LL * d.r2 - rest2);
  return d;
}

std::pair<std::size_t, std::size_t> pad_count_6x7y(std::int64_t gap) {
  if (gap >= 0) {
    if (gap % 6 == 0) return {std::size_t(gap / 6), 0};
    for (std::int64_t x = 0; 6 * x <= gap; ++x)
      if ((gap - 6 * x) % 7 == 0) return {std::size_t(x), std::size_t((gap - 6 * x) / 7)};
  }
  throw Error(ErrorKind::Infeasible, std::to_string(gap) + " is not of the form 6x + 7y");
}

void fill_sum_meta(SumCertificate& cert, const TauTable& table) {
  cert.meta.term_count = cert.plus.size();
  cert.meta.max_index = 0;
  cert.meta.max_abs_tau = 0;
  for (std::uint64_t n : cert.plus) {
    cert.meta.max_index = std::max(cert.meta.max_index, n);
    BigInt v = abs(to_big(table(n)));
    if (v > cert.meta.max_abs_tau) cert.meta.max_abs_tau = std::move(v);
  }
}

SumCertificate represent_residue_198(std::int64_t r, const TauTable& table) {
  const DigitVector d = digits_mod_370944(r);
  SumCertificate cert;
  cert.target = r;
  auto& out = cert.plus;
  out.reserve(kResidueTermCount);
  const std::pair<std::uint64_t, unsigned> digit_terms[] = {
      {8, d.r5}, {5, d.r4}, {3, d.r3}, {2, d.r2}, {1, d.r1}};
  for (auto [index, count] : digit_terms) out.insert(out.end(), count, index);
  const auto [six, seven] = pad_count_6x7y(std::int64_t(kResidueTermCount - d.total()));
  for (std::size_t i = 0; i < six; ++i)
    out.insert(out.end(), zero_block_six().indices.begin(), zero_block_six().indices.end());
  for (std::size_t i = 0; i < seven; ++i)
    out.insert(out.end(), zero_block_seven().indices.begin(),
               zero_block_seven().indices.end());
  cert.meta.index_bound = kResidueIndexBound;
  cert.meta.max_terms = kResidueTermCount;
  fill_sum_meta(cert, table);
  return cert;
}

AdmissibilityResult is_admissible(std::span<const std::uint64_t> primes,
                                  const TauTable& table) {
  if (primes.size() > 16)
    throw Error(ErrorKind::Capacity, "admissibility check limited to 16 primes");
  std::vector<std::uint64_t> sorted(primes.begin(), primes.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorKind::InvalidInput, "repeated prime in admissibility set");
  for (std::uint64_t q : sorted) {
    if (q <= 23)
      throw Error(ErrorKind::InvalidInput, "admissible sets use primes > 23, got " +
                                               std::to_string(q));
    if (q > table.limit())
      throw Error(ErrorKind::OutOfRange, "prime " + std::to_string(q) + " beyond table");
  }

  AdmissibilityResult result;
  const std::size_t n = sorted.size();
  if (n < 6) return result;
  std::vector<std::pair<i128, unsigned>> sums;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != 6) continue;
    i128 s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) s += table(sorted[i]);
    sums.emplace_back(s, mask);
  }
  std::sort(sums.begin(), sums.end());
  for (std::size_t i = 1; i < sums.size(); ++i) {
    if (sums[i].first != sums[i - 1].first) continue;
    auto tuple_of = [&](unsigned mask) {
      SixTuple t{};
      std::size_t k = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (mask & (1u << j)) t[k++] = sorted[j];
      return t;
    };
    result.admissible = false;
    result.relation = std::make_pair(tuple_of(sums[i - 1].second), tuple_of(sums[i].second));
    break;
  }
  return result;
}

AdmissibleSet grow_admissible(std::span<const std::uint64_t> candidates, std::size_t cap,
                              const TauTable& table) {
  AdmissibleSet out;
  for (std::uint64_t q : candidates) {
    if (out.primes.size() >= cap) break;
    out.primes.push_back(q);
    if (!is_admissible(out.primes, table).admissible) out.primes.pop_back();
  }
  out.certified = is_admissible(out.primes, table).admissible;
  return out;
}

std::map<int, std::uint64_t> find_dyadic_tau_primes(std::uint64_t bound,
                                                    const TauTable& table,
                                                    const SpfSieve& sieve) {
  constexpr std::uint64_t kModulus = 8 * 691;
  std::map<int, std::uint64_t> found;
  const std::uint64_t top = std::min<std::uint64_t>(bound, table.limit());
  for (std::uint64_t q : sieve.primes()) {
    if (q > top || found.size() == 12) break;
    const std::uint64_t r = mod_u64(table(q), kModulus);
    for (int j = 1; j <= 12; ++j)
      if (!found.count(j) && r == (std::uint64_t(1) << j) % kModulus) found[j] = q;
  }
  return found;
}

BigInt q11_from_relation(std::uint64_t q, std::span<const std::uint64_t> tilde,
                         const PrimeTauMap& provider) {
  if (tilde.size() != 11)
    throw Error(ErrorKind::InvalidInput, "relation needs exactly 11 primes");
  std::vector<std::uint64_t> sorted(tilde.begin(), tilde.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorKind::InvalidInput, "relation primes must be distinct");
  if (std::binary_search(sorted.begin(), sorted.end(), q))
    throw Error(ErrorKind::InvalidInput, "q must not occur among the relation primes");

  const BigInt& tau_q = provider.at(q);
  BigInt lhs = 0, rhs = tau_q;
  for (std::size_t i = 0; i < 6; ++i) lhs += provider.at(tilde[i]);
  for (std::size_t i = 6; i < 11; ++i) rhs += provider.at(tilde[i]);
  if (lhs != rhs)
    throw Error(ErrorKind::RelationViolated,
                "six-term sum differs from five-term sum plus tau(q) for q = " +
                    std::to_string(q));

  // tau(t q) = tau(t) tau(q) for distinct primes t, q.
  BigInt value = -tau_prime_power(tau_q, q, 2);
  for (std::size_t i = 0; i < 11; ++i) {
    const BigInt term = provider.at(tilde[i]) * tau_q;
    value += i < 6 ? term : BigInt(-term);
  }
  if (value != ipow(q, 11))
    throw Error(ErrorKind::InternalConsistency, "relation did not reduce to q^11");
  return value;
}

std::optional<std::vector<std::uint64_t>> solve_prime_power_sum(
    const BigInt& target, std::size_t s, std::span<const std::uint64_t> pool) {
  if (s > 4) throw Error(ErrorKind::Capacity, "prime power solver limited to s <= 4");
  if (pool.size() > 200) throw Error(ErrorKind::Capacity, "pool limited to 200 primes");
  if (s == 0) {
    if (target == 0) return std::vector<std::uint64_t>{};
    return std::nullopt;
  }
  std::vector<BigInt> powers;
  powers.reserve(pool.size());
  for (std::uint64_t q : pool) powers.push_back(ipow(q, 11));

  // Visits every nondecreasing index tuple of the given length.
  auto for_each_tuple = [&](std::size_t len, auto&& visit) {
    std::vector<std::size_t> idx(len, 0);
    if (pool.empty()) return;
    while (true) {
      if (visit(idx)) return;
      std::size_t pos = len;
      while (pos > 0 && idx[pos - 1] + 1 == pool.size()) --pos;
      if (pos == 0) return;
      ++idx[pos - 1];
      for (std::size_t k = pos; k < len; ++k) idx[k] = idx[pos - 1];
    }
  };
  auto sum_of = [&](const std::vector<std::size_t>& idx) {
    BigInt s = 0;
    for (std::size_t i : idx) s += powers[i];
    return s;
  };

  const std::size_t left = s / 2, right = s - left;
  std::map<BigInt, std::vector<std::size_t>> halves;
  if (left == 0) {
    halves.emplace(BigInt(0), std::vector<std::size_t>{});
  } else {
    for_each_tuple(left, [&](const std::vector<std::size_t>& idx) {
      halves.emplace(sum_of(idx), idx);
      return false;
    });
  }
  std::optional<std::vector<std::uint64_t>> answer;
  for_each_tuple(right, [&](const std::vector<std::size_t>& idx) {
    auto it = halves.find(target - sum_of(idx));
    if (it == halves.end()) return false;
    std::vector<std::uint64_t> primes;
    for (std::size_t i : it->second) primes.push_back(pool[i]);
    for (std::size_t i : idx) primes.push_back(pool[i]);
    std::sort(primes.begin(), primes.end());
    answer = std::move(primes);
    return true;
  });
  return answer;
}

std::uint64_t integer_index_bound(const BigInt& target, double c_bound) {
  if (!(c_bound > 0)) throw Error(ErrorKind::InvalidInput, "c_bound must be positive");
  const BigInt mag = abs(target);
  double root = 0.0;
  if (mag != 0) root = std::exp(2.0 / 11.0 * std::log(mag.convert_to<double>()));
  const double bound = std::floor(c_bound * (root + 1.0));
  if (bound >= 1.8e19) return UINT64_MAX;
  return std::uint64_t(bound);
}

namespace {

constexpr std::int64_t kFinisherWindow = 1'000'000;

/// Shortest sums of tau(1..k) reaching every integer in [-W, W], with the
/// walk confined to the window.
class Finisher {
 public:
  explicit Finisher(std::vector<std::int64_t> gens) : gens_(std::move(gens)) {
    const std::size_t size = 2 * kFinisherWindow + 1;
    dist_.assign(size, kUnreached);
    via_.assign(size, 0);
    std::vector<std::int32_t> queue;
    queue.reserve(size);
    dist_[kFinisherWindow] = 0;
    queue.push_back(0);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::int64_t v = queue[head];
      const std::uint32_t d = dist_[v + kFinisherWindow];
      for (std::size_t g = 0; g < gens_.size(); ++g) {
        const std::int64_t w = v + gens_[g];
        if (w < -kFinisherWindow || w > kFinisherWindow) continue;
        auto& slot = dist_[w + kFinisherWindow];
        if (slot != kUnreached) continue;
        slot = d + 1;
        via_[w + kFinisherWindow] = std::uint8_t(g);
        queue.push_back(std::int32_t(w));
      }
    }
  }

  const std::vector<std::int64_t>& gens() const { return gens_; }

  bool reachable(std::int64_t v) const {
    return v >= -kFinisherWindow && v <= kFinisherWindow &&
           dist_[v + kFinisherWindow] != kUnreached;
  }
  std::uint32_t distance(std::int64_t v) const { return dist_[v + kFinisherWindow]; }

  /// Generator indices (1-based tau arguments) summing to v.
  std::vector<std::uint64_t> path(std::int64_t v) const {
    std::vector<std::uint64_t> out;
    while (v != 0) {
      const std::uint8_t g = via_[v + kFinisherWindow];
      out.push_back(g + 1);
      v -= gens_[g];
    }
    return out;
  }

 private:
  static constexpr std::uint32_t kUnreached = UINT32_MAX;
  std::vector<std::int64_t> gens_;
  std::vector<std::uint32_t> dist_;
  std::vector<std::uint8_t> via_;
};

std::shared_ptr<const Finisher> finisher_for(std::vector<std::int64_t> gens) {
  static std::mutex mutex;
  static std::map<std::vector<std::int64_t>, std::shared_ptr<const Finisher>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(gens);
  if (it == cache.end())
    it = cache.emplace(gens, std::make_shared<const Finisher>(gens)).first;
  return it->second;
}

[[noreturn]] void infeasible(const BigInt& target, std::uint64_t bound, const std::string& why) {
  throw Error(ErrorKind::Infeasible, "no representation of " + target.str() +
                                         " with indices <= " + std::to_string(bound) + ": " +
                                         why);
}

}  // namespace

SumCertificate represent_integer(const BigInt& target, const RepresentationParams& params,
                                 const TauTable& table) {
  const std::uint64_t bound = integer_index_bound(target, params.c_bound);
  if (bound < 1) infeasible(target, bound, "index bound below 1");
  if (bound > table.limit())
    throw Error(ErrorKind::OutOfRange, "index bound " + std::to_string(bound) +
                                           " exceeds table limit " +
                                           std::to_string(table.limit()));

  SumCertificate cert;
  cert.target = target;
  BigInt rem = target;

  if (abs(rem) > kFinisherWindow) {
    std::vector<std::pair<i128, std::uint64_t>> values;
    values.reserve(bound);
    for (std::uint64_t n = 1; n <= bound; ++n) values.emplace_back(table(n), n);
    std::sort(values.begin(), values.end());
    while (abs(rem) > kFinisherWindow) {
      std::size_t pick;
      if (!fits_i128(rem)) {
        pick = rem > 0 ? values.size() - 1 : 0;
      } else {
        const i128 r = rem.convert_to<i128>();
        auto it = std::lower_bound(values.begin(), values.end(),
                                   std::make_pair(r, std::uint64_t(0)));
        pick = std::size_t(it - values.begin());
        if (pick == values.size()) --pick;
        if (pick > 0) {
          const BigInt below = abs(rem - to_big(values[pick - 1].first));
          if (below < abs(rem - to_big(values[pick].first))) --pick;
        }
      }
      BigInt next = rem - to_big(values[pick].first);
      if (abs(next) >= abs(rem)) infeasible(target, bound, "greedy descent stalled");
      rem = std::move(next);
      cert.plus.push_back(values[pick].second);
      if (cert.plus.size() > params.max_terms) infeasible(target, bound, "term budget exhausted");
    }
  }

  std::vector<std::int64_t> gens;
  for (std::uint64_t n = 1; n <= std::min<std::uint64_t>(bound, 10); ++n)
    gens.push_back(std::int64_t(table(n)));
  const auto finisher = finisher_for(std::move(gens));
  const auto r = rem.convert_to<std::int64_t>();

  if (r == 0 && cert.plus.empty()) {
    // Smallest nonempty zero sum: one generator g followed by a path to -tau(g).
    std::optional<std::size_t> best;
    for (std::size_t g = 0; g < finisher->gens().size(); ++g) {
      const std::int64_t back = -finisher->gens()[g];
      if (!finisher->reachable(back)) continue;
      if (!best || finisher->distance(back) < finisher->distance(-finisher->gens()[*best]))
        best = g;
    }
    if (!best) infeasible(target, bound, "no zero sum within bounds");
    cert.plus.push_back(*best + 1);
    const auto tail = finisher->path(-finisher->gens()[*best]);
    cert.plus.insert(cert.plus.end(), tail.begin(), tail.end());
  } else {
    if (!finisher->reachable(r)) infeasible(target, bound, "remainder unreachable");
    const auto tail = finisher->path(r);
    cert.plus.insert(cert.plus.end(), tail.begin(), tail.end());
  }
  if (cert.plus.size() > params.max_terms) infeasible(target, bound, "term budget exhausted");

  std::sort(cert.plus.begin(), cert.plus.end());
  cert.meta.index_bound = bound;
  cert.meta.max_terms = params.max_terms;
  fill_sum_meta(cert, table);
  return cert;
}

bool verify_integer_certificate(const SumCertificate& cert, const PrimeTauMap& primes,
                                const SpfSieve& sieve) {
  const auto& meta = cert.meta;
  if (cert.plus.empty() || meta.term_count != cert.plus.size()) return false;
  if (meta.max_terms && cert.plus.size() > *meta.max_terms) return false;
  std::map<std::uint64_t, std::size_t> counts;
  for (std::uint64_t n : cert.plus) {
    if (n == 0) return false;
    ++counts[n];
  }
  const std::uint64_t max_index = counts.rbegin()->first;
  if (meta.max_index != max_index) return false;
  if (meta.index_bound && max_index > *meta.index_bound) return false;
  if (max_index > sieve.limit()) return false;

  MultiplicativeTau tau(primes, sieve);
  BigInt sum = 0, max_abs = 0;
  try {
    for (const auto& [n, count] : counts) {
      const BigInt v = tau(n);
      sum += v * count;
      max_abs = std::max(max_abs, BigInt(abs(v)));
    }
  } catch (const Error&) {
    return false;
  }
  return sum == cert.target && max_abs == meta.max_abs_tau;
}

bool verify_integer_certificate(const SumCertificate& cert, const TauTable& table,
                                const SpfSieve& sieve) {
  return verify_integer_certificate(cert, PrimeTauMap::from_table(table, sieve), sieve);
}

}  // namespace tauw
