#include "tauw/modp_basis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "tauw/error.hpp"

namespace tauw {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out))
    throw Error(ErrorKind::Capacity, "index product overflows 64 bits");
  return out;
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return (a + p - b % p) % p;
}

void require_modulus(std::uint64_t p, const SpfSieve& sieve) {
  if (p <= 23 || !sieve.is_prime(p))
    throw Error(ErrorKind::InvalidInput,
                "modulus must be a prime above 23, got " + std::to_string(p));
}

// tau(q) mod p and tau(q^2) mod p from the table.
std::uint64_t tau_mod(const TauTable& table, std::uint64_t q, std::uint64_t p) {
  return mod_u64(table(q), p);
}

std::uint64_t tau_square_mod(const TauTable& table, std::uint64_t q, std::uint64_t p) {
  const std::uint64_t t = tau_mod(table, q, p);
  return submod(t * t % p, pow_mod(q, 11, p), p);
}

WitnessedResidue single(std::uint64_t residue, std::uint64_t index, std::uint64_t prime) {
  return WitnessedResidue{residue, {index}, {}, {prime}};
}

std::uint64_t max_index_of(const std::vector<std::uint64_t>& plus,
                           const std::vector<std::uint64_t>& minus) {
  std::uint64_t out = 0;
  for (std::uint64_t n : plus) out = std::max(out, n);
  for (std::uint64_t n : minus) out = std::max(out, n);
  return out;
}

std::vector<std::uint64_t> residues_of(const std::vector<WitnessedResidue>& set) {
  std::vector<std::uint64_t> out;
  out.reserve(set.size());
  for (const auto& w : set) out.push_back(w.residue);
  return out;
}

bool product_exceeds(std::size_t a, std::size_t b, std::uint64_t p) {
  return std::uint64_t(a) * std::uint64_t(b) > 2 * p;
}

}  // namespace

WitnessedResidue multiply(const WitnessedResidue& x, const WitnessedResidue& y,
                          std::uint64_t p) {
  WitnessedResidue out;
  out.residue = std::uint64_t(u128(x.residue) * y.residue % p);
  auto expand = [&](const std::vector<std::uint64_t>& left, bool left_plus,
                    const std::vector<std::uint64_t>& right, bool right_plus) {
    for (std::uint64_t a : left)
      for (std::uint64_t c : right) {
        if (std::gcd(a, c) != 1)
          throw Error(ErrorKind::InternalConsistency,
                      "witnesses " + std::to_string(a) + " and " + std::to_string(c) +
                          " are not coprime");
        (left_plus == right_plus ? out.plus : out.minus).push_back(checked_mul(a, c));
      }
  };
  expand(x.plus, true, y.plus, true);
  expand(x.plus, true, y.minus, false);
  expand(x.minus, false, y.plus, true);
  expand(x.minus, false, y.minus, false);
  out.support = x.support;
  out.support.insert(out.support.end(), y.support.begin(), y.support.end());
  return out;
}

// ---------------------------------------------------------------------------
// Product-set context for the +-32 representation

namespace {

ModpContext try_context(std::uint64_t p, std::span<const std::uint64_t> window,
                        const TauTable& table, bool allow_direct) {
  ModpContext ctx;
  ctx.p = p;
  ctx.window_hi = window.empty() ? 23 : window.back();
  ctx.window_primes = window.size();

  std::map<std::uint64_t, std::size_t> class_of;
  for (std::uint64_t q : window) {
    const std::uint64_t r = tau_mod(table, q, p);
    auto [it, inserted] = class_of.emplace(r, ctx.classes.size());
    if (inserted) ctx.classes.push_back(ResidueClass{r, {}, {}});
    ctx.classes[it->second].primes.push_back(q);
  }
  for (auto& cls : ctx.classes)
    cls.trimmed.assign(cls.primes.begin(), cls.primes.begin() + (cls.primes.size() / 4) * 4);

  const std::size_t nclasses = ctx.classes.size();
  if (allow_direct && nclasses * nclasses > 9 * p) {
    // More than 3 sqrt(p) classes: split the class representatives.
    ctx.branch = ContextBranch::Direct;
    const std::size_t half = nclasses / 2;
    for (std::size_t i = 0; i < nclasses; ++i) {
      const std::uint64_t q = ctx.classes[i].primes.front();
      (i < half ? ctx.x : ctx.y).push_back(single(ctx.classes[i].residue, q, q));
    }
  } else {
    ctx.branch = ContextBranch::Pairs;
    for (const auto& cls : ctx.classes) {
      const std::size_t npairs = cls.trimmed.size() / 2;
      for (std::size_t k = 0; k < npairs; ++k) {
        const PrimePair pair{cls.trimmed[2 * k], cls.trimmed[2 * k + 1]};
        (k < npairs / 2 ? ctx.j1 : ctx.j2).push_back(pair);
      }
    }
    auto build = [&](const std::vector<PrimePair>& pairs, std::vector<WitnessedResidue>& out) {
      std::set<std::uint64_t> seen;
      for (const auto& [q, q2] : pairs) {
        // tau(q q') - tau(q^2) with tau(q') = tau(q) mod p.
        const std::uint64_t r =
            submod(tau_mod(table, q, p) * tau_mod(table, q2, p) % p, tau_square_mod(table, q, p), p);
        if (!seen.insert(r).second) continue;
        out.push_back(WitnessedResidue{r, {checked_mul(q, q2)}, {checked_mul(q, q)}, {q, q2}});
      }
    };
    build(ctx.j1, ctx.x);
    build(ctx.j2, ctx.y);
  }
  return ctx;
}

}  // namespace

ModpContext build_context(std::uint64_t p, const TauTable& table, const SpfSieve& sieve,
                          const WindowPolicy& policy) {
  require_modulus(p, sieve);
  std::uint64_t cap = table.limit();
  if (policy.max_hi != 0) cap = std::min(cap, policy.max_hi);
  std::vector<std::uint64_t> candidates;
  for (std::uint64_t q : sieve.primes()) {
    if (q > cap) break;
    if (q > 23) candidates.push_back(q);
  }
  const double start_hi = policy.initial_factor * std::sqrt(double(p));
  std::size_t count = 0;
  while (count < candidates.size() && double(candidates[count]) <= start_hi) ++count;

  ModpContext ctx;
  for (; count <= candidates.size(); ++count) {
    ctx = try_context(p, std::span(candidates).first(count), table, policy.allow_direct);
    if (product_exceeds(ctx.x.size(), ctx.y.size(), p)) return ctx;
  }
  throw Error(ErrorKind::Infeasible,
              "prime window (23, " + std::to_string(cap) + "] exhausted with |X| = " +
                  std::to_string(ctx.x.size()) + ", |Y| = " + std::to_string(ctx.y.size()) +
                  ", need |X||Y| > " + std::to_string(2 * p));
}

std::vector<std::string> audit_context(const ModpContext& ctx) {
  std::vector<std::string> issues;
  const std::uint64_t p = ctx.p;
  if (!product_exceeds(ctx.x.size(), ctx.y.size(), p))
    issues.push_back("|X||Y| <= 2p");

  std::set<std::uint64_t> used;
  for (const auto* js : {&ctx.j1, &ctx.j2})
    for (const auto& [q, q2] : *js)
      for (std::uint64_t prime : {q, q2})
        if (!used.insert(prime).second)
          issues.push_back("prime " + std::to_string(prime) + " appears in two pairs");
  if (ctx.j1.size() != ctx.j2.size()) issues.push_back("|J1| != |J2|");

  std::set<std::uint64_t> x_support, y_support;
  for (const auto& w : ctx.x) x_support.insert(w.support.begin(), w.support.end());
  for (const auto& w : ctx.y) y_support.insert(w.support.begin(), w.support.end());
  for (std::uint64_t q : x_support)
    if (y_support.count(q)) issues.push_back("prime " + std::to_string(q) + " in X and Y");

  if (ctx.branch == ContextBranch::Pairs) {
    for (const auto* set : {&ctx.x, &ctx.y})
      for (const auto& w : *set) {
        if (w.support.size() != 2 || w.plus.size() != 1 || w.minus.size() != 1) {
          issues.push_back("malformed pair witness");
          continue;
        }
        const std::uint64_t q = w.support[0], q2 = w.support[1];
        if (w.plus[0] != q * q2 || w.minus[0] != q * q)
          issues.push_back("pair witness indices do not match primes");
        if (w.residue != pow_mod(q, 11, p))
          issues.push_back("element " + std::to_string(w.residue) + " is not " +
                           std::to_string(q) + "^11 mod p");
      }
    // q^11 takes each value for at most gcd(11, p - 1) residues q mod p.
    const std::uint64_t fibre = std::gcd<std::uint64_t>(11, p - 1);
    for (const auto* js : {&ctx.j1, &ctx.j2}) {
      std::map<std::uint64_t, std::set<std::uint64_t>> preimages;
      for (const auto& pair : *js)
        preimages[pow_mod(pair.first, 11, p)].insert(pair.first % p);
      for (const auto& [value, qs] : preimages)
        if (qs.size() > fibre)
          issues.push_back("value " + std::to_string(value) + " has " +
                           std::to_string(qs.size()) + " distinct preimages");
    }
  }
  return issues;
}

// ---------------------------------------------------------------------------
// Product cover

ProductCover::ProductCover(std::vector<std::uint64_t> x, std::vector<std::uint64_t> y,
                           std::uint64_t p)
    : p_(p), x_(std::move(x)), y_(std::move(y)) {
  if (p < 2) throw Error(ErrorKind::InvalidInput, "modulus below 2");
  for (const auto* set : {&x_, &y_}) {
    std::set<std::uint64_t> distinct;
    for (std::uint64_t v : *set) {
      if (v >= p) throw Error(ErrorKind::InvalidInput, "residue outside [0, p)");
      if (!distinct.insert(v).second)
        throw Error(ErrorKind::InvalidInput, "product sets must hold distinct residues");
    }
  }
  if (!product_exceeds(x_.size(), y_.size(), p))
    throw Error(ErrorKind::InvalidInput, "product cover requires |X||Y| > 2p, got " +
                                             std::to_string(x_.size() * y_.size()));

  std::vector<std::int64_t> witness(p, -1);
  for (std::size_t i = 0; i < x_.size(); ++i)
    for (std::size_t j = 0; j < y_.size(); ++j) {
      const auto v = std::uint64_t(u128(x_[i]) * y_[j] % p);
      if (witness[v] >= 0) continue;
      witness[v] = std::int64_t(products_.size());
      products_.emplace_back(i, j);
      product_values_.push_back(v);
    }

  levels_.assign(kDepth, std::vector<Step>(p));
  std::vector<std::uint64_t> frontier{0};  // S_0 = {0}
  for (unsigned k = 1; k <= kDepth; ++k) {
    auto& level = levels_[k - 1];
    std::vector<std::uint64_t> next;
    for (std::uint64_t r : frontier)
      for (std::size_t t = 0; t < product_values_.size(); ++t) {
        const std::uint64_t w = (r + product_values_[t]) % p;
        if (level[w].prev >= 0) continue;
        level[w] = Step{std::int64_t(r), std::uint32_t(t)};
        next.push_back(w);
      }
    frontier = std::move(next);
  }
}

bool ProductCover::covered(unsigned k, std::uint64_t r) const {
  if (k < 1 || k > kDepth || r >= p_) return false;
  return levels_[k - 1][r].prev >= 0;
}

std::size_t ProductCover::level_size(unsigned k) const {
  if (k < 1 || k > kDepth) return 0;
  return std::size_t(std::count_if(levels_[k - 1].begin(), levels_[k - 1].end(),
                                   [](const Step& s) { return s.prev >= 0; }));
}

std::optional<unsigned> ProductCover::depth_of(std::uint64_t lambda) const {
  for (unsigned k = 1; k <= kDepth; ++k)
    if (covered(k, lambda)) return k;
  return std::nullopt;
}

std::vector<std::pair<std::size_t, std::size_t>> ProductCover::decompose(
    std::uint64_t lambda) const {
  const auto depth = depth_of(lambda);
  if (!depth)
    throw Error(ErrorKind::LemmaViolation,
                "residue " + std::to_string(lambda) + " not covered by 8-fold product sums");
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::uint64_t r = lambda;
  for (unsigned k = *depth; k >= 1; --k) {
    const Step& step = levels_[k - 1][r];
    out.push_back(products_[step.product]);
    r = std::uint64_t(step.prev);
  }
  return out;
}

ProductCover product_set_cover(const std::vector<std::uint64_t>& x,
                               const std::vector<std::uint64_t>& y, std::uint64_t p) {
  ProductCover cover(x, y, p);
  if (!cover.covers_all(ProductCover::kDepth))
    throw Error(ErrorKind::LemmaViolation,
                "8-fold product sums cover " +
                    std::to_string(cover.level_size(ProductCover::kDepth)) + " of " +
                    std::to_string(p) + " residues");
  return cover;
}

// ---------------------------------------------------------------------------
// Certificates

const char* to_string(ModpKind kind) {
  switch (kind) {
    case ModpKind::Pm32: return "pm32";
    case ModpKind::Sum96: return "sum96";
    case ModpKind::Sum16: return "sum16";
  }
  return "unknown";
}

ModpKind parse_modp_kind(const std::string& text) {
  if (text == "pm32") return ModpKind::Pm32;
  if (text == "sum96") return ModpKind::Sum96;
  if (text == "sum16") return ModpKind::Sum16;
  throw Error(ErrorKind::InvalidInput, "unknown certificate kind '" + text + "'");
}

namespace {

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

void require_lambda(std::uint64_t lambda, std::uint64_t p) {
  if (lambda >= p)
    throw Error(ErrorKind::InvalidInput,
                "lambda " + std::to_string(lambda) + " outside [0, " + std::to_string(p) + ")");
}

}  // namespace

Pm32Solver::Pm32Solver(ModpContext ctx)
    : ctx_(std::move(ctx)),
      cover_(product_set_cover(residues_of(ctx_.x), residues_of(ctx_.y), ctx_.p)) {}

ModpCertificate Pm32Solver::pm32(std::uint64_t lambda) const {
  require_lambda(lambda, ctx_.p);
  ModpCertificate cert;
  cert.kind = ModpKind::Pm32;
  cert.p = ctx_.p;
  cert.lambda = lambda;
  const auto pairs = cover_.decompose(lambda);
  for (const auto& [i, j] : pairs) {
    const WitnessedResidue term = multiply(ctx_.x[i], ctx_.y[j], ctx_.p);
    cert.plus.insert(cert.plus.end(), term.plus.begin(), term.plus.end());
    cert.minus.insert(cert.minus.end(), term.minus.begin(), term.minus.end());
  }
  cert.meta.products = unsigned(pairs.size());
  cert.meta.branch = ctx_.branch == ContextBranch::Direct ? "direct" : "pairs";
  cert.meta.bound_formula = "hi^4";
  cert.meta.window_hi = ctx_.window_hi;
  cert.meta.index_bound = checked_pow(ctx_.window_hi, 4);
  cert.meta.max_index = max_index_of(cert.plus, cert.minus);
  return cert;
}

ModpCertificate Pm32Solver::sum96(std::uint64_t lambda) const {
  const std::uint64_t p = ctx_.p;
  if (370944 % p == 0)
    throw Error(ErrorKind::UnsupportedModulus,
                std::to_string(p) + " divides 370944 = -tau(12)");
  require_lambda(lambda, p);
  // tau(12) = -370944.
  const std::uint64_t tau12 = submod(0, 370944 % p, p);
  const std::uint64_t scaled = std::uint64_t(u128(lambda) * inv_mod(tau12, p) % p);
  const ModpCertificate base = pm32(scaled);

  ModpCertificate cert;
  cert.kind = ModpKind::Sum96;
  cert.p = p;
  cert.lambda = lambda;
  for (std::uint64_t n : base.plus) cert.plus.push_back(checked_mul(12, n));
  // -tau(12) tau(m) = (tau(27) + tau(55) + tau(69) + tau(90) + tau(105)) tau(m).
  for (std::uint64_t m : base.minus)
    for (std::uint64_t b : {27, 55, 69, 90, 105}) cert.plus.push_back(checked_mul(b, m));
  cert.meta = base.meta;
  cert.meta.bound_formula = "105*hi^4";
  cert.meta.index_bound = checked_mul(105, base.meta.index_bound);
  cert.meta.max_index = max_index_of(cert.plus, cert.minus);
  return cert;
}

ModpCertificate represent_pm32(std::uint64_t lambda, const ModpContext& ctx) {
  return Pm32Solver(ctx).pm32(lambda);
}

ModpCertificate represent_sum96(std::uint64_t lambda, const ModpContext& ctx) {
  if (370944 % ctx.p == 0)
    throw Error(ErrorKind::UnsupportedModulus,
                std::to_string(ctx.p) + " divides 370944 = -tau(12)");
  return Pm32Solver(ctx).sum96(lambda);
}

// ---------------------------------------------------------------------------
// A, B, C sets for pure 16-term sums

AbcContext build_abc_context(std::uint64_t p, std::uint64_t hi, const TauTable& table,
                             const SpfSieve& sieve, const AbcOptions& options) {
  require_modulus(p, sieve);
  if (hi > table.limit())
    throw Error(ErrorKind::OutOfRange, "window bound " + std::to_string(hi) +
                                           " exceeds table limit");
  AbcContext ctx;
  ctx.p = p;
  ctx.window_lo = p / 2;
  ctx.window_hi = hi;

  std::map<std::uint64_t, std::vector<std::uint64_t>> classes;
  for (std::uint64_t q : sieve.primes()) {
    if (q > hi) break;
    if (q > ctx.window_lo) classes[tau_mod(table, q, p)].push_back(q);
  }
  ctx.distinct_classes = classes.size();
  if (classes.size() < 2)
    throw Error(ErrorKind::DegenerateContext,
                "tau(q) mod " + std::to_string(p) + " takes " + std::to_string(classes.size()) +
                    " value(s) on the window");
  for (const auto& [residue, primes] : classes)
    if (primes.size() > ctx.a0_count) {
      ctx.a0 = residue;
      ctx.a0_count = primes.size();
    }

  for (const auto& [residue, primes] : classes)
    if (residue != ctx.a0) ctx.a.push_back(single(residue, primes.front(), primes.front()));

  std::set<std::uint64_t> seen;
  for (std::uint64_t q : classes[ctx.a0]) {
    // tau(q^2) = a0^2 - q^11 (mod p)
    const std::uint64_t r = submod(ctx.a0 * ctx.a0 % p, pow_mod(q, 11, p), p);
    if (seen.insert(r).second) ctx.b.push_back(single(r, checked_mul(q, q), q));
  }

  seen.clear();
  const std::uint64_t small_cap = std::min(options.small_prime_cap, ctx.window_lo);
  for (std::uint64_t r : sieve.primes()) {
    if (r > small_cap) break;
    const std::uint64_t t1 = tau_mod(table, r, p);
    const std::uint64_t t2 = tau_square_mod(table, r, p);
    if (seen.insert(t1).second) ctx.c.push_back(single(t1, r, r));
    if (seen.insert(t2).second) ctx.c.push_back(single(t2, r * r, r));
  }
  return ctx;
}

const char* to_string(Sum16Branch branch) {
  switch (branch) {
    case Sum16Branch::SplitA: return "split-A";
    case Sum16Branch::BTimesC: return "B*C";
    case Sum16Branch::BTimesSum: return "B*(A+C)";
    case Sum16Branch::BTimesProduct: return "B*(AC)";
  }
  return "unknown";
}

namespace {

std::vector<WitnessedResidue> combine(const std::vector<WitnessedResidue>& a,
                                      const std::vector<WitnessedResidue>& c, std::uint64_t p,
                                      bool sum) {
  std::vector<WitnessedResidue> out;
  std::set<std::uint64_t> seen;
  for (const auto& x : a)
    for (const auto& y : c) {
      if (sum) {
        const std::uint64_t r = (x.residue + y.residue) % p;
        if (!seen.insert(r).second) continue;
        WitnessedResidue w{r, {x.plus[0], y.plus[0]}, {}, {x.support[0], y.support[0]}};
        out.push_back(std::move(w));
      } else {
        const auto r = std::uint64_t(u128(x.residue) * y.residue % p);
        if (seen.count(r)) continue;
        seen.insert(r);
        out.push_back(multiply(x, y, p));
      }
    }
  return out;
}

std::uint64_t max_witness_index(const std::vector<WitnessedResidue>& set) {
  std::uint64_t out = 1;
  for (const auto& w : set) out = std::max(out, max_index_of(w.plus, w.minus));
  return out;
}

}  // namespace

Sum16Solver::Sum16Solver(std::uint64_t p, const TauTable& table, const SpfSieve& sieve,
                         const AbcOptions& options) {
  require_modulus(p, sieve);
  std::uint64_t cap = table.limit();
  if (options.max_hi != 0) cap = std::min(cap, options.max_hi);
  if (cap < p)
    throw Error(ErrorKind::OutOfRange, "table must cover p = " + std::to_string(p));

  std::vector<std::uint64_t> his{p};
  for (std::uint64_t q : sieve.primes()) {
    if (q > cap) break;
    if (q > p) his.push_back(q);
  }

  std::string last;
  for (std::uint64_t hi : his) {
    AbcContext ctx;
    try {
      ctx = build_abc_context(p, hi, table, sieve, options);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateContext) throw;
      last = e.what();
      continue;
    }
    const std::size_t half = ctx.a.size() / 2;
    const double lp = std::log(double(p));
    const std::uint64_t h = hi;
    if (product_exceeds(half, ctx.a.size() - half, p)) {
      branch_ = Sum16Branch::SplitA;
      x_.assign(ctx.a.begin(), ctx.a.begin() + std::ptrdiff_t(half));
      y_.assign(ctx.a.begin() + std::ptrdiff_t(half), ctx.a.end());
      index_bound_ = checked_mul(h, h);
      formula_ = "p^2";
    } else if (product_exceeds(ctx.b.size(), ctx.c.size(), p)) {
      branch_ = Sum16Branch::BTimesC;
      x_ = ctx.b;
      y_ = ctx.c;
      const std::uint64_t r = max_witness_index(ctx.c);
      index_bound_ = checked_mul(checked_mul(h, h), r);
      formula_ = "p^(2+eps)";
      epsilon_ = std::log(double(r)) / lp;
    } else {
      auto sums = combine(ctx.a, ctx.c, p, true);
      auto prods = combine(ctx.a, ctx.c, p, false);
      const bool use_sum = sums.size() >= prods.size();
      auto& t = use_sum ? sums : prods;
      if (!product_exceeds(ctx.b.size(), t.size(), p)) {
        last = "window (" + std::to_string(ctx.window_lo) + ", " + std::to_string(hi) +
               "]: |A| = " + std::to_string(ctx.a.size()) + ", |B| = " +
               std::to_string(ctx.b.size()) + ", |C| = " + std::to_string(ctx.c.size()) +
               ", |T| = " + std::to_string(t.size());
        continue;
      }
      const std::uint64_t r = max_witness_index(ctx.c);
      x_ = ctx.b;
      y_ = std::move(t);
      if (use_sum) {
        branch_ = Sum16Branch::BTimesSum;
        index_bound_ = checked_mul(checked_mul(h, h), std::max(h, r));
        formula_ = "p^3";
      } else {
        branch_ = Sum16Branch::BTimesProduct;
        index_bound_ = checked_mul(checked_mul(checked_mul(h, h), h), r);
        formula_ = "p^(3+eps)";
      }
      epsilon_ = std::log(double(r)) / lp;
    }
    ctx_ = std::move(ctx);
    cover_.emplace(product_set_cover(residues_of(x_), residues_of(y_), p));
    return;
  }
  throw Error(ErrorKind::Infeasible, "no branch reached |X||Y| > 2p up to window bound " +
                                         std::to_string(cap) + "; " + last);
}

ModpCertificate Sum16Solver::sum16(std::uint64_t lambda) const {
  require_lambda(lambda, ctx_.p);
  ModpCertificate cert;
  cert.kind = ModpKind::Sum16;
  cert.p = ctx_.p;
  cert.lambda = lambda;
  const auto pairs = cover_->decompose(lambda);
  for (const auto& [i, j] : pairs) {
    const WitnessedResidue term = multiply(x_[i], y_[j], ctx_.p);
    if (!term.minus.empty())
      throw Error(ErrorKind::InternalConsistency, "pure-sum branch produced a minus term");
    cert.plus.insert(cert.plus.end(), term.plus.begin(), term.plus.end());
  }
  cert.meta.products = unsigned(pairs.size());
  cert.meta.branch = to_string(branch_);
  cert.meta.bound_formula = formula_;
  cert.meta.window_hi = ctx_.window_hi;
  cert.meta.epsilon = epsilon_;
  cert.meta.index_bound = index_bound_;
  cert.meta.max_index = max_index_of(cert.plus, cert.minus);
  return cert;
}

ModpCertificate represent_sum16(std::uint64_t lambda, std::uint64_t p, const TauTable& table,
                                const SpfSieve& sieve) {
  return Sum16Solver(p, table, sieve).sum16(lambda);
}

// ---------------------------------------------------------------------------
// Verification and scans

bool verify_modp_certificate(const ModpCertificate& cert, const PrimeTauMap& primes,
                             const SpfSieve& sieve) {
  const std::uint64_t p = cert.p;
  try {
    if (p < 2 || !sieve.is_prime(p) || cert.lambda >= p) return false;
  } catch (const Error&) {
    return false;
  }
  switch (cert.kind) {
    case ModpKind::Pm32:
      if (cert.plus.size() > 16 || cert.minus.size() > 16) return false;
      for (const auto* list : {&cert.plus, &cert.minus})
        for (std::uint64_t n : *list)
          if (!coprime_to_23_factorial(n)) return false;
      break;
    case ModpKind::Sum96:
      if (cert.plus.size() > 96 || !cert.minus.empty()) return false;
      break;
    case ModpKind::Sum16:
      if (cert.plus.size() > 16 || !cert.minus.empty()) return false;
      break;
  }
  for (const auto* list : {&cert.plus, &cert.minus})
    for (std::uint64_t n : *list)
      if (n == 0) return false;
  const std::uint64_t max_index = max_index_of(cert.plus, cert.minus);
  if (max_index != cert.meta.max_index || max_index > cert.meta.index_bound) return false;

  MultiplicativeTau tau(primes, sieve);
  std::uint64_t acc = 0;
  try {
    for (std::uint64_t n : cert.plus) acc = (acc + mod_u64(tau(n), p)) % p;
    for (std::uint64_t n : cert.minus) acc = submod(acc, mod_u64(tau(n), p), p);
  } catch (const Error&) {
    return false;
  }
  return acc == cert.lambda;
}

bool verify_modp_certificate(const ModpCertificate& cert, const TauTable& table,
                             const SpfSieve& sieve) {
  return verify_modp_certificate(cert, PrimeTauMap::from_table(table, sieve), sieve);
}

std::optional<unsigned> basis_order_scan(std::uint64_t p, std::uint64_t n_bound,
                                         const TauTable& table) {
  if (p < 2) throw Error(ErrorKind::InvalidInput, "modulus below 2");
  if (n_bound < 1 || n_bound > table.limit())
    throw Error(ErrorKind::OutOfRange, "n_bound " + std::to_string(n_bound) +
                                           " outside table limit " +
                                           std::to_string(table.limit()));
  std::vector<char> base(p, 0);
  for (std::uint64_t n = 1; n <= n_bound; ++n) base[mod_u64(table(n), p)] = 1;
  std::vector<std::uint64_t> generators;
  for (std::uint64_t r = 0; r < p; ++r)
    if (base[r]) generators.push_back(r);

  // reach = sums of at most k generators.
  std::vector<char> reach = base;
  for (unsigned k = 1; k <= 96; ++k) {
    if (std::all_of(reach.begin(), reach.end(), [](char c) { return c != 0; })) return k;
    std::vector<char> next = reach;
    for (std::uint64_t r = 0; r < p; ++r) {
      if (!reach[r]) continue;
      for (std::uint64_t g : generators) next[(r + g) % p] = 1;
    }
    reach = std::move(next);
  }
  return std::nullopt;
}

}  // namespace tauw
