#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tauw/divisor_arith.hpp"
#include "tauw/tau_core.hpp"

namespace tauw {

/// A residue mod p with the integers whose tau-values produce it:
/// residue = sum tau(plus) - sum tau(minus) (mod p).
struct WitnessedResidue {
  std::uint64_t residue = 0;
  std::vector<std::uint64_t> plus;
  std::vector<std::uint64_t> minus;
  // Prime witnesses behind the origin integers (for disjointness checks).
  std::vector<std::uint64_t> support;
};

/// Product of two witnessed residues, expanded through tau(a) tau(c) = tau(ac).
/// Throws internal-consistency if an origin pair shares a prime factor.
WitnessedResidue multiply(const WitnessedResidue& x, const WitnessedResidue& y,
                          std::uint64_t p);

struct PrimePair {
  std::uint64_t first = 0;   // q
  std::uint64_t second = 0;  // q'
};

struct ResidueClass {
  std::uint64_t residue = 0;             // tau(q) mod p
  std::vector<std::uint64_t> primes;     // all window primes in the class
  std::vector<std::uint64_t> trimmed;    // largest multiple-of-4 prefix
};

enum class ContextBranch { Direct, Pairs };

struct WindowPolicy {
  // First window is (23, initial_factor * sqrt(p)]; grows one prime at a time.
  double initial_factor = 4.0;
  // 0 means the table limit.
  std::uint64_t max_hi = 0;
  // When false the class-representative split is never taken, so the
  // trimmed-pair construction is used at every window size.
  bool allow_direct = true;
};

/// Witnessed product sets X, Y for the +-32 representation mod p.
struct ModpContext {
  std::uint64_t p = 0;
  std::uint64_t window_lo = 23;
  std::uint64_t window_hi = 0;
  std::size_t window_primes = 0;
  ContextBranch branch = ContextBranch::Pairs;
  std::vector<ResidueClass> classes;
  std::vector<PrimePair> j1, j2;
  std::vector<WitnessedResidue> x, y;
};

ModpContext build_context(std::uint64_t p, const TauTable& table, const SpfSieve& sieve,
                          const WindowPolicy& policy = {});

/// Structural invariants: pair disjointness, X/Y witness congruences,
/// multiplicity of q^11 values, |X||Y| > 2p. Returns a message per failure.
std::vector<std::string> audit_context(const ModpContext& ctx);

/// Iterated sumsets S_1 = {xy}, S_{k+1} = S_k + S_1 over Z_p with one
/// back-pointer per newly covered residue.
class ProductCover {
 public:
  static constexpr unsigned kDepth = 8;

  /// x and y hold distinct residues; requires |x||y| > 2p.
  ProductCover(std::vector<std::uint64_t> x, std::vector<std::uint64_t> y, std::uint64_t p);

  std::uint64_t p() const { return p_; }
  bool covered(unsigned k, std::uint64_t r) const;
  std::size_t level_size(unsigned k) const;
  bool covers_all(unsigned k) const { return level_size(k) == p_; }

  /// Least k with lambda in S_k.
  std::optional<unsigned> depth_of(std::uint64_t lambda) const;
  /// (x index, y index) pairs whose products sum to lambda, shortest first.
  std::vector<std::pair<std::size_t, std::size_t>> decompose(std::uint64_t lambda) const;

 private:
  struct Step {
    std::int64_t prev = -1;   // residue in S_{k-1}, or -1 if uncovered
    std::uint32_t product = 0;  // index into products_
  };

  std::uint64_t p_;
  std::vector<std::uint64_t> x_, y_;
  std::vector<std::pair<std::size_t, std::size_t>> products_;  // witness per product value
  std::vector<std::uint64_t> product_values_;
  std::vector<std::vector<Step>> levels_;  // levels_[k-1]
};

/// Builds the cover and raises lemma-violation if S_8 != Z_p.
ProductCover product_set_cover(const std::vector<std::uint64_t>& x,
                               const std::vector<std::uint64_t>& y, std::uint64_t p);

enum class ModpKind { Pm32, Sum96, Sum16 };

const char* to_string(ModpKind kind);
ModpKind parse_modp_kind(const std::string& text);

struct ModpMeta {
  std::uint64_t max_index = 0;
  std::uint64_t index_bound = 0;
  unsigned products = 0;
  std::string branch;
  std::string bound_formula;
  std::uint64_t window_hi = 0;
  double epsilon = 0.0;
};

/// sum tau(plus) - sum tau(minus) = lambda (mod p).
struct ModpCertificate {
  ModpKind kind = ModpKind::Pm32;
  std::uint64_t p = 0;
  std::uint64_t lambda = 0;
  std::vector<std::uint64_t> plus;
  std::vector<std::uint64_t> minus;
  ModpMeta meta;
};

/// Context plus its cover; one build serves every lambda.
class Pm32Solver {
 public:
  explicit Pm32Solver(ModpContext ctx);

  const ModpContext& context() const { return ctx_; }
  const ProductCover& cover() const { return cover_; }

  ModpCertificate pm32(std::uint64_t lambda) const;
  /// Requires p not dividing 370944.
  ModpCertificate sum96(std::uint64_t lambda) const;

 private:
  ModpContext ctx_;
  ProductCover cover_;
};

ModpCertificate represent_pm32(std::uint64_t lambda, const ModpContext& ctx);
ModpCertificate represent_sum96(std::uint64_t lambda, const ModpContext& ctx);

struct AbcOptions {
  // Small primes r for the C set satisfy r <= min(small_prime_cap, p / 2).
  std::uint64_t small_prime_cap = 50;
  // The A'/B window starts at (p/2, p] and grows one prime at a time up to
  // this bound until a branch reaches |X||Y| > 2p. 0 means the table limit.
  std::uint64_t max_hi = 0;
};

struct AbcContext {
  std::uint64_t p = 0;
  std::uint64_t window_lo = 0;  // floor(p / 2)
  std::uint64_t window_hi = 0;
  std::uint64_t a0 = 0;         // most frequent tau(q) mod p in the window
  std::size_t a0_count = 0;
  std::size_t distinct_classes = 0;  // |A'|
  std::vector<WitnessedResidue> a, b, c;
};

/// Sets A, B, C for the window (p/2, hi]. Throws degenerate-context if
/// |A'| < 2.
AbcContext build_abc_context(std::uint64_t p, std::uint64_t hi, const TauTable& table,
                             const SpfSieve& sieve, const AbcOptions& options = {});

enum class Sum16Branch { SplitA, BTimesC, BTimesSum, BTimesProduct };

const char* to_string(Sum16Branch branch);

class Sum16Solver {
 public:
  /// Grows the window until a branch succeeds; infeasible-context otherwise.
  Sum16Solver(std::uint64_t p, const TauTable& table, const SpfSieve& sieve,
              const AbcOptions& options = {});

  const AbcContext& context() const { return ctx_; }
  Sum16Branch branch() const { return branch_; }
  std::uint64_t index_bound() const { return index_bound_; }
  const std::string& bound_formula() const { return formula_; }
  double epsilon() const { return epsilon_; }

  ModpCertificate sum16(std::uint64_t lambda) const;

 private:
  AbcContext ctx_;
  Sum16Branch branch_ = Sum16Branch::SplitA;
  std::vector<WitnessedResidue> x_, y_;
  std::optional<ProductCover> cover_;
  std::uint64_t index_bound_ = 0;
  std::string formula_;
  double epsilon_ = 0.0;
};

ModpCertificate represent_sum16(std::uint64_t lambda, std::uint64_t p, const TauTable& table,
                                const SpfSieve& sieve);

/// Recomputes every tau(index) multiplicatively, then checks the congruence,
/// the term caps, coprimality to 23! (pm32) and the recorded index bound.
bool verify_modp_certificate(const ModpCertificate& cert, const PrimeTauMap& primes,
                             const SpfSieve& sieve);
bool verify_modp_certificate(const ModpCertificate& cert, const TauTable& table,
                             const SpfSieve& sieve);

/// Least k such that every residue mod p is a sum of at most k values
/// tau(n) mod p with n <= n_bound; nullopt if k = 96 does not suffice.
std::optional<unsigned> basis_order_scan(std::uint64_t p, std::uint64_t n_bound,
                                         const TauTable& table);

}  // namespace tauw
