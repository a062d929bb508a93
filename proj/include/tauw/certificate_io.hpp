#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "tauw/modp_basis.hpp"
#include "tauw/waring_int.hpp"

namespace tauw {

using nlohmann::json;

// Integers above 2^53 are written as decimal strings; readers accept both.
json to_json(const SumCertificate& cert);
json to_json(const ModpCertificate& cert);

SumCertificate sum_certificate_from_json(const json& doc);
ModpCertificate modp_certificate_from_json(const json& doc);

/// Throws a parse error for malformed or truncated text.
json parse_certificate(std::string_view text);

struct CheckOutcome {
  bool ok = false;
  std::string kind;
  std::string summary;  // recomputed sum or residue
};

/// Dispatches on "kind" and runs the matching independent verifier.
CheckOutcome check_certificate(const json& doc, const PrimeTauMap& primes,
                               const SpfSieve& sieve);

}  // namespace tauw
