#include "tauw/certificate_io.hpp"

#include <map>

#include "tauw/error.hpp"

namespace tauw {

namespace {

constexpr std::uint64_t kSafeJsonInteger = std::uint64_t(1) << 53;

json index_value(std::uint64_t n) {
  if (n > kSafeJsonInteger) return std::to_string(n);
  return n;
}

json index_list(const std::vector<std::uint64_t>& v) {
  json out = json::array();
  for (std::uint64_t n : v) out.push_back(index_value(n));
  return out;
}

[[noreturn]] void malformed(const std::string& why) {
  throw Error(ErrorKind::Parse, "malformed certificate: " + why);
}

const json& field(const json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) malformed(std::string("missing '") + name + "'");
  return doc.at(name);
}

std::uint64_t read_index(const json& v) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    const auto s = v.get<std::int64_t>();
    if (s < 0) malformed("negative index");
    return std::uint64_t(s);
  }
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      malformed("bad index string '" + s + "'");
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      malformed("index out of range '" + s + "'");
    }
  }
  malformed("index must be an integer or decimal string");
}

std::vector<std::uint64_t> read_list(const json& v) {
  if (!v.is_array()) malformed("index list must be an array");
  std::vector<std::uint64_t> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(read_index(e));
  return out;
}

BigInt read_big(const json& v) {
  if (v.is_number_integer()) return BigInt(v.get<std::int64_t>());
  if (!v.is_string()) malformed("big integer must be a decimal string");
  const auto& s = v.get_ref<const std::string&>();
  const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
    malformed("bad decimal '" + s + "'");
  return BigInt(s);
}

}  // namespace

json to_json(const SumCertificate& cert) {
  json meta = {{"term_count", cert.meta.term_count},
               {"max_index", index_value(cert.meta.max_index)},
               {"max_abs_tau", cert.meta.max_abs_tau.str()}};
  if (cert.meta.index_bound) meta["index_bound"] = index_value(*cert.meta.index_bound);
  if (cert.meta.max_terms) meta["max_terms"] = *cert.meta.max_terms;
  return {{"kind", "integer_sum"},
          {"target", cert.target.str()},
          {"plus", index_list(cert.plus)},
          {"meta", std::move(meta)}};
}

json to_json(const ModpCertificate& cert) {
  return {{"kind", to_string(cert.kind)},
          {"p", cert.p},
          {"lambda", cert.lambda},
          {"plus", index_list(cert.plus)},
          {"minus", index_list(cert.minus)},
          {"meta",
           {{"max_index", index_value(cert.meta.max_index)},
            {"index_bound", index_value(cert.meta.index_bound)},
            {"products", cert.meta.products},
            {"branch", cert.meta.branch},
            {"bound_formula", cert.meta.bound_formula},
            {"window_hi", cert.meta.window_hi},
            {"epsilon", cert.meta.epsilon}}}};
}

SumCertificate sum_certificate_from_json(const json& doc) {
  if (field(doc, "kind") != "integer_sum") malformed("kind is not integer_sum");
  SumCertificate cert;
  cert.target = read_big(field(doc, "target"));
  cert.plus = read_list(field(doc, "plus"));
  const json& meta = field(doc, "meta");
  cert.meta.term_count = read_index(field(meta, "term_count"));
  cert.meta.max_index = read_index(field(meta, "max_index"));
  cert.meta.max_abs_tau = read_big(field(meta, "max_abs_tau"));
  if (meta.contains("index_bound")) cert.meta.index_bound = read_index(meta.at("index_bound"));
  if (meta.contains("max_terms")) cert.meta.max_terms = read_index(meta.at("max_terms"));
  return cert;
}

ModpCertificate modp_certificate_from_json(const json& doc) {
  const json& kind = field(doc, "kind");
  if (!kind.is_string()) malformed("kind must be a string");
  ModpCertificate cert;
  try {
    cert.kind = parse_modp_kind(kind.get<std::string>());
  } catch (const Error& e) {
    malformed(e.what());
  }
  cert.p = read_index(field(doc, "p"));
  cert.lambda = read_index(field(doc, "lambda"));
  cert.plus = read_list(field(doc, "plus"));
  cert.minus = doc.contains("minus") ? read_list(doc.at("minus")) : std::vector<std::uint64_t>{};
  const json& meta = field(doc, "meta");
  cert.meta.max_index = read_index(field(meta, "max_index"));
  cert.meta.index_bound = read_index(field(meta, "index_bound"));
  if (meta.contains("products")) cert.meta.products = unsigned(read_index(meta.at("products")));
  if (meta.contains("branch") && meta.at("branch").is_string())
    cert.meta.branch = meta.at("branch").get<std::string>();
  if (meta.contains("bound_formula") && meta.at("bound_formula").is_string())
    cert.meta.bound_formula = meta.at("bound_formula").get<std::string>();
  if (meta.contains("window_hi")) cert.meta.window_hi = read_index(meta.at("window_hi"));
  if (meta.contains("epsilon") && meta.at("epsilon").is_number())
    cert.meta.epsilon = meta.at("epsilon").get<double>();
  return cert;
}

json parse_certificate(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("certificate is not valid JSON: ") + e.what());
  }
}

CheckOutcome check_certificate(const json& doc, const PrimeTauMap& primes,
                               const SpfSieve& sieve) {
  const json& kind = field(doc, "kind");
  if (!kind.is_string()) malformed("kind must be a string");
  CheckOutcome out;
  out.kind = kind.get<std::string>();
  MultiplicativeTau tau(primes, sieve);
  if (out.kind == "integer_sum") {
    const SumCertificate cert = sum_certificate_from_json(doc);
    out.ok = verify_integer_certificate(cert, primes, sieve);
    try {
      BigInt sum = 0;
      for (std::uint64_t n : cert.plus) sum += tau(n);
      out.summary = "sum=" + sum.str() + " target=" + cert.target.str();
    } catch (const Error& e) {
      out.summary = e.what();
    }
    return out;
  }
  const ModpCertificate cert = modp_certificate_from_json(doc);
  out.ok = verify_modp_certificate(cert, primes, sieve);
  try {
    if (cert.p < 2) malformed("modulus below 2");
    BigInt acc = 0;
    for (std::uint64_t n : cert.plus) acc += tau(n);
    for (std::uint64_t n : cert.minus) acc -= tau(n);
    out.summary = "residue=" + std::to_string(mod_u64(acc, cert.p)) +
                  " lambda=" + std::to_string(cert.lambda) + " p=" + std::to_string(cert.p);
  } catch (const Error& e) {
    out.summary = e.what();
  }
  return out;
}

}  // namespace tauw
