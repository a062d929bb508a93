#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tauw/certificate_io.hpp"
#include "tauw/error.hpp"
#include "tauw/identity_suite.hpp"
#include "tauw/modp_basis.hpp"
#include "tauw/tau_core.hpp"
#include "tauw/waring_int.hpp"

namespace py = pybind11;
using namespace tauw;

namespace {

py::int_ to_py(const BigInt& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.str().c_str(), nullptr, 10));
}

py::int_ to_py(i128 v) { return to_py(to_big(v)); }

BigInt from_py(const py::handle& v) {
  return BigInt(py::str(py::int_(py::reinterpret_borrow<py::object>(v))).cast<std::string>());
}

py::object to_dict(const json& doc) {
  return py::module_::import("json").attr("loads")(doc.dump());
}

json from_dict(const py::object& obj) {
  return json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

TauMethod parse_method(const std::string& name) {
  if (name == "series") return TauMethod::Series;
  if (name == "niebur") return TauMethod::Niebur;
  if (name == "sigma") return TauMethod::SigmaFormula;
  if (name == "multiplicative") return TauMethod::Multiplicative;
  throw Error(ErrorKind::InvalidInput, "unknown method '" + name + "'");
}

TauTable build(std::uint32_t limit, const std::string& method) {
  switch (parse_method(method)) {
    case TauMethod::Series: return build_tau_table_series(limit);
    case TauMethod::Niebur: return build_tau_table_niebur(limit);
    case TauMethod::SigmaFormula: return build_tau_table_sigma_formula(limit);
    case TauMethod::Multiplicative: {
      const TauTable base = build_tau_table_series(limit);
      const SpfSieve sieve(std::max<std::uint32_t>(limit, 2));
      return build_tau_table_multiplicative(limit, PrimeTauMap::from_table(base, sieve), sieve);
    }
  }
  throw Error(ErrorKind::InvalidInput, "unknown method");
}

SpfSieve sieve_for(const TauTable& table) {
  return SpfSieve(std::max<std::uint32_t>(table.limit(), 2));
}

Report run_suite(const std::string& name, const TauTable& table, std::uint64_t limit,
                 std::uint32_t cutoff) {
  const SpfSieve sieve = sieve_for(table);
  if (limit == 0) limit = table.limit();
  if (name == "mod691") return check_mod691(1, limit, table, sieve);
  if (name == "mod256") return check_mod256_odd(1, limit, table, sieve);
  if (name == "deligne") return check_deligne(limit, table, sieve);
  if (name == "hecke") return check_hecke(table, sieve);
  if (name == "multiplicativity") return check_multiplicativity(table);
  if (name == "zero-sums") return check_zero_sums(table);
  if (name == "reference") return check_reference_values(table);
  if (name == "agreement") return check_agreement(table, cutoff);
  throw Error(ErrorKind::InvalidInput, "unknown suite '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_tauw, m) {
  m.doc() = "Ramanujan tau tables, identity sweeps and verifiable tau-sum certificates";

  static py::handle error = py::exception<Error>(m, "TauwError").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error(py::str(e.what()));
      exc.attr("kind") = to_string(e.kind());
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<TauTable>(m, "TauTable")
      .def_property_readonly("limit", &TauTable::limit)
      .def_property_readonly("method", [](const TauTable& t) { return to_string(t.method()); })
      .def("__len__", &TauTable::limit)
      .def("__getitem__", [](const TauTable& t, std::uint64_t n) { return to_py(t(n)); })
      .def("values", [](const TauTable& t) {
        py::list out;
        for (i128 v : t.values()) out.append(to_py(v));
        return out;
      })
      .def("save", [](const TauTable& t, const std::string& path) { save_table(path, t); })
      .def("__eq__", [](const TauTable& a, const TauTable& b) { return a == b; });

  m.def("build_table", &build, py::arg("limit"), py::arg("method") = "series",
        "tau(1..limit) by series, niebur, sigma or multiplicative");
  m.def("load_table", [](const std::string& path) { return load_table(path); });
  m.attr("MAX_TABLE_LIMIT") = kMaxTableLimit;

  m.def("sigma", [](unsigned s, std::uint64_t n) { return to_py(sigma(s, n)); });
  m.def("tau_prime_power", [](const py::int_& tau_q, std::uint64_t q, unsigned alpha) {
    return to_py(tau_prime_power(from_py(tau_q), q, alpha));
  });

  m.def("run_suite",
        [](const std::string& name, const TauTable& table, std::uint64_t limit,
           std::uint32_t cutoff) {
          const Report r = run_suite(name, table, limit, cutoff);
          py::list lines;
          for (const auto& v : r.violations())
            lines.append("CHECK " + v.check + " n=" + std::to_string(v.n) +
                         " expected=" + v.expected + " got=" + v.got);
          return py::make_tuple(r.checked(), lines);
        },
        py::arg("name"), py::arg("table"), py::arg("limit") = 0, py::arg("cutoff") = 2000,
        "Returns (checks, violation lines).");

  m.def("digits", [](std::int64_t r) {
    const DigitVector d = digits_mod_370944(r);
    return py::make_tuple(d.r5, d.r4, d.r3, d.r2, d.r1);
  });
  m.def("pad_count", &pad_count_6x7y);
  m.def("represent_residue_198", [](std::int64_t r, const TauTable& table) {
    return to_dict(to_json(represent_residue_198(r, table)));
  });
  m.def("index_bound", [](const py::int_& n, double c) {
    return integer_index_bound(from_py(n), c);
  });
  m.def("represent_integer",
        [](const py::int_& n, const TauTable& table, double c_bound, std::size_t max_terms) {
          RepresentationParams params;
          params.c_bound = c_bound;
          params.max_terms = max_terms;
          return to_dict(to_json(represent_integer(from_py(n), params, table)));
        },
        py::arg("n"), py::arg("table"), py::arg("c_bound") = 15.0,
        py::arg("max_terms") = 74000);
  m.def("solve_prime_power_sum",
        [](const py::int_& n, std::size_t s, const std::vector<std::uint64_t>& pool) {
          return solve_prime_power_sum(from_py(n), s, pool);
        });

  m.def("modp_certificate",
        [](std::uint64_t p, std::uint64_t lambda, const std::string& mode,
           const TauTable& table) {
          const ModpKind kind = parse_modp_kind(mode);
          const SpfSieve sieve = sieve_for(table);
          if (kind == ModpKind::Sum16)
            return to_dict(to_json(Sum16Solver(p, table, sieve).sum16(lambda)));
          if (kind == ModpKind::Sum96 && 370944 % p == 0)
            throw Error(ErrorKind::UnsupportedModulus, std::to_string(p) + " divides 370944");
          const Pm32Solver solver(build_context(p, table, sieve));
          return to_dict(to_json(kind == ModpKind::Pm32 ? solver.pm32(lambda)
                                                        : solver.sum96(lambda)));
        },
        py::arg("p"), py::arg("lam"), py::arg("mode"), py::arg("table"));
  m.def("basis_order_scan", &basis_order_scan);

  m.def("check_certificate", [](const py::object& doc, const TauTable& table) {
    const SpfSieve sieve = sieve_for(table);
    const CheckOutcome out =
        check_certificate(from_dict(doc), PrimeTauMap::from_table(table, sieve), sieve);
    return py::make_tuple(out.ok, out.kind, out.summary);
  });
}
