"""Ramanujan tau tables, identity sweeps and verifiable tau-sum certificates."""

from ._tauw import (
    MAX_TABLE_LIMIT,
    TauTable,
    TauwError,
    basis_order_scan,
    build_table,
    check_certificate,
    digits,
    index_bound,
    load_table,
    modp_certificate,
    pad_count,
    represent_integer,
    represent_residue_198,
    run_suite,
    sigma,
    solve_prime_power_sum,
    tau_prime_power,
)

__all__ = [
    "MAX_TABLE_LIMIT",
    "TauTable",
    "TauwError",
    "basis_order_scan",
    "build_table",
    "check_certificate",
    "digits",
    "index_bound",
    "load_table",
    "modp_certificate",
    "pad_count",
    "represent_integer",
    "represent_residue_198",
    "run_suite",
    "sigma",
    "solve_prime_power_sum",
    "tau_prime_power",
]
