"""Symmetric Markov coding of Fuchsian groups."""

from ._core import (
    ActionError,
    Coding,
    OracleError,
    ParryError,
    Scheme,
    SchemeError,
    action_names,
    catalog_names,
    catalog_scheme,
    parse_scheme,
    run_suite,
    simulate,
    sphere_sizes,
    spherical_sum,
    suite_names,
    thickened_path,
)

__all__ = [
    "ActionError",
    "Coding",
    "OracleError",
    "ParryError",
    "Scheme",
    "SchemeError",
    "action_names",
    "catalog_names",
    "catalog_scheme",
    "parse_scheme",
    "run_suite",
    "simulate",
    "sphere_sizes",
    "spherical_sum",
    "suite_names",
    "thickened_path",
]
