"""Trigonometric WDVV prepotentials for crystallographic root systems."""

from ._core import (
    ChamberViolation,
    DegenerateRank,
    DomainError,
    Error,
    InadmissibleRank,
    NearSingular,
    UsageError,
    canonical_constant,
    coth,
    dunkl,
    f,
    gamma_from_c,
    gamma_scan,
    root_system,
    run_cli,
    table_systems,
    trilog,
    verify,
)

__all__ = [
    "ChamberViolation",
    "DegenerateRank",
    "DomainError",
    "Error",
    "InadmissibleRank",
    "NearSingular",
    "UsageError",
    "canonical_constant",
    "coth",
    "dunkl",
    "f",
    "gamma_from_c",
    "gamma_scan",
    "root_system",
    "run_cli",
    "table_systems",
    "trilog",
    "verify",
]
