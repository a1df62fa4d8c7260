"""Quartic del Pezzo surfaces and fibrations over P^1 in exact arithmetic.

Pencils, models, quadrics and reports are plain dicts with the same JSON
layout as the dp4kit command-line tool (see docs/formats.md).
"""

from ._core import (
    SCHEMA,
    BudgetError,
    MathError,
    ValidationError,
    base_points,
    cases,
    census,
    chi_via_koszul,
    class_arith,
    classify,
    discriminant,
    expected_dims,
    fiber_point_count,
    figure1,
    generate_model,
    invariants,
    lattice_summary,
    lines,
    numerology,
    rr_quartic_count,
    xi,
)

__all__ = [
    "SCHEMA",
    "BudgetError",
    "MathError",
    "ValidationError",
    "base_points",
    "cases",
    "census",
    "chi_via_koszul",
    "class_arith",
    "classify",
    "discriminant",
    "expected_dims",
    "fiber_point_count",
    "figure1",
    "generate_model",
    "invariants",
    "lattice_summary",
    "lines",
    "numerology",
    "rr_quartic_count",
    "xi",
]
