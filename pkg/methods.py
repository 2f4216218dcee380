"""
Method registry: run several independent degree computations and demand agreement.

Tags: orbit, symmetric, fg, jacobi, permanent, scalar, closed-form.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Callable, Dict, List, Sequence

from closed_forms import closed_form_degree
from degree_engine import (
    DEFAULT_SEED,
    DegreeReport,
    InconsistencyError,
    checked_degree,
    build_report,
    degree,
    degree_from_fg,
    degree_symmetric,
    fg_polynomial,
)
from gl_symfun import degree_via_jacobi, degree_via_permanent, degree_via_scalar_product
from root_systems import RootSystem, RootSystemError, Weight, dominant_conjugate, is_dominant

logger = logging.getLogger(__name__)

METHODS = ("orbit", "symmetric", "fg", "jacobi", "permanent", "scalar", "closed-form")


def _gl_sizes(rs: RootSystem, method: str) -> List[int]:
    if not all(f.label == "GL" for f in rs.factors):
        raise RootSystemError(f"method {method!r} needs GL factors only, got {rs.name}")
    return [f.rank for f in rs.factors]


def _single_gl(rs: RootSystem, method: str) -> int:
    sizes = _gl_sizes(rs, method)
    if len(sizes) != 1:
        raise RootSystemError(f"method {method!r} needs a single GL(n), got {rs.name}")
    return sizes[0]


def _closed_form(rs: RootSystem, lam: Weight) -> Fraction:
    value = closed_form_degree(rs, lam)
    if value is None:
        raise RootSystemError(f"no closed formula covers {lam} in {rs.name}")
    return value


def _runners(rs: RootSystem, lam: Weight, seed: int, jobs: int) -> Dict[str, Callable[[], Fraction]]:
    return {
        "orbit": lambda: Fraction(degree(rs, lam, seed, jobs).degree),
        "symmetric": lambda: Fraction(degree_symmetric(rs, lam, seed, jobs).degree),
        "fg": lambda: Fraction(degree_from_fg(rs, fg_polynomial(rs, seed, jobs), lam).degree),
        "jacobi": lambda: degree_via_jacobi(_single_gl(rs, "jacobi"), lam),
        "permanent": lambda: degree_via_permanent(_gl_sizes(rs, "permanent"), lam),
        "scalar": lambda: degree_via_scalar_product(_single_gl(rs, "scalar"), lam),
        "closed-form": lambda: _closed_form(rs, lam),
    }


def normalize_weight(rs: RootSystem, lam: Weight) -> Weight:
    """Reflect into the dominant chamber (the degree only depends on the orbit)."""
    if is_dominant(rs, lam):
        return lam
    dominant, _ = dominant_conjugate(rs, lam)
    logger.warning(f"{lam} is not dominant for {rs.name}; using its dominant conjugate {dominant}")
    return dominant


def run_methods(
    rs: RootSystem,
    lam: Weight,
    methods: Sequence[str] = ("orbit",),
    seed: int = DEFAULT_SEED,
    jobs: int = 1,
) -> DegreeReport:
    """
    Run each requested method on the same weight.

    Returns:
        DegreeReport listing every method that ran; any disagreement raises
        InconsistencyError naming all values.
    """
    if not methods:
        raise ValueError("at least one method is required")
    unknown = [m for m in methods if m not in METHODS]
    if unknown:
        raise ValueError(f"unknown method(s) {', '.join(unknown)} (choose from {', '.join(METHODS)})")
    lam = normalize_weight(rs, lam)
    runners = _runners(rs, lam, seed, jobs)
    values: Dict[str, Fraction] = {}
    for m in dict.fromkeys(methods):
        values[m] = runners[m]()
        logger.info(f"{m}: degree {values[m]}")
    if len(set(values.values())) != 1:
        detail = ", ".join(f"{m}={v}" for m, v in values.items())
        logger.error(f"methods disagree for {lam} in {rs.name}: {detail}")
        raise InconsistencyError(f"methods disagree for {lam} in {rs.name}: {detail}")
    value = next(iter(values.values()))
    seeds = (seed, seed + 1) if set(values) & {"orbit", "symmetric", "fg"} else ()
    return build_report(rs, lam, checked_degree(value, "+".join(values)), tuple(values), seeds)
