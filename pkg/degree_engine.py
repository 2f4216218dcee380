"""
Degree engine: exact evaluation of the equivariant class of a discriminant.

- Orbit formula: E(t,u) = -sum over mu in W.lam of (mu+u) prod_{beta in T_mu} (mu+beta+u)/(-beta)
- Symmetric formula: the same class as a signed average over all of W
- deg = -(E(t,1) - E(t,0)), i.e. the class at L = 0, u = -1
- F_G: the universal degree polynomial in fundamental-weight coordinates

Every value is computed at two seeded generic points and must agree; on a
disagreement a third point decides, otherwise InconsistencyError.
"""
from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from multiprocessing import Pool
from typing import Any, Callable, Dict, List, Sequence, Tuple, TypeVar

import numpy as np

from exact_algebra import MultiPoly, as_integer, format_rational, to_rational
from root_systems import (
    PairingSign,
    RootSystem,
    RootSystemError,
    Weight,
    WeightError,
    fundamental_weights,
    pairing_sign,
    require_dominant,
    stabilizer_order,
    weyl_group,
    weyl_orbit,
    y_coordinates,
)

logger = logging.getLogger(__name__)

DEFAULT_SEED = int(os.getenv("DUALDEG_SEED", "0").strip())
DEFAULT_JOBS = int(os.getenv("DUALDEG_JOBS", "1").strip())
POINT_RANGE = int(os.getenv("DUALDEG_POINT_RANGE", "1000000").strip())
REJECTION_BUDGET = 64

T = TypeVar("T")


class InconsistencyError(RuntimeError):
    """Independent evaluations disagree, or a degree came out non-integral or negative."""


class NonGenericPointError(ArithmeticError):
    """A root vanishes at the evaluation point."""


# ---------------- data ----------------

@dataclass(frozen=True)
class TangentData:
    t_set: Tuple[Weight, ...]
    o_set: Tuple[Weight, ...]
    epsilon: int
    stabilizer_order: int

    @property
    def is_regular(self) -> bool:
        return not self.o_set


@dataclass(frozen=True)
class GenericPoint:
    coords: Tuple[Fraction, ...]
    seed: int

    def __call__(self, v: Weight) -> Fraction:
        return v.evaluate(self.coords)

    def scaled(self, c: int) -> "GenericPoint":
        return GenericPoint(tuple(c * x for x in self.coords), self.seed)

    def shifted(self, direction: Weight) -> "GenericPoint":
        return GenericPoint(tuple(x + d for x, d in zip(self.coords, direction.coords)), self.seed)


def _json_number(x: Fraction) -> Any:
    n = as_integer(x)
    return n if n is not None else format_rational(x)


@dataclass(frozen=True)
class DegreeReport:
    group: str
    weight: Weight
    weight_y: Tuple[Fraction, ...]
    degree: int
    epsilon: int
    stabilizer_order: int
    methods: Tuple[str, ...]
    seeds: Tuple[int, ...] = ()

    @property
    def is_hypersurface(self) -> bool:
        return self.degree > 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group": self.group,
            "weight_L": [_json_number(c) for c in self.weight.coords],
            "weight_y": [_json_number(c) for c in self.weight_y],
            "degree": self.degree,
            "hypersurface": self.is_hypersurface,
            "epsilon": self.epsilon,
            "stabilizer_order": self.stabilizer_order,
            "methods": list(self.methods),
            "seeds": list(self.seeds),
        }


@dataclass(frozen=True)
class FgPolynomial:
    group: str
    in_y: MultiPoly
    in_x: MultiPoly = field(repr=False)

    def render(self, basis: str = "x") -> str:
        poly = self.in_x if basis == "x" else self.in_y
        return poly.to_string([f"{basis}{i + 1}" for i in range(poly.nvars)])


def degree_report_json(report: DegreeReport) -> str:
    return json.dumps(report.to_dict(), sort_keys=True)


# ---------------- helpers ----------------

def _sum_terms(func: Callable[[Any], T], items: Sequence[Any], jobs: int, start: T) -> T:
    """Exact sum of func over items, fanned out over a process pool when jobs > 1."""
    if jobs <= 1 or len(items) < 2 * jobs:
        total = start
        for item in items:
            total = total + func(item)
        return total
    chunk = max(1, len(items) // (4 * jobs))
    total = start
    with Pool(processes=jobs) as pool:
        for value in pool.imap_unordered(func, items, chunksize=chunk):
            total = total + value
    return total


def _verified(evaluate: Callable[[int], T], seed: int, what: str) -> Tuple[T, Tuple[int, ...]]:
    first, second = evaluate(seed), evaluate(seed + 1)
    if first == second:
        return first, (seed, seed + 1)
    logger.warning(f"{what}: seeds {seed} and {seed + 1} disagree ({first} vs {second}); drawing a third point")
    third = evaluate(seed + 2)
    if third == first or third == second:
        return third, (seed, seed + 1, seed + 2)
    logger.error(f"{what}: three points gave three values {first}, {second}, {third}")
    raise InconsistencyError(f"{what}: generic points disagree ({first}, {second}, {third})")


def checked_degree(value: Fraction, what: str) -> int:
    n = as_integer(to_rational(value))
    if n is None or n < 0:
        logger.error(f"{what}: degree {value} is not a nonnegative integer")
        raise InconsistencyError(f"{what}: degree {value} is not a nonnegative integer")
    return n


def _require_weight(rs: RootSystem, lam: Weight) -> None:
    require_dominant(rs, lam)
    if lam.is_zero():
        raise WeightError("the zero weight (trivial representation) has no discriminant")
    if any(as_integer(y) is None for y in y_coordinates(rs, lam)):
        raise WeightError(f"{lam} is not integral for {rs.name}")


def _require_single_gl(rs: RootSystem) -> int:
    if len(rs.factors) != 1 or rs.factors[0].label != "GL":
        raise RootSystemError(f"this check needs a single GL(n) factor, got {rs.name}")
    return rs.dim


def build_report(rs: RootSystem, lam: Weight, degree: int, methods: Sequence[str], seeds: Sequence[int]) -> DegreeReport:
    td = tangent_data(rs, lam)
    return DegreeReport(
        group=rs.name,
        weight=lam,
        weight_y=tuple(y_coordinates(rs, lam)),
        degree=degree,
        epsilon=td.epsilon,
        stabilizer_order=td.stabilizer_order,
        methods=tuple(methods),
        seeds=tuple(seeds),
    )


# ---------------- tangent data and points ----------------

def tangent_data(rs: RootSystem, lam: Weight) -> TangentData:
    require_dominant(rs, lam)
    t_set, o_set = [], []
    for b in rs.negative_roots:
        s = pairing_sign(rs, b, lam)
        if s is PairingSign.NEGATIVE:
            t_set.append(b)
        elif s is PairingSign.ZERO:
            o_set.append(b)
    return TangentData(tuple(t_set), tuple(o_set), (-1) ** len(o_set), stabilizer_order(rs, lam))


def pick_generic_point(
    rs: RootSystem,
    seed: int,
    distinct: Sequence[Weight] = (),
    nonzero: Sequence[Weight] = (),
) -> GenericPoint:
    """
    Seeded integer point where no root vanishes.

    Args:
        distinct: weights whose values at the point must be pairwise different
        nonzero: extra functionals that must not vanish (e.g. sigma1)
    """
    rng = np.random.default_rng(seed)
    for attempt in range(REJECTION_BUDGET):
        draw = rng.integers(-POINT_RANGE, POINT_RANGE, size=rs.dim, endpoint=True)
        coords = tuple(Fraction(int(x)) for x in draw)
        if any(b.evaluate(coords) == 0 for b in rs.negative_roots):
            continue
        if any(v.evaluate(coords) == 0 for v in nonzero):
            continue
        values = [w.evaluate(coords) for w in distinct]
        if len(set(values)) != len(values):
            continue
        if attempt:
            logger.info(f"seed {seed}: generic point found after {attempt + 1} draws")
        return GenericPoint(coords, seed)
    raise InconsistencyError(f"no generic point for {rs.name} after {REJECTION_BUDGET} draws (seed {seed})")


# ---------------- the class sums ----------------

def _orbit_term(point: Tuple[Fraction, ...], u: Fraction, item: Tuple[Weight, Tuple[Weight, ...]]) -> Fraction:
    mu, tangent = item
    m = mu.evaluate(point)
    term = m + u
    for b in tangent:
        bt = b.evaluate(point)
        if bt == 0:
            raise NonGenericPointError(f"root {b} vanishes at the evaluation point")
        term *= (m + bt + u) / (-bt)
    return term


def _symmetric_term(lam: Weight, negative_roots: Tuple[Weight, ...], point: Tuple[Fraction, ...], u: Fraction, w) -> Fraction:
    pulled = w.pullback(point)
    m = lam.evaluate(pulled)
    term = m + u
    for b in negative_roots:
        bt = b.evaluate(pulled)
        if bt == 0:
            raise NonGenericPointError(f"root {b} vanishes at the evaluation point")
        term *= (m + bt + u) / (-bt)
    return term


def _coords(point) -> Tuple[Fraction, ...]:
    return point.coords if isinstance(point, GenericPoint) else tuple(to_rational(x) for x in point)


def class_sum_orbit(rs: RootSystem, lam: Weight, point, u, jobs: int = 1) -> Fraction:
    """E(t,u) by the orbit formula."""
    orbit = weyl_orbit(rs, lam)
    items = [(p.mu, p.tangent) for p in orbit.points]
    func = partial(_orbit_term, _coords(point), to_rational(u))
    return -_sum_terms(func, items, jobs, Fraction(0))


def class_sum_symmetric(rs: RootSystem, lam: Weight, point, u, jobs: int = 1) -> Fraction:
    """E(t,u) by the signed average over the whole Weyl group."""
    td = tangent_data(rs, lam)
    func = partial(_symmetric_term, lam, rs.negative_roots, _coords(point), to_rational(u))
    total = _sum_terms(func, list(weyl_group(rs)), jobs, Fraction(0))
    return -Fraction(td.epsilon, td.stabilizer_order) * total


# ---------------- degrees ----------------

def degree(rs: RootSystem, lam: Weight, seed: int = DEFAULT_SEED, jobs: int = 1) -> DegreeReport:
    """Degree of the discriminant by the orbit formula."""
    _require_weight(rs, lam)
    orbit = weyl_orbit(rs, lam)
    mus = [p.mu for p in orbit.points]

    def at(s: int) -> Fraction:
        point = pick_generic_point(rs, s, distinct=mus)
        return -(class_sum_orbit(rs, lam, point, 1, jobs) - class_sum_orbit(rs, lam, point, 0, jobs))

    value, seeds = _verified(at, seed, f"orbit degree of {lam} in {rs.name}")
    return build_report(rs, lam, checked_degree(value, "orbit"), ("orbit",), seeds)


def degree_symmetric(rs: RootSystem, lam: Weight, seed: int = DEFAULT_SEED, jobs: int = 1) -> DegreeReport:
    _require_weight(rs, lam)

    def at(s: int) -> Fraction:
        point = pick_generic_point(rs, s)
        return -(class_sum_symmetric(rs, lam, point, 1, jobs) - class_sum_symmetric(rs, lam, point, 0, jobs))

    value, seeds = _verified(at, seed, f"symmetric degree of {lam} in {rs.name}")
    return build_report(rs, lam, checked_degree(value, "symmetric"), ("symmetric",), seeds)


def class_coefficients(rs: RootSystem, lam: Weight, seed: int = DEFAULT_SEED) -> List[Tuple[str, Fraction]]:
    """
    The class as a linear form: the u coefficient and one sigma1 coefficient per GL block.

    Shifting the point by the all-ones vector of a GL block leaves every root value
    unchanged, so the difference isolates that block's sigma1 coefficient.
    """
    _require_weight(rs, lam)
    gl_blocks = [i for i, f in enumerate(rs.factors) if f.label == "GL"]
    mus = [p.mu for p in weyl_orbit(rs, lam).points]

    def at(s: int) -> Tuple[Fraction, ...]:
        point = pick_generic_point(rs, s, distinct=mus)
        base = class_sum_orbit(rs, lam, point, 0)
        coeffs = [class_sum_orbit(rs, lam, point, 1) - base]
        for b in gl_blocks:
            shifted = point.shifted(rs.sigma1(b))
            coeffs.append((class_sum_orbit(rs, lam, shifted, 0) - base) / rs.factors[b].size)
        if len(gl_blocks) == len(rs.factors):
            linear = sum((c * point(rs.sigma1(b)) for c, b in zip(coeffs[1:], gl_blocks)), Fraction(0))
            if linear != base:
                raise InconsistencyError(f"class of {lam} is not a combination of the block sigma1's")
        return tuple(coeffs)

    coeffs, _ = _verified(at, seed, f"class of {lam} in {rs.name}")
    labels = ["u"] + [f"sigma1[{rs.factors[b].name}#{b + 1}]" for b in gl_blocks]
    return list(zip(labels, coeffs))


# ---------------- F_G ----------------

def _fg_term(omegas: Tuple[Weight, ...], negative_roots: Tuple[Weight, ...], point: Tuple[Fraction, ...], w) -> MultiPoly:
    pulled = w.pullback(point)
    lin = MultiPoly.linear([om.evaluate(pulled) for om in omegas])
    term = lin - 1
    denom = Fraction(1)
    for b in negative_roots:
        bt = b.evaluate(pulled)
        if bt == 0:
            raise NonGenericPointError(f"root {b} vanishes at the evaluation point")
        term = term * (lin + (bt - 1))
        denom *= -bt
    return term.scale(1 / denom)


def fg_polynomial(rs: RootSystem, seed: int = DEFAULT_SEED, jobs: int = 1) -> FgPolynomial:
    """
    The universal polynomial F_G in y (fundamental-weight coordinates) and in x = y - 1.

    Args:
        rs: a semisimple root system (GL factors are rejected)

    Returns:
        FgPolynomial with integer coefficients and total degree |R-|
    """
    if not rs.is_semisimple:
        hint = "+".join(f"A{f.rank - 1}" if f.label == "GL" else f.name for f in rs.factors if f.rank > 1 or f.label != "GL")
        raise RootSystemError(f"F_G needs a semisimple group; use {hint or 'a semisimple part'} instead of {rs.name}")
    omegas = tuple(fundamental_weights(rs))
    r = rs.rank
    elements = list(weyl_group(rs))

    def at(s: int) -> MultiPoly:
        point = pick_generic_point(rs, s)
        func = partial(_fg_term, omegas, rs.negative_roots, point.coords)
        return -_sum_terms(func, elements, jobs, MultiPoly.zero(r))

    in_y, _ = _verified(at, seed, f"F_G of {rs.name}")
    if any(c.denominator != 1 for _, c in in_y.items()):
        raise InconsistencyError(f"F_G of {rs.name} has non-integral coefficients")
    if in_y.total_degree != len(rs.negative_roots):
        raise InconsistencyError(f"F_G of {rs.name} has degree {in_y.total_degree}, expected {len(rs.negative_roots)}")
    in_x = in_y.compose([MultiPoly.variable(r, i) + 1 for i in range(r)])
    logger.info(f"F_G of {rs.name}: {len(in_x)} terms")
    return FgPolynomial(rs.name, in_y, in_x)


def degree_from_fg(rs: RootSystem, fg: FgPolynomial, lam: Weight) -> DegreeReport:
    if fg.group != rs.name:
        raise RootSystemError(f"F_G of {fg.group} cannot be evaluated on {rs.name}")
    require_dominant(rs, lam)
    if lam.is_zero():
        raise WeightError("the zero weight (trivial representation) has no discriminant")
    ys = y_coordinates(rs, lam)
    if any(as_integer(y) is None or y < 0 for y in ys):
        raise WeightError(f"y-coordinates {[format_rational(y) for y in ys]} are not nonnegative integers")
    td = tangent_data(rs, lam)
    value = Fraction(td.epsilon, td.stabilizer_order) * fg.in_y.evaluate(ys)
    return build_report(rs, lam, checked_degree(value, "F_G"), ("fg",), ())


# ---------------- GL(n) checks ----------------

def weight_shift_check(rs: RootSystem, lam: Weight, a: int, seed: int = DEFAULT_SEED) -> bool:
    """deg D_lam = deg D_{lam + a sigma1} = deg D_{lam'} where lam' = reversed(a - lam_i)."""
    _require_single_gl(rs)
    shifted = lam + rs.sigma1() * a
    dual = Weight(tuple(a - c for c in reversed(lam.coords)))
    degrees = [degree(rs, w, seed).degree for w in (lam, shifted, dual)]
    if len(set(degrees)) != 1:
        logger.warning(f"shift check failed for {lam}, a={a}: {degrees}")
    return len(set(degrees)) == 1


def _class_factor(rs: RootSystem, lam: Weight, point: GenericPoint) -> Fraction:
    """f with E(t,0) = -f sigma1(t)."""
    return -class_sum_orbit(rs, lam, point, 0) / point(rs.sigma1())


def _weight_size(lam: Weight) -> Fraction:
    size = sum(lam.coords, Fraction(0))
    if size == 0:
        raise WeightError(f"{lam} has |lam| = 0; the class-factor route is undefined")
    return size


def degree_via_class_factor(rs: RootSystem, lam: Weight, seed: int = DEFAULT_SEED) -> Fraction:
    """deg = (n/|lam|) f for GL(n), |lam| != 0."""
    n = _require_single_gl(rs)
    _require_weight(rs, lam)
    size = _weight_size(lam)
    sigma = rs.sigma1()

    def at(s: int) -> Fraction:
        return _class_factor(rs, lam, pick_generic_point(rs, s, nonzero=[sigma]))

    f, _ = _verified(at, seed, f"class factor of {lam}")
    return f * n / size


def linear_fit_check(rs: RootSystem, lam: Weight, seed: int = DEFAULT_SEED) -> bool:
    """E(t,u) = -f((n/|lam|)u + sigma1(t)) for one rational f at three (t,u) samples."""
    n = _require_single_gl(rs)
    _require_weight(rs, lam)
    size = _weight_size(lam)
    sigma = rs.sigma1()
    p1 = pick_generic_point(rs, seed, nonzero=[sigma])
    p2 = pick_generic_point(rs, seed + 1, nonzero=[sigma])
    f = _class_factor(rs, lam, p1)
    samples = [(p1, Fraction(1)), (p2, Fraction(0)), (p2, Fraction(-5, 2))]
    return all(
        class_sum_orbit(rs, lam, p, u) == -f * (Fraction(n) / size * u + p(sigma))
        for p, u in samples
    )


def scaling_check(rs: RootSystem, lam: Weight, seed: int = DEFAULT_SEED) -> bool:
    """E(2t,0) = 2E(t,0)."""
    _require_weight(rs, lam)
    point = pick_generic_point(rs, seed)
    return class_sum_orbit(rs, lam, point.scaled(2), 0) == 2 * class_sum_orbit(rs, lam, point, 0)
