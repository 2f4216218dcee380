"""
Closed formulas for discriminant degrees of special GL(n) representations.

- boole:        lam = a L1                          n(a-1)^(n-1)
- grassmannian: lam = L1 + ... + Lk                 Pluecker substitution sum
- holme:        lam = L1 + L2                       (n/2)(1 - (-1)^(n-1))/2
- gammaab:      lam = (a+b) L1 + b(L2 + ... + Ln-1)
- abn:          lam = a L1 + b L2, a > b >= 1       (b = 1: Tevelev)
- aa:           lam = a L1 + a L2
- gr3:          lam = L1 + L2 + L3                  via the <n k> bracket table
- hyperdet:     boundary/above-boundary formats; below the boundary the engine

Each formula is also used as an oracle against the degree engine.
"""
from __future__ import annotations

import logging
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import List, Optional, Sequence

from degree_engine import DEFAULT_SEED, DegreeReport, InconsistencyError, build_report, degree
from exact_algebra import MultiPoly, UniPoly, as_integer, uni_divmod, uni_exact_divide
from root_systems import RootSystem, Weight, build_root_system

logger = logging.getLogger(__name__)


def _integer(value: Fraction, what: str) -> int:
    n = as_integer(Fraction(value))
    if n is None:
        logger.error(f"{what} evaluated to the non-integer {value}")
        raise InconsistencyError(f"{what} evaluated to the non-integer {value}")
    return n


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


# ---------------- <n k> ----------------

class AngleBracketTable:
    """
    <n k>: Pascal rule, <n 0> = 1 (n even) or -2 (n odd), <n n> = 1.

    Rows are built lazily under a lock and each row is checked against
    <n k> = C(n,k) + 3 sum_{i>=1} (-1)^i C(n-i, k) when it is added.
    """

    def __init__(self):
        self._rows: List[List[int]] = [[1]]
        self._lock = threading.Lock()

    @staticmethod
    def binomial_form(n: int, k: int) -> int:
        return math.comb(n, k) + 3 * sum((-1) ** i * math.comb(n - i, k) for i in range(1, n - k + 1))

    def _extend(self, n: int) -> None:
        with self._lock:
            while len(self._rows) <= n:
                m = len(self._rows)
                prev = self._rows[-1]
                row = [1 if m % 2 == 0 else -2]
                row.extend(prev[k] + prev[k - 1] for k in range(1, m))
                row.append(1)
                for k, v in enumerate(row):
                    if v != self.binomial_form(m, k):
                        raise InconsistencyError(f"<{m} {k}> = {v} disagrees with the binomial form")
                self._rows.append(row)

    def row(self, n: int) -> List[int]:
        _require(n >= 0, f"<n k> needs n >= 0, got {n}")
        self._extend(n)
        return list(self._rows[n])

    def __call__(self, n: int, k: int) -> int:
        _require(n >= 0 and 0 <= k <= n, f"<{n} {k}> is out of range")
        self._extend(n)
        return self._rows[n][k]


ANGLE_BRACKETS = AngleBracketTable()


def angle_bracket(n: int, k: int) -> int:
    return ANGLE_BRACKETS(n, k)


def angle_bracket_series_remainder(n: int) -> Fraction:
    """r in (t-1)(t+1)^n = (t+2) sum_k <n k> t^k + r."""
    target = UniPoly((-1, 1)) * UniPoly((1, 1)) ** n
    quot, rem = uni_divmod(target, UniPoly((2, 1)))
    if list(quot.coeffs) != [Fraction(v) for v in ANGLE_BRACKETS.row(n)]:
        raise InconsistencyError(f"row {n} of <n k> is not the quotient by t+2")
    return rem.coeff(0)


# ---------------- P_ab ----------------

@dataclass(frozen=True)
class PabQuadratic:
    """A t^2 + B t + C = (at - t - b)(at - b + 1)"""
    A: Fraction
    B: Fraction
    C: Fraction

    @classmethod
    def of(cls, a: int, b: int) -> "PabQuadratic":
        return cls(Fraction(a * (a - 1)), Fraction((a - 1) * (1 - b) - a * b), Fraction(b * (b - 1)))

    def as_poly(self) -> UniPoly:
        return UniPoly((self.C, self.B, self.A))


# ---------------- families ----------------

def boole_degree(n: int, a: int) -> int:
    _require(n >= 1 and a >= 1, "boole needs n >= 1 and a >= 1")
    return n * (a - 1) ** (n - 1)


def grassmannian_degree(n: int, k: int) -> Fraction:
    """Sum over k-subsets S of {1..n} after the substitution L_i = i."""
    _require(1 <= k <= n - 1, f"grassmannian needs 1 <= k <= n-1, got n={n}, k={k}")
    total = Fraction(0)
    for subset in combinations(range(1, n + 1), k):
        chosen = set(subset)
        ell = sum(subset)
        term = Fraction(ell)
        for i in subset:
            for j in range(1, n + 1):
                if j not in chosen:
                    term *= Fraction(ell + j - i, i - j)
        total += term
    value = Fraction(2, k * (n + 1)) * total
    _integer(value, f"grassmannian({n},{k})")
    return value


def holme_gr2(n: int) -> Fraction:
    _require(n >= 3, "holme needs n >= 3")
    return Fraction(n, 2) * (1 - (-1) ** (n - 1)) / 2


def gammaab_degree(n: int, a: int, b: int) -> int:
    """n!(a+b-1) sum_{i=1}^{n//2} A^(i-1) C^(i-1) (-B)^(n-2i) / (i!(i-1)!(n-2i)!)"""
    _require(n >= 3 and a >= 1 and b >= 1, "gammaab needs n >= 3 and a, b >= 1")
    p = PabQuadratic.of(a, b)
    total = Fraction(0)
    for i in range(1, n // 2 + 1):
        total += (p.A ** (i - 1) * p.C ** (i - 1) * (-p.B) ** (n - 2 * i)
                  / (math.factorial(i) * math.factorial(i - 1) * math.factorial(n - 2 * i)))
    return _integer(math.factorial(n) * (a + b - 1) * total, f"gammaab({n},{a},{b})")


@lru_cache(maxsize=None)
def _gammaab_difference_quotient(n: int) -> MultiPoly:
    """([P^(n-1)]_{t^n}(a,b) - same with a, b swapped) / (a - b), as a polynomial in (a, b)."""
    a, b, t = (MultiPoly.variable(3, i) for i in range(3))
    p = ((a - 1) * t - b) * (a * t - b + 1)
    top = (p ** (n - 1)).coefficient_of(2, n)
    swapped = top.permute((1, 0, 2))
    return (top - swapped).exact_divide(a - b)


def gammaab_divided_difference(n: int, a: int, b: int) -> Fraction:
    """(-1)^n n d[P_ab^(n-1)]_{t^n}; the division by (a - b) is symbolic, so a = b works."""
    _require(n >= 3 and a >= 1 and b >= 1, "gammaab needs n >= 3 and a, b >= 1")
    return (-1) ** n * n * _gammaab_difference_quotient(n).evaluate((a, b, 0))


def gammaab_factored(n: int, a: int, b: int) -> Fraction:
    """The factorized small-n forms of gammaab (n = 3, 4, 5)."""
    p = PabQuadratic.of(a, b)
    A, B, C = p.A, p.B, p.C
    if n == 3:
        return 6 * (a + b - 1) * (-B)
    if n == 4:
        return 12 * (a + b - 1) * (B ** 2 + A * C)
    if n == 5:
        return 20 * (a + b - 1) * (-B) * (B ** 2 + 3 * A * C)
    raise ValueError(f"no factorized gammaab form for n = {n}")


def _lin(slope: int, intercept: int) -> UniPoly:
    return UniPoly.linear(slope, intercept)


def abn_degree(n: int, a: int, b: int) -> int:
    _require(n >= 3 and a > b >= 1, "abn needs n >= 3 and a > b >= 1")
    sign = (-1) ** (n - 1)
    first = _lin(a - 1, b) ** (n - 1) * _lin(a, b - 1) ** (n - 1)
    geometric = uni_exact_divide(_lin(b - 1, a) ** (n - 1) - sign, _lin(b - 1, a + 1))
    second = _lin(b, a - 1) ** (n - 1) * _lin(b + 1, a - 1) * geometric
    return _integer(Fraction(n, a + b) * (first - second).coeff(n), f"abn({n},{a},{b})")


def tevelev_degree(n: int, a: int) -> int:
    """abn with b = 1."""
    _require(n >= 3 and a >= 2, "tevelev needs n >= 3 and a >= 2")
    value = Fraction(n, (a + 1) ** 2) * ((n - 1) * a ** (n + 1) - (n + 1) * a ** (n - 1) + 2 * (-1) ** (n - 1))
    return _integer(value, f"tevelev({n},{a})")


def aa_degree(n: int, a: int) -> int:
    _require(n >= 3 and a >= 1, "aa needs n >= 3 and a >= 1")
    sign = (-1) ** (n - 1)
    geometric = uni_exact_divide(_lin(a - 1, a) ** (n - 1) - sign, _lin(a - 1, a + 1))
    body = _lin(1, -1) * _lin(a, a - 1) ** (n - 1) * geometric
    return _integer(Fraction(n, 2 * a) * body.coeff(n), f"aa({n},{a})")


def gr3_degree(n: int) -> int:
    _require(n >= 4, "gr3 needs n >= 4")
    total = 0
    for k in range(1, n):
        for l in range(4, n):
            if k + l < n + 1:
                continue
            total += ((-1) ** (k + l + n - 1) * angle_bracket(n - 1, k) * angle_bracket(n - 1, l)
                      * angle_bracket(k + l - 5, k - 1))
    return _integer(Fraction(n, 3) * total, f"gr3({n})")


# ---------------- hyperdeterminants ----------------

def hyperdet_system(dims: Sequence[int]) -> RootSystem:
    return build_root_system([("GL", n) for n in dims])


def hyperdet_weight(dims: Sequence[int]) -> Weight:
    """sum over blocks of the first coordinate of the block."""
    coords: List[int] = []
    for n in dims:
        coords.extend([1] + [0] * (n - 1))
    return Weight(tuple(coords))


def hyperdet_degree(dims: Sequence[int], seed: int = DEFAULT_SEED) -> DegreeReport:
    """
    Degree of the hyperdeterminant of format n1 x ... x nk.

    Above the boundary n_k - 1 > sum (n_u - 1) it is not a hypersurface; on the
    boundary the degree is n_k! / prod (n_u - 1)!; below, the engine decides.
    """
    dims = sorted(int(n) for n in dims)
    _require(len(dims) >= 2 and all(n >= 2 for n in dims), "hyperdet needs at least two factors, each >= 2")
    rs = hyperdet_system(dims)
    lam = hyperdet_weight(dims)
    *rest, top = dims
    slack = sum(n - 1 for n in rest)
    if top - 1 > slack:
        return build_report(rs, lam, 0, ("closed-form",), ())
    if top - 1 == slack:
        value = Fraction(math.factorial(top), math.prod(math.factorial(n - 1) for n in rest))
        return build_report(rs, lam, _integer(value, f"hyperdet{tuple(dims)}"), ("closed-form",), ())
    logger.info(f"hyperdet {tuple(dims)} is below the boundary; using the orbit formula")
    return degree(rs, lam, seed)


# ---------------- family weights ----------------

FAMILIES = ("boole", "grassmannian", "gammaab", "abn", "aa")


def family_weight(kind: str, n: int, a: int, b: int = 0) -> Weight:
    """The GL(n) highest weight each family formula is about (grassmannian: k = a)."""
    coords = [0] * n
    if kind == "boole":
        coords[0] = a
    elif kind == "grassmannian":
        _require(1 <= a <= n - 1, "grassmannian needs 1 <= k <= n-1")
        coords[:a] = [1] * a
    elif kind == "gammaab":
        _require(n >= 3, "gammaab needs n >= 3")
        coords[0] = a + b
        coords[1:n - 1] = [b] * (n - 2)
    elif kind == "abn":
        coords[0], coords[1] = a, b
    elif kind == "aa":
        coords[0], coords[1] = a, a
    else:
        raise ValueError(f"unknown family {kind!r} (one of {', '.join(FAMILIES)})")
    return Weight(tuple(coords))


def family_degree(kind: str, n: int, a: int, b: int = 0) -> Fraction:
    if kind == "boole":
        return Fraction(boole_degree(n, a))
    if kind == "grassmannian":
        return grassmannian_degree(n, a)
    if kind == "gammaab":
        return Fraction(gammaab_degree(n, a, b))
    if kind == "abn":
        return Fraction(abn_degree(n, a, b))
    if kind == "aa":
        return Fraction(aa_degree(n, a))
    raise ValueError(f"unknown family {kind!r} (one of {', '.join(FAMILIES)})")


def closed_form_degree(rs: RootSystem, lam: Weight) -> Optional[Fraction]:
    """
    Recognize a weight some closed formula covers and return its degree.

    Single GL(n) weights are first normalized by subtracting lam_n * sigma1
    (which does not change the degree). Returns None when no formula applies.
    """
    if all(f.label == "GL" for f in rs.factors) and len(rs.factors) >= 2:
        if lam == hyperdet_weight([f.rank for f in rs.factors]) and [f.rank for f in rs.factors] == sorted(f.rank for f in rs.factors):
            dims = [f.rank for f in rs.factors]
            *rest, top = dims
            if top - 1 >= sum(n - 1 for n in rest):
                return Fraction(hyperdet_degree(dims).degree)
        return None
    if len(rs.factors) != 1 or rs.factors[0].label != "GL":
        return None
    n = rs.dim
    coords = [c - lam.coords[-1] for c in lam.coords]
    if any(c.denominator != 1 for c in coords):
        return None
    c = [int(x) for x in coords]
    nonzero = [x for x in c if x]
    if not nonzero:
        return None
    if len(nonzero) == 1 and c[0]:
        return Fraction(boole_degree(n, c[0]))
    if all(x == 1 for x in nonzero) and c[:len(nonzero)] == nonzero:
        k = len(nonzero)
        if k == 2 and n >= 3:
            return holme_gr2(n)
        if k == 3 and n >= 4:
            return Fraction(gr3_degree(n))
        return grassmannian_degree(n, k)
    if n >= 3 and c[2:] == [0] * (n - 2):
        a, b = c[0], c[1]
        if a > b >= 1:
            return Fraction(abn_degree(n, a, b))
        if a == b:
            return Fraction(aa_degree(n, a))
    if n >= 3 and c[-1] == 0 and len(set(c[1:n - 1])) == 1 and c[1] >= 1 and c[0] > c[1]:
        return Fraction(gammaab_degree(n, c[0] - c[1], c[1]))
    return None
