"""
Root data for products of simple factors and their Weyl groups.

- Factors: A_r, B_n, C_n, D_n (n >= 3), G2, and GL_n (A-type roots plus a center)
- Each factor lives on its own block of ambient coordinates
- Weyl orbits are enumerated breadth-first under simple reflections, each point
  carrying its transported tangent set and a witness element
- Weyl group elements are enumerated by BFS with hashing on the image of rho

Conventions: A/GL simple roots are L_i - L_{i+1} (dominant = weakly decreasing
coordinates); B_n uses e1, e_i - e_{i-1}; C_n uses 2e1, e_i - e_{i-1};
D_n uses e1 + e2, e_i - e_{i-1}; G2 uses (L2 - L1, L1 - 2L2 + L3).
"""
from __future__ import annotations

import logging
import math
import os
import re
from collections import deque
from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import sympy

from exact_algebra import Scalar, format_rational, to_rational

logger = logging.getLogger(__name__)

MAX_ORBIT = int(os.getenv("DUALDEG_MAX_ORBIT", "1000000").strip())
MAX_WEYL = int(os.getenv("DUALDEG_MAX_WEYL", "500000").strip())

FACTOR_LABELS = ("A", "B", "C", "D", "G2", "GL")

Matrix = Tuple[Tuple[Fraction, ...], ...]


class RootSystemError(ValueError):
    """Unsupported factor label, invalid rank, or a broken construction."""


class WeightError(ValueError):
    """A weight fails a precondition (dominance, integrality, nonzero, shape)."""


class SpecParseError(ValueError):
    """A group or weight spec string could not be parsed."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class BoundExceededError(RuntimeError):
    """An orbit or Weyl group is larger than the configured bound."""


class PairingSign(IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


# ---------------- weights ----------------

@dataclass(frozen=True)
class Weight:
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(to_rational(c) for c in self.coords))

    @classmethod
    def of(cls, *coords: Scalar) -> "Weight":
        return cls(tuple(coords))

    @classmethod
    def zero(cls, dim: int) -> "Weight":
        return cls((0,) * dim)

    @classmethod
    def unit(cls, dim: int, i: int) -> "Weight":
        return cls(tuple(1 if j == i else 0 for j in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def dot(self, other: "Weight") -> Fraction:
        if other.dim != self.dim:
            raise WeightError(f"weights of dimension {self.dim} and {other.dim} cannot be paired")
        return sum((a * b for a, b in zip(self.coords, other.coords)), Fraction(0))

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        """The linear functional at a point of the Cartan."""
        return sum((a * b for a, b in zip(self.coords, point) if a), Fraction(0))

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def __mul__(self, c: Scalar) -> "Weight":
        c = to_rational(c)
        return Weight(tuple(c * a for a in self.coords))

    __rmul__ = __mul__

    def __str__(self) -> str:
        return "L:" + ",".join(format_rational(c) for c in self.coords)


# ---------------- factors ----------------

@dataclass(frozen=True)
class Factor:
    label: str
    rank: int
    offset: int

    @property
    def size(self) -> int:
        """Ambient coordinates used by this factor."""
        if self.label == "A":
            return self.rank + 1
        if self.label == "G2":
            return 3
        return self.rank

    @property
    def block(self) -> range:
        return range(self.offset, self.offset + self.size)

    @property
    def name(self) -> str:
        return "G2" if self.label == "G2" else f"{self.label}{self.rank}"

    @property
    def weyl_order(self) -> int:
        if self.label == "A":
            return math.factorial(self.rank + 1)
        if self.label == "GL":
            return math.factorial(self.rank)
        if self.label in ("B", "C"):
            return 2 ** self.rank * math.factorial(self.rank)
        if self.label == "D":
            return 2 ** (self.rank - 1) * math.factorial(self.rank)
        return 12

    def local_simple_roots(self) -> List[List[int]]:
        """Simple roots in the factor's own coordinates."""
        m = self.size

        def e(*pairs: Tuple[int, int]) -> List[int]:
            v = [0] * m
            for i, c in pairs:
                v[i] += c
            return v

        if self.label in ("A", "GL"):
            return [e((i, 1), (i + 1, -1)) for i in range(m - 1)]
        if self.label == "G2":
            return [e((1, 1), (0, -1)), e((0, 1), (1, -2), (2, 1))]
        tail = [e((i, 1), (i - 1, -1)) for i in range(1, m)]
        if self.label == "B":
            return [e((0, 1))] + tail
        if self.label == "C":
            return [e((0, 2))] + tail
        return [e((0, 1), (1, 1))] + tail  # D


def _validate_factor(label: str, rank: int) -> None:
    if label not in FACTOR_LABELS:
        raise RootSystemError(f"unsupported factor type {label!r} (use one of {', '.join(FACTOR_LABELS)})")
    if rank < 1:
        raise RootSystemError(f"{label}{rank}: rank must be at least 1")
    if label == "D" and rank < 3:
        raise RootSystemError(f"D{rank} is not simple; use A1+A1 for D2")
    if label == "G2" and rank != 2:
        raise RootSystemError("G2 has rank 2")


# ---------------- linear algebra helpers ----------------

def _to_sympy(x: Fraction) -> sympy.Rational:
    return sympy.Rational(x.numerator, x.denominator)


def _from_sympy(x) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def _identity(dim: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim))


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col) if x and y), Fraction(0)) for col in cols) for row in a)


def _apply(m: Matrix, v: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    return tuple(sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in m)


def _reflection_matrix(alpha: Weight) -> Matrix:
    norm = alpha.dot(alpha)
    a = alpha.coords
    return tuple(
        tuple(Fraction(int(i == j)) - 2 * a[i] * a[j] / norm for j in range(alpha.dim))
        for i in range(alpha.dim)
    )


# ---------------- Weyl elements ----------------

@dataclass(frozen=True)
class WeylElement:
    word: Tuple[int, ...]
    matrix: Matrix = field(repr=False)

    def act(self, v: Weight) -> Weight:
        return Weight(_apply(self.matrix, v.coords))

    def pullback(self, point: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        """M^T t, so that (w v)(t) = v(M^T t)."""
        return tuple(
            sum((self.matrix[i][j] * point[i] for i in range(len(point)) if point[i]), Fraction(0))
            for j in range(len(point))
        )

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(self.word + other.word, _matmul(self.matrix, other.matrix))

    @cached_property
    def sign(self) -> int:
        """Determinant of the action (+1 or -1)."""
        if not self.matrix:
            return 1
        det = sympy.Matrix([[_to_sympy(x) for x in row] for row in self.matrix]).det(method="bareiss")
        return int(det)


# ---------------- root systems ----------------

@dataclass(frozen=True)
class RootSystem:
    factors: Tuple[Factor, ...]
    dim: int
    simple_roots: Tuple[Weight, ...]
    negative_roots: Tuple[Weight, ...]

    @property
    def name(self) -> str:
        return "+".join(f.name for f in self.factors)

    @property
    def spec(self) -> List[Tuple[str, int]]:
        return [(f.label, f.rank) for f in self.factors]

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def blocks(self) -> List[range]:
        return [f.block for f in self.factors]

    @property
    def positive_roots(self) -> Tuple[Weight, ...]:
        return tuple(-b for b in self.negative_roots)

    @property
    def roots(self) -> Tuple[Weight, ...]:
        return self.negative_roots + self.positive_roots

    @property
    def is_semisimple(self) -> bool:
        return not any(f.label == "GL" for f in self.factors)

    @property
    def weyl_order(self) -> int:
        return math.prod(f.weyl_order for f in self.factors)

    def simple_reflection(self, i: int) -> WeylElement:
        return WeylElement((i,), _reflection_matrix(self.simple_roots[i]))

    @cached_property
    def root_span_weights(self) -> Tuple[Weight, ...]:
        """Fundamental weights inside the span of the roots."""
        return _solve_fundamental_weights(self)

    @cached_property
    def rho(self) -> Weight:
        return sum(self.root_span_weights, Weight.zero(self.dim))

    def sigma1(self, block: Optional[int] = None) -> Weight:
        """Sum of the coordinates of one factor block (or of all coordinates)."""
        idx = range(self.dim) if block is None else self.factors[block].block
        return Weight(tuple(1 if i in idx else 0 for i in range(self.dim)))

    def block_part(self, v: Weight, block: int) -> Tuple[Fraction, ...]:
        return tuple(v.coords[i] for i in self.factors[block].block)

    def __str__(self) -> str:
        return self.name


def _solve_fundamental_weights(rs: RootSystem) -> Tuple[Weight, ...]:
    """omega_i = sum_k c_ik alpha_k with 2(omega_i, alpha_j)/(alpha_j, alpha_j) = delta_ij."""
    r = rs.rank
    if r == 0:
        return ()
    gram = sympy.Matrix(r, r, lambda k, j: _to_sympy(rs.simple_roots[k].dot(rs.simple_roots[j])))
    half_norms = sympy.diag(*[_to_sympy(a.dot(a) / 2) for a in rs.simple_roots])
    try:
        coeffs = half_norms * gram.inv()
    except ValueError as e:
        raise RootSystemError(f"{rs.name}: singular Gram matrix of simple roots") from e
    weights = []
    for i in range(r):
        w = Weight.zero(rs.dim)
        for k in range(r):
            c = _from_sympy(coeffs[i, k])
            if c:
                w = w + rs.simple_roots[k] * c
        weights.append(w)
    return tuple(weights)


def _close_roots(simple: Sequence[Weight]) -> List[Weight]:
    """All roots: the orbit of the simple roots under the simple reflections."""
    seen = {a for a in simple}
    queue = deque(simple)
    while queue:
        v = queue.popleft()
        for a in simple:
            w = reflect_vector(v, a)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return list(seen)


@lru_cache(maxsize=64)
def _build_cached(spec: Tuple[Tuple[str, int], ...]) -> RootSystem:
    factors: List[Factor] = []
    offset = 0
    for label, rank in spec:
        _validate_factor(label, rank)
        f = Factor(label, rank, offset)
        factors.append(f)
        offset += f.size
    dim = offset

    simple: List[Weight] = []
    for f in factors:
        for local in f.local_simple_roots():
            coords = [0] * dim
            for i, c in enumerate(local):
                coords[f.offset + i] = c
            simple.append(Weight(tuple(coords)))

    provisional = RootSystem(tuple(factors), dim, tuple(simple), ())
    rho = provisional.rho
    negative = sorted((b for b in _close_roots(simple) if b.dot(rho) < 0), key=lambda b: b.coords)
    rs = RootSystem(tuple(factors), dim, tuple(simple), tuple(negative))

    expected = sum(_classical_negative_count(f) for f in factors)
    if len(negative) != expected:
        raise RootSystemError(f"{rs.name}: built {len(negative)} negative roots, expected {expected}")
    logger.info(f"built {rs.name}: dim {dim}, {len(negative)} negative roots, |W| = {rs.weyl_order}")
    return rs


def _classical_negative_count(f: Factor) -> int:
    n = f.rank
    if f.label == "A":
        return n * (n + 1) // 2
    if f.label == "GL":
        return n * (n - 1) // 2
    if f.label in ("B", "C"):
        return n * n
    if f.label == "D":
        return n * (n - 1)
    return 6


def build_root_system(spec: Sequence[Tuple[str, int]]) -> RootSystem:
    """
    Build root data for a product of factors.

    Args:
        spec: list of (type label, rank), e.g. [("A", 1), ("A", 2)] or [("GL", 8)]

    Returns:
        RootSystem with simple and negative roots on disjoint coordinate blocks
    """
    if not spec:
        raise RootSystemError("a root system needs at least one factor")
    normalized = tuple((str(label).upper(), int(rank)) for label, rank in spec)
    return _build_cached(normalized)


def central_extension(rs: RootSystem) -> RootSystem:
    """Append a GL(1) block carrying no roots."""
    return build_root_system(rs.spec + [("GL", 1)])


# ---------------- pairing, reflections, fundamental weights ----------------

def pairing_sign(rs: RootSystem, beta: Weight, lam: Weight) -> PairingSign:
    v = beta.dot(lam)
    if v < 0:
        return PairingSign.NEGATIVE
    if v > 0:
        return PairingSign.POSITIVE
    return PairingSign.ZERO


def reflect_vector(v: Weight, alpha: Weight) -> Weight:
    norm = alpha.dot(alpha)
    if norm == 0:
        raise RootSystemError("cannot reflect in the zero vector")
    return v - alpha * (2 * v.dot(alpha) / norm)


def reflect(rs: RootSystem, v: Weight, alpha: Weight) -> Weight:
    return reflect_vector(v, alpha)


def fundamental_weights(rs: RootSystem) -> List[Weight]:
    """
    Fundamental weights, one per simple root.

    A, B, C, D and G2 factors get weights inside their root span. GL factors get
    the integral GL weights L1 + ... + Li, which satisfy the same pairing rule.
    """
    weights = list(rs.root_span_weights)
    i = 0
    for f in rs.factors:
        nsimple = len(f.local_simple_roots())
        if f.label == "GL":
            for k in range(nsimple):
                weights[i + k] = Weight(tuple(1 if f.offset <= j <= f.offset + k else 0 for j in range(rs.dim)))
        i += nsimple
    return weights


def y_coordinates(rs: RootSystem, lam: Weight) -> List[Fraction]:
    """2(lam, alpha_i)/(alpha_i, alpha_i) for every simple root."""
    return [2 * lam.dot(a) / a.dot(a) for a in rs.simple_roots]


def weight_from_y(rs: RootSystem, ys: Sequence[Scalar]) -> Weight:
    if len(ys) != rs.rank:
        raise WeightError(f"{rs.name} has {rs.rank} fundamental weights, got {len(ys)} coordinates")
    lam = Weight.zero(rs.dim)
    for y, w in zip(ys, fundamental_weights(rs)):
        y = to_rational(y)
        if y:
            lam = lam + w * y
    return lam


def is_dominant(rs: RootSystem, lam: Weight) -> bool:
    return all(lam.dot(a) >= 0 for a in rs.simple_roots)


def require_dominant(rs: RootSystem, lam: Weight) -> None:
    if lam.dim != rs.dim:
        raise WeightError(f"weight has {lam.dim} coordinates, {rs.name} needs {rs.dim}")
    if not is_dominant(rs, lam):
        raise WeightError(f"{lam} is not dominant for {rs.name}")


def dominant_conjugate(rs: RootSystem, v: Weight) -> Tuple[Weight, WeylElement]:
    """Reflect v into the dominant chamber; returns (dominant weight, w with w v = it)."""
    if v.dim != rs.dim:
        raise WeightError(f"weight has {v.dim} coordinates, {rs.name} needs {rs.dim}")
    w = WeylElement((), _identity(rs.dim))
    while True:
        for i, a in enumerate(rs.simple_roots):
            if v.dot(a) < 0:
                s = rs.simple_reflection(i)
                v = s.act(v)
                w = s * w
                break
        else:
            return v, w


# ---------------- orbits ----------------

@dataclass(frozen=True)
class OrbitPoint:
    mu: Weight
    tangent: Tuple[Weight, ...]
    witness: WeylElement


@dataclass(frozen=True)
class OrbitTable:
    weight: Weight
    points: Tuple[OrbitPoint, ...]

    @property
    def size(self) -> int:
        return len(self.points)


def tangent_set(rs: RootSystem, lam: Weight) -> Tuple[Weight, ...]:
    return tuple(b for b in rs.negative_roots if pairing_sign(rs, b, lam) is PairingSign.NEGATIVE)


def weyl_orbit(rs: RootSystem, lam: Weight) -> OrbitTable:
    """
    Breadth-first orbit of a dominant weight.

    Each point mu = w(lam) carries T_mu = w(T_lam) and the witness w.
    """
    require_dominant(rs, lam)
    return _weyl_orbit_cached(rs, lam)


@lru_cache(maxsize=256)
def _weyl_orbit_cached(rs: RootSystem, lam: Weight) -> OrbitTable:
    base_tangent = tangent_set(rs, lam)
    identity = WeylElement((), _identity(rs.dim))
    points: List[OrbitPoint] = [OrbitPoint(lam, base_tangent, identity)]
    seen: Dict[Weight, int] = {lam: 0}
    reflections = [rs.simple_reflection(i) for i in range(rs.rank)]
    head = 0
    while head < len(points):
        current = points[head]
        head += 1
        for s in reflections:
            nu = s.act(current.mu)
            if nu in seen:
                continue
            witness = s * current.witness
            seen[nu] = len(points)
            points.append(OrbitPoint(nu, tuple(witness.act(b) for b in base_tangent), witness))
            if len(points) > MAX_ORBIT:
                raise BoundExceededError(f"orbit of {lam} in {rs.name} exceeds {MAX_ORBIT} points")
    if rs.weyl_order % len(points):
        raise RootSystemError(f"orbit size {len(points)} does not divide |W| = {rs.weyl_order}")
    logger.info(f"orbit of {lam} in {rs.name}: {len(points)} points")
    return OrbitTable(lam, tuple(points))


def stabilizer_order(rs: RootSystem, lam: Weight) -> int:
    return rs.weyl_order // weyl_orbit(rs, lam).size


# ---------------- Weyl group ----------------

@lru_cache(maxsize=16)
def weyl_group(rs: RootSystem) -> Tuple[WeylElement, ...]:
    """All elements of W, identity first, each exactly once."""
    if rs.weyl_order > MAX_WEYL:
        raise BoundExceededError(f"|W({rs.name})| = {rs.weyl_order} exceeds the bound {MAX_WEYL}")
    identity = WeylElement((), _identity(rs.dim))
    rho = rs.rho.coords
    elements = [identity]
    seen = {rho}
    reflections = [rs.simple_reflection(i) for i in range(rs.rank)]
    head = 0
    while head < len(elements):
        current = elements[head]
        head += 1
        for s in reflections:
            w = current * s
            key = _apply(w.matrix, rho)
            if key not in seen:
                seen.add(key)
                elements.append(w)
    if len(elements) != rs.weyl_order:
        raise RootSystemError(f"enumerated {len(elements)} Weyl elements for {rs.name}, expected {rs.weyl_order}")
    return tuple(elements)


def weyl_elements(rs: RootSystem) -> Iterator[WeylElement]:
    yield from weyl_group(rs)


# ---------------- spec strings ----------------

_FACTOR_RE = re.compile(r"\s*(GL|[ABCDG])\s*(\d+)\s*", re.IGNORECASE)
_JOINERS = "+x×"


def parse_group_spec(text: str) -> RootSystem:
    """Parse `A2`, `GL4`, `A1+A2`, `GL2xGL2xGL3`, ... into a RootSystem."""
    factors: List[Tuple[str, int]] = []
    pos = 0
    while True:
        m = _FACTOR_RE.match(text, pos)
        if not m:
            raise SpecParseError(f"expected a factor such as A2, GL4 or G2 in {text!r}", pos)
        label, rank = m.group(1).upper(), int(m.group(2))
        if label == "G":
            if rank != 2:
                raise SpecParseError("the only G-type factor is G2", m.start(1))
            label = "G2"
        factors.append((label, rank))
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] not in _JOINERS:
            raise SpecParseError(f"expected '+' or 'x' between factors in {text!r}", pos)
        pos += 1
    try:
        return build_root_system(factors)
    except RootSystemError as e:
        raise SpecParseError(str(e), 0) from e


def parse_weight_spec(rs: RootSystem, text: str) -> Weight:
    """Parse `L:3,1,0,0` (ambient coordinates) or `w:1,1` (fundamental-weight coordinates)."""
    head, sep, body = text.partition(":")
    basis = head.strip()
    if not sep or basis not in ("L", "w", "l", "W"):
        raise SpecParseError(f"weight must start with 'L:' or 'w:', got {text!r}", 0)
    entries: List[Fraction] = []
    pos = len(head) + 1
    for chunk in body.split(","):
        try:
            entries.append(to_rational(chunk))
        except (ValueError, TypeError):
            raise SpecParseError(f"bad coordinate {chunk.strip()!r}", pos + len(chunk) - len(chunk.lstrip()))
        pos += len(chunk) + 1
    if basis in ("L", "l"):
        if len(entries) != rs.dim:
            raise SpecParseError(f"{rs.name} needs {rs.dim} L-coordinates, got {len(entries)}", len(text))
        return Weight(tuple(entries))
    if len(entries) != rs.rank:
        raise SpecParseError(f"{rs.name} needs {rs.rank} w-coordinates, got {len(entries)}", len(text))
    return weight_from_y(rs, entries)
