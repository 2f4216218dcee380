"""
GL(n) symmetric-function routes to the discriminant class.

Independent of the orbit formula, used to cross-check it:
- lam+ = lam * prod over negative roots of (lam + beta)
- Jacobi symmetrizer J(f) = antisymmetrization / Vandermonde
- nu-permanents: signed coefficient sums over permuted exponent vectors
- the Laurent scalar product <f, g> = (1/n!) [f conj(g) prod_{i != j} (1 - L_i/L_j)]_1

Products of GL blocks are supported by the permanent route (hyperdeterminants).
"""
from __future__ import annotations

import logging
import math
import os
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Dict, List, Sequence, Tuple

from sympy.combinatorics import Permutation

from degree_engine import InconsistencyError, tangent_data
from exact_algebra import Exponent, LaurentPoly, MultiPoly
from root_systems import BoundExceededError, RootSystem, Weight, WeightError, build_root_system

logger = logging.getLogger(__name__)

MAX_SYMFUN_N = int(os.getenv("DUALDEG_MAX_SYMFUN_N", "6").strip())

ExponentVector = Tuple[int, ...]


def staircase(n: int) -> ExponentVector:
    """(n-1, ..., 1, 0)"""
    return tuple(range(n - 1, -1, -1))


def mu_vector(n: int) -> ExponentVector:
    """(n, n-2, ..., 1, 0): J(L^mu) = sigma1."""
    return (n,) + tuple(range(n - 2, -1, -1))


def semifactorial(m: int) -> int:
    """m!! for odd m >= -1."""
    return math.prod(range(m, 0, -2))


@lru_cache(maxsize=None)
def signed_permutations(n: int) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    return tuple((p, Permutation(list(p)).signature()) for p in permutations(range(n)))


def _check_n(n: int) -> None:
    if n > MAX_SYMFUN_N:
        raise BoundExceededError(f"n = {n} is above the symmetric-function bound {MAX_SYMFUN_N}")


def _gl_system(sizes: Sequence[int]) -> RootSystem:
    for n in sizes:
        _check_n(n)
    return build_root_system([("GL", n) for n in sizes])


def _weight_for(rs: RootSystem, lam: Weight) -> Weight:
    if lam.dim != rs.dim:
        raise WeightError(f"weight has {lam.dim} coordinates, {rs.name} needs {rs.dim}")
    return lam


# ---------------- polynomials ----------------

def lambda_plus_blocks(sizes: Sequence[int], lam: Weight) -> MultiPoly:
    rs = _gl_system(sizes)
    _weight_for(rs, lam)
    lin = MultiPoly.linear(lam.coords)
    out = lin
    for b in rs.negative_roots:
        out = out * (lin + MultiPoly.linear(b.coords))
    return out


def lambda_plus(n: int, lam: Weight) -> MultiPoly:
    """lam * prod_{beta in R-} (lam + beta), homogeneous of degree C(n,2) + 1."""
    return lambda_plus_blocks((n,), lam)


@lru_cache(maxsize=None)
def vandermonde(n: int) -> MultiPoly:
    """prod_{i<j} (L_i - L_j)"""
    out = MultiPoly.constant(n, 1)
    for i in range(n):
        for j in range(i + 1, n):
            coeffs = [0] * n
            coeffs[i], coeffs[j] = 1, -1
            out = out * MultiPoly.linear(coeffs)
    return out


def sigma1_vandermonde(n: int) -> MultiPoly:
    return MultiPoly.linear([1] * n) * vandermonde(n)


def antisymmetrize(f: MultiPoly) -> MultiPoly:
    """sum_w sgn(w) f(L_w(1), ..., L_w(n)); monomials with a repeated exponent cancel."""
    n = f.nvars
    out: Dict[Exponent, Fraction] = {}
    for exp, c in f.items():
        if len(set(exp)) < n:
            continue
        for perm, sign in signed_permutations(n):
            new = [0] * n
            for i, e in enumerate(exp):
                new[perm[i]] = e
            key = tuple(new)
            out[key] = out.get(key, Fraction(0)) + sign * c
    return MultiPoly(n, out)


def jacobi_symmetrize(f: MultiPoly) -> MultiPoly:
    _check_n(f.nvars)
    return antisymmetrize(f).exact_divide(vandermonde(f.nvars))


def _scale_for(rs: RootSystem, lam: Weight) -> Fraction:
    """-(epsilon / |W_lam|)"""
    td = tangent_data(rs, lam)
    return -Fraction(td.epsilon, td.stabilizer_order)


def _sigma1_coefficient(linear: MultiPoly, n: int) -> Fraction:
    """The c with linear = c * sigma1; anything else is an inconsistency."""
    if linear.is_zero():
        return Fraction(0)
    c = linear.coeff(tuple(1 if j == 0 else 0 for j in range(n)))
    if linear != MultiPoly.linear([c] * n):
        raise InconsistencyError(f"class {linear!r} is not a multiple of sigma1")
    return c


def class_via_jacobi(n: int, lam: Weight) -> MultiPoly:
    """-(epsilon/|W_lam|) J(lam+), a multiple of sigma1."""
    rs = _gl_system((n,))
    cls = jacobi_symmetrize(lambda_plus(n, lam)).scale(_scale_for(rs, lam))
    _sigma1_coefficient(cls, n)
    return cls


def _degree_from_sigma1(c: Fraction, n: int, size: Fraction) -> Fraction:
    # class = -f sigma1 and deg = (n/|lam|) f
    return -c * n / size


def _size(coords: Sequence[Fraction]) -> Fraction:
    return sum(coords, Fraction(0))


def degree_via_jacobi(n: int, lam: Weight) -> Fraction:
    size = _size(lam.coords)
    if size == 0:
        raise WeightError(f"{lam} has |lam| = 0; the Jacobi route needs |lam| != 0")
    return _degree_from_sigma1(_sigma1_coefficient(class_via_jacobi(n, lam), n), n, size)


# ---------------- nu-permanents ----------------

def nu_permanent(f: MultiPoly, nu: ExponentVector) -> Fraction:
    """sum_w sgn(w) c(f, L^{w(nu)}) with w(nu) = (nu_w(1), ..., nu_w(n))."""
    if len(nu) != f.nvars:
        raise WeightError(f"exponent vector {nu} has the wrong length for {f.nvars} variables")
    total = Fraction(0)
    for perm, sign in signed_permutations(len(nu)):
        total += sign * f.coeff(tuple(nu[p] for p in perm))
    return total


def block_nu_permanent(f: MultiPoly, sizes: Sequence[int], nu: ExponentVector) -> Fraction:
    """nu-permanent over the product of the symmetric groups of the blocks."""
    offsets = [sum(sizes[:k]) for k in range(len(sizes))]
    per_block = [signed_permutations(n) for n in sizes]
    total = Fraction(0)
    for choice in product(*per_block):
        sign = 1
        exp: List[int] = []
        for (perm, s), off in zip(choice, offsets):
            sign *= s
            exp.extend(nu[off + p] for p in perm)
        total += sign * f.coeff(tuple(exp))
    return total


def permanent_class(sizes: Sequence[int], lam: Weight) -> List[Fraction]:
    """
    Class of the discriminant for a product of GL blocks, as sigma1 coefficients per block.

    Block u's coefficient is -(epsilon/|W_lam|) P(lam+, mu^(u)) where mu^(u) puts
    (n_u, n_u-2, ..., 0) on block u and the staircase on every other block.
    """
    rs = _gl_system(sizes)
    lp = lambda_plus_blocks(sizes, lam)
    scale = _scale_for(rs, lam)
    coeffs = []
    for u in range(len(sizes)):
        nu: List[int] = []
        for v, n in enumerate(sizes):
            nu.extend(mu_vector(n) if v == u else staircase(n))
        coeffs.append(scale * block_nu_permanent(lp, sizes, tuple(nu)))
    return coeffs


def class_via_permanent(n: int, lam: Weight) -> Fraction:
    """The sigma1 coefficient of the GL(n) class."""
    return permanent_class((n,), lam)[0]


def degree_via_permanent(sizes: Sequence[int], lam: Weight) -> Fraction:
    """Evaluate the class at L_(u) = -1/|lam_(u)| on one block with |lam_(u)| != 0."""
    coeffs = permanent_class(sizes, lam)
    degrees = []
    offset = 0
    for n, c in zip(sizes, coeffs):
        size = _size(lam.coords[offset:offset + n])
        offset += n
        if size:
            degrees.append(_degree_from_sigma1(c, n, size))
    if not degrees:
        raise WeightError(f"{lam} has |lam_(u)| = 0 on every block")
    if len(set(degrees)) != 1:
        raise InconsistencyError(f"blocks disagree on the degree of {lam}: {degrees}")
    return degrees[0]


# ---------------- scalar product ----------------

@lru_cache(maxsize=None)
def weyl_density(n: int) -> LaurentPoly:
    """prod_{i != j} (1 - L_i/L_j)"""
    out = LaurentPoly.constant(n, 1)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            exp = [0] * n
            exp[i], exp[j] = 1, -1
            out = out * LaurentPoly(n, {(0,) * n: 1, tuple(exp): -1})
    return out


def scalar_product(f: MultiPoly, g: MultiPoly) -> Fraction:
    n = f.nvars
    _check_n(n)
    integrand = f.to_laurent() * g.to_laurent().conjugate()
    return integrand.constant_term_of_product(weyl_density(n)) / math.factorial(n)


def degree_via_scalar_product(n: int, lam: Weight) -> Fraction:
    """deg = epsilon/(|lam| |W_lam|) * n!/(2n-3)!! * <lam+, sigma1 Delta>"""
    size = _size(lam.coords)
    if size == 0:
        raise WeightError(f"{lam} has |lam| = 0; the scalar-product route needs |lam| != 0")
    rs = _gl_system((n,))
    td = tangent_data(rs, lam)
    sp = scalar_product(lambda_plus(n, lam), sigma1_vandermonde(n))
    return Fraction(td.epsilon, td.stabilizer_order) / size * Fraction(math.factorial(n), semifactorial(2 * n - 3)) * sp
