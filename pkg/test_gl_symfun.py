import math
from fractions import Fraction
from itertools import product

import pytest

from degree_engine import degree
from exact_algebra import MultiPoly
from gl_symfun import (
    antisymmetrize,
    block_nu_permanent,
    class_via_jacobi,
    class_via_permanent,
    degree_via_jacobi,
    degree_via_permanent,
    degree_via_scalar_product,
    jacobi_symmetrize,
    lambda_plus,
    mu_vector,
    nu_permanent,
    permanent_class,
    scalar_product,
    semifactorial,
    sigma1_vandermonde,
    signed_permutations,
    staircase,
    vandermonde,
)
from root_systems import BoundExceededError, Weight, WeightError, build_root_system


def sigma1(n):
    return MultiPoly.linear([1] * n)


def test_exponent_vectors():
    assert staircase(4) == (3, 2, 1, 0)
    assert mu_vector(4) == (4, 2, 1, 0)
    assert sum(mu_vector(5)) == math.comb(5, 2) + 1


def test_semifactorial():
    assert [semifactorial(m) for m in (-1, 1, 3, 5, 7)] == [1, 1, 3, 15, 105]


def test_signed_permutations():
    perms = signed_permutations(3)
    assert len(perms) == 6
    assert sum(s for _, s in perms) == 0
    assert dict(perms)[(0, 1, 2)] == 1
    assert dict(perms)[(1, 0, 2)] == -1


# ---------------- lambda+ and J ----------------

def test_lambda_plus_gl2():
    L1, L2 = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
    assert lambda_plus(2, Weight.of(3, 0)) == 3 * L1 * (2 * L1 + L2)


@pytest.mark.parametrize("lam", [(2, 1, 0), (3, 3, 1, 0), (1, 1, 1, 1)])
def test_lambda_plus_is_homogeneous(lam):
    n = len(lam)
    f = lambda_plus(n, Weight.of(*lam))
    assert f.is_homogeneous()
    assert f.total_degree == math.comb(n, 2) + 1


def test_lambda_plus_matches_pointwise_product():
    lam = Weight.of(3, 1, 0)
    point = (Fraction(2), Fraction(-7), Fraction(5))
    rs = build_root_system([("GL", 3)])
    expected = lam.evaluate(point)
    for b in rs.negative_roots:
        expected *= lam.evaluate(point) + b.evaluate(point)
    assert lambda_plus(3, lam).evaluate(point) == expected


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_jacobi_of_staircase_and_mu(n):
    assert jacobi_symmetrize(MultiPoly.monomial(staircase(n))) == MultiPoly.constant(n, 1)
    assert jacobi_symmetrize(MultiPoly.monomial(mu_vector(n))) == sigma1(n)


def test_jacobi_of_repeated_exponents_vanishes():
    assert jacobi_symmetrize(MultiPoly.monomial((2, 2, 0))).is_zero()
    assert antisymmetrize(MultiPoly.monomial((1, 1, 0, 3))).is_zero()


def test_jacobi_is_linear_over_symmetric_factors():
    g = MultiPoly.monomial((3, 1, 0))
    sym = sigma1(3) * sigma1(3) + MultiPoly.monomial((1, 1, 1))
    assert jacobi_symmetrize(sym * g) == sym * jacobi_symmetrize(g)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_jacobi_of_every_monomial_of_the_class_degree(n):
    """J(L^nu) is 0 or +-sigma1 whenever |nu| = C(n,2) + 1."""
    size = math.comb(n, 2) + 1
    allowed = {MultiPoly.zero(n), sigma1(n), -sigma1(n)}
    for nu in product(range(size + 1), repeat=n - 1):
        last = size - sum(nu)
        if last < 0:
            continue
        assert jacobi_symmetrize(MultiPoly.monomial(nu + (last,))) in allowed


def test_jacobi_bound():
    with pytest.raises(BoundExceededError):
        jacobi_symmetrize(MultiPoly.monomial(staircase(7)))


# ---------------- classes and degrees ----------------

def test_class_via_jacobi_gl3_adjoint_shift():
    assert class_via_jacobi(3, Weight.of(2, 1, 0)) == MultiPoly.linear([-6] * 3)


def test_class_via_permanent_gl3():
    assert class_via_permanent(3, Weight.of(2, 1, 0)) == -6


@pytest.mark.parametrize("lam, expected", [((2, 1, 0), 6), ((1, 1, 0, 0), 2), ((3, 0, 0), 12), ((3, 0), 4), ((1, 1, 1, 1), 1)])
def test_symmetric_function_routes(lam, expected):
    n = len(lam)
    w = Weight.of(*lam)
    assert degree_via_jacobi(n, w) == expected
    assert degree_via_permanent((n,), w) == expected
    assert degree_via_scalar_product(n, w) == expected


def test_routes_need_nonzero_size():
    with pytest.raises(WeightError):
        degree_via_jacobi(3, Weight.of(1, 0, -1))
    with pytest.raises(WeightError):
        degree_via_scalar_product(3, Weight.of(1, 0, -1))


def test_permanent_on_product_of_gl2_matches_engine():
    sizes = (2, 2, 2)
    lam = Weight.of(1, 0, 1, 0, 1, 0)
    rs = build_root_system([("GL", n) for n in sizes])
    assert degree_via_permanent(sizes, lam) == degree(rs, lam).degree == 4
    assert len(set(permanent_class(sizes, lam))) == 1


# ---------------- nu-permanents ----------------

def test_nu_permanent_of_binary_product():
    a, a_, b, b_, c, c_ = 1, 2, 3, 5, 7, 11
    L1, L2 = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
    f = (a * L1 + a_ * L2) * (b * L1 + b_ * L2) * (c * L1 + c_ * L2)
    expected = a * b * c_ + a * b_ * c + a_ * b * c - a_ * b_ * c - a_ * b * c_ - a * b_ * c_
    assert nu_permanent(f, (2, 1)) == expected
    assert nu_permanent(f, (1, 2)) == -expected


def test_nu_permanent_of_vandermonde():
    assert nu_permanent(vandermonde(3), staircase(3)) == 6
    assert nu_permanent(vandermonde(3), (2, 2, 0)) == 0


def test_block_permanent_reduces_to_single_block():
    f = lambda_plus(3, Weight.of(2, 1, 0))
    assert block_nu_permanent(f, (3,), mu_vector(3)) == nu_permanent(f, mu_vector(3))


# ---------------- scalar product ----------------

def test_scalar_product_of_constants():
    one = MultiPoly.constant(2, 1)
    assert scalar_product(one, one) == 1


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_sigma1_vandermonde_norm(n):
    f = sigma1_vandermonde(n)
    assert scalar_product(f, f) == n * semifactorial(2 * n - 3)


def test_scalar_product_is_symmetric():
    f = MultiPoly.monomial((2, 1, 0)) + MultiPoly.monomial((0, 0, 3))
    g = sigma1(3) * MultiPoly.monomial((1, 1, 0))
    assert scalar_product(f, g) == scalar_product(g, f)
