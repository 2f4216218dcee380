from fractions import Fraction

import numpy as np
import pytest

from exact_algebra import (
    LaurentPoly,
    MultiPoly,
    NotDivisibleError,
    UniPoly,
    VariableCountError,
    as_integer,
    format_rational,
    laurent_conjugate,
    laurent_constant_term,
    poly_compose,
    poly_eval,
    poly_exact_divide,
    poly_mul,
    poly_permute,
    product,
    to_rational,
    uni_coeff,
    uni_divmod,
    uni_exact_divide,
)


def x(i, n=3):
    return MultiPoly.variable(n, i)


# ---------------- scalars ----------------

@pytest.mark.parametrize("raw, expected", [(3, Fraction(3)), ("3/4", Fraction(3, 4)), (" -2 ", Fraction(-2)), ("1.5", Fraction(3, 2))])
def test_to_rational_is_exact(raw, expected):
    assert to_rational(raw) == expected


def test_to_rational_refuses_floats_and_bools():
    with pytest.raises(TypeError):
        to_rational(0.5)
    with pytest.raises(TypeError):
        to_rational(True)
    with pytest.raises(ValueError):
        to_rational("one half")


def test_rational_helpers():
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(-8, 2)) == "-4"
    assert as_integer(Fraction(10, 5)) == 2
    assert as_integer(Fraction(1, 3)) is None


# ---------------- univariate ----------------

def test_unipoly_arithmetic_and_evaluation():
    t = UniPoly.t()
    f = (t + 1) ** 3
    assert f.coeffs == tuple(Fraction(c) for c in (1, 3, 3, 1))
    assert f(2) == 27
    assert uni_coeff(f, 2) == 3
    assert uni_coeff(f, 7) == 0
    assert UniPoly().degree is None
    assert (f - f).is_zero()


def test_unipoly_divmod():
    t = UniPoly.t()
    num = (t - 1) * (t + 1) ** 3
    quot, rem = uni_divmod(num, t + 2)
    assert quot * (t + 2) + rem == num
    assert rem.degree in (None, 0)
    assert rem.coeff(0) == 3


def test_uni_exact_divide():
    t = UniPoly.t()
    assert uni_exact_divide(t ** 2 - 1, t - 1) == t + 1
    with pytest.raises(NotDivisibleError):
        uni_exact_divide(t ** 2 + 1, t - 1)


# ---------------- multivariate ----------------

def test_multipoly_ring_operations():
    f = x(0) + x(1)
    g = x(0) - x(1)
    assert poly_mul(f, g) == x(0) ** 2 - x(1) ** 2
    assert poly_eval(f * g, (3, 1, 7)) == 8
    assert (f * g).total_degree == 2
    assert (f * g).is_homogeneous()
    assert MultiPoly.zero(3).total_degree is None


def test_multipoly_rejects_mismatched_variable_counts():
    with pytest.raises(VariableCountError):
        x(0, 2) + x(0, 3)
    with pytest.raises(VariableCountError):
        x(0).evaluate((1, 2))


def test_exact_divide_recovers_factor():
    a = x(0) - x(1)
    b = x(0) * x(2) + 3 * x(1) - 2
    assert poly_exact_divide(a * b, a) == b


def test_exact_divide_reports_remainder():
    with pytest.raises(NotDivisibleError):
        poly_exact_divide(x(0) ** 2 + x(1), x(0) - x(1))


def test_compose_shifts_variables():
    f = x(0, 2) * x(1, 2)
    shifted = poly_compose(f, [x(0, 2) + 1, x(1, 2) + 1])
    assert shifted == x(0, 2) * x(1, 2) + x(0, 2) + x(1, 2) + 1


def test_permute_moves_slots():
    f = MultiPoly.monomial((2, 1, 0))
    assert poly_permute(f, (1, 2, 0)) == MultiPoly.monomial((0, 2, 1))


def test_coefficient_of_extracts_power():
    a, b, t = (MultiPoly.variable(3, i) for i in range(3))
    f = (a * t + b) ** 2
    assert f.coefficient_of(2, 2) == a ** 2
    assert f.coefficient_of(2, 1) == 2 * a * b


def test_to_string_orders_by_degree_then_lex():
    f = MultiPoly.linear((1, 1), 1) * x(0, 2)
    assert f.to_string(["x1", "x2"]) == "x1^2 + x1*x2 + x1"
    assert (-2 * x(1, 2) + 1).to_string(["x1", "x2"]) == "-2*x2 + 1"


def test_product_of_empty_sequence_is_one():
    assert product([], 2) == MultiPoly.constant(2, 1)
    assert product([x(0, 2), x(1, 2)], 2) == MultiPoly.monomial((1, 1))


# ---------------- Laurent ----------------

def test_laurent_conjugate_and_constant_term():
    f = LaurentPoly(2, {(1, -1): 3, (0, 0): 2, (-1, 1): 5})
    assert laurent_conjugate(f) == LaurentPoly(2, {(-1, 1): 3, (0, 0): 2, (1, -1): 5})
    assert laurent_constant_term(f) == 2
    # [f * conj(f)]_1 is the sum of squared coefficients
    assert f.constant_term_of_product(f.conjugate()) == 9 + 4 + 25


def random_poly(rng, nvars=3, terms=4, cls=MultiPoly, low=0):
    return cls(nvars, {
        tuple(int(e) for e in rng.integers(low, 3, size=nvars, endpoint=True)): int(rng.integers(-5, 5, endpoint=True))
        for _ in range(terms)
    })


@pytest.mark.parametrize("seed", range(8))
def test_ring_axioms_on_random_polynomials(seed):
    rng = np.random.default_rng(seed)
    f, g, h = (random_poly(rng) for _ in range(3))
    zero, one = MultiPoly.zero(3), MultiPoly.constant(3, 1)
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + zero == f and f * one == f
    assert (f - f).is_zero()


@pytest.mark.parametrize("seed", range(8))
def test_evaluation_is_a_ring_homomorphism(seed):
    rng = np.random.default_rng(seed)
    f, g = random_poly(rng), random_poly(rng)
    point = [Fraction(int(rng.integers(-7, 7, endpoint=True)), int(rng.integers(1, 4, endpoint=True))) for _ in range(3)]
    assert (f * g).evaluate(point) == f.evaluate(point) * g.evaluate(point)
    assert (f + g).evaluate(point) == f.evaluate(point) + g.evaluate(point)


@pytest.mark.parametrize("seed", range(8))
def test_laurent_conjugation_is_an_involution(seed):
    rng = np.random.default_rng(seed)
    f = random_poly(rng, cls=LaurentPoly, low=-2)
    assert laurent_conjugate(laurent_conjugate(f)) == f
    assert laurent_constant_term(laurent_conjugate(f)) == laurent_constant_term(f)


def test_angle_bracket_row_from_division():
    # (t-1)(t+1)^5 = (t+2) q(t) + 3 and q holds <5 k>
    t = UniPoly.t()
    quot, rem = uni_divmod((t - 1) * (t + 1) ** 5, t + 2)
    assert rem == UniPoly.constant(3)
    assert uni_coeff(quot, 0) == -2
    assert [uni_coeff(quot, k) for k in range(6)] == [-2, -1, -2, 1, 2, 1]
