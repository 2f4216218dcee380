from fractions import Fraction

import pytest

from closed_forms import (
    ANGLE_BRACKETS,
    FAMILIES,
    aa_degree,
    abn_degree,
    angle_bracket,
    angle_bracket_series_remainder,
    boole_degree,
    closed_form_degree,
    family_degree,
    family_weight,
    gammaab_degree,
    gammaab_divided_difference,
    gammaab_factored,
    gr3_degree,
    grassmannian_degree,
    holme_gr2,
    hyperdet_degree,
    tevelev_degree,
)
from degree_engine import degree
from root_systems import Weight, build_root_system, parse_group_spec
from verify_suites import ANGLE_BRACKET_ROWS


def engine(lam):
    return degree(build_root_system([("GL", len(lam))]), Weight.of(*lam)).degree


# ---------------- Boole ----------------

@pytest.mark.parametrize("n", range(2, 7))
@pytest.mark.parametrize("a", range(1, 6))
def test_boole_matches_engine(n, a):
    assert boole_degree(n, a) == engine((a,) + (0,) * (n - 1))


def test_boole_values():
    assert boole_degree(2, 3) == 4
    assert boole_degree(3, 3) == 12
    assert boole_degree(4, 1) == 0


# ---------------- Grassmannians ----------------

@pytest.mark.parametrize("n, expected", [(3, 0), (4, 2), (5, 0), (6, 3), (7, 0), (8, 4)])
def test_holme(n, expected):
    assert holme_gr2(n) == expected


@pytest.mark.parametrize("n", range(3, 9))
def test_holme_matches_engine(n):
    report = degree(build_root_system([("GL", n)]), Weight.of(1, 1, *(0,) * (n - 2)))
    assert holme_gr2(n) == report.degree
    assert report.is_hypersurface == (n % 2 == 0)


def test_grassmannian_values():
    assert grassmannian_degree(4, 2) == 2
    assert grassmannian_degree(8, 3) == 16
    assert grassmannian_degree(7, 3) == grassmannian_degree(7, 4)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_grassmannian_of_lines_and_points(n):
    assert grassmannian_degree(n, 1) == 0
    assert grassmannian_degree(n, 2) == holme_gr2(n)


@pytest.mark.parametrize("n, expected", [(4, 0), (5, 0), (6, 4), (7, 7), (8, 16)])
def test_gr3_values(n, expected):
    assert gr3_degree(n) == expected


@pytest.mark.parametrize("n", range(6, 10))
def test_gr3_matches_engine_and_grassmannian(n):
    assert gr3_degree(n) == engine((1, 1, 1) + (0,) * (n - 3))
    assert gr3_degree(n) == grassmannian_degree(n, 3)


def test_grassmannian_rejects_bad_k():
    with pytest.raises(ValueError):
        grassmannian_degree(4, 4)


# ---------------- <n k> ----------------

def test_angle_bracket_rows():
    for n, row in enumerate(ANGLE_BRACKET_ROWS):
        assert ANGLE_BRACKETS.row(n) == row
    assert angle_bracket(5, 4) == 2


@pytest.mark.parametrize("n", range(0, 13))
def test_angle_bracket_binomial_form_and_remainder(n):
    assert ANGLE_BRACKETS.row(n) == [ANGLE_BRACKETS.binomial_form(n, k) for k in range(n + 1)]
    assert angle_bracket_series_remainder(n) == -3 * (-1) ** n


def test_angle_bracket_out_of_range():
    with pytest.raises(ValueError):
        angle_bracket(3, 4)
    with pytest.raises(ValueError):
        ANGLE_BRACKETS.row(-1)


# ---------------- Gamma_ab ----------------

@pytest.mark.parametrize("n", range(3, 7))
def test_gammaab_adjoint(n):
    assert gammaab_degree(n, 1, 1) == n * (n - 1)
    assert engine(family_weight("gammaab", n, 1, 1).coords) == n * (n - 1)


@pytest.mark.parametrize("n, a, b", [(3, 1, 1), (3, 2, 1), (3, 1, 2), (4, 1, 1), (4, 2, 1)])
def test_gammaab_matches_engine(n, a, b):
    assert gammaab_degree(n, a, b) == engine(family_weight("gammaab", n, a, b).coords)


@pytest.mark.parametrize("a", range(1, 6))
@pytest.mark.parametrize("b", range(1, 6))
def test_gammaab_cubic_form(a, b):
    assert gammaab_degree(3, a, b) == 6 * (a + b - 1) * (2 * a * b - a - b + 1)


@pytest.mark.parametrize("n", range(3, 9))
def test_gammaab_alternative_forms(n):
    for a in range(1, 6):
        for b in range(1, 6):
            expected = gammaab_degree(n, a, b)
            assert gammaab_degree(n, b, a) == expected
            assert gammaab_divided_difference(n, a, b) == expected
            if n <= 5:
                assert gammaab_factored(n, a, b) == expected


def test_gammaab_factored_is_limited():
    with pytest.raises(ValueError):
        gammaab_factored(6, 1, 1)


# ---------------- a L1 + b L2 ----------------

@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
@pytest.mark.parametrize("a", [2, 3, 4, 5])
def test_tevelev_is_abn_with_b_one(n, a):
    assert tevelev_degree(n, a) == abn_degree(n, a, 1)


def test_abn_values():
    assert abn_degree(3, 2, 1) == 6
    assert tevelev_degree(4, 2) == 24


@pytest.mark.parametrize("n, a, b", [(n, a, b) for n in range(3, 6) for a in range(2, 5) for b in range(1, a)])
def test_abn_matches_engine(n, a, b):
    assert abn_degree(n, a, b) == engine(family_weight("abn", n, a, b).coords)


def test_abn_needs_a_above_b():
    with pytest.raises(ValueError):
        abn_degree(3, 2, 2)


@pytest.mark.parametrize("a", [1, 2, 3, 4])
def test_aa_in_three_variables_is_dual_boole(a):
    assert aa_degree(3, a) == boole_degree(3, a)


@pytest.mark.parametrize("a", [1, 2])
def test_aa_matches_engine(a):
    assert aa_degree(4, a) == engine((a, a, 0, 0))


# ---------------- hyperdeterminants ----------------

@pytest.mark.parametrize("dims, expected", [((2, 2, 3), 6), ((3, 2, 2), 6), ((2, 3, 4), 12), ((2, 2, 4), 0), ((2, 2, 2), 4), ((2, 2), 2)])
def test_hyperdet(dims, expected):
    assert hyperdet_degree(dims).degree == expected


def test_hyperdet_below_boundary_uses_engine():
    report = hyperdet_degree((2, 2, 2))
    assert report.methods == ("orbit",)
    assert hyperdet_degree((2, 2, 3)).methods == ("closed-form",)


@pytest.mark.parametrize("dims", [(2,), (1, 2), ()])
def test_hyperdet_rejects_bad_formats(dims):
    with pytest.raises(ValueError):
        hyperdet_degree(dims)


# ---------------- families and recognition ----------------

def test_family_weights():
    assert family_weight("gammaab", 4, 2, 1) == Weight.of(3, 1, 1, 0)
    assert family_weight("grassmannian", 5, 2) == Weight.of(1, 1, 0, 0, 0)
    assert family_weight("aa", 3, 2) == Weight.of(2, 2, 0)


@pytest.mark.parametrize("kind", FAMILIES)
def test_family_degree_matches_engine(kind):
    n, a, b = (4, 2, 1)
    assert family_degree(kind, n, a, b) == engine(family_weight(kind, n, a, b).coords)


def test_unknown_family():
    with pytest.raises(ValueError):
        family_weight("tensor", 3, 1)
    with pytest.raises(ValueError):
        family_degree("tensor", 3, 1)


@pytest.mark.parametrize("group, lam, expected", [
    ("GL3", (2, 1, 0), 6),
    ("GL3", (3, 0, 0), 12),
    ("GL4", (3, 1, 1, 1), 4),
    ("GL4", (2, 1, 1, 0), 12),
    ("GL3", (1, 1, 0), 0),
    ("GL8", (1, 1, 1, 0, 0, 0, 0, 0), 16),
    ("GL2+GL2+GL3", (1, 0, 1, 0, 1, 0, 0), 6),
])
def test_closed_form_recognizer(group, lam, expected):
    assert closed_form_degree(parse_group_spec(group), Weight.of(*lam)) == Fraction(expected)


@pytest.mark.parametrize("group, lam", [("GL3", (1, 1, 1)), ("B2", (1, 0)), ("GL4", (3, 2, 1, 0)), ("GL2+GL2+GL2", (1, 0, 1, 0, 1, 0))])
def test_closed_form_recognizer_declines(group, lam):
    assert closed_form_degree(parse_group_spec(group), Weight.of(*lam)) is None
