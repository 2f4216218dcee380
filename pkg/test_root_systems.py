from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from root_systems import (
    BoundExceededError,
    PairingSign,
    RootSystemError,
    SpecParseError,
    Weight,
    WeightError,
    build_root_system,
    central_extension,
    dominant_conjugate,
    fundamental_weights,
    is_dominant,
    pairing_sign,
    parse_group_spec,
    parse_weight_spec,
    reflect,
    stabilizer_order,
    tangent_set,
    weight_from_y,
    weyl_group,
    weyl_orbit,
    y_coordinates,
)
import root_systems


@pytest.mark.parametrize("spec, negatives, order", [
    ([("A", 1)], 1, 2),
    ([("A", 3)], 6, 24),
    ([("B", 2)], 4, 8),
    ([("C", 3)], 9, 48),
    ([("D", 4)], 12, 192),
    ([("G2", 2)], 6, 12),
    ([("GL", 4)], 6, 24),
    ([("A", 1), ("A", 2)], 4, 12),
])
def test_root_counts_and_weyl_orders(spec, negatives, order):
    rs = build_root_system(spec)
    assert len(rs.negative_roots) == negatives
    assert rs.weyl_order == order
    assert len(weyl_group(rs)) == order


def test_unsupported_factors_are_rejected():
    with pytest.raises(RootSystemError):
        build_root_system([("E", 8)])
    with pytest.raises(RootSystemError):
        build_root_system([("D", 2)])
    with pytest.raises(RootSystemError):
        build_root_system([])


def test_gl_conventions():
    rs = build_root_system([("GL", 3)])
    assert rs.simple_roots == (Weight.of(1, -1, 0), Weight.of(0, 1, -1))
    assert set(rs.negative_roots) == {Weight.of(-1, 1, 0), Weight.of(0, -1, 1), Weight.of(-1, 0, 1)}
    assert rs.rho == Weight.of(1, 0, -1)
    assert not rs.is_semisimple
    assert is_dominant(rs, Weight.of(2, 1, 0))
    assert not is_dominant(rs, Weight.of(0, 1, 2))


def test_fundamental_weights_pair_to_delta():
    for spec in ([("A", 2)], [("B", 3)], [("C", 2)], [("D", 4)], [("G2", 2)], [("GL", 3)]):
        rs = build_root_system(spec)
        for i, omega in enumerate(fundamental_weights(rs)):
            assert y_coordinates(rs, omega) == [1 if j == i else 0 for j in range(rs.rank)]


def test_gl_fundamental_weights_are_integral():
    rs = build_root_system([("GL", 3)])
    assert fundamental_weights(rs) == [Weight.of(1, 0, 0), Weight.of(1, 1, 0)]
    assert fundamental_weights(build_root_system([("A", 2)]))[0] == Weight.of(Fraction(2, 3), Fraction(-1, 3), Fraction(-1, 3))


def test_y_coordinates_roundtrip_on_b2():
    rs = build_root_system([("B", 2)])
    assert weight_from_y(rs, (1, 0)) == Weight.of(Fraction(1, 2), Fraction(1, 2))
    assert weight_from_y(rs, (0, 1)) == Weight.of(0, 1)
    assert y_coordinates(rs, Weight.of(1, 1)) == [2, 0]


def test_pairing_sign_and_reflect():
    rs = build_root_system([("GL", 3)])
    lam = Weight.of(1, 0, 0)
    assert pairing_sign(rs, Weight.of(-1, 1, 0), lam) is PairingSign.NEGATIVE
    assert pairing_sign(rs, Weight.of(0, -1, 1), lam) is PairingSign.ZERO
    assert reflect(rs, lam, Weight.of(1, -1, 0)) == Weight.of(0, 1, 0)


def test_dominant_conjugate_returns_witness():
    rs = build_root_system([("GL", 3)])
    v = Weight.of(0, 1, 2)
    dom, w = dominant_conjugate(rs, v)
    assert dom == Weight.of(2, 1, 0)
    assert w.act(v) == dom


def test_orbit_of_gr3_in_gl8():
    rs = build_root_system([("GL", 8)])
    lam = Weight.of(1, 1, 1, 0, 0, 0, 0, 0)
    orbit = weyl_orbit(rs, lam)
    assert orbit.size == 56
    assert len(set(p.mu for p in orbit.points)) == 56
    assert stabilizer_order(rs, lam) == 720
    assert len(tangent_set(rs, lam)) == 15
    for p in orbit.points:
        assert p.witness.act(lam) == p.mu
        assert len(p.tangent) == 15


INVARIANT_GROUPS = ["A2", "B2", "C2", "G2", "GL3", "A1+A2", "B3"]


@pytest.mark.parametrize("group", INVARIANT_GROUPS)
def test_weyl_group_permutes_the_roots(group):
    rs = parse_group_spec(group)
    roots = set(rs.roots)
    for w in weyl_group(rs):
        assert {w.act(beta) for beta in rs.roots} == roots


@pytest.mark.parametrize("group", INVARIANT_GROUPS)
def test_weyl_group_preserves_the_form(group):
    rs = parse_group_spec(group)
    rng = np.random.default_rng(3)
    for w in weyl_group(rs):
        v1, v2 = (Weight.of(*(int(c) for c in rng.integers(-9, 9, size=rs.dim, endpoint=True))) for _ in range(2))
        assert w.act(v1).dot(w.act(v2)) == v1.dot(v2)


@pytest.mark.parametrize("group", ["A2", "B2", "G2", "A1+A1"])
def test_sign_is_multiplicative(group):
    elements = weyl_group(parse_group_spec(group))
    for w1, w2 in product(elements, repeat=2):
        assert (w1 * w2).sign == w1.sign * w2.sign


@pytest.mark.parametrize("group, ys", [("B2", (1, 0)), ("B2", (1, 1)), ("C2", (0, 2)), ("G2", (0, 1)), ("G2", (1, 1))])
def test_tangent_sets_move_with_the_orbit(group, ys):
    rs = parse_group_spec(group)
    lam = weight_from_y(rs, ys)
    base = tangent_set(rs, lam)
    orbit = {p.mu: set(p.tangent) for p in weyl_orbit(rs, lam).points}
    roots = set(rs.roots)
    for w in weyl_group(rs):
        mu = w.act(lam)
        assert {w.act(b) for b in base} == orbit[mu]
        assert orbit[mu] <= roots


def test_g2_regular_orbit_and_root_lengths():
    rs = parse_group_spec("G2")
    assert weyl_orbit(rs, weight_from_y(rs, (1, 1))).size == 12
    lengths = {b.dot(b) for b in rs.roots}
    assert len(lengths) == 2
    assert max(lengths) / min(lengths) == 3


def test_orbit_requires_dominant_weight():
    rs = build_root_system([("GL", 3)])
    with pytest.raises(WeightError):
        weyl_orbit(rs, Weight.of(0, 0, 1))


def test_weyl_group_signs_balance():
    rs = build_root_system([("B", 2)])
    signs = [w.sign for w in weyl_group(rs)]
    assert signs.count(1) == signs.count(-1) == 4
    assert weyl_group(rs)[0].word == ()


def test_weyl_group_bound(monkeypatch):
    monkeypatch.setattr(root_systems, "MAX_WEYL", 10)
    root_systems.weyl_group.cache_clear()
    try:
        with pytest.raises(BoundExceededError):
            weyl_group(build_root_system([("A", 3)]))
    finally:
        root_systems.weyl_group.cache_clear()


def test_central_extension_adds_rootless_block():
    rs = central_extension(build_root_system([("A", 1)]))
    assert rs.name == "A1+GL1"
    assert rs.dim == 3
    assert len(rs.negative_roots) == 1


# ---------------- spec strings ----------------

@pytest.mark.parametrize("text, name", [
    ("A2", "A2"),
    ("gl8", "GL8"),
    ("A1+A2", "A1+A2"),
    ("GL2xGL2xGL3", "GL2+GL2+GL3"),
    (" B2 ", "B2"),
    ("G2", "G2"),
])
def test_parse_group_spec(text, name):
    assert parse_group_spec(text).name == name


@pytest.mark.parametrize("text, position", [("E8", 0), ("A2*A1", 2), ("A1+", 3)])
def test_parse_group_spec_errors_carry_position(text, position):
    with pytest.raises(SpecParseError) as err:
        parse_group_spec(text)
    assert err.value.position == position


def test_parse_group_spec_rejects_g3():
    with pytest.raises(SpecParseError):
        parse_group_spec("G3")


def test_parse_weight_spec_bases():
    gl = parse_group_spec("GL3")
    assert parse_weight_spec(gl, "L:2,1,0") == Weight.of(2, 1, 0)
    assert parse_weight_spec(gl, "w:1,1") == Weight.of(2, 1, 0)
    a2 = parse_group_spec("A2")
    assert parse_weight_spec(a2, "w:1,1") == Weight.of(1, 0, -1)
    assert parse_weight_spec(gl, "L:1/2,1/2,1/2") == Weight.of(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))


@pytest.mark.parametrize("text", ["L:1,2", "w:1", "x:1,2", "L:1,a,0", "1,0,0"])
def test_parse_weight_spec_errors(text):
    with pytest.raises(SpecParseError):
        parse_weight_spec(parse_group_spec("GL3"), text)
