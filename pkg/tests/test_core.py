import numpy as np
import pytest
from fractions import Fraction
from hypothesis import given, settings
import hypothesis.strategies as st

from senslab.core import (
    BallAdvice,
    Point,
    TruthTable,
    all_neighbors,
    ball_indices,
    ball_points,
    bias,
    check_bias_bound,
    check_n,
    degree,
    degree_f2,
    distance_fraction,
    evaluate_multilinear,
    is_subcube,
    lower_shadow,
    max_n,
    mobius_coefficients,
    mobius_coefficients_f2,
    neighborhood,
    neighbors_at_weight,
    point,
    pointwise_sensitivity,
    profile,
    relevant_variables,
    restrict_to_ball,
    seeded_rng,
    sensitivity,
    sensitivity_at,
    sphere_points,
    zeta_transform,
)
from senslab.families import and_fn, constant, dictator, majority, or_fn, parity

bitstrings = st.text(alphabet="01", min_size=1, max_size=10)
tables = st.integers(min_value=1, max_value=6).flatmap(
    lambda n: st.binary(min_size=1 << n, max_size=1 << n).map(
        lambda raw: TruthTable(n, np.frombuffer(raw, dtype=np.uint8) % 2)
    )
)


# ---------------------------------------------------------------------------
# points and encodings

def test_bit_convention():
    # coordinate 1 is the leftmost character and the lowest-order bit
    assert Point.from_bits("110") == Point(3, 3)
    assert Point.from_bits("001") == Point(3, 4)
    assert Point(3, 3).bits() == "110"
    assert Point(4, 1).bits() == "1000"


@given(bitstrings)
def test_bits_roundtrip(b):
    assert Point.from_bits(b).bits() == b


def test_point_validation():
    with pytest.raises(ValueError):
        point(3, 8)
    with pytest.raises(ValueError):
        point(3, -1)


def test_neighbor_enumerations():
    x = Point(3, 7)  # 111
    assert {y.index for y in all_neighbors(x)} == {3, 5, 6}
    assert {y.index for y in neighbors_at_weight(x, 2)} == {3, 5, 6}
    assert neighbors_at_weight(Point(3, 0), 1) == all_neighbors(Point(3, 0))
    assert {y.index for y in lower_shadow(x, 1)} == {3, 5, 6}
    assert {y.index for y in lower_shadow(x, 3)} == {0}
    with pytest.raises(ValueError):
        lower_shadow(Point(3, 1), 2)


def test_ball_and_sphere_sizes():
    assert ball_indices(5, 0, 0) == [0]
    assert len(ball_indices(5, 0, 2)) == 1 + 5 + 10
    assert ball_indices(4, 3, 1) == sorted([3, 2, 1, 7, 11])
    assert len(sphere_points(Point(4, 0), 2)) == 6
    assert [p.index for p in ball_points(Point(3, 0), 3)] == list(range(8))


def test_neighborhood_dispatch():
    x = Point(4, 5)
    assert neighborhood(x, "all-neighbors") == all_neighbors(x)
    assert neighborhood(x, "at-weight", 3) == neighbors_at_weight(x, 3)
    assert neighborhood(x, "ball", 2) == ball_points(x, 2)
    assert neighborhood(x, "sphere", 1) == sphere_points(x, 1)
    assert neighborhood(x, "lower-shadow", 1) == lower_shadow(x, 1)
    with pytest.raises(ValueError):
        neighborhood(x, "cylinder")


# ---------------------------------------------------------------------------
# truth tables

def test_truth_table_basics():
    f = TruthTable.from_bits(2, "0111")  # OR on 2 variables
    assert f == or_fn(2)
    assert f(Point(2, 0)) == 0 and f(3) == 1
    assert f.bits_string() == "0111"
    assert f.count_ones() == 3
    assert f.complement().bits_string() == "1000"
    assert (f ^ f).count_ones() == 0
    g = TruthTable.from_indices(2, [1, 2, 3])
    assert g == f
    h = TruthTable.from_callable(2, lambda bits: int(any(bits)))
    assert h == f


def test_truth_table_validation():
    with pytest.raises(ValueError):
        TruthTable(2, np.zeros(3, dtype=np.uint8))
    with pytest.raises(ValueError):
        TruthTable.from_bits(2, "0121")


# ---------------------------------------------------------------------------
# sensitivity

def test_sensitivity_known_values():
    assert sensitivity(parity(4)) == (4, 4, 4)
    assert sensitivity(dictator(5)) == (1, 1, 1)
    assert sensitivity(constant(3, 0)) == (0, 0, 0)
    assert sensitivity(and_fn(3)) == (3, 1, 3)
    assert sensitivity(or_fn(3)) == (3, 3, 1)
    assert sensitivity(majority(3)) == (2, 2, 2)


def test_sensitivity_at_corners():
    f = or_fn(4)
    assert sensitivity_at(f, Point(4, 0)) == 4
    assert sensitivity_at(f, Point(4, 1)) == 1
    assert sensitivity_at(f, Point(4, 15)) == 0


@given(tables)
def test_pointwise_matches_scalar(f):
    assert [int(v) for v in pointwise_sensitivity(f)] == [
        sensitivity_at(f, Point(f.n, i)) for i in range(1 << f.n)
    ]


# ---------------------------------------------------------------------------
# multilinear coefficients

def test_mobius_majority3():
    # maj(x1,x2,x3) = x1x2 + x1x3 + x2x3 - 2 x1x2x3
    c = mobius_coefficients(majority(3))
    assert {i: int(v) for i, v in enumerate(c.values) if v} == {3: 1, 5: 1, 6: 1, 7: -2}


@given(tables)
def test_zeta_inverts_mobius(f):
    c = mobius_coefficients(f)
    assert zeta_transform(c) == f


@given(tables)
@settings(max_examples=30)
def test_multilinear_evaluation(f):
    c = mobius_coefficients(f)
    assert all(evaluate_multilinear(c, Point(f.n, i)) == f(i) for i in range(1 << f.n))


def test_degree_known_values():
    assert degree(parity(5)) == 5
    assert degree(dictator(4, 2)) == 1
    assert degree(constant(3, 1)) == 0
    assert degree(majority(3)) == 3
    assert degree_f2(majority(3)) == 2
    assert degree_f2(parity(5)) == 1
    assert degree_f2(and_fn(4)) == 4


def test_f2_degree_at_most_degree_exhaustive():
    for m in range(1 << 8):
        f = TruthTable(3, np.array([(m >> i) & 1 for i in range(8)], dtype=np.uint8))
        assert degree_f2(f) <= degree(f)


def test_mobius_f2_agrees_mod2():
    f = majority(3)
    ints = mobius_coefficients(f).values % 2
    assert (mobius_coefficients_f2(f).values == ints.astype(np.uint8)).all()


# ---------------------------------------------------------------------------
# bias and subcubes

def test_is_subcube():
    assert is_subcube(3, [0, 1])          # x2 = x3 = 0
    assert is_subcube(3, range(8))
    assert is_subcube(3, [5])
    assert not is_subcube(3, [0, 3])
    assert not is_subcube(3, [])


def test_bias_bound_and():
    f = and_fn(4)
    assert bias(f)[1] == Fraction(1, 16)
    rep = check_bias_bound(f)
    assert rep.holds_1 and rep.tight_1 and rep.subcube_1
    assert rep.holds_0 and not rep.tight_0 and not rep.subcube_0


def test_bias_bound_parity_not_tight():
    rep = check_bias_bound(parity(4))
    assert rep.holds_0 and rep.holds_1
    assert not rep.tight_0 and not rep.tight_1


@given(tables)
def test_bias_bound_tight_iff_subcube(f):
    rep = check_bias_bound(f)
    assert rep.holds_0 and rep.holds_1
    assert rep.tight_0 == (rep.subcube_0 and f.count_ones() < (1 << f.n))
    assert rep.tight_1 == (rep.subcube_1 and f.count_ones() > 0)


def test_relevant_variables():
    assert relevant_variables(dictator(5, 3)) == {3}
    assert relevant_variables(constant(4, 0)) == frozenset()
    assert relevant_variables(parity(4)) == {1, 2, 3, 4}


def test_distance_fraction():
    f = parity(3)
    assert distance_fraction(f, f) == 0
    assert distance_fraction(f, f.complement()) == 1
    g = f ^ dictator(3, 1)
    assert distance_fraction(f, g) == Fraction(1, 2)


# ---------------------------------------------------------------------------
# ball advice

def test_restrict_to_ball_or3():
    adv = restrict_to_ball(or_fn(3), Point(3, 0), 1)
    assert adv[Point(3, 0)] == 0
    assert adv[1] == adv[2] == adv[4] == 1
    assert 3 not in adv
    dense = adv.dense()
    assert dense[3] == 255 and dense[0] == 0


def test_ball_advice_validation():
    with pytest.raises(ValueError):
        BallAdvice(Point(3, 0), 1, {0: 0, 1: 1})  # missing points
    with pytest.raises(ValueError):
        BallAdvice(Point(3, 0), 0, {1: 0})  # outside the ball
    with pytest.raises(ValueError):
        BallAdvice(Point(3, 0), 0, {0: 2})  # not a bit


def test_profile_majority():
    p = profile(majority(3))
    assert (p.s, p.deg, p.deg2) == (2, 3, 2)
    assert p.mu1 == Fraction(1, 2)
    assert p.relevant == {1, 2, 3}


# ---------------------------------------------------------------------------
# seeding and caps

def test_seeded_rng_deterministic():
    a = seeded_rng(7, "alpha").integers(0, 1 << 30, 5)
    b = seeded_rng(7, "alpha").integers(0, 1 << 30, 5)
    c = seeded_rng(7, "beta").integers(0, 1 << 30, 5)
    assert (a == b).all()
    assert (a != c).any()
    d = seeded_rng(7, "x", 3).integers(0, 1 << 30, 5)
    e = seeded_rng(7, "x", 4).integers(0, 1 << 30, 5)
    assert (d != e).any()


def test_max_n_env_override(monkeypatch):
    monkeypatch.setenv("SENSLAB_MAX_N", "6")
    assert max_n() == 6
    with pytest.raises(ValueError):
        check_n(7)
    check_n(6)
    monkeypatch.delenv("SENSLAB_MAX_N")
    check_n(20)
    with pytest.raises(ValueError):
        check_n(25)
