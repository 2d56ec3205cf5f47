import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from senslab.core import (
    BallAdvice,
    Point,
    TruthTable,
    ball_indices,
    degree,
    degree_f2,
    restrict_to_ball,
    seeded_rng,
    sensitivity,
)
from senslab.families import and_fn, constant, dictator, or_fn, parity, random_dt, tribes
from senslab.reconstruct import (
    f2_extend,
    f2_extend_batch,
    majority_extend,
    majority_extend_batch,
    parity_extend,
    parity_extend_batch,
    r_maj,
    r_maj_bruteforce,
    r_par,
    r_par_bruteforce,
    sphere_extend,
)

small_tables = st.integers(min_value=1, max_value=6).flatmap(
    lambda n: st.binary(min_size=1 << n, max_size=1 << n).map(
        lambda raw: TruthTable(n, np.frombuffer(raw, dtype=np.uint8) % 2)
    )
)


# ---------------------------------------------------------------------------
# majority rule

def test_majority_recovers_tribes():
    f = tribes(2, 6)
    s = sensitivity(f).s
    out = majority_extend(restrict_to_ball(f, Point(6, 9), min(2 * s, 6)))
    assert out.ok and out.value == f


@given(small_tables, st.data())
@settings(max_examples=40)
def test_majority_recovers_from_double_radius(f, data):
    center = Point(f.n, data.draw(st.integers(min_value=0, max_value=(1 << f.n) - 1)))
    r = min(2 * sensitivity(f).s, f.n)
    out = majority_extend(restrict_to_ball(f, center, r))
    assert out.ok and out.value == f


def test_majority_fails_below_radius():
    # OR needs to see the lone zero: advice around 1^n at radius n-1 misses it
    f = or_fn(4)
    out = majority_extend(restrict_to_ball(f, Point(4, 15), 3))
    assert out.ok and out.value != f  # extends, but to the wrong function


def test_majority_tie_reported():
    adv = BallAdvice(Point(2, 0), 1, {0: 0, 1: 0, 2: 1})
    out = majority_extend(adv)
    assert not out.ok
    assert out.reason == "tie"
    assert out.failed_point == Point(2, 3)


@given(small_tables, st.data())
@settings(max_examples=25)
def test_majority_batch_matches_scalar(f, data):
    center = data.draw(st.integers(min_value=0, max_value=(1 << f.n) - 1))
    r = data.draw(st.integers(min_value=0, max_value=f.n))
    adv = restrict_to_ball(f, Point(f.n, center), r)
    out = majority_extend(adv)
    ext, ties = majority_extend_batch(f.n, center, r, f.values[None, :])
    assert bool(ties[0]) == (not out.ok)
    if out.ok:
        assert (ext[0] == out.value.values).all()


# ---------------------------------------------------------------------------
# parity rule

def test_parity_rule_and2_example():
    # values on B(00, 1) of AND_2; the rule extends to x1 + x2 at 11 -> 2 -> not Boolean
    adv = BallAdvice(Point(2, 0), 1, {0: 0, 1: 1, 2: 1})
    ext = parity_extend(adv)
    assert ext.values.tolist() == [0, 1, 1, 2]
    assert not ext.is_boolean()


def test_parity_recovers_low_degree():
    f = parity(5, support=frozenset({1, 4}))
    adv = restrict_to_ball(f, Point(5, 7), degree(f))
    ext = parity_extend(adv)
    assert ext.is_boolean() and ext.as_truth_table() == f


@given(small_tables, st.data())
@settings(max_examples=25)
def test_parity_extension_degree_at_most_radius(f, data):
    # random ball labelings, not restrictions: the extension is the unique
    # degree-<=r interpolant of the advice
    center = data.draw(st.integers(min_value=0, max_value=(1 << f.n) - 1))
    r = data.draw(st.integers(min_value=0, max_value=f.n))
    vals = {i: int(f.values[i]) for i in ball_indices(f.n, center, r)}
    ext = parity_extend(BallAdvice(Point(f.n, center), r, vals))
    if ext.is_boolean():
        assert degree(ext.as_truth_table()) <= max(r, 0)


@given(small_tables)
@settings(max_examples=25)
def test_parity_batch_matches_scalar(f):
    r = degree(f)
    ext = parity_extend_batch(f.n, 0, r, f.values[None, :])
    scalar = parity_extend(restrict_to_ball(f, Point(f.n, 0), r))
    assert (ext[0] == scalar.values).all()
    assert (ext[0] == f.values).all()


def test_f2_recovers_at_f2_degree():
    f = tribes(2, 6)
    r = degree_f2(f)
    assert f2_extend(restrict_to_ball(f, Point(6, 21), r)) == f
    batch = f2_extend_batch(6, 21, r, f.values[None, :])
    assert (batch[0] == f.values).all()


# ---------------------------------------------------------------------------
# sphere rule

def _sphere_values(f, center, r):
    from senslab.core import sphere_points

    return {y.index: f(y) for y in sphere_points(center, r)}


def test_sphere_extend_low_sensitivity():
    f = dictator(9, 4)  # s = 1 <= 9/4
    center = Point(9, 3)
    out = sphere_extend(9, center, 1, _sphere_values(f, center, 2))
    assert out.ok and out.value == f


def test_sphere_extend_out_of_range():
    f = parity(4)  # s = 4 > 4/4
    out = sphere_extend(4, Point(4, 0), 4, {})
    assert not out.ok and out.reason == "out-of-range"


def test_sphere_extend_domain_checked():
    with pytest.raises(ValueError):
        sphere_extend(9, Point(9, 0), 1, {0: 1})


# ---------------------------------------------------------------------------
# critical radii

def test_radius_known_values():
    assert r_maj(constant(4, 0)) == 0
    assert r_maj(dictator(4)) == 2
    assert r_maj(parity(3)) == 3  # min(2*3, 3)
    assert r_par(parity(6)) == 6
    assert r_par(dictator(6, 5)) == 1
    assert r_par(constant(5, 1)) == 0


@given(small_tables)
@settings(max_examples=15, deadline=None)
def test_bruteforce_radii_match_formulas(f):
    assert r_maj_bruteforce(f) == r_maj(f)
    assert r_par_bruteforce(f) == r_par(f)
    assert r_par_bruteforce(f, all_centers=False) == r_par(f)


def test_maj_radius_quadratic_in_par_radius():
    for f in (dictator(6), tribes(2, 6), parity(4), and_fn(5)):
        assert r_maj(f) <= 8 * max(r_par(f), 1) ** 2
