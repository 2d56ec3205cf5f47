import numpy as np
import pytest
from fractions import Fraction

from senslab.core import TruthTable, seeded_rng, sensitivity
from senslab.counting import (
    _chunk_class_ok,
    all_tables,
    build_census,
    class_members,
    count_bounds,
    enumerate_class,
    interpolation_experiment,
    interpolation_sample_size,
    per_function_degree,
    per_function_sensitivity,
    xor_sensitivity_check,
)
from senslab.families import dictator, parity, random_dt


# ---------------------------------------------------------------------------
# exhaustive censuses

def test_all_tables_shape():
    t = all_tables(3)
    assert t.shape == (256, 8)
    assert len(np.unique(t, axis=0)) == 256


def test_small_class_sizes():
    assert enumerate_class(2, 0) == 2
    assert enumerate_class(2, 1) == 6  # constants + (anti)dictators
    assert enumerate_class(2, 2) == 16
    assert enumerate_class(3, 1) == 8  # 2 + 2n


def test_census_anchors():
    for n in (1, 2, 3, 4):
        census = build_census(n)
        assert census.counts[0] == 2
        assert census.counts[-1] == 1 << (1 << n)
        assert all(a <= b for a, b in zip(census.counts, census.counts[1:]))
        for s in range(n + 1):
            assert census.lower[s] <= census.counts[s] <= census.upper[s]
    with pytest.raises(ValueError):
        build_census(5)  # needs allow_long


def test_count_bounds_examples():
    lo, hi = count_bounds(4, 1)
    assert lo == 8 and hi == 1 << 11
    assert lo <= 10 <= hi  # the true |F(1,4)| = 2 + 2n
    assert count_bounds(4, 0) == (1, 2)
    with pytest.raises(ValueError):
        count_bounds(4, 5)


def test_class_members_iterates_functions():
    members = list(class_members(2, 1))
    assert len(members) == 6
    assert all(sensitivity(f).s <= 1 for f in members)


def test_per_function_measures_match_scalar():
    from senslab.core import degree

    tables = all_tables(3)
    sens = per_function_sensitivity(tables, 3)
    degs = per_function_degree(tables, 3)
    for row in (0, 17, 100, 255):
        f = TruthTable(3, tables[row])
        assert sens[row] == sensitivity(f).s
        assert degs[row] == degree(f)


def test_chunk_filter_matches_scalar_sensitivity():
    rng = seeded_rng(12, "chunk")
    codes = rng.integers(0, 1 << 32, size=400, dtype=np.uint32)
    masks = _chunk_class_ok(codes)
    for j, code in enumerate(codes):
        bits = np.array([(int(code) >> i) & 1 for i in range(32)], dtype=np.uint8)
        s = sensitivity(TruthTable(5, bits)).s
        for bound in range(6):
            assert masks[bound][j] == (s <= bound)


def test_xor_sensitivity_subadditive():
    assert xor_sensitivity_check(dictator(4), dictator(4, 2))
    assert xor_sensitivity_check(parity(4), parity(4))
    for seed in range(5):
        assert xor_sensitivity_check(random_dt(6, 2, seed=seed), random_dt(6, 3, seed=seed + 50))


# ---------------------------------------------------------------------------
# interpolation experiment

def test_interpolation_full_sample_always_succeeds():
    rng = seeded_rng(1, "interp")
    res = interpolation_experiment(3, 1, 0, 5, rng, fixed_sample=np.arange(8))
    assert res.interpolation_successes == 5
    assert res.hitting_successes == 5
    assert res.success_fraction == 1
    assert res.agree_on_every_trial


def test_interpolation_empty_sample_always_fails():
    rng = seeded_rng(1, "interp")
    res = interpolation_experiment(3, 1, 0, 4, rng, fixed_sample=np.empty(0, dtype=np.int64))
    assert res.interpolation_successes == 0
    assert res.hitting_successes == 0


def test_interpolation_default_size_reliable():
    k = interpolation_sample_size(4, 1)
    assert k == 3 * 4 * (1 + 4 + 6 + 4 + 1)  # 3 * 2^2 * C(4, <=4)
    rng = seeded_rng(7, "interp-random")
    res = interpolation_experiment(4, 1, k, 100, rng)
    assert res.success_fraction >= Fraction(99, 100)


def test_interpolation_guard():
    with pytest.raises(ValueError):
        interpolation_experiment(5, 1, 4, 1, seeded_rng(0, "x"))
