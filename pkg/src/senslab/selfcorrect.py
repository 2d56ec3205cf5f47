"""Self-correction of low-sensitivity functions from corrupted copies.

Global: iterate a noisy-majority smoothing step over the whole table; each
step thresholds T_{1-2delta} at 1/2 with exact rational decisions near the
boundary (exact ties keep the previous value and are reported, never guessed).

Local: answer a single point by building a c-regular depth-k tree whose
children are noisy samples of their parent, querying the corrupted oracle at
the c^k leaves only, and folding majorities upward.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, log2

import numpy as np

from .core import Point, TruthTable, ball_indices, check_n
from .evaluate import majority_threshold_c
from .noise import (
    THRESHOLD_BAND,
    exact_noise_value,
    lambda_set,
    noise_operator,
    noise_rate,
    sample_noisy,
)


@dataclass
class CorruptedOracle:
    truth: TruthTable
    corrupted: frozenset[int]
    query_count: int = 0

    def __post_init__(self):
        self.corrupted = frozenset(int(i) for i in self.corrupted)
        bad = [i for i in self.corrupted if not 0 <= i < (1 << self.truth.n)]
        if bad:
            raise ValueError(f"corrupted points out of range: {bad[:3]}")

    def answer(self, x: Point | int) -> int:
        idx = x.index if isinstance(x, Point) else int(x)
        self.query_count += 1
        return int(self.truth.values[idx]) ^ (idx in self.corrupted)

    def answer_batch(self, indices: np.ndarray) -> np.ndarray:
        self.query_count += len(indices)
        vals = self.truth.values[indices].copy()
        if self.corrupted:
            mask = np.zeros(1 << self.truth.n, dtype=bool)
            mask[list(self.corrupted)] = True
            vals ^= mask[indices]
        return vals

    def corrupted_table(self) -> TruthTable:
        vals = self.truth.values.copy()
        for i in self.corrupted:
            vals[i] ^= 1
        return TruthTable(self.truth.n, vals)


@dataclass(frozen=True)
class CorrectorParams:
    """Correction parameters; the analysis constants are never pinned by the
    theory, so c1/c2 (global) and d1/d2 (local) default to 6/4 and stay
    overridable."""

    s: int
    delta: Fraction = None  # type: ignore[assignment]
    k: int | None = None
    epsilon: Fraction = Fraction(1, 10)
    c1: int = 6
    c2: int = 4
    d1: int = 6
    d2: int = 4

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("self-correction needs s >= 1")
        d = noise_rate(self.delta if self.delta is not None else Fraction(1, 20 * self.s))
        object.__setattr__(self, "delta", d)
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        if self.k is not None and self.k < 1:
            raise ValueError("k must be >= 1")

    def default_k(self, n: int) -> int:
        """k = c2 * s * log2(n/s), rounded up, at least 1."""
        return max(1, ceil(self.c2 * self.s * log2(n / self.s)))

    def local_k(self, n: int) -> int:
        return max(1, ceil(self.d2 * self.s * log2(n / self.s)))

    def local_c(self) -> int:
        return majority_threshold_c(Fraction(1, 4), self.epsilon)


# ---------------------------------------------------------------------------
# corruption helpers

def corrupt(
    f: TruthTable, rate, rng: np.random.Generator
) -> tuple[CorruptedOracle, TruthTable]:
    """Flip a uniformly random set of round(rate * 2^n) points."""
    rate = Fraction(rate)
    if not 0 <= rate <= 1:
        raise ValueError("corruption rate must lie in [0, 1]")
    size = 1 << f.n
    count = round(rate * size)
    chosen = rng.choice(size, size=count, replace=False) if count else np.empty(0, dtype=np.int64)
    oracle = CorruptedOracle(f, frozenset(int(i) for i in chosen))
    return oracle, oracle.corrupted_table()


def corrupt_targeted(f: TruthTable, x: Point, count: int) -> tuple[CorruptedOracle, TruthTable]:
    """Adversarial placement: corrupt the `count` points nearest to x
    (increasing distance, then index) — the region local queries sample."""
    if not 0 <= count <= (1 << f.n):
        raise ValueError("count out of range")
    chosen: set[int] = set()
    ordered: list[int] = []
    for r in range(f.n + 1):
        if len(ordered) >= count:
            break
        for i in ball_indices(f.n, x.index, r):
            if len(ordered) >= count:
                break
            if i not in chosen:
                chosen.add(i)
                ordered.append(i)
    oracle = CorruptedOracle(f, frozenset(ordered))
    return oracle, oracle.corrupted_table()


def error_set(g: TruthTable, f: TruthTable) -> frozenset[int]:
    if g.n != f.n:
        raise ValueError("dimension mismatch")
    return frozenset(int(i) for i in np.nonzero(g.values != f.values)[0])


# ---------------------------------------------------------------------------
# global corrector

def majority_step(g: TruthTable, delta) -> tuple[TruthTable, frozenset[int]]:
    """One smoothing step: out(x) = [T_{1-2delta} g(x) > 1/2], exact on the
    boundary; exact ties keep g(x) and are reported."""
    delta = noise_rate(delta)
    tvals = noise_operator(g, delta).values
    out = (tvals > 0.5 + THRESHOLD_BAND).astype(np.uint8)
    ties: set[int] = set()
    boundary = np.nonzero(np.abs(tvals - 0.5) <= THRESHOLD_BAND)[0]
    for i in boundary.tolist():
        exact = exact_noise_value(g.values, Point(g.n, int(i)), delta)
        if exact > Fraction(1, 2):
            out[i] = 1
        elif exact < Fraction(1, 2):
            out[i] = 0
        else:
            out[i] = g.values[i]
            ties.add(int(i))
    return TruthTable(g.n, out), frozenset(ties)


@dataclass
class GlobalResult:
    table: TruthTable
    converged: bool
    iterations: int
    trace: list[int] | None = None
    ties: frozenset[int] = frozenset()
    contraction_ok: bool | None = None


def global_correct(
    r: TruthTable,
    params: CorrectorParams,
    truth: TruthTable | None = None,
    check_contraction: bool = False,
) -> GlobalResult:
    """Iterate majority_step at most k times, stopping at a fixpoint.

    With `truth` supplied (test mode) the trace records |S_t| = |{x : f_t(x)
    != f(x)}| per state; with `check_contraction` it also verifies
    S_t <= Lambda_{delta,2/5}(S_{t-1}) exactly (needs the pairwise-cap n)."""
    k = params.k if params.k is not None else params.default_k(r.n)
    cur = r
    trace = [len(error_set(cur, truth))] if truth is not None else None
    ties: set[int] = set()
    contraction_ok: bool | None = True if (truth is not None and check_contraction) else None
    converged = False
    iterations = 0
    for _ in range(k):
        nxt, step_ties = majority_step(cur, params.delta)
        ties |= step_ties
        iterations += 1
        if nxt == cur:
            converged = True
            break
        if truth is not None:
            trace.append(len(error_set(nxt, truth)))
            if check_contraction:
                check_n(r.n, 13)
                prev_err = error_set(cur, truth)
                lam = lambda_set(r.n, prev_err, params.delta, Fraction(2, 5))
                if not error_set(nxt, truth) <= lam:
                    contraction_ok = False
        cur = nxt
    return GlobalResult(
        table=cur,
        converged=converged,
        iterations=iterations,
        trace=trace,
        ties=frozenset(ties),
        contraction_ok=contraction_ok,
    )


# ---------------------------------------------------------------------------
# local corrector

def local_correct(
    oracle: CorruptedOracle,
    x: Point,
    params: CorrectorParams,
    rng: np.random.Generator,
    k: int | None = None,
) -> tuple[int, int]:
    """Answer f(x) from the corrupted oracle via a c-regular depth-k sampled
    tree (children are noisy copies of the parent; leaves query the oracle).
    Returns (bit, queries_used); queries_used is exactly c^k."""
    if k is None:
        k = params.k if params.k is not None else params.local_k(oracle.truth.n)
    c = params.local_c()
    before = oracle.query_count

    def rec(p: Point, depth: int) -> int:
        if depth == k:
            return oracle.answer(p)
        votes = sum(
            rec(sample_noisy(p, params.delta, rng), depth + 1) for _ in range(c)
        )
        return 1 if 2 * votes > c else 0

    value = rec(x, 0)
    used = oracle.query_count - before
    assert used == c**k
    return value, used


def local_correct_batch(
    oracle: CorruptedOracle,
    x: Point,
    params: CorrectorParams,
    trials: int,
    rng: np.random.Generator,
    k: int | None = None,
    trial_chunk: int = 200,
) -> np.ndarray:
    """`trials` independent local corrections of the same point, expanded
    level-by-level as arrays (same sampling law as local_correct)."""
    n = oracle.truth.n
    if k is None:
        k = params.k if params.k is not None else params.local_k(n)
    c = params.local_c()
    p, q = params.delta.numerator, params.delta.denominator
    out = np.empty(trials, dtype=np.uint8)
    done = 0
    while done < trials:
        m = min(trial_chunk, trials - done)
        pts = np.full(m, x.index, dtype=np.int64)
        for _ in range(k):
            pts = np.repeat(pts, c)
            draws = rng.integers(0, q, size=(len(pts), n)) < p
            masks = (draws.astype(np.int64) << np.arange(n, dtype=np.int64)).sum(axis=1)
            pts ^= masks
        votes = oracle.answer_batch(pts).astype(np.int64)
        for _ in range(k):
            votes = votes.reshape(-1, c).sum(axis=1)
            votes = (2 * votes > c).astype(np.int64)
        out[done : done + m] = votes.astype(np.uint8)
        done += m
    return out
