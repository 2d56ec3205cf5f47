"""Advice-based evaluators.

Three ways to evaluate a sensitivity-s function anywhere on the cube given
its values near 0^n:

  * bottom-up: slide a radius-2s ball along a shortest path from 0^n to x,
    one coordinate flip at a time (one-coordinates of x in increasing index
    order); each point entering the ball takes the majority of its 2s+1
    neighbors in the previous ball.
  * top-down: memoized recursion; a point of weight > 2s takes the majority
    of 2s+1 of its lower neighbors (clear the lowest set bits one at a time).
  * parallel: randomized recursive majority over samples from the lower
    shadow D(x, t) with t = floor(wt(x)/(10s+1)); per-call error <= 1/20,
    amplified by independent repetition.

All majorities here have odd arity, so no tie rule is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .core import (
    BallAdvice,
    Point,
    TruthTable,
    ball_indices,
    check_n,
    popcount,
    weight,
    weights_vector,
)


class AdviceInconsistent(Exception):
    """The advice cannot come from a function of the promised sensitivity."""


@dataclass
class EvalStats:
    points_computed: int = 0
    points_by_weight: dict[int, int] = field(default_factory=dict)
    ball_shifts: int = 0
    majority_votes: int = 0
    rng_draws: int = 0
    max_depth: int = 0

    def record_point(self, w: int) -> None:
        self.points_computed += 1
        self.points_by_weight[w] = self.points_by_weight.get(w, 0) + 1


# ---------------------------------------------------------------------------
# majority sample counts

@lru_cache(maxsize=None)
def _threshold_c(mu: Fraction, delta_target: Fraction) -> int:
    c = 1
    while True:
        # Pr[Bin(c, mu) > c/2], exact
        tail = sum(
            comb(c, j) * mu**j * (1 - mu) ** (c - j) for j in range(c // 2 + 1, c + 1)
        )
        if tail <= delta_target:
            return c
        c += 2


def majority_threshold_c(mu, delta_target) -> int:
    """Smallest odd c with Pr[Bin(c, mu) > c/2] <= delta_target (exact
    rational binomial tails; odd so the majority is never tied)."""
    mu = Fraction(mu)
    delta_target = Fraction(delta_target)
    if not 0 <= mu < Fraction(1, 2):
        raise ValueError("mu must lie in [0, 1/2)")
    if not 0 < delta_target < 1:
        raise ValueError("delta_target must lie in (0, 1)")
    return _threshold_c(mu, delta_target)


# ---------------------------------------------------------------------------
# bottom-up

def _require_advice(advice: BallAdvice, s: int, factor: int) -> int:
    if advice.center.index != 0:
        raise ValueError("advice must be centered at 0^n")
    need = min(factor * s, advice.n)
    if advice.radius < need:
        raise ValueError(f"advice radius {advice.radius} < required {need}")
    return need


def bottom_up_eval(advice: BallAdvice, s: int, x: Point) -> tuple[int, EvalStats]:
    """Ball-shifting evaluation; returns (f(x), stats).

    points_computed counts initial advice reads plus every majority-filled
    point; the ball size is checked to stay constant across shifts.
    """
    stats = EvalStats()
    r = _require_advice(advice, s, 2)
    if weight(x) <= advice.radius:
        stats.record_point(weight(x))
        return advice[x], stats

    ball = {i: advice[i] for i in ball_indices(x.n, 0, r)}
    size = len(ball)
    for i in ball:
        stats.record_point(popcount(i))
    center = 0
    for bit in (1 << i for i in range(x.n) if (x.index >> i) & 1):
        new_center = center ^ bit
        new_ball: dict[int, int] = {}
        for m in ball_indices(x.n, 0, r):
            p = new_center ^ m
            if popcount(p ^ center) <= r:
                new_ball[p] = ball[p]
            else:
                diff = p ^ center
                votes = 0
                arity = 0
                for j in range(x.n):
                    if (diff >> j) & 1:
                        votes += ball[p ^ (1 << j)]
                        arity += 1
                if 2 * votes == arity:
                    raise AdviceInconsistent(
                        f"tie at point index {p} while shifting to {new_center}"
                    )
                new_ball[p] = 1 if 2 * votes > arity else 0
                stats.record_point(popcount(p))
                stats.majority_votes += 1
        ball = new_ball
        center = new_center
        stats.ball_shifts += 1
        if len(ball) != size:
            raise AssertionError("ball size changed across a shift")
    return ball[x.index], stats


@lru_cache(maxsize=8)
def _shift_plan(n: int, r: int):
    """Per-bit gather plans for the batched bottom-up walk.

    Offsets are masks m with wt(m) <= r; a ball around c holds the value at
    c ^ m in column index_of(m).  Shifting c -> c ^ bit copies column
    index_of(m ^ bit) when wt(m ^ bit) <= r and otherwise (wt(m) = r, bit not
    in m) takes a majority over the r+1 columns {m ^ bit ^ (1 << j) : j set
    in m ^ bit} of the old ball.
    """
    offs = ball_indices(n, 0, r)
    pos = {m: j for j, m in enumerate(offs)}
    plans = []
    for i in range(n):
        bit = 1 << i
        copy_src = np.empty(len(offs), dtype=np.int64)
        new_rows = []
        gather = []
        for j, m in enumerate(offs):
            old = m ^ bit
            if popcount(old) <= r:
                copy_src[j] = pos[old]
            else:
                copy_src[j] = -1
                new_rows.append(j)
                gather.append([pos[old ^ (1 << q)] for q in range(n) if (old >> q) & 1])
        plans.append((
            copy_src,
            np.asarray(new_rows, dtype=np.int64),
            np.asarray(gather, dtype=np.int64) if gather else np.empty((0, r + 1), dtype=np.int64),
        ))
    return offs, plans


def bottom_up_all(f: TruthTable, s: int) -> TruthTable:
    """Run the ball-shifting evaluator at every input at once.

    Walks share prefixes: with flips in increasing index order, the ball at x
    is one shift (by x's highest set bit) past the ball at x minus that bit,
    so a single sweep in increasing index order fills a table of balls.
    """
    n = f.n
    r = min(2 * s, n)
    advice = {i: int(f.values[i]) for i in ball_indices(n, 0, r)}
    if r >= n:
        return TruthTable(n, f.values)
    offs, plans = _shift_plan(n, r)
    balls = np.zeros((1 << n, len(offs)), dtype=np.uint8)
    balls[0] = [advice[m] for m in offs]
    for x in range(1, 1 << n):
        hb = x.bit_length() - 1
        prev = balls[x ^ (1 << hb)]
        copy_src, new_rows, gather = plans[hb]
        cur = prev[np.maximum(copy_src, 0)]
        if len(new_rows):
            votes = prev[gather].sum(axis=1, dtype=np.int64)
            cur[new_rows] = (2 * votes > gather.shape[1]).astype(np.uint8)
        balls[x] = cur
    return TruthTable(n, balls[:, 0])


# ---------------------------------------------------------------------------
# top-down

def colex_smallest_lower_neighbors(x: Point, k: int) -> list[Point]:
    """The k lower neighbors obtained by clearing, one at a time, the k
    lowest-index one-bits of x."""
    if not 0 <= k <= weight(x):
        raise ValueError(f"k={k} exceeds weight {weight(x)}")
    out = []
    rest = x.index
    for _ in range(k):
        low = rest & -rest
        out.append(Point(x.n, x.index ^ low))
        rest ^= low
    return out


def top_down_eval(advice: BallAdvice, s: int, x: Point) -> tuple[int, EvalStats]:
    """Memoized recursion on 2s+1 lower neighbors per point."""
    stats = EvalStats()
    _require_advice(advice, s, 2)
    cutoff = min(2 * s, advice.radius)
    memo: dict[int, int] = {}

    def rec(p: Point) -> int:
        got = memo.get(p.index)
        if got is not None:
            return got
        if weight(p) <= cutoff:
            v = advice[p]
        else:
            votes = sum(rec(q) for q in colex_smallest_lower_neighbors(p, 2 * s + 1))
            stats.majority_votes += 1
            v = 1 if 2 * votes > 2 * s + 1 else 0
        memo[p.index] = v
        stats.record_point(weight(p))
        return v

    return rec(x), stats


def top_down_visit_profile(n: int, s: int) -> np.ndarray:
    """profile[x, k] = number of distinct weight-k points the top-down
    recursion started at x visits.  The visit set is determined by (x, s, n)
    alone — the recursion always descends into the same 2s+1 lower neighbors
    regardless of the advice values — so one bitset closure over the cube
    covers every possible run."""
    check_n(n, 13)
    r = min(2 * s, n)
    words = ((1 << n) + 63) // 64
    closure = np.zeros((1 << n, words), dtype=np.uint64)
    w = weights_vector(n)
    idx = np.arange(1 << n)
    closure[idx, idx // 64] |= np.uint64(1) << (idx % 64).astype(np.uint64)
    bits = set_bits_table(n)
    for level in range(r + 1, n + 1):
        for x in idx[w == level].tolist():
            acc = closure[x]
            for j in range(2 * s + 1):
                acc |= closure[x ^ (1 << int(bits[x, j]))]
    profile = np.zeros((1 << n, n + 1), dtype=np.int64)
    for k in range(n + 1):
        mask = np.zeros(words, dtype=np.uint64)
        members = idx[w == k]
        np.bitwise_or.at(mask, members // 64, np.uint64(1) << (members % 64).astype(np.uint64))
        profile[:, k] = np.bitwise_count(closure & mask[None, :]).sum(axis=1)
    return profile


_BITS_TABLE_CACHE: dict[int, np.ndarray] = {}


def set_bits_table(n: int) -> np.ndarray:
    """table[x, j] = position of the j-th lowest set bit of x (255 padding)."""
    t = _BITS_TABLE_CACHE.get(n)
    if t is None:
        t = np.full((1 << n, n), 255, dtype=np.uint8)
        for x in range(1 << n):
            j = 0
            rest = x
            while rest:
                low = rest & -rest
                t[x, j] = low.bit_length() - 1
                rest ^= low
                j += 1
        t.setflags(write=False)
        _BITS_TABLE_CACHE[n] = t
    return t


def top_down_all(f: TruthTable, s: int) -> TruthTable:
    """Levelwise batched top-down: weight w points only read weight w-1."""
    n = f.n
    r = min(2 * s, n)
    if r >= n:
        return TruthTable(n, f.values)
    w = weights_vector(n)
    idx = np.arange(1 << n)
    out = np.zeros(1 << n, dtype=np.uint8)
    known = w <= r
    out[known] = f.values[known]
    bits = set_bits_table(n)
    for level in range(r + 1, n + 1):
        pts = idx[w == level]
        votes = np.zeros(len(pts), dtype=np.int64)
        for j in range(2 * s + 1):
            votes += out[pts ^ (np.uint32(1) << bits[pts, j].astype(np.uint32))]
        out[pts] = (2 * votes > 2 * s + 1).astype(np.uint8)
    return TruthTable(n, out)


# ---------------------------------------------------------------------------
# parallel

PARALLEL_BASE_ERROR = Fraction(1, 20)
PARALLEL_SAMPLE_ERROR = Fraction(1, 5)


def parallel_sample_count() -> int:
    """c(1/5, 1/20): samples per recursion level."""
    return majority_threshold_c(PARALLEL_SAMPLE_ERROR, PARALLEL_BASE_ERROR)


def parallel_eval(
    advice: BallAdvice, s: int, x: Point, rng: np.random.Generator,
    stats: EvalStats | None = None,
) -> int:
    """Randomized recursive-majority evaluation; error probability <= 1/20.

    Subtrees draw fresh samples (no memoization): reusing a sample across
    branches would correlate the majority votes the analysis needs
    independent.
    """
    if s < 1:
        raise ValueError("parallel evaluation needs s >= 1")
    _require_advice(advice, s, 10)
    c = parallel_sample_count()
    ones_cache = set_bits_table(advice.n) if advice.n <= 16 else None

    def rec(p: int, depth: int) -> int:
        d = popcount(p)
        if stats is not None:
            stats.max_depth = max(stats.max_depth, depth)
        if d <= min(10 * s, advice.n):
            if stats is not None:
                stats.record_point(d)
            return advice[p]
        t = d // (10 * s + 1)
        votes = 0
        for _ in range(c):
            if ones_cache is not None:
                ones = ones_cache[p, :d].astype(np.int64)
            else:
                ones = np.asarray([i for i in range(advice.n) if (p >> i) & 1])
            chosen = rng.choice(d, size=t, replace=False)
            if stats is not None:
                stats.rng_draws += 1
            mask = 0
            for j in chosen:
                mask |= 1 << int(ones[int(j)])
            votes += rec(p ^ mask, depth + 1)
        if stats is not None:
            stats.majority_votes += 1
        return 1 if 2 * votes > c else 0

    return rec(x.index, 0)


def amplified_eval(
    advice: BallAdvice, s: int, x: Point, target_error, rng: np.random.Generator,
    stats: EvalStats | None = None,
) -> int:
    """Repeat parallel_eval c(1/20, target_error) times and take the
    majority."""
    target = Fraction(target_error)
    if not 0 < target <= PARALLEL_BASE_ERROR:
        raise ValueError("target error must lie in (0, 1/20]")
    c = majority_threshold_c(PARALLEL_BASE_ERROR, target)
    votes = sum(parallel_eval(advice, s, x, rng, stats) for _ in range(c))
    return 1 if 2 * votes > c else 0


def parallel_eval_batch(
    f: TruthTable, s: int, points: np.ndarray, trials: int, rng: np.random.Generator
) -> np.ndarray:
    """Vectorized parallel evaluation: `trials` independent runs per input
    point; returns a (len(points), trials) uint8 array of outputs.

    Distributionally identical to parallel_eval (same sampling law per node,
    independent subtrees); used for large statistical sweeps.
    """
    if s < 1:
        raise ValueError("parallel evaluation needs s >= 1")
    n = f.n
    check_n(n, 20)
    c = parallel_sample_count()
    bits = set_bits_table(n)
    w = weights_vector(n)
    cutoff = min(10 * s, n)

    def sample_children(live: np.ndarray, t: np.ndarray) -> np.ndarray:
        """One uniformly-chosen t-subset of set bits cleared per point."""
        if int(t.max()) == 1:
            slot = (rng.random(len(live)) * w[live]).astype(np.int64)
            return live ^ (np.int64(1) << bits[live, slot].astype(np.int64))
        keys = rng.random((len(live), n))
        keys[bits[live] == 255] = np.inf  # ignore padding columns
        order = np.argsort(keys, axis=1)
        masks = np.zeros(len(live), dtype=np.int64)
        for q in range(int(t.max())):
            take = q < t
            ones_pos = bits[live[take], order[take, q]].astype(np.int64)
            masks[take] |= np.int64(1) << ones_pos
        return live ^ masks

    def eval_points(pts: np.ndarray) -> np.ndarray:
        done = w[pts] <= cutoff
        out = np.empty(len(pts), dtype=np.uint8)
        out[done] = f.values[pts[done]]
        live = pts[~done]
        if len(live):
            t = w[live].astype(np.int64) // (10 * s + 1)
            children = np.empty((len(live), c), dtype=np.int64)
            for j in range(c):
                children[:, j] = sample_children(live, t)
            votes = eval_points(children.reshape(-1)).reshape(len(live), c)
            out[~done] = (2 * votes.sum(axis=1, dtype=np.int64) > c).astype(np.uint8)
        return out

    points = np.asarray(points, dtype=np.int64)
    results = np.empty((len(points), trials), dtype=np.uint8)
    for tr in range(trials):
        results[:, tr] = eval_points(points)
    return results
