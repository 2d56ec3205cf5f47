"""Core representations and exact complexity measures for Boolean functions.

Conventions shared by every module and by the file formats:

  * A point of the n-cube is an integer index in [0, 2^n); coordinate x_i
    (1-based) is bit (i-1) of the index.  Sorting points by index therefore
    coincides with sorting by sum(x_i * 2^i) (colex order on strings).
  * Bitstrings render coordinate 1 leftmost: "110" means x1=1, x2=1, x3=0,
    i.e. index 0b011 = 3.
  * Probabilities and biases are exact `fractions.Fraction` values unless a
    function is explicitly documented as a float fast path.
"""

from __future__ import annotations

import os
import zlib
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Callable, Iterable, NamedTuple

import numpy as np

MAX_N = 24          # hard cap for truth-table scale
PAIRWISE_MAX_N = 13  # cap for O(4^n) all-pairs routines


def max_n() -> int:
    """Effective n cap; the SENSLAB_MAX_N environment variable can lower it."""
    cap = os.environ.get("SENSLAB_MAX_N")
    if cap:
        return min(MAX_N, int(cap))
    return MAX_N


def check_n(n: int, cap: int | None = None) -> None:
    limit = min(cap, max_n()) if cap is not None else max_n()
    if not 1 <= n <= limit:
        raise ValueError(f"n={n} outside supported range [1, {limit}]")


def popcount(x: int) -> int:
    return int(x).bit_count()


_WEIGHTS_CACHE: dict[int, np.ndarray] = {}


def weights_vector(n: int) -> np.ndarray:
    """Hamming weight of every index in [0, 2^n), cached per n."""
    w = _WEIGHTS_CACHE.get(n)
    if w is None:
        w = np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.uint8)
        w.setflags(write=False)
        _WEIGHTS_CACHE[n] = w
    return w


class Point(NamedTuple):
    n: int
    index: int

    def bits(self) -> str:
        return "".join("1" if (self.index >> i) & 1 else "0" for i in range(self.n))

    @classmethod
    def from_bits(cls, s: str) -> "Point":
        if set(s) - {"0", "1"}:
            raise ValueError(f"invalid bitstring {s!r}")
        idx = sum(1 << i for i, ch in enumerate(s) if ch == "1")
        return cls(len(s), idx)


def point(n: int, index: int) -> Point:
    check_n(n)
    if not 0 <= index < (1 << n):
        raise ValueError(f"index {index} out of range for n={n}")
    return Point(n, index)


def weight(x: Point) -> int:
    return popcount(x.index)


class TruthTable:
    """Total Boolean function on n variables, one value per point index."""

    __slots__ = ("n", "values")

    def __init__(self, n: int, values):
        check_n(n)
        arr = np.asarray(values, dtype=np.uint8)
        if arr.shape != (1 << n,):
            raise ValueError(f"expected {1 << n} values for n={n}, got {arr.shape}")
        if arr.max(initial=0) > 1:
            raise ValueError("truth-table values must be 0/1")
        arr = arr.copy()
        arr.setflags(write=False)
        self.n = n
        self.values = arr

    @classmethod
    def from_bits(cls, n: int, bits: str) -> "TruthTable":
        if len(bits) != 1 << n or set(bits) - {"0", "1"}:
            raise ValueError("bad truth-table bit string")
        return cls(n, np.frombuffer(bits.encode(), dtype=np.uint8) - ord("0"))

    @classmethod
    def from_callable(cls, n: int, fn: Callable[[tuple[int, ...]], int]) -> "TruthTable":
        vals = [fn(tuple((i >> j) & 1 for j in range(n))) & 1 for i in range(1 << n)]
        return cls(n, vals)

    @classmethod
    def from_indices(cls, n: int, ones: Iterable[int]) -> "TruthTable":
        vals = np.zeros(1 << n, dtype=np.uint8)
        vals[list(ones)] = 1
        return cls(n, vals)

    def bits_string(self) -> str:
        return "".join("01"[v] for v in self.values)

    def __call__(self, x: Point | int) -> int:
        idx = x.index if isinstance(x, Point) else x
        return int(self.values[idx])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruthTable)
            and self.n == other.n
            and bool(np.array_equal(self.values, other.values))
        )

    def __hash__(self):
        return hash((self.n, self.values.tobytes()))

    def __xor__(self, other: "TruthTable") -> "TruthTable":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return TruthTable(self.n, self.values ^ other.values)

    def complement(self) -> "TruthTable":
        return TruthTable(self.n, 1 - self.values)

    def count_ones(self) -> int:
        return int(self.values.sum())

    def __repr__(self):
        if self.n <= 5:
            return f"TruthTable(n={self.n}, bits={self.bits_string()!r})"
        return f"TruthTable(n={self.n}, ones={self.count_ones()})"


@dataclass(frozen=True)
class IntegerFunction:
    """Integer-valued total function on the cube (multilinear coefficients,
    parity-rule extensions, ...)."""

    n: int
    values: np.ndarray  # int64, length 2^n

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.int64)
        if arr.shape != (1 << self.n,):
            raise ValueError("bad length")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def is_boolean(self) -> bool:
        return bool(np.isin(self.values, (0, 1)).all())

    def as_truth_table(self) -> TruthTable:
        if not self.is_boolean():
            raise ValueError("function is not 0/1-valued")
        return TruthTable(self.n, self.values.astype(np.uint8))

    def __eq__(self, other) -> bool:
        if isinstance(other, TruthTable):
            return self.n == other.n and bool(
                np.array_equal(self.values, other.values.astype(np.int64))
            )
        return (
            isinstance(other, IntegerFunction)
            and self.n == other.n
            and bool(np.array_equal(self.values, other.values))
        )


# ---------------------------------------------------------------------------
# neighborhood enumeration

def _masks_of_weight(n: int, k: int) -> list[int]:
    return [sum(1 << p for p in pos) for pos in combinations(range(n), k)]


def all_neighbors(x: Point) -> list[Point]:
    return [Point(x.n, x.index ^ (1 << i)) for i in range(x.n)]


def neighbors_at_weight(x: Point, r: int) -> list[Point]:
    """N_r(x): neighbors of x having Hamming weight exactly r."""
    if not 0 <= r <= x.n:
        raise ValueError(f"weight {r} out of range")
    return [y for y in all_neighbors(x) if weight(y) == r]


def ball_indices(n: int, center: int, r: int) -> list[int]:
    if not 0 <= r <= n:
        raise ValueError(f"radius {r} out of range for n={n}")
    out = []
    for k in range(r + 1):
        out.extend(center ^ m for m in _masks_of_weight(n, k))
    out.sort()
    return out


def ball_points(x: Point, r: int) -> list[Point]:
    """B(x, r), sorted by index."""
    return [Point(x.n, i) for i in ball_indices(x.n, x.index, r)]


def sphere_points(x: Point, r: int) -> list[Point]:
    """S(x, r): points at distance exactly r, sorted by index."""
    if not 0 <= r <= x.n:
        raise ValueError(f"radius {r} out of range")
    return [Point(x.n, i) for i in sorted(x.index ^ m for m in _masks_of_weight(x.n, r))]


def lower_shadow(x: Point, t: int) -> list[Point]:
    """D(x, t): points obtained by clearing exactly t one-coordinates of x."""
    if not 0 <= t <= weight(x):
        raise ValueError(f"t={t} exceeds weight {weight(x)}")
    ones = [i for i in range(x.n) if (x.index >> i) & 1]
    return [
        Point(x.n, x.index ^ sum(1 << p for p in pos)) for pos in combinations(ones, t)
    ]


def neighborhood(x: Point, kind: str, param: int | None = None) -> list[Point]:
    """Dispatcher over the neighborhood enumerations (CLI surface)."""
    if kind == "all-neighbors":
        return all_neighbors(x)
    if kind == "at-weight":
        return neighbors_at_weight(x, param)
    if kind == "ball":
        return ball_points(x, param)
    if kind == "sphere":
        return sphere_points(x, param)
    if kind == "lower-shadow":
        return lower_shadow(x, param)
    raise ValueError(f"unknown neighborhood kind {kind!r}")


# ---------------------------------------------------------------------------
# sensitivity

class SensResult(NamedTuple):
    s: int
    s0: int
    s1: int


def sensitivity_at(f: TruthTable, x: Point) -> int:
    idx = x.index
    v = f.values[idx]
    return int(sum(f.values[idx ^ (1 << i)] != v for i in range(f.n)))


def pointwise_sensitivity(f: TruthTable) -> np.ndarray:
    """s(f, x) for every x at once (uint8 array of length 2^n)."""
    n = f.n
    idx = np.arange(1 << n)
    counts = np.zeros(1 << n, dtype=np.uint8)
    for i in range(n):
        counts += f.values != f.values[idx ^ (1 << i)]
    return counts


def sensitivity(f: TruthTable) -> SensResult:
    counts = pointwise_sensitivity(f)
    ones = f.values == 1
    s1 = int(counts[ones].max()) if ones.any() else 0
    s0 = int(counts[~ones].max()) if (~ones).any() else 0
    return SensResult(max(s0, s1), s0, s1)


# ---------------------------------------------------------------------------
# multilinear (Mobius) machinery

def _mobius_int(arr: np.ndarray) -> np.ndarray:
    """In-place subset Mobius transform over the integers; arr length 2^n."""
    size = arr.shape[-1]
    bit = 1
    while bit < size:
        sel = (np.arange(size) & bit).astype(bool)
        arr[..., sel] -= arr[..., ~sel]
        bit <<= 1
    return arr


def _zeta_int(arr: np.ndarray) -> np.ndarray:
    """In-place subset sum (zeta) transform; inverse of `_mobius_int`."""
    size = arr.shape[-1]
    bit = 1
    while bit < size:
        sel = (np.arange(size) & bit).astype(bool)
        arr[..., sel] += arr[..., ~sel]
        bit <<= 1
    return arr


def _zeta_f2(arr: np.ndarray) -> np.ndarray:
    """In-place subset transform mod 2 (self-inverse)."""
    size = arr.shape[-1]
    bit = 1
    while bit < size:
        sel = (np.arange(size) & bit).astype(bool)
        arr[..., sel] ^= arr[..., ~sel]
        bit <<= 1
    return arr


def mobius_coefficients(f: TruthTable) -> IntegerFunction:
    """Coefficients c_S (indexed by the set's bitmask) of the unique
    multilinear integer polynomial agreeing with f on {0,1}^n."""
    return IntegerFunction(f.n, _mobius_int(f.values.astype(np.int64)))


def zeta_transform(c: IntegerFunction) -> IntegerFunction:
    """Evaluate a coefficient vector back into point values."""
    return IntegerFunction(c.n, _zeta_int(c.values.astype(np.int64)))


def mobius_coefficients_f2(f: TruthTable) -> TruthTable:
    return TruthTable(f.n, _zeta_f2(f.values.copy()))


def degree(f: TruthTable) -> int:
    c = mobius_coefficients(f).values
    nz = np.nonzero(c)[0]
    if len(nz) == 0:
        return 0
    return int(weights_vector(f.n)[nz].max())


def degree_f2(f: TruthTable) -> int:
    c = mobius_coefficients_f2(f).values
    nz = np.nonzero(c)[0]
    if len(nz) == 0:
        return 0
    return int(weights_vector(f.n)[nz].max())


def evaluate_multilinear(c: IntegerFunction, x: Point) -> int:
    """Sum of c_S over S contained in the support of x."""
    total = 0
    for mask, coeff in enumerate(c.values):
        if coeff and (mask & x.index) == mask:
            total += int(coeff)
    return total


# ---------------------------------------------------------------------------
# bias, subcubes, distances

def bias(f: TruthTable) -> tuple[Fraction, Fraction]:
    ones = f.count_ones()
    size = 1 << f.n
    return Fraction(size - ones, size), Fraction(ones, size)


def is_subcube(n: int, indices) -> bool:
    """True iff the point set equals the set of all points agreeing with one
    member on every coordinate where the set is constant."""
    idx = np.asarray(sorted(indices), dtype=np.int64)
    if len(idx) == 0:
        return False
    full = (1 << n) - 1
    and_all = int(np.bitwise_and.reduce(idx))
    or_all = int(np.bitwise_or.reduce(idx))
    fixed = full ^ (and_all ^ or_all)  # coordinates where all members agree
    free = n - popcount(fixed)
    return len(idx) == (1 << free)


@dataclass(frozen=True)
class BiasBoundReport:
    holds_0: bool
    holds_1: bool
    tight_0: bool
    tight_1: bool
    subcube_0: bool
    subcube_1: bool


def check_bias_bound(f: TruthTable) -> BiasBoundReport:
    """Per output value b: s_b(f) >= log2(1/mu_b(f)) whenever mu_b > 0, with
    equality exactly when the preimage is a subcube.  Integer arithmetic."""
    size = 1 << f.n
    sres = sensitivity(f)
    out = {}
    for b, s_b in ((0, sres.s0), (1, sres.s1)):
        members = np.nonzero(f.values == b)[0]
        count = len(members)
        if count == 0:
            out[b] = (True, False, False)
            continue
        holds = count * (1 << s_b) >= size
        tight = count * (1 << s_b) == size
        out[b] = (holds, tight, is_subcube(f.n, members))
    return BiasBoundReport(
        holds_0=out[0][0], holds_1=out[1][0],
        tight_0=out[0][1], tight_1=out[1][1],
        subcube_0=out[0][2], subcube_1=out[1][2],
    )


def relevant_variables(f: TruthTable) -> frozenset[int]:
    """1-based indices i such that f(x) != f(x ^ e_i) for some x."""
    idx = np.arange(1 << f.n)
    rel = []
    for i in range(f.n):
        if (f.values != f.values[idx ^ (1 << i)]).any():
            rel.append(i + 1)
    return frozenset(rel)


def distance_fraction(f: TruthTable, g: TruthTable) -> Fraction:
    if f.n != g.n:
        raise ValueError("dimension mismatch")
    return Fraction(int((f.values != g.values).sum()), 1 << f.n)


# ---------------------------------------------------------------------------
# ball advice

class BallAdvice:
    """Partial function: the values of some f on exactly B(center, radius)."""

    __slots__ = ("n", "center", "radius", "values")

    def __init__(self, center: Point, radius: int, values: dict[int, int]):
        n = center.n
        if not 0 <= radius <= n:
            raise ValueError(f"radius {radius} out of range")
        expected = sum(comb(n, i) for i in range(radius + 1))
        if len(values) != expected:
            raise ValueError(
                f"advice covers {len(values)} points, ball has {expected}"
            )
        for idx, v in values.items():
            if popcount(idx ^ center.index) > radius:
                raise ValueError(f"point {idx} outside the ball")
            if v not in (0, 1):
                raise ValueError("advice values must be bits")
        self.n = n
        self.center = center
        self.radius = radius
        self.values = dict(values)

    def __getitem__(self, x: Point | int) -> int:
        idx = x.index if isinstance(x, Point) else x
        return self.values[idx]

    def __contains__(self, x: Point | int) -> bool:
        idx = x.index if isinstance(x, Point) else x
        return idx in self.values

    def dense(self) -> np.ndarray:
        """Length-2^n uint8 array with 255 outside the ball."""
        out = np.full(1 << self.n, 255, dtype=np.uint8)
        for idx, v in self.values.items():
            out[idx] = v
        return out

    def __eq__(self, other):
        return (
            isinstance(other, BallAdvice)
            and (self.n, self.center, self.radius) == (other.n, other.center, other.radius)
            and self.values == other.values
        )


def restrict_to_ball(f: TruthTable, x0: Point, r: int) -> BallAdvice:
    vals = {i: int(f.values[i]) for i in ball_indices(f.n, x0.index, r)}
    return BallAdvice(x0, r, vals)


# ---------------------------------------------------------------------------
# profile

@dataclass(frozen=True)
class ComplexityProfile:
    s: int
    s0: int
    s1: int
    deg: int
    deg2: int
    mu0: Fraction
    mu1: Fraction
    relevant: frozenset[int]


def profile(f: TruthTable) -> ComplexityProfile:
    sres = sensitivity(f)
    mu0, mu1 = bias(f)
    return ComplexityProfile(
        s=sres.s, s0=sres.s0, s1=sres.s1,
        deg=degree(f), deg2=degree_f2(f),
        mu0=mu0, mu1=mu1,
        relevant=relevant_variables(f),
    )


# ---------------------------------------------------------------------------
# seeding

def seeded_rng(seed: int, *labels) -> np.random.Generator:
    """Deterministic per-component stream: PCG64 keyed on
    [seed, crc32(label_1), crc32(label_2), ...]."""
    words = [seed & 0xFFFFFFFFFFFFFFFF]
    for lab in labels:
        if isinstance(lab, int):
            words.append(lab & 0xFFFFFFFF)
        else:
            words.append(zlib.crc32(str(lab).encode()))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(words)))
