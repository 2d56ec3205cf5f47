"""Readers/writers for the two on-disk formats.

Truth-table file (".tt"):
    line 1: `n=<k>`
    line 2: 2^k characters from {0,1}; position i (0-based) is f at index i.

Ball-advice file (".ball"):
    line 1: `n=<k> center=<k-char bitstring> radius=<r>` (coordinate 1 leftmost)
    then one line per point, `<bitstring> <0|1>`, in increasing index order,
    covering exactly the ball B(center, radius).
"""

from __future__ import annotations

import re
from pathlib import Path

from .core import BallAdvice, Point, TruthTable, ball_indices


class FormatError(ValueError):
    pass


def write_truth_table(f: TruthTable, path: str | Path) -> None:
    Path(path).write_text(f"n={f.n}\n{f.bits_string()}\n")


def read_truth_table(path: str | Path) -> TruthTable:
    lines = Path(path).read_text().splitlines()
    if len(lines) < 2:
        raise FormatError(f"{path}: expected a header line and a bits line")
    m = re.fullmatch(r"n=(\d+)", lines[0].strip())
    if not m:
        raise FormatError(f"{path}: bad header {lines[0]!r}")
    n = int(m.group(1))
    bits = lines[1].strip()
    try:
        return TruthTable.from_bits(n, bits)
    except ValueError as e:
        raise FormatError(f"{path}: {e}") from e


def write_ball_advice(adv: BallAdvice, path: str | Path) -> None:
    out = [f"n={adv.n} center={adv.center.bits()} radius={adv.radius}"]
    for idx in sorted(adv.values):
        out.append(f"{Point(adv.n, idx).bits()} {adv.values[idx]}")
    Path(path).write_text("\n".join(out) + "\n")


def read_ball_advice(path: str | Path) -> BallAdvice:
    lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise FormatError(f"{path}: empty file")
    m = re.fullmatch(r"n=(\d+) center=([01]+) radius=(\d+)", lines[0].strip())
    if not m:
        raise FormatError(f"{path}: bad header {lines[0]!r}")
    n, center_bits, radius = int(m.group(1)), m.group(2), int(m.group(3))
    if len(center_bits) != n:
        raise FormatError(f"{path}: center has {len(center_bits)} bits, expected {n}")
    center = Point.from_bits(center_bits)
    expected = ball_indices(n, center.index, radius)
    values: dict[int, int] = {}
    order: list[int] = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2 or parts[1] not in ("0", "1"):
            raise FormatError(f"{path}: bad advice line {ln!r}")
        pt = Point.from_bits(parts[0])
        if pt.n != n:
            raise FormatError(f"{path}: point {parts[0]!r} has wrong length")
        if pt.index in values:
            raise FormatError(f"{path}: duplicate point {parts[0]!r}")
        values[pt.index] = int(parts[1])
        order.append(pt.index)
    if order != sorted(order):
        raise FormatError(f"{path}: points not in increasing index order")
    if order != expected:
        raise FormatError(
            f"{path}: advice domain is not exactly the ball "
            f"(got {len(order)} points, ball has {len(expected)})"
        )
    return BallAdvice(center, radius, values)
