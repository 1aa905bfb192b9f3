"""Elliptic file numbers on skyline boards, under both weightings.

Row-only weighting: every uncancelled cell (not occupied, not below a rook)
contributes the small weight of 1 - row.  Above-rook weighting: only cells
lying above some rook contribute, with weight argument column - row.  Both
weightings share the same cancellation geometry, so one enumeration pass
feeds two signature caches.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

from .boards import SkylineBoard, file_above_cells, file_placements, file_uncancelled
from .numeric import CheckEntry, guard_condition
from .weights import WeightFamily, WeightTable

ROW_ONLY = "row"
ABOVE_ROOK = "above"

Signature = tuple[tuple[tuple[int, ...], int], ...]


@lru_cache(maxsize=None)
def _file_signatures(heights: tuple[int, ...], k: int) -> tuple[Signature, Signature]:
    """One enumeration pass accumulating both weightings at once; the two
    cell sets derive from the same cancellation geometry."""
    row_counts: Counter = Counter()
    above_counts: Counter = Counter()
    for cells in file_placements(heights, k):
        row = sorted(1 - j for _, j in file_uncancelled(heights, cells))
        above = sorted(i - j for i, j in file_above_cells(heights, cells))
        row_counts[tuple(row)] += 1
        above_counts[tuple(above)] += 1
    return tuple(sorted(row_counts.items())), tuple(sorted(above_counts.items()))


def file_signature(heights: tuple[int, ...], k: int, weighting: str) -> Signature:
    row, above = _file_signatures(heights, k)
    if weighting == ROW_ONLY:
        return row
    if weighting == ABOVE_ROOK:
        return above
    raise ValueError(f"unknown file weighting {weighting!r}")


def _evaluate(sig: Signature, table: WeightTable):
    total = 0
    for exps, count in sig:
        prod = count
        for e in exps:
            prod = prod * table[e]
        total = total + prod
    return total


def _evaluate_with_magnitude(sig: Signature, table: WeightTable):
    total = 0
    scale = 0.0
    for exps, count in sig:
        prod = count
        for e in exps:
            prod = prod * table[e]
        total = total + prod
        scale = scale + abs(prod)
    return total, scale


def file_number(board: SkylineBoard, k: int, fam: WeightFamily, weighting: str = ROW_ONLY):
    """The k-th elliptic file number of a skyline board by enumeration."""
    if k < 0 or k > board.n:
        return 0
    sig = file_signature(board.heights, k, weighting)
    return _evaluate(sig, WeightTable(fam))


def q_file_number(board: SkylineBoard, k: int, q):
    """Classical q-file number; exact when q is an exact rational."""
    if k < 0 or k > board.n:
        return 0
    total = 0
    for exps, count in file_signature(board.heights, k, ROW_ONLY):
        total += count * q ** len(exps)
    return total


def file_number_via_recursion(board: SkylineBoard, k: int, fam: WeightFamily):
    """Row-only file number rebuilt column by column from the recursion."""
    if k < 0:
        return 0
    values = {0: 1}
    for cols_before, m in enumerate(board.heights):
        sh = fam.shifted(-m)
        big = sh.big_weight(m)
        num = sh.number(m)
        new = {}
        for kk in range(cols_before + 2):
            term = 0
            same = values.get(kk, 0)
            below = values.get(kk - 1, 0)
            if same != 0:
                term = term + big * same
            if below != 0:
                term = term + num * below
            new[kk] = term
        values = new
    return values.get(k, 0)


def file_product_check(
    board: SkylineBoard, fam: WeightFamily, z, max_condition: float | None = None
) -> CheckEntry:
    """Both sides of the row-only file factorization at argument z."""
    n = board.n
    table = WeightTable(fam)
    lhs = 1
    for c in board.heights:
        lhs = lhs * fam.shifted(-c).number(z + c)
    zn = fam.number(z)
    rhs = 0
    power = 1
    term_scale = 0.0
    for k in range(n + 1):
        if k:
            power = power * zn
        value, magnitude = _evaluate_with_magnitude(
            file_signature(board.heights, n - k, ROW_ONLY), table
        )
        term_scale = max(term_scale, magnitude * abs(power))
        rhs = rhs + value * power
    guard_condition(term_scale, max(abs(lhs), abs(rhs)), max_condition)
    return CheckEntry(lhs, rhs)


def file_above_product_check(
    board: SkylineBoard, fam: WeightFamily, z, max_condition: float | None = None
) -> CheckEntry:
    """Both sides of the above-rook file factorization at argument z."""
    n = board.n
    table = WeightTable(fam)
    zn = fam.number(z)
    lhs = 1
    for i, c in enumerate(board.heights, 1):
        lhs = lhs * (zn + fam.shifted(i - 1 - c).number(c))
    rhs = 0
    power = 1
    term_scale = 0.0
    for k in range(n + 1):
        if k:
            power = power * zn
        value, magnitude = _evaluate_with_magnitude(
            file_signature(board.heights, n - k, ABOVE_ROOK), table
        )
        term_scale = max(term_scale, magnitude * abs(power))
        rhs = rhs + value * power
    guard_condition(term_scale, max(abs(lhs), abs(rhs)), max_condition)
    return CheckEntry(lhs, rhs)
