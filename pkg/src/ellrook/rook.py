"""Elliptic rook numbers on Ferrers boards: enumeration, recursion, and the
factorization theorem, plus the classical q-rook oracle.

The weighted sum over placements is computed from a cached, family-free
"signature": for each placement the multiset of integer arguments fed to
the small weight.  Signatures are enumerated once per (board, k) and then
evaluated against any weight family with memoized weights, so the
exponential enumeration cost is paid once rather than per parameter point.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

from .boards import ExtendedBoard, SkylineBoard, rook_placements, rook_uncancelled
from .numeric import CheckEntry, guard_condition
from .theta import q_pochhammer
from .weights import WeightFamily, WeightTable, q_binomial, q_factorial

Signature = tuple[tuple[tuple[int, ...], int], ...]


@lru_cache(maxsize=None)
def rook_signature(heights: tuple[int, ...], k: int, depth: int = 0) -> Signature:
    """Multiset of small-weight argument tuples over all k-rook placements."""
    counts: Counter = Counter()
    for cells in rook_placements(heights, k, depth):
        exps = []
        for (i, j), nw in rook_uncancelled(heights, cells, depth).items():
            exps.append(i - j - nw)
        exps.sort()
        counts[tuple(exps)] += 1
    return tuple(sorted(counts.items()))


def evaluate_signature(sig: Signature, table: WeightTable):
    total = 0
    for exps, count in sig:
        prod = count
        for e in exps:
            prod = prod * table[e]
        total = total + prod
    return total


def signature_magnitude(sig: Signature, table: WeightTable) -> float:
    """Sum of absolute term magnitudes: the cancellation scale of the sum."""
    total = 0.0
    for exps, count in sig:
        prod = float(count)
        for e in exps:
            prod = prod * abs(table[e])
        total = total + prod
    return total


def evaluate_signature_with_magnitude(sig: Signature, table: WeightTable):
    """Signature value together with its pre-cancellation magnitude."""
    total = 0
    scale = 0.0
    for exps, count in sig:
        prod = count
        for e in exps:
            prod = prod * table[e]
        total = total + prod
        scale = scale + abs(prod)
    return total, scale


def rook_number(board: SkylineBoard, k: int, fam: WeightFamily, depth: int = 0):
    """The k-th elliptic rook number of a Ferrers board by enumeration."""
    if k < 0 or k > board.n:
        return 0
    if not board.is_ferrers:
        raise ValueError(f"rook numbers require a Ferrers board, got {board}")
    sig = rook_signature(board.heights, k, depth)
    return evaluate_signature(sig, WeightTable(fam))


def q_rook_number(board: SkylineBoard, k: int, q):
    """Garsia-Remmel q-rook number; exact when q is an exact rational."""
    if k < 0 or k > board.n:
        return 0
    total = 0
    for exps, count in rook_signature(board.heights, k):
        total += count * q ** len(exps)
    return total


def rook_number_via_recursion(board: SkylineBoard, k: int, fam: WeightFamily):
    """Rook number rebuilt column by column from the two-term recursion."""
    if not board.is_ferrers:
        raise ValueError(f"the rook recursion requires a Ferrers board, got {board}")
    if k < 0 or k > board.n:
        return 0
    values = {0: 1}
    for cols_before, m in enumerate(board.heights):
        sh = fam.shifted(cols_before - m)
        new = {}
        for kk in range(cols_before + 2):
            term = 0
            same = values.get(kk, 0)
            below = values.get(kk - 1, 0)
            if same != 0:
                term = term + sh.big_weight(m - kk) * same
            if below != 0:
                term = term + sh.number(m - kk + 1) * below
            new[kk] = term
        values = new
    return values.get(k, 0)


def product_formula_check(
    board: SkylineBoard, fam: WeightFamily, z, max_condition: float | None = None
) -> CheckEntry:
    """Both sides of the rook factorization theorem at argument z."""
    if not board.is_ferrers:
        raise ValueError(f"rook numbers require a Ferrers board, got {board}")
    n = board.n
    table = WeightTable(fam)
    lhs = 0
    falling = 1
    term_scale = 0.0
    for k in range(n + 1):
        if k:
            falling = falling * fam.shifted(k - 1).number(z - k + 1)
        value, magnitude = evaluate_signature_with_magnitude(
            rook_signature(board.heights, n - k), table
        )
        term_scale = max(term_scale, magnitude * abs(falling))
        lhs = lhs + value * falling
    rhs = 1
    for i, b in enumerate(board.heights, 1):
        rhs = rhs * fam.shifted(i - 1 - b).number(z + b - i + 1)
    guard_condition(term_scale, max(abs(lhs), abs(rhs)), max_condition)
    return CheckEntry(lhs, rhs)


def max_identity_check(
    board: SkylineBoard, fam: WeightFamily, k: int, max_condition: float | None = None
) -> CheckEntry:
    """Full-placement weight sum on the depth-k extension vs its product form."""
    n = board.n
    sig = rook_signature(board.heights, n, depth=k)
    table = WeightTable(fam)
    lhs, magnitude = evaluate_signature_with_magnitude(sig, table)
    rhs = 1
    for i, b in enumerate(board.heights, 1):
        rhs = rhs * fam.shifted(i - 1 - b).number(k + b - i + 1)
    guard_condition(magnitude, max(abs(lhs), abs(rhs)), max_condition)
    return CheckEntry(lhs, rhs)


def rect_rook_number_aq(ell: int, m: int, k: int, a, q):
    """Closed form for the a;q rook number of the [ell] x [m] rectangle."""
    if k < 0 or k > min(ell, m):
        return 0
    prefactor = q ** (k * (k + 1) // 2 - ell * m)
    value = prefactor * q_binomial(q, ell, k) * q_factorial(q, m) / q_factorial(q, m - k)
    value *= q_pochhammer(a * q ** (ell - m - k), q, k)
    value *= q_pochhammer(a * q ** (1 + 2 * ell - 2 * m), q * q, m - k)
    return value / q_pochhammer(a * q ** (1 - 2 * m), q * q, m)


def rectangle(ell: int, m: int) -> SkylineBoard:
    """The [ell] x [m] board: ell columns of height m."""
    return SkylineBoard((m,) * ell)


def extended(board: SkylineBoard, depth: int) -> ExtendedBoard:
    return board.extended(depth)
