"""The jump-attacking rook model: weighted rook numbers, the jump product
formula with its below-ground extension, generalized Stirling numbers of
both kinds, colored restricted-growth words and the placement bijection.

Boards here are B(offset, offset + jump, ..., offset + (n-1)*jump); the
column parameters are named `offset` and `jump` throughout.  Colored words
are only defined for 0 <= offset <= jump and are rejected otherwise.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .boards import (
    SkylineBoard,
    j_rook_placements,
    j_uncancelled,
    _rook_attack_rows,
)
from .errors import NotJAttackingBoard
from .files import ABOVE_ROOK, file_number
from .numeric import CheckEntry, guard_condition
from .weights import WeightFamily, WeightTable

Signature = tuple[tuple[tuple[int, ...], int], ...]


def b_board(offset: int, jump: int, n: int) -> SkylineBoard:
    """The board B(offset, offset + jump, ..., offset + (n-1)*jump)."""
    return SkylineBoard(tuple(offset + i * jump for i in range(n)))


@lru_cache(maxsize=None)
def j_rook_signature(heights: tuple[int, ...], jump: int, k: int) -> Signature:
    counts: Counter = Counter()
    for cells, attacked in j_rook_placements(heights, jump, k):
        exps = []
        for (i, j), nw in j_uncancelled(heights, cells, attacked).items():
            exps.append(jump * (i - 1) + 1 - j - jump * nw)
        exps.sort()
        counts[tuple(exps)] += 1
    return tuple(sorted(counts.items()))


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


def _require_j_attacking(board: SkylineBoard, jump: int) -> None:
    if not board.is_j_attacking(jump):
        raise NotJAttackingBoard(f"{board} is not {jump}-attacking")


def rook_number_j(board: SkylineBoard, k: int, jump: int, fam: WeightFamily):
    """The k-th jump rook number by enumeration."""
    _require_j_attacking(board, jump)
    if k < 0 or k > board.n:
        return 0
    sig = j_rook_signature(board.heights, jump, k)
    return _evaluate(sig, WeightTable(fam))


def j_placement_weight(board: SkylineBoard, cells, jump: int, fam: WeightFamily):
    """The weight of one jump-nonattacking placement."""
    from .boards import j_attack_rows

    _require_j_attacking(board, jump)
    attacked = j_attack_rows(board, cells, jump)
    table = WeightTable(fam)
    prod = 1
    for (i, j), nw in j_uncancelled(board.heights, cells, attacked).items():
        prod = prod * table[jump * (i - 1) + 1 - j - jump * nw]
    return prod


def jump_product_check(
    board: SkylineBoard, jump: int, fam: WeightFamily, z, max_condition: float | None = None
) -> CheckEntry:
    """Formula sides of the jump product identity at argument z."""
    _require_j_attacking(board, jump)
    n = board.n
    table = WeightTable(fam)
    lhs = 1
    for i, b in enumerate(board.heights, 1):
        shift = jump * (i - 1) - b
        lhs = lhs * fam.shifted(shift).number(z + b - jump * (i - 1))
    rhs = 0
    falling = 1
    term_scale = 0.0
    for k in range(n + 1):
        if k:
            falling = falling * fam.shifted(jump * (k - 1)).number(z - jump * (k - 1))
        value, magnitude = _evaluate_with_magnitude(
            j_rook_signature(board.heights, jump, n - k), table
        )
        term_scale = max(term_scale, magnitude * abs(falling))
        rhs = rhs + value * falling
    guard_condition(term_scale, max(abs(lhs), abs(rhs)), max_condition)
    return CheckEntry(lhs, rhs)


def jump_enumeration_total(board: SkylineBoard, jump: int, z: int, fam: WeightFamily):
    """Sum of weights over all n-rook jump placements on the depth-z extension.

    Implements the below-ground attack rule with wrapping; requires
    depth z >= jump * n so the wrap always finds enough rows.
    """
    _require_j_attacking(board, jump)
    n = board.n
    if z < jump * n:
        raise ValueError(f"extension depth {z} below jump*n = {jump * n}")
    heights = board.heights
    bottom = 1 - z
    table = WeightTable(fam)
    attacked: dict[int, int] = {}
    placed_rows: list[int] = []
    total = 0

    def rec(col: int, weight):
        nonlocal total
        if col > n:
            total = total + weight
            return
        prefix = weight
        for row in range(heights[col - 1], bottom - 1, -1):
            if row in attacked:
                continue
            rows = _rook_attack_rows(row, jump, attacked, bottom)
            for r in rows:
                attacked[r] = col
            placed_rows.append(row)
            rec(col + 1, prefix)
            placed_rows.pop()
            for r in rows:
                del attacked[r]
            nw = 0
            for r in placed_rows:
                if r > row:
                    nw += 1
            prefix = prefix * table[jump * (col - 1) + 1 - row - jump * nw]

    rec(1, 1)
    return total


# ---------------------------------------------------------------------------
# generalized Stirling numbers of both kinds
# ---------------------------------------------------------------------------


def gen_stirling2(offset: int, jump: int, n: int, k: int, fam: WeightFamily):
    """Generalized second-kind number: jump rook number of the model board."""
    if n == 0:
        return 1 if k == 0 else 0
    if k < 0 or k > n:
        return 0
    return rook_number_j(b_board(offset, jump, n), n - k, jump, fam)


def gen_stirling2_via_recursion(offset: int, jump: int, n: int, k: int, fam: WeightFamily):
    """Same number, rebuilt from the two-term recursion."""
    sh = fam.shifted(-offset)
    values = {0: 1}
    for _ in range(n):
        new = {}
        for kk in range(max(values) + 2):
            term = 0
            same = values.get(kk, 0)
            below = values.get(kk - 1, 0)
            if same != 0:
                term = term + sh.number(offset + kk * jump) * same
            if below != 0:
                term = term + sh.big_weight(offset + (kk - 1) * jump) * below
            new[kk] = term
        values = new
    return values.get(k, 0)


def gen_stirling2_normalization(offset: int, jump: int, k: int, fam: WeightFamily):
    """The big-weight prefactor linking the tilde and plain second-kind numbers."""
    sh = fam.shifted(-offset)
    prod = 1
    for j in range(1, k + 1):
        prod = prod * sh.big_weight(offset + (j - 1) * jump)
    return prod


def gen_stirling2_normalized(offset: int, jump: int, n: int, k: int, fam: WeightFamily):
    return gen_stirling2(offset, jump, n, k, fam) / gen_stirling2_normalization(
        offset, jump, k, fam
    )


def gen_stirling1(offset: int, jump: int, n: int, k: int, fam: WeightFamily):
    """Generalized first-kind number: above-rook file number of the model board."""
    if n == 0:
        return 1 if k == 0 else 0
    if k < 0 or k > n:
        return 0
    return file_number(b_board(offset, jump, n), n - k, fam, ABOVE_ROOK)


def gen_stirling1_via_recursion(offset: int, jump: int, n: int, k: int, fam: WeightFamily):
    values = {0: 1}
    for nn in range(n):
        coeff = fam.shifted(-(offset + nn * (jump - 1))).number(offset + nn * jump)
        new = {}
        for kk in range(max(values) + 2):
            term = 0
            same = values.get(kk, 0)
            below = values.get(kk - 1, 0)
            if same != 0:
                term = term + coeff * same
            if below != 0:
                term = term + below
            new[kk] = term
        values = new
    return values.get(k, 0)


# ---------------------------------------------------------------------------
# colored restricted-growth words and the placement bijection
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RGWord:
    """A colored restricted-growth word (w : e).

    word holds w_0 .. w_n with w_0 = 0; colors holds e_1 .. e_n.  Zero-block
    letters carry colors below `offset`, the first letter of each nonzero
    block carries color 0, all other letters carry colors below `jump`.
    """

    offset: int
    jump: int
    word: tuple[int, ...]
    colors: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.word) - 1

    @property
    def k(self) -> int:
        return max(self.word)

    def validate(self) -> None:
        if not 0 <= self.offset <= self.jump:
            raise ValueError("words require 0 <= offset <= jump")
        if self.word[0] != 0 or len(self.colors) != self.n:
            raise ValueError("malformed word")
        seen_max = 0
        for s in range(1, self.n + 1):
            w = self.word[s]
            e = self.colors[s - 1]
            if w < 0 or w > seen_max + 1:
                raise ValueError(f"growth condition violated at position {s}")
            if w == 0:
                if not 0 <= e < self.offset:
                    raise ValueError(f"zero-block color out of range at position {s}")
            elif w == seen_max + 1:
                if e != 0:
                    raise ValueError(f"block-opening letter must have color 0 at {s}")
            elif not 0 <= e < self.jump:
                raise ValueError(f"color out of range at position {s}")
            seen_max = max(seen_max, w)

    def max_positions(self) -> list[int]:
        """Positions s with w_s strictly larger than every earlier letter."""
        out = []
        m = 0
        for s in range(1, self.n + 1):
            if self.word[s] > m:
                out.append(s)
                m = self.word[s]
        return out


def enumerate_rg_words(offset: int, jump: int, n: int, k: int) -> list[RGWord]:
    """All valid colored words with n letters and k nonzero blocks."""
    if not 0 <= offset <= jump:
        raise ValueError("words require 0 <= offset <= jump")
    out: list[RGWord] = []
    word = [0]
    colors: list[int] = []

    def rec(s: int, seen_max: int):
        if s > n:
            if seen_max == k:
                out.append(RGWord(offset, jump, tuple(word), tuple(colors)))
            return
        if seen_max + (n - s + 1) < k:
            return
        for e in range(offset):
            word.append(0)
            colors.append(e)
            rec(s + 1, seen_max)
            word.pop()
            colors.pop()
        for w in range(1, seen_max + 1):
            for e in range(jump):
                word.append(w)
                colors.append(e)
                rec(s + 1, seen_max)
                word.pop()
                colors.pop()
        if seen_max + 1 <= k:
            word.append(seen_max + 1)
            colors.append(0)
            rec(s + 1, seen_max + 1)
            word.pop()
            colors.pop()

    rec(1, 0)
    return out


def phi(gamma: RGWord) -> tuple[tuple[int, int], ...]:
    """The word-to-placement bijection onto jump placements of the model board."""
    board = b_board(gamma.offset, gamma.jump, gamma.n)
    attacked: dict[int, int] = {}
    cells: list[tuple[int, int]] = []
    for s in range(1, gamma.n + 1):
        target = gamma.offset + gamma.word[s] * gamma.jump - gamma.colors[s - 1]
        avail = [row for row in range(1, board.height(s) + 1) if row not in attacked]
        if target <= len(avail):
            row = avail[target - 1]
            for r in _rook_attack_rows(row, gamma.jump, attacked, 1):
                attacked[r] = s
            cells.append((s, row))
    return tuple(cells)


def phi_inverse(offset: int, jump: int, n: int, cells) -> RGWord:
    """Recover the colored word from a jump placement of the model board."""
    board = b_board(offset, jump, n)
    col_rook = dict(cells)
    attacked: dict[int, int] = {}
    word = [0]
    colors: list[int] = []
    seen_max = 0
    for s in range(1, n + 1):
        avail = [row for row in range(1, board.height(s) + 1) if row not in attacked]
        row = col_rook.get(s)
        if row is None:
            word.append(seen_max + 1)
            colors.append(0)
            seen_max += 1
            continue
        target = avail.index(row) + 1
        if target <= offset:
            w, e = 0, offset - target
        else:
            w = -((target - offset) // -jump)  # ceiling division
            e = offset + w * jump - target
        word.append(w)
        colors.append(e)
        seen_max = max(seen_max, w)
        for r in _rook_attack_rows(row, jump, attacked, 1):
            attacked[r] = s
    return RGWord(offset, jump, tuple(word), tuple(colors))


def rg_weight_product(gamma: RGWord, fam: WeightFamily):
    """The per-word big-weight product over the rook columns of phi(gamma)."""
    sh = fam.shifted(-gamma.offset)
    maxpos = set(gamma.max_positions())
    prod = 1
    for s in range(1, gamma.n + 1):
        inv = sum(
            1 for t in range(1, s) if t in maxpos and gamma.word[t] > gamma.word[s]
        )
        prod = prod * sh.big_weight(gamma.jump * inv + gamma.colors[s - 1])
    return prod


def rg_word_weight_identity(gamma: RGWord, fam: WeightFamily) -> CheckEntry:
    """Placement weight of phi(gamma) against its word-statistic product.

    The empty (block-opening) columns of phi(gamma) contribute exactly the
    big-weight prefactor that links the tilde and plain second-kind
    numbers, so the placement weight equals that prefactor times the
    per-letter product.
    """
    board = b_board(gamma.offset, gamma.jump, gamma.n)
    cells = phi(gamma)
    lhs = j_placement_weight(board, cells, gamma.jump, fam)
    rhs = gen_stirling2_normalization(
        gamma.offset, gamma.jump, gamma.k, fam
    ) * rg_weight_product(gamma, fam)
    return CheckEntry(lhs, rhs)


def statistic_d(offset: int, jump: int, n: int, k: int, fam: WeightFamily):
    """Sum of the per-word products over all words with k nonzero blocks."""
    total = 0
    for gamma in enumerate_rg_words(offset, jump, n, k):
        total = total + rg_weight_product(gamma, fam)
    return total
