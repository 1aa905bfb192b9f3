"""Named elliptic special numbers as board instantiations: Stirling numbers
of both kinds, Lah and Abel numbers, their restricted refinements, closed
forms, classical oracles, and table export.

Values are always computed from placement enumeration on the defining
board; the *_via_recursion variants rebuild them from the published
two-term recursions.  For the restricted families those recursions are
only valid from n = r onward (the classical n = r-1 seed relies on all
weights being 1), so the recursive builders start from the exact base at
n = r.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .boards import SkylineBoard
from .files import ROW_ONLY, file_number
from .rook import rook_number
from .theta import q_pochhammer
from .weights import PlainQ, WeightFamily, q_binomial, q_factorial, q_number

# ---------------------------------------------------------------------------
# boards
# ---------------------------------------------------------------------------


def staircase(n: int) -> SkylineBoard:
    """B(0, 1, ..., n-1)."""
    return SkylineBoard(tuple(range(n)))


def staircase_r(n: int, r: int) -> SkylineBoard:
    """The cut-off staircase: r empty columns, then heights r, ..., n-1."""
    if not 1 <= r <= n:
        raise ValueError("restriction requires 1 <= r <= n")
    return SkylineBoard(tuple(0 for _ in range(r)) + tuple(range(r, n)))


def lah_board(n: int) -> SkylineBoard:
    """[n] x [n-1]."""
    return SkylineBoard((n - 1,) * n)


def lah_board_r(n: int, r: int) -> SkylineBoard:
    """[n+r-1] x [n-r]."""
    if not 1 <= r <= n:
        raise ValueError("restriction requires 1 <= r <= n")
    return SkylineBoard((n - r,) * (n + r - 1))


def abel_board(n: int) -> SkylineBoard:
    """B(0, n, ..., n) on n columns."""
    return SkylineBoard((0,) + (n,) * (n - 1))


def abel_board_r(n: int, r: int) -> SkylineBoard:
    """r empty columns then n - r columns of height n."""
    if not 1 <= r <= n:
        raise ValueError("restriction requires 1 <= r <= n")
    return SkylineBoard((0,) * r + (n,) * (n - r))


def abel_board_general(m: int, n: int, r: int = 1) -> SkylineBoard:
    """r empty columns then n - r columns of height m."""
    if not 0 <= r <= n:
        raise ValueError("restriction requires 0 <= r <= n")
    return SkylineBoard((0,) * r + (m,) * (n - r))


# ---------------------------------------------------------------------------
# Stirling numbers of the second kind
# ---------------------------------------------------------------------------


def stirling2(n: int, k: int, fam: WeightFamily):
    if n == 0:
        return 1 if k == 0 else 0
    return rook_number(staircase(n), n - k, fam)


def stirling2_via_recursion(n: int, k: int, fam: WeightFamily):
    values = {0: 1}
    for _ in range(n):
        new = {}
        for kk in range(max(values) + 2):
            term = 0
            same = values.get(kk, 0)
            below = values.get(kk - 1, 0)
            if same != 0:
                term = term + fam.number(kk) * same
            if below != 0:
                term = term + fam.big_weight(kk - 1) * below
            new[kk] = term
        values = new
    return values.get(k, 0)


def stirling2_small_k(n: int, k: int, fam: WeightFamily):
    """The published closed forms for k <= 3; no general-k formula exists."""
    if k == 0:
        return 1 if n == 0 else 0
    if k == 1:
        return 0 if n == 0 else 1
    if k == 2:
        return fam.number(2) ** (n - 1) - 1
    if k == 3:
        two_up = fam.scaled(2, 1).number(2)
        value = fam.number(3) ** (n - 1) - two_up * fam.number(2) ** (n - 1)
        value = value + fam.small_weight(2)
        return value / two_up
    raise ValueError("closed forms are only available for k <= 3")


def carlitz_stirling2_q(n: int, k: int, q):
    """Carlitz' explicit q-Stirling number; exact at exact rational q."""
    total = 0
    sign = 1
    for j in range(k + 1):
        term = sign * q ** (j * (j - 1) // 2) * q_binomial(q, k, j)
        total += term * q_number(q, k - j) ** n
        sign = -sign
    den = q_factorial(q, k)
    if isinstance(total, int) and isinstance(den, int):
        return Fraction(total, den)
    return total / den


def stirling2_r(n: int, k: int, r: int, fam: WeightFamily):
    if n < r:
        return 1 if n == k == r - 1 else 0
    return rook_number(staircase_r(n, r), n - k, fam)


def stirling2_r_via_recursion(n: int, k: int, r: int, fam: WeightFamily):
    """Restricted second-kind number via the recursion, seeded exactly at n = r."""
    if n < r:
        return 1 if n == k == r - 1 else 0
    values = {r: 1}
    for _ in range(n - r):
        new = {}
        for kk in range(r - 1, max(values) + 2):
            term = 0
            same = values.get(kk, 0)
            below = values.get(kk - 1, 0)
            if same != 0:
                term = term + fam.number(kk) * same
            if below != 0:
                term = term + fam.big_weight(kk - 1) * below
            new[kk] = term
        values = new
    return values.get(k, 0)


def classical_stirling2_r(n: int, k: int, r: int) -> int:
    """Counting oracle: partitions of [n] into k blocks, 1..r separated."""
    if n < r:
        return 1 if n == k == r - 1 else 0
    if n == r:
        return 1 if k == r else 0
    return classical_stirling2_r(n - 1, k - 1, r) + k * classical_stirling2_r(n - 1, k, r)


# ---------------------------------------------------------------------------
# Lah numbers
# ---------------------------------------------------------------------------


def lah(n: int, k: int, fam: WeightFamily):
    if n == 0:
        return 1 if k == 0 else 0
    return rook_number(lah_board(n), n - k, fam)


def lah_via_recursion(n: int, k: int, fam: WeightFamily):
    values = {1: 1} if n >= 1 else {0: 1}
    for nn in range(1, n):
        sh = fam.shifted(-nn)
        new = {}
        for kk in range(max(values) + 2):
            term = 0
            same = values.get(kk, 0)
            below = values.get(kk - 1, 0)
            if same != 0:
                term = term + sh.number(nn + kk) * same
            if below != 0:
                term = term + sh.big_weight(nn + kk - 1) * below
            new[kk] = term
        values = new
    return values.get(k, 0)


def lah_aq_closed(n: int, k: int, a, q):
    """Closed form of the a;q Lah number."""
    if k < 1 or k > n:
        return 0 if n else (1 if k == 0 else 0)
    exp = k * (k - 1) // 2 - n * (n - 1) // 2 - n * (k - 1)
    value = q**exp * q_binomial(q, n, k) * q_factorial(q, n - 1) / q_factorial(q, k - 1)
    value *= q_pochhammer(a * q ** (k - n + 1), q, n + k)
    den = q_pochhammer(a * q ** (3 - 2 * n), q * q, n) * q_pochhammer(a * q * q, q * q, k)
    return value / den


def lah_q_closed(n: int, k: int, q):
    """The q-Lah number."""
    if k < 1 or k > n:
        return 0 if n else (1 if k == 0 else 0)
    return q ** (k * (k - 1)) * q_binomial(q, n, k) * q_factorial(q, n - 1) / q_factorial(q, k - 1)


def lah_r(n: int, k: int, r: int, fam: WeightFamily):
    """Restricted Lah number, with the defining parameter shift applied."""
    if n < r:
        return 1 if n == k == r - 1 else 0
    return rook_number(lah_board_r(n, r), n - k, fam.shifted(1 - r))


def lah_r_unshifted(n: int, k: int, r: int, fam: WeightFamily):
    """Rook number of the restricted Lah board without the parameter shift."""
    return rook_number(lah_board_r(n, r), n - k, fam)


def lah_r_via_recursion(n: int, k: int, r: int, fam: WeightFamily):
    """Restricted Lah number via the recursion, seeded exactly at n = r."""
    if n < r:
        return 1 if n == k == r - 1 else 0
    values = {r: 1}
    for nn in range(r, n):
        sh = fam.shifted(-nn)
        new = {}
        for kk in range(r - 1, max(values) + 2):
            term = 0
            same = values.get(kk, 0)
            below = values.get(kk - 1, 0)
            if same != 0:
                term = term + sh.number(nn + kk) * same
            if below != 0:
                term = term + sh.big_weight(nn + kk - 1) * below
            new[kk] = term
        values = new
    return values.get(k, 0)


def lah_r_aq_closed(n: int, k: int, r: int, a, q):
    """Closed form of the a;q restricted Lah number."""
    if k < r or k > n:
        return 0
    exp = (
        k * (k - 1) // 2
        - n * (n - 1) // 2
        - n * (k - 1)
        + r * (r - 1)
    )
    value = q**exp * q_binomial(q, n + r - 1, k + r - 1)
    value *= q_factorial(q, n - r) / q_factorial(q, k - r)
    value *= q_pochhammer(a * q ** (1 - n + k), q, n - k)
    value *= q_pochhammer(a * q ** (1 + 2 * r), q * q, k - r)
    return value / q_pochhammer(a * q ** (3 - 2 * n), q * q, n - r)


def lah_r_q_closed(n: int, k: int, r: int, q):
    if k < r or k > n:
        return 0
    value = q ** (k * (k - 1) - r * (r - 1)) * q_binomial(q, n + r - 1, k + r - 1)
    return value * q_factorial(q, n - r) / q_factorial(q, k - r)


def classical_lah_r(n: int, k: int, r: int) -> int:
    """Counting oracle for the restricted Lah numbers."""
    if k < r or k > n:
        return 0
    return (
        math.comb(n + r - 1, k + r - 1)
        * math.factorial(n - r)
        // math.factorial(k - r)
    )


# ---------------------------------------------------------------------------
# Stirling numbers of the first kind (file numbers on staircases)
# ---------------------------------------------------------------------------


def stirling1(n: int, k: int, fam: WeightFamily):
    if n == 0:
        return 1 if k == 0 else 0
    return file_number(staircase(n), n - k, fam, ROW_ONLY)


def stirling1_via_recursion(n: int, k: int, fam: WeightFamily):
    values = {0: 1}
    for nn in range(n):
        sh = fam.shifted(-nn)
        coeff_same = sh.number(nn)
        coeff_below = sh.big_weight(nn)
        new = {}
        for kk in range(max(values) + 2):
            term = 0
            same = values.get(kk, 0)
            below = values.get(kk - 1, 0)
            if same != 0:
                term = term + coeff_same * same
            if below != 0:
                term = term + coeff_below * below
            new[kk] = term
        values = new
    return values.get(k, 0)


def stirling1_r(n: int, k: int, r: int, fam: WeightFamily):
    if n < r:
        return 1 if n == k == r - 1 else 0
    return file_number(staircase_r(n, r), n - k, fam, ROW_ONLY)


def stirling1_r_via_recursion(n: int, k: int, r: int, fam: WeightFamily):
    """Restricted first-kind number via the recursion, seeded exactly at n = r."""
    if n < r:
        return 1 if n == k == r - 1 else 0
    values = {r: 1}
    for nn in range(r, n):
        sh = fam.shifted(-nn)
        coeff_same = sh.number(nn)
        coeff_below = sh.big_weight(nn)
        new = {}
        for kk in range(r - 1, max(values) + 2):
            term = 0
            same = values.get(kk, 0)
            below = values.get(kk - 1, 0)
            if same != 0:
                term = term + coeff_same * same
            if below != 0:
                term = term + coeff_below * below
            new[kk] = term
        values = new
    return values.get(k, 0)


def classical_stirling1(n: int, k: int) -> int:
    """Unsigned Stirling numbers of the first kind by their recursion."""
    if n == 0:
        return 1 if k == 0 else 0
    if k < 0 or k > n:
        return 0
    return classical_stirling1(n - 1, k - 1) + (n - 1) * classical_stirling1(n - 1, k)


# ---------------------------------------------------------------------------
# Abel numbers (file numbers on Abel boards)
# ---------------------------------------------------------------------------


def abel(n: int, k: int, fam: WeightFamily):
    return file_number(abel_board(n), n - k, fam, ROW_ONLY)


def abel_closed(n: int, k: int, fam: WeightFamily):
    if k < 1 or k > n:
        return 0
    sh = fam.shifted(-n)
    return (
        math.comb(n - 1, k - 1)
        * sh.big_weight(n) ** (k - 1)
        * sh.number(n) ** (n - k)
    )


def abel_r(n: int, k: int, r: int, fam: WeightFamily):
    return file_number(abel_board_r(n, r), n - k, fam, ROW_ONLY)


def abel_r_closed(n: int, k: int, r: int, fam: WeightFamily):
    if k < r or k > n:
        return 0
    sh = fam.shifted(-n)
    return (
        math.comb(n - r, k - r)
        * sh.big_weight(n) ** (k - r)
        * sh.number(n) ** (n - k)
    )


def abel_gen(m: int, n: int, k: int, r: int, fam: WeightFamily):
    return file_number(abel_board_general(m, n, r), n - k, fam, ROW_ONLY)


def abel_gen_closed(m: int, n: int, k: int, r: int, fam: WeightFamily):
    if k < r or k > n:
        return 0
    sh = fam.shifted(-m)
    return (
        math.comb(n - r, k - r)
        * sh.big_weight(m) ** (k - r)
        * sh.number(m) ** (n - k)
    )


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

TABLE_FAMILIES = (
    "stirling2",
    "stirling2r",
    "lah",
    "lahr",
    "stirling1",
    "stirling1r",
    "abel",
    "abelr",
    "abelgen",
    "abelgenr",
)


def _table_value(family: str, n: int, k: int, fam: WeightFamily, r: int, m: int):
    if family == "stirling2":
        return stirling2(n, k, fam)
    if family == "stirling2r":
        return stirling2_r(n, k, r, fam)
    if family == "lah":
        return lah(n, k, fam)
    if family == "lahr":
        return lah_r(n, k, r, fam)
    if family == "stirling1":
        return stirling1(n, k, fam)
    if family == "stirling1r":
        return stirling1_r(n, k, r, fam)
    if family == "abel":
        return abel(n, k, fam)
    if family == "abelr":
        return abel_r(n, k, r, fam)
    if family == "abelgen":
        return abel_gen(m, n, k, 1, fam)
    if family == "abelgenr":
        return abel_gen(m, n, k, r, fam)
    raise ValueError(f"unknown table family {family!r}")


def _is_trivial(fam: WeightFamily) -> bool:
    return isinstance(fam, PlainQ) and fam.q == 1


@dataclass
class SpecialNumberTable:
    """A triangular table of one special-number family."""

    family: str
    n_max: int
    weight_tag: str
    exact: bool
    values: dict = field(default_factory=dict)

    @classmethod
    def build(
        cls, family: str, n_max: int, fam: WeightFamily, r: int = 1, m: int = 1
    ) -> "SpecialNumberTable":
        if family not in TABLE_FAMILIES:
            raise ValueError(f"unknown table family {family!r}")
        table = cls(family, n_max, getattr(fam, "tag", "?"), _is_trivial(fam))
        lo = 0
        for n in range(lo, n_max + 1):
            for k in range(n + 1):
                try:
                    value = _table_value(family, n, k, fam, r, m)
                except ValueError:
                    continue
                table.values[(n, k)] = value
        return table

    def rows(self):
        for (n, k), value in sorted(self.values.items()):
            if self.exact:
                yield {"family": self.family, "n": n, "k": k, "value": str(int(value))}
            else:
                value = complex(value)
                yield {
                    "family": self.family,
                    "n": n,
                    "k": k,
                    "re": repr(value.real),
                    "im": repr(value.imag),
                }

    def write_csv(self, path: str) -> None:
        fields = ["family", "n", "k", "value"] if self.exact else ["family", "n", "k", "re", "im"]
        with open(path, "w", newline="") as handle:
            writer = csv.DictWriter(handle, fieldnames=fields)
            writer.writeheader()
            for row in self.rows():
                writer.writerow(row)

    def write_json(self, path: str) -> None:
        payload = {
            "family": self.family,
            "weight_family": self.weight_tag,
            "n_max": self.n_max,
            "entries": list(self.rows()),
        }
        with open(path, "w") as handle:
            json.dump(payload, handle, indent=2)
            handle.write("\n")
