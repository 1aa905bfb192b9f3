"""Shared numeric plumbing: complex powers, pole guards, relative error."""

from __future__ import annotations

import cmath
from typing import NamedTuple

from .errors import IllConditioned, PoleEncountered

# Below this modulus a denominator is treated as an exact zero.
POLE_EPS = 1e-300

# Floor used in the relative-error metric so that two near-zero sides compare
# as equal instead of dividing by zero.
REL_ERR_FLOOR = 1e-30


def cpow_int(z, k: int):
    """z**k for integer k by repeated squaring; branch-cut free."""
    if k < 0:
        w = cpow_int(z, -k)
        if abs(w) < POLE_EPS:
            raise PoleEncountered(f"zero base raised to negative power {k}")
        return 1 / w
    out = z**0 if not isinstance(z, complex) else 1
    base = z
    while k:
        if k & 1:
            out = out * base
        k >>= 1
        if k:
            base = base * base
    return out


def cpow(z, w):
    """Power z**w: exact product path for integer w, principal branch otherwise."""
    if isinstance(w, int):
        return cpow_int(z, w)
    if isinstance(w, float) and w.is_integer():
        return cpow_int(z, int(w))
    if isinstance(w, complex) and w.imag == 0 and w.real.is_integer():
        return cpow_int(z, int(w.real))
    return cmath.exp(w * cmath.log(z))


def guard_denominator(value):
    """Return value, raising PoleEncountered if it is numerically zero."""
    if abs(value) < POLE_EPS:
        raise PoleEncountered("denominator factor vanished (non-generic point)")
    return value


def relative_error(lhs, rhs, floor: float = REL_ERR_FLOOR) -> float:
    """|lhs - rhs| / max(|lhs|, |rhs|, floor)."""
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), floor)


def guard_condition(term_scale, result_scale, max_condition) -> None:
    """Reject evaluations whose cancellation exceeds max_condition.

    term_scale bounds the intermediate magnitudes, result_scale the final
    ones; their ratio times machine epsilon bounds the achievable relative
    error, so points beyond the cap must be resampled rather than judged.
    """
    if max_condition is None:
        return
    if term_scale > max_condition * max(result_scale, REL_ERR_FLOOR):
        raise IllConditioned(
            f"cancellation ratio {term_scale / max(result_scale, REL_ERR_FLOOR):.2e} "
            f"exceeds {max_condition:.1e}"
        )


class CheckEntry(NamedTuple):
    """Both sides of one identity evaluation."""

    lhs: complex
    rhs: complex

    @property
    def rel_err(self) -> float:
        return relative_error(self.lhs, self.rhs)
