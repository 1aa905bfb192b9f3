"""Random-point identity verification harness.

run_check drives one named identity for a number of trials, sampling
generic parameter points from a seeded generator, resampling whenever a
pole is hit, and aggregating the worst relative error into a CheckReport.
Reports are bit-reproducible given (seed, identity, board, trials).

Counting identities (bijection-*) are exact: max_rel_err holds the number
of mismatches and the tolerance is 0.5, so passed still means
max_rel_err < tolerance.
"""

from __future__ import annotations

import cmath
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import biject, files, jattack, rook, special
from . import weights as weights_defaults
from .boards import SkylineBoard, file_placements, j_rook_placements, rook_placements
from .errors import BadBoardSpec, IllConditioned, PoleEncountered, UnknownIdentity
from .numeric import relative_error
from .theta import theta
from .weights import (
    ABq,
    Aq,
    FrakPQ,
    FullElliptic,
    PlainQ,
    ZeroBq,
    q_falling,
    q_number,
    random_family,
    random_generic_point,
    random_z,
)


# cancellation cap: doubles resolve ~1e-16 * MAX_CONDITION, well under the
# coarsest product-formula tolerance of 1e-8
MAX_CONDITION = 1e6


@dataclass(frozen=True)
class SamplerConfig:
    """Modulus ranges for the generic-point sampler plus the retry cap."""

    a_modulus: tuple = weights_defaults.A_MODULUS
    b_modulus: tuple = weights_defaults.B_MODULUS
    q_modulus: tuple = weights_defaults.Q_MODULUS
    p_modulus: tuple = weights_defaults.P_MODULUS
    z_real: tuple = weights_defaults.Z_REAL
    z_imag: tuple = weights_defaults.Z_IMAG
    max_resamples: int = 50

    def __post_init__(self):
        if not 0 < self.q_modulus[0] <= self.q_modulus[1] < 1:
            raise ValueError("q modulus range must stay inside (0, 1)")
        if not 0 <= self.p_modulus[0] <= self.p_modulus[1] < 1:
            raise ValueError("p modulus range must stay inside [0, 1)")
        if self.max_resamples < 0:
            raise ValueError("max_resamples must be nonnegative")


@dataclass
class CheckReport:
    identity_name: str
    board: str
    family: str
    trials: int
    max_rel_err: float
    resamples: int
    seed: int
    passed: bool

    def to_dict(self) -> dict:
        return {
            "identity_name": self.identity_name,
            "board": self.board,
            "family": self.family,
            "trials": self.trials,
            "max_rel_err": self.max_rel_err,
            "resamples": self.resamples,
            "seed": self.seed,
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def parse_board_spec(text: str | None):
    """Parse either a heights literal "0,2,3,5,5" or "n=5,r=2"-style params."""
    if text is None or text == "" or text == "-":
        return None
    if "=" in text:
        params = {}
        try:
            for part in text.split(","):
                key, value = part.split("=")
                params[key.strip()] = int(value)
        except ValueError as exc:
            raise BadBoardSpec(f"bad board spec {text!r}") from exc
        return params
    return SkylineBoard.parse(text)


@dataclass
class _Context:
    rng: random.Random
    family_tag: str
    board: SkylineBoard | None
    params: dict
    trials: int
    config: SamplerConfig
    resamples: int = 0
    extras: dict = field(default_factory=dict)

    def require_board(self) -> SkylineBoard:
        if not isinstance(self.board, SkylineBoard):
            raise BadBoardSpec("this identity needs a heights board spec")
        return self.board

    def param(self, name: str, default=None):
        value = self.params.get(name, default)
        if value is None:
            raise BadBoardSpec(f"this identity needs parameter {name!r}")
        return value

    def draw_family(self):
        cfg = self.config
        return random_family(
            self.rng,
            self.family_tag,
            cfg.a_modulus,
            cfg.b_modulus,
            cfg.q_modulus,
            cfg.p_modulus,
        )

    def draw_z(self):
        return random_z(self.rng, self.config.z_real, self.config.z_imag)

    def with_retry(self, attempt):
        """Evaluate attempt(fam) at fresh random families until no pole."""
        for _ in range(self.config.max_resamples + 1):
            fam = self.draw_family()
            try:
                return attempt(fam)
            except (IllConditioned, PoleEncountered):
                self.resamples += 1
        raise PoleEncountered(
            f"still hitting poles after {self.config.max_resamples} resamples"
        )


def _grid_error(pairs) -> float:
    return max((relative_error(lhs, rhs) for lhs, rhs in pairs), default=0.0)


# --- product formulas -------------------------------------------------------


def _run_product_rook(ctx: _Context) -> float:
    board = ctx.require_board()
    worst = 0.0
    for _ in range(ctx.trials):
        def attempt(fam):
            z = ctx.params.get("z")
            if z is None:
                z = ctx.draw_z()
            return rook.product_formula_check(board, fam, z, MAX_CONDITION).rel_err
        worst = max(worst, ctx.with_retry(attempt))
    return worst


def _run_product_file(ctx: _Context) -> float:
    board = ctx.require_board()
    worst = 0.0
    for _ in range(ctx.trials):
        def attempt(fam):
            z = ctx.params.get("z")
            if z is None:
                z = ctx.draw_z()
            return files.file_product_check(board, fam, z, MAX_CONDITION).rel_err
        worst = max(worst, ctx.with_retry(attempt))
    return worst


def _run_product_file_above(ctx: _Context) -> float:
    board = ctx.require_board()
    worst = 0.0
    for _ in range(ctx.trials):
        def attempt(fam):
            z = ctx.params.get("z")
            if z is None:
                z = ctx.draw_z()
            return files.file_above_product_check(board, fam, z, MAX_CONDITION).rel_err
        worst = max(worst, ctx.with_retry(attempt))
    return worst


def mp_family(fam, precision: float = 1e-30):
    """Rebuild a weight family over mpmath complex numbers.

    The weighted sums over deep board extensions cancel catastrophically in
    doubles, so enumeration cross-checks run at extended precision; the
    generic family code evaluates unchanged over mpc values.
    """
    from mpmath import mpc

    from .theta import ThetaEvalConfig

    if isinstance(fam, FullElliptic):
        cfg = ThetaEvalConfig(truncation_tolerance=precision)
        return FullElliptic(mpc(fam.a), mpc(fam.b), mpc(fam.q), mpc(fam.p), cfg)
    if isinstance(fam, ABq):
        return ABq(mpc(fam.a), mpc(fam.b), mpc(fam.q))
    if isinstance(fam, Aq):
        return Aq(mpc(fam.a), mpc(fam.q))
    if isinstance(fam, ZeroBq):
        return ZeroBq(mpc(fam.b), mpc(fam.q))
    if isinstance(fam, FrakPQ):
        return FrakPQ(mpc(fam.a), mpc(fam.b), mpc(fam.fp), mpc(fam.q))
    if isinstance(fam, PlainQ) and not isinstance(fam.q, (int, Fraction)):
        return PlainQ(mpc(fam.q))
    return fam


def _run_product_jump(ctx: _Context) -> float:
    from mpmath import mp

    board = ctx.require_board()
    jump = ctx.param("J", 1)
    z_given = ctx.params.get("z")
    worst = 0.0
    for _ in range(ctx.trials):
        def attempt(fam):
            z = z_given if z_given is not None else ctx.draw_z()
            entry = jattack.jump_product_check(board, jump, fam, z, MAX_CONDITION)
            err = entry.rel_err
            if isinstance(z, int) and z >= jump * board.n:
                with mp.workdps(35):
                    precise = mp_family(fam)
                    exact_entry = jattack.jump_product_check(board, jump, precise, z)
                    total = jattack.jump_enumeration_total(board, jump, z, precise)
                    err = max(
                        err,
                        float(relative_error(total, exact_entry.lhs)),
                        float(relative_error(total, exact_entry.rhs)),
                    )
            return err
        worst = max(worst, ctx.with_retry(attempt))
    return worst


def _run_max_identity(ctx: _Context) -> float:
    board = ctx.require_board()
    depth = ctx.params.get("z")
    worst = 0.0
    for _ in range(ctx.trials):
        def attempt(fam):
            k = depth if depth is not None else ctx.rng.randrange(0, 3)
            return rook.max_identity_check(board, fam, int(k), MAX_CONDITION).rel_err
        worst = max(worst, ctx.with_retry(attempt))
    return worst


# --- recursions --------------------------------------------------------------


def _run_recursion_rook(ctx: _Context) -> float:
    board = ctx.require_board()
    worst = 0.0
    for _ in range(ctx.trials):
        def attempt(fam):
            return _grid_error(
                (
                    rook.rook_number_via_recursion(board, k, fam),
                    rook.rook_number(board, k, fam),
                )
                for k in range(board.n + 1)
            )
        worst = max(worst, ctx.with_retry(attempt))
    return worst


def _run_recursion_file(ctx: _Context) -> float:
    board = ctx.require_board()
    worst = 0.0
    for _ in range(ctx.trials):
        def attempt(fam):
            return _grid_error(
                (
                    files.file_number_via_recursion(board, k, fam),
                    files.file_number(board, k, fam),
                )
                for k in range(board.n + 1)
            )
        worst = max(worst, ctx.with_retry(attempt))
    return worst


def _run_recursion_binomial(ctx: _Context) -> float:
    n_max = ctx.params.get("n", 5)
    worst = 0.0
    for _ in range(ctx.trials):
        def attempt(fam):
            pairs = []
            for n in range(n_max + 1):
                for k in range(n + 2):
                    lhs = fam.binomial(n + 1, k)
                    rhs = fam.binomial(n, k)
                    if k >= 1:
                        w = fam.scaled(k - 1, 2 * k - 2).big_weight(n + 1 - k)
                        rhs = rhs + fam.binomial(n, k - 1) * w
                    pairs.append((lhs, rhs))
            return _grid_error(pairs)
        worst = max(worst, ctx.with_retry(attempt))
    return worst


def _run_recursion_stirling2(ctx: _Context) -> float:
    n_max = ctx.params.get("n", 5)
    worst = 0.0
    for _ in range(ctx.trials):
        def attempt(fam):
            pairs = []
            for n in range(n_max):
                for k in range(n + 2):
                    lhs = special.stirling2(n + 1, k, fam)
                    rhs = fam.number(k) * special.stirling2(n, k, fam)
                    if k >= 1:
                        rhs = rhs + fam.big_weight(k - 1) * special.stirling2(n, k - 1, fam)
                    pairs.append((lhs, rhs))
            return _grid_error(pairs)
        worst = max(worst, ctx.with_retry(attempt))
    return worst


def _run_recursion_stirling2_r(ctx: _Context) -> float:
    n_max = ctx.params.get("n", 5)
    r = ctx.param("r", 2)
    worst = 0.0
    for _ in range(ctx.trials):
        def attempt(fam):
            pairs = []
            for n in range(r, n_max):
                for k in range(r - 1, n + 2):
                    lhs = special.stirling2_r(n + 1, k, r, fam)
                    rhs = fam.number(k) * special.stirling2_r(n, k, r, fam)
                    if k >= 1:
                        rhs = rhs + fam.big_weight(k - 1) * special.stirling2_r(
                            n, k - 1, r, fam
                        )
                    pairs.append((lhs, rhs))
            return _grid_error(pairs)
        worst = max(worst, ctx.with_retry(attempt))
    return worst


def _run_recursion_lah(ctx: _Context) -> float:
    n_max = ctx.params.get("n", 5)
    worst = 0.0
    for _ in range(ctx.trials):
        def attempt(fam):
            pairs = []
            for n in range(1, n_max):
                sh = fam.shifted(-n)
                for k in range(n + 2):
                    lhs = special.lah(n + 1, k, fam)
                    rhs = sh.number(n + k) * special.lah(n, k, fam)
                    if k >= 1:
                        rhs = rhs + sh.big_weight(n + k - 1) * special.lah(n, k - 1, fam)
                    pairs.append((lhs, rhs))
            return _grid_error(pairs)
        worst = max(worst, ctx.with_retry(attempt))
    return worst


def _run_recursion_lah_r(ctx: _Context) -> float:
    n_max = ctx.params.get("n", 5)
    r = ctx.param("r", 2)
    worst = 0.0
    for _ in range(ctx.trials):
        def attempt(fam):
            pairs = []
            for n in range(r, n_max):
                sh = fam.shifted(-n)
                for k in range(r, n + 2):
                    lhs = special.lah_r(n + 1, k, r, fam)
                    rhs = sh.number(n + k) * special.lah_r(n, k, r, fam)
                    rhs = rhs + sh.big_weight(n + k - 1) * special.lah_r(n, k - 1, r, fam)
                    pairs.append((lhs, rhs))
            return _grid_error(pairs)
        worst = max(worst, ctx.with_retry(attempt))
    return worst


def _run_recursion_stirling1(ctx: _Context) -> float:
    n_max = ctx.params.get("n", 5)
    worst = 0.0
    for _ in range(ctx.trials):
        def attempt(fam):
            pairs = []
            for n in range(n_max):
                sh = fam.shifted(-n)
                for k in range(n + 2):
                    lhs = special.stirling1(n + 1, k, fam)
                    rhs = sh.number(n) * special.stirling1(n, k, fam)
                    if k >= 1:
                        rhs = rhs + sh.big_weight(n) * special.stirling1(n, k - 1, fam)
                    pairs.append((lhs, rhs))
            return _grid_error(pairs)
        worst = max(worst, ctx.with_retry(attempt))
    return worst


def _run_recursion_stirling1_r(ctx: _Context) -> float:
    n_max = ctx.params.get("n", 5)
    r = ctx.param("r", 2)
    worst = 0.0
    for _ in range(ctx.trials):
        def attempt(fam):
            pairs = []
            for n in range(r, n_max):
                sh = fam.shifted(-n)
                for k in range(r - 1, n + 2):
                    lhs = special.stirling1_r(n + 1, k, r, fam)
                    rhs = sh.number(n) * special.stirling1_r(n, k, r, fam)
                    if k >= 1:
                        rhs = rhs + sh.big_weight(n) * special.stirling1_r(n, k - 1, r, fam)
                    pairs.append((lhs, rhs))
            return _grid_error(pairs)
        worst = max(worst, ctx.with_retry(attempt))
    return worst


def _run_recursion_gen_stirling2(ctx: _Context) -> float:
    n_max = ctx.params.get("n", 5)
    offset = ctx.param("I", 0)
    jump = ctx.param("J", 1)
    worst = 0.0
    for _ in range(ctx.trials):
        def attempt(fam):
            sh = fam.shifted(-offset)
            pairs = []
            for n in range(n_max):
                for k in range(n + 2):
                    lhs = jattack.gen_stirling2(offset, jump, n + 1, k, fam)
                    rhs = sh.number(offset + k * jump) * jattack.gen_stirling2(
                        offset, jump, n, k, fam
                    )
                    if k >= 1:
                        rhs = rhs + sh.big_weight(
                            offset + (k - 1) * jump
                        ) * jattack.gen_stirling2(offset, jump, n, k - 1, fam)
                    pairs.append((lhs, rhs))
            return _grid_error(pairs)
        worst = max(worst, ctx.with_retry(attempt))
    return worst


def _run_recursion_gen_stirling1(ctx: _Context) -> float:
    n_max = ctx.params.get("n", 5)
    offset = ctx.param("I", 0)
    jump = ctx.param("J", 1)
    worst = 0.0
    for _ in range(ctx.trials):
        def attempt(fam):
            pairs = []
            for n in range(n_max):
                coeff = fam.shifted(-(offset + n * (jump - 1))).number(offset + n * jump)
                for k in range(n + 2):
                    lhs = jattack.gen_stirling1(offset, jump, n + 1, k, fam)
                    rhs = coeff * jattack.gen_stirling1(offset, jump, n, k, fam)
                    if k >= 1:
                        rhs = rhs + jattack.gen_stirling1(offset, jump, n, k - 1, fam)
                    pairs.append((lhs, rhs))
            return _grid_error(pairs)
        worst = max(worst, ctx.with_retry(attempt))
    return worst


# --- closed forms -------------------------------------------------------------


def _aq_sample(ctx: _Context) -> Aq:
    a, _, q, _ = random_generic_point(ctx.rng)
    return Aq(a, q)


def _run_closed_form_rect_aq(ctx: _Context) -> float:
    board = ctx.require_board()
    heights = set(board.heights)
    if len(heights) != 1:
        raise BadBoardSpec("closed-form-rect-aq needs a rectangular board")
    m = heights.pop()
    ell = board.n
    worst = 0.0
    for _ in range(ctx.trials):
        fam = _aq_sample(ctx)
        pairs = []
        for k in range(min(ell, m) + 1):
            pairs.append(
                (
                    rook.rook_number(board, k, fam),
                    rook.rect_rook_number_aq(ell, m, k, fam.a, fam.q),
                )
            )
        worst = max(worst, _grid_error(pairs))
    return worst


def _run_closed_form_lah_aq(ctx: _Context) -> float:
    n_max = ctx.param("n", 5)
    worst = 0.0
    for _ in range(ctx.trials):
        fam = _aq_sample(ctx)
        pairs = []
        for n in range(1, n_max + 1):
            for k in range(1, n + 1):
                pairs.append(
                    (special.lah(n, k, fam), special.lah_aq_closed(n, k, fam.a, fam.q))
                )
        worst = max(worst, _grid_error(pairs))
    return worst


def _run_closed_form_lah_r_aq(ctx: _Context) -> float:
    n_max = ctx.param("n", 5)
    r = ctx.param("r", 2)
    worst = 0.0
    for _ in range(ctx.trials):
        fam = _aq_sample(ctx)
        pairs = []
        for n in range(r, n_max + 1):
            for k in range(r, n + 1):
                pairs.append(
                    (
                        special.lah_r(n, k, r, fam),
                        special.lah_r_aq_closed(n, k, r, fam.a, fam.q),
                    )
                )
        worst = max(worst, _grid_error(pairs))
    return worst


def _run_closed_form_lah_r_q(ctx: _Context) -> float:
    n_max = ctx.param("n", 5)
    r = ctx.param("r", 2)
    worst = 0.0
    for _ in range(ctx.trials):
        _, _, q, _ = random_generic_point(ctx.rng)
        fam = PlainQ(q)
        pairs = []
        for n in range(r, n_max + 1):
            for k in range(r, n + 1):
                pairs.append(
                    (special.lah_r(n, k, r, fam), special.lah_r_q_closed(n, k, r, q))
                )
        worst = max(worst, _grid_error(pairs))
    return worst


def _run_closed_form_abel(ctx: _Context) -> float:
    n_max = ctx.param("n", 5)
    worst = 0.0
    for _ in range(ctx.trials):
        def attempt(fam):
            pairs = []
            for n in range(1, n_max + 1):
                for k in range(1, n + 1):
                    pairs.append(
                        (special.abel(n, k, fam), special.abel_closed(n, k, fam))
                    )
            return _grid_error(pairs)
        worst = max(worst, ctx.with_retry(attempt))
    return worst


def _run_closed_form_abel_r(ctx: _Context) -> float:
    n_max = ctx.param("n", 5)
    r = ctx.param("r", 2)
    worst = 0.0
    for _ in range(ctx.trials):
        def attempt(fam):
            pairs = []
            for n in range(r, n_max + 1):
                for k in range(r, n + 1):
                    pairs.append(
                        (
                            special.abel_r(n, k, r, fam),
                            special.abel_r_closed(n, k, r, fam),
                        )
                    )
            return _grid_error(pairs)
        worst = max(worst, ctx.with_retry(attempt))
    return worst


def _run_closed_form_abel_general(ctx: _Context) -> float:
    n_max = ctx.param("n", 4)
    m = ctx.param("m", 8)
    r = ctx.params.get("r", 1)
    worst = 0.0
    for _ in range(ctx.trials):
        def attempt(fam):
            pairs = []
            for n in range(max(r, 1), n_max + 1):
                for k in range(r, n + 1):
                    pairs.append(
                        (
                            special.abel_gen(m, n, k, r, fam),
                            special.abel_gen_closed(m, n, k, r, fam),
                        )
                    )
            return _grid_error(pairs)
        worst = max(worst, ctx.with_retry(attempt))
    return worst


def _run_closed_form_stirling2_small_k(ctx: _Context) -> float:
    n_max = ctx.param("n", 5)
    worst = 0.0
    for _ in range(ctx.trials):
        def attempt(fam):
            pairs = []
            for n in range(1, n_max + 1):
                for k in range(min(n, 3) + 1):
                    pairs.append(
                        (
                            special.stirling2(n, k, fam),
                            special.stirling2_small_k(n, k, fam),
                        )
                    )
            return _grid_error(pairs)
        worst = max(worst, ctx.with_retry(attempt))
    return worst


# --- degenerations ------------------------------------------------------------


def _run_degeneration_chain(ctx: _Context) -> float:
    worst = 0.0
    for _ in range(ctx.trials):
        a, b, q, _ = random_generic_point(ctx.rng)
        k = ctx.rng.randrange(-4, 5)
        full = FullElliptic(a, b, q, 0)
        flat = ABq(a, b, q)
        pairs = [
            (full.small_weight(k), flat.small_weight(k)),
            (full.big_weight(k), flat.big_weight(k)),
            (full.number(k + 2), flat.number(k + 2)),
            (full.binomial(4, 2), flat.binomial(4, 2)),
        ]
        # hand-derived b -> 0 and a -> 0 limits of the a,b;q weights
        aq = Aq(a, q)
        q2k = q ** (2 * k)
        pairs.append((aq.small_weight(k), (1 - a * q2k * q) / ((1 - a * q2k / q) * q)))
        zbq = ZeroBq(b, q)
        qk = q**k
        pairs.append((zbq.small_weight(k), q * (1 - b * qk) / (1 - b * qk * q * q)))
        plain = PlainQ(q)
        pairs.append((plain.small_weight(k), q))
        pairs.append((plain.big_weight(k), q**k))
        try:
            worst = max(worst, _grid_error(pairs))
        except PoleEncountered:
            ctx.resamples += 1
    return worst


def _run_degeneration_q(ctx: _Context) -> float:
    board = ctx.require_board()
    n = board.n
    mismatches = 0
    degree = board.area + n + 1
    values = [Fraction(num, den) for num, den in ((2, 3), (3, 5), (5, 7), (7, 4), (9, 2))]
    while len(values) < max(ctx.trials, degree + 1):
        num = ctx.rng.randrange(2, 120)
        den = ctx.rng.randrange(2, 120)
        v = Fraction(num, den)
        if v != 1 and v not in values:
            values.append(v)
    for q in values:
        fam = PlainQ(q)
        for z in range(n + 3):
            lhs = 1
            for i, b in enumerate(board.heights, 1):
                lhs *= q_number(q, z + b - i + 1)
            rhs = 0
            for k in range(n + 1):
                rhs += rook.q_rook_number(board, n - k, q) * q_falling(q, z, k)
            if lhs != rhs:
                mismatches += 1
        for k in range(n + 1):
            if rook.rook_number(board, k, fam) != rook.q_rook_number(board, k, q):
                mismatches += 1
    return float(mismatches)


def _run_degeneration_pq(ctx: _Context) -> float:
    worst = 0.0
    for _ in range(ctx.trials):
        def attempt(fam):
            if not isinstance(fam, FrakPQ):
                fam = FrakPQ(fam.a, fam.b, 1.1 + 0.2j, fam.q)
            delegate = ABq(fam.a, fam.b, fam.q / fam.fp)
            k = ctx.rng.randrange(-3, 4)
            z = ctx.draw_z()
            pairs = [
                (fam.small_weight(k), delegate.small_weight(k)),
                (fam.number(z), delegate.number(z)),
                (fam.big_weight(k), delegate.big_weight(k)),
            ]
            return _grid_error(pairs)
        worst = max(worst, ctx.with_retry(attempt))
    return worst


def _run_ellipticity(ctx: _Context) -> float:
    worst = 0.0
    for _ in range(ctx.trials):
        def attempt(fam):
            if not isinstance(fam, FullElliptic):
                raise BadBoardSpec("ellipticity is a full-elliptic statement")
            k = ctx.rng.randrange(-4, 5)
            base = fam.small_weight(k)
            shifted_a = FullElliptic(fam.a * fam.p, fam.b, fam.q, fam.p)
            shifted_b = FullElliptic(fam.a, fam.b * fam.p, fam.q, fam.p)
            return _grid_error(
                [(base, shifted_a.small_weight(k)), (base, shifted_b.small_weight(k))]
            )
        worst = max(worst, ctx.with_retry(attempt))
    return worst


# --- theta substrate ----------------------------------------------------------


def _random_nonzero(rng: random.Random) -> complex:
    return rng.uniform(0.5, 2.0) * cmath.exp(1j * rng.uniform(0.0, 6.283185307179586))


def _random_nome(rng: random.Random) -> complex:
    return rng.uniform(0.05, 0.4) * cmath.exp(1j * rng.uniform(0.0, 6.283185307179586))


def _run_theta_inversion(ctx: _Context) -> float:
    worst = 0.0
    for _ in range(ctx.trials):
        x = _random_nonzero(ctx.rng)
        p = _random_nome(ctx.rng)
        lhs = theta(x, p)
        rhs = -x * theta(1 / x, p)
        worst = max(worst, relative_error(lhs, rhs))
    return worst


def _run_theta_quasiperiod(ctx: _Context) -> float:
    worst = 0.0
    for _ in range(ctx.trials):
        x = _random_nonzero(ctx.rng)
        p = _random_nome(ctx.rng)
        lhs = theta(p * x, p)
        rhs = -theta(x, p) / x
        worst = max(worst, relative_error(lhs, rhs))
    return worst


def _run_addition_formula(ctx: _Context) -> float:
    worst = 0.0
    for _ in range(ctx.trials):
        x, y, u, v = (_random_nonzero(ctx.rng) for _ in range(4))
        p = _random_nome(ctx.rng)
        t1 = theta(x * y, p) * theta(x / y, p) * theta(u * v, p) * theta(u / v, p)
        t2 = theta(x * v, p) * theta(x / v, p) * theta(u * y, p) * theta(u / y, p)
        t3 = (u / y) * theta(y * v, p) * theta(y / v, p) * theta(x * u, p) * theta(x / u, p)
        scale = max(abs(t1), abs(t2), abs(t3), 1e-30)
        worst = max(worst, abs(t1 - t2 - t3) / scale)
    return worst


# --- bijections (exact counting) ---------------------------------------------


def _run_bijection_partition(ctx: _Context) -> float:
    n = ctx.param("n", 5)
    board = special.staircase(n)
    mismatches = 0
    images = set()
    total = 0
    for k in range(n + 1):
        for cells in rook_placements(board.heights, n - k):
            part = biject.rooks_to_partition(cells, n)
            if len(part) != k or biject.partition_to_rooks(part) != tuple(sorted(cells)):
                mismatches += 1
            images.add(part)
            total += 1
    codomain = set(biject.set_partitions(n))
    if images != codomain or total != len(images):
        mismatches += 1
    return float(mismatches)


def _run_bijection_cycles(ctx: _Context) -> float:
    n = ctx.param("n", 5)
    r = ctx.params.get("r", 1)
    board = special.staircase_r(n, r)
    mismatches = 0
    images = set()
    total = 0
    for k in range(n + 1):
        for cells in file_placements(board.heights, n - k):
            perm = biject.file_to_cycles(cells, n)
            if len(perm.cycles) != k or biject.cycles_to_file(perm) != tuple(sorted(cells)):
                mismatches += 1
            images.add(perm)
            total += 1
    codomain = biject.restricted_cycle_structures(n, r)
    if images != codomain or total != len(images):
        mismatches += 1
    return float(mismatches)


def _run_bijection_tubes(ctx: _Context) -> float:
    n = ctx.param("n", 4)
    r = ctx.params.get("r", 2)
    board = special.lah_board_r(n, r)
    mismatches = 0
    images = set()
    by_k: dict[int, int] = {}
    for k in range(r, n + 1):
        for cells in rook_placements(board.heights, n - k):
            tubes = biject.rooks_to_tubes(cells, n, r)
            if len(tubes.tubes) != k or biject.tubes_to_rooks(tubes, n, r) != tuple(
                sorted(cells)
            ):
                mismatches += 1
            images.add(tubes)
            by_k[k] = by_k.get(k, 0) + 1
    for k, count in by_k.items():
        if count != special.classical_lah_r(n, k, r):
            mismatches += 1
    codomain = set()
    for k in range(r, n + 1):
        codomain |= biject.tube_placements(n, k, r)
    if images != codomain:
        mismatches += 1
    return float(mismatches)


def _run_bijection_abel(ctx: _Context) -> float:
    n = ctx.param("n", 5)
    m = ctx.params.get("m")
    r = ctx.params.get("r", 1)
    board = special.abel_board_general(m if m is not None else n, n, r)
    mismatches = 0
    images = set()
    by_k: dict[int, int] = {}
    for k in range(r, n + 1):
        for cells in file_placements(board.heights, n - k):
            forest = biject.file_to_forest(cells, n, m, r)
            if len(forest.roots) != k or biject.forest_to_file(forest, n, m, r) != tuple(
                sorted(cells)
            ):
                mismatches += 1
            images.add(forest)
            by_k[k] = by_k.get(k, 0) + 1
    for k, count in by_k.items():
        expected = biject.abel_count_general(m if m is not None else n, n, k, r)
        if count != expected:
            mismatches += 1
    codomain = biject.rooted_forests(n, m, r)
    if images != codomain:
        mismatches += 1
    return float(mismatches)


def _run_bijection_rg(ctx: _Context) -> float:
    n = ctx.param("n", 4)
    offset = ctx.param("I", 1)
    jump = ctx.param("J", 2)
    board = jattack.b_board(offset, jump, n)
    mismatches = 0
    for k in range(n + 1):
        words = jattack.enumerate_rg_words(offset, jump, n, k)
        placements = {
            cells for cells, _ in j_rook_placements(board.heights, jump, n - k)
        }
        images = set()
        for gamma in words:
            cells = jattack.phi(gamma)
            images.add(cells)
            if jattack.phi_inverse(offset, jump, n, cells) != gamma:
                mismatches += 1
        if images != placements or len(images) != len(words):
            mismatches += 1
    return float(mismatches)


def _run_bijection_rg_weight(ctx: _Context) -> float:
    n = ctx.param("n", 4)
    offset = ctx.param("I", 1)
    jump = ctx.param("J", 2)
    worst = 0.0
    for _ in range(ctx.trials):
        def attempt(fam):
            pairs = []
            for k in range(n + 1):
                for gamma in jattack.enumerate_rg_words(offset, jump, n, k):
                    pairs.append(jattack.rg_word_weight_identity(gamma, fam))
            return _grid_error(pairs)
        worst = max(worst, ctx.with_retry(attempt))
    return worst


def _run_matrix_inverse(ctx: _Context) -> float:
    n_max = ctx.params.get("n", 6)
    worst = 0.0
    for _ in range(ctx.trials):
        def attempt(fam):
            big_s = {}
            small_s = {}
            for n in range(n_max + 1):
                for k in range(n + 1):
                    big_s[(n, k)] = jattack.gen_stirling2_normalized(0, 1, n, k, fam)
                    small_s[(n, k)] = (-1) ** (n - k) * jattack.gen_stirling1(
                        0, 1, n, k, fam
                    )
            err = 0.0
            for n in range(n_max + 1):
                for target in range(n + 1):
                    terms = [
                        big_s[(n, k)] * small_s[(k, target)] for k in range(target, n + 1)
                    ]
                    total = sum(terms)
                    want = 1 if target == n else 0
                    scale = max(1.0, max(abs(t) for t in terms))
                    err = max(err, abs(total - want) / scale)
            return err
        worst = max(worst, ctx.with_retry(attempt))
    return worst


# --- registry -----------------------------------------------------------------

_IDENTITIES = {
    "product-rook": (_run_product_rook, 25, 1e-8),
    "product-file": (_run_product_file, 25, 1e-8),
    "product-file-above": (_run_product_file_above, 25, 1e-8),
    "product-jump": (_run_product_jump, 25, 1e-8),
    "max-identity": (_run_max_identity, 10, 1e-9),
    "recursion-rook": (_run_recursion_rook, 5, 1e-9),
    "recursion-file": (_run_recursion_file, 5, 1e-9),
    "recursion-binomial": (_run_recursion_binomial, 5, 1e-9),
    "recursion-stirling2": (_run_recursion_stirling2, 5, 1e-9),
    "recursion-stirling2-r": (_run_recursion_stirling2_r, 5, 1e-9),
    "recursion-lah": (_run_recursion_lah, 5, 1e-9),
    "recursion-lah-r": (_run_recursion_lah_r, 5, 1e-9),
    "recursion-stirling1": (_run_recursion_stirling1, 5, 1e-9),
    "recursion-stirling1-r": (_run_recursion_stirling1_r, 5, 1e-9),
    "recursion-gen-stirling2": (_run_recursion_gen_stirling2, 5, 1e-9),
    "recursion-gen-stirling1": (_run_recursion_gen_stirling1, 5, 1e-9),
    "closed-form-rect-aq": (_run_closed_form_rect_aq, 10, 1e-9),
    "closed-form-lah-aq": (_run_closed_form_lah_aq, 10, 1e-9),
    "closed-form-lah-r-aq": (_run_closed_form_lah_r_aq, 10, 1e-9),
    "closed-form-lah-r-q": (_run_closed_form_lah_r_q, 10, 1e-9),
    "closed-form-abel": (_run_closed_form_abel, 10, 1e-9),
    "closed-form-abel-r": (_run_closed_form_abel_r, 10, 1e-9),
    "closed-form-abel-general": (_run_closed_form_abel_general, 10, 1e-9),
    "closed-form-stirling2-small-k": (_run_closed_form_stirling2_small_k, 10, 1e-9),
    "degeneration-chain": (_run_degeneration_chain, 50, 1e-12),
    "degeneration-q": (_run_degeneration_q, 10, 0.5),
    "degeneration-pq": (_run_degeneration_pq, 50, 1e-10),
    "ellipticity": (_run_ellipticity, 200, 1e-9),
    "theta-inversion": (_run_theta_inversion, 200, 1e-10),
    "theta-quasiperiodicity": (_run_theta_quasiperiod, 200, 1e-10),
    "addition-formula": (_run_addition_formula, 200, 1e-10),
    "bijection-partition": (_run_bijection_partition, 1, 0.5),
    "bijection-cycles": (_run_bijection_cycles, 1, 0.5),
    "bijection-tubes": (_run_bijection_tubes, 1, 0.5),
    "bijection-abel": (_run_bijection_abel, 1, 0.5),
    "bijection-rg": (_run_bijection_rg, 1, 0.5),
    "bijection-rg-weight": (_run_bijection_rg_weight, 3, 1e-10),
    "matrix-inverse": (_run_matrix_inverse, 3, 1e-9),
}


def identity_names() -> list[str]:
    return sorted(_IDENTITIES)


def run_check(
    identity: str,
    board: str | None = None,
    family: str = "elliptic",
    trials: int | None = None,
    tol: float | None = None,
    seed: int = 0,
    *,
    z=None,
    jump: int | None = None,
    offset: int | None = None,
    restriction: int | None = None,
    general_m: int | None = None,
    config: SamplerConfig = SamplerConfig(),
) -> CheckReport:
    """Run one identity check and return its report."""
    if identity not in _IDENTITIES:
        raise UnknownIdentity(f"unknown identity {identity!r}")
    runner, default_trials, default_tol = _IDENTITIES[identity]
    trials = default_trials if trials is None else trials
    tol = default_tol if tol is None else tol
    parsed = parse_board_spec(board)
    params: dict = {}
    board_obj = None
    if isinstance(parsed, dict):
        params.update(parsed)
    elif parsed is not None:
        board_obj = parsed
    if z is not None:
        params["z"] = z
    if jump is not None:
        params["J"] = jump
    if offset is not None:
        params["I"] = offset
    if restriction is not None:
        params["r"] = restriction
    if general_m is not None:
        params["m"] = general_m
    ctx = _Context(
        rng=random.Random(seed),
        family_tag=family,
        board=board_obj,
        params=params,
        trials=trials,
        config=config,
    )
    max_rel_err = runner(ctx)
    return CheckReport(
        identity_name=identity,
        board="" if board is None else str(board),
        family=family,
        trials=trials,
        max_rel_err=float(max_rel_err),
        resamples=ctx.resamples,
        seed=seed,
        passed=max_rel_err < tol,
    )
