"""Seeded self-play between two evaluation tensors.

Seeding
-------
Every game gets its own PCG64 stream.  The seed of game ``g`` in a match
with master seed ``s`` is the first 64-bit word of
``numpy.random.SeedSequence(s, spawn_key=(g,))``, i.e. SeedSequence's
hash of the pair; a sweep first derives one match seed per point the same
way from its own master seed.  Results therefore depend only on
``(tensors, games, w, seed)`` and not on the order games are played in.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .compression import (
    compress_hosvd,
    compress_svd,
    hosvd_factors,
    reconstruct_hosvd,
    reconstruct_svd,
    svd_factorization,
    SVD_MAX_RANK,
)
from .evaluation import EvalTensor
from .game import CIRCLE, CROSS, Outcome, classify, decode, terminal_mask
from .metrics import CompressionPoint, compression_ratio, match_ranks, relative_error
from .policy import DEFAULT_W, distribution_for_code, make_rng, sample_move

# Compression ratios at which simple SVD and HOSVD are compared.
MATCHED_RATIOS = (0.0, 0.049, 0.13, 0.20, 0.31, 0.43, 0.80, 1.0)

Z_95 = 1.959963984540054


def derive_seed(master: int, *keys: int) -> int:
    ss = np.random.SeedSequence(master, spawn_key=tuple(keys))
    return int(ss.generate_state(1, np.uint64)[0])


class GameRecord(NamedTuple):
    outcome: Outcome
    moves: tuple[int, ...]


def simulate_game(tensor_first: EvalTensor, tensor_second: EvalTensor,
                  w: float = DEFAULT_W, seed: int = 0) -> GameRecord:
    """Play one game from the empty board and keep the move list."""
    rng = make_rng(seed)
    terminal = terminal_mask()
    code, n, moves = 0, 0, []
    while not terminal[code]:
        if n % 2 == 0:
            dist = distribution_for_code(tensor_first, code, w, 1.0)
            mark = CIRCLE
        else:
            dist = distribution_for_code(tensor_second, code, w, -1.0)
            mark = CROSS
        cell = sample_move(dist, rng)
        code += mark * 3 ** (cell - 1)
        moves.append(cell)
        n += 1
    return GameRecord(classify(decode(code)), tuple(moves))


def play_game(tensor_first: EvalTensor, tensor_second: EvalTensor,
              w: float = DEFAULT_W, seed: int = 0) -> Outcome:
    return simulate_game(tensor_first, tensor_second, w, seed).outcome


@dataclass(frozen=True)
class SideCounts:
    wins_a: int = 0
    wins_b: int = 0
    draws: int = 0

    @property
    def games(self) -> int:
        return self.wins_a + self.wins_b + self.draws


def wilson_halfwidth(successes: int, n: int, z: float = Z_95) -> float:
    if n == 0:
        return 0.0
    p = successes / n
    return z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / (1 + z * z / n)


@dataclass(frozen=True)
class MatchReport:
    """Outcome counts of a side-swapped match between tensors A and B."""

    a_first: SideCounts
    b_first: SideCounts
    seed: int
    w: float
    label_a: str = "A"
    label_b: str = "B"

    @property
    def games_total(self) -> int:
        return self.a_first.games + self.b_first.games

    @property
    def wins_a(self) -> int:
        return self.a_first.wins_a + self.b_first.wins_a

    @property
    def wins_b(self) -> int:
        return self.a_first.wins_b + self.b_first.wins_b

    @property
    def draws(self) -> int:
        return self.a_first.draws + self.b_first.draws

    @property
    def rate_a(self) -> float:
        return self.wins_a / self.games_total

    @property
    def rate_b(self) -> float:
        return self.wins_b / self.games_total

    @property
    def draw_rate(self) -> float:
        return self.draws / self.games_total

    @property
    def ci_halfwidth(self) -> float:
        """Widest 95% Wilson half-width among the three rates."""
        n = self.games_total
        return max(wilson_halfwidth(k, n) for k in (self.wins_a, self.wins_b, self.draws))

    def to_dict(self) -> dict:
        return {
            "label_a": self.label_a,
            "label_b": self.label_b,
            "games_total": self.games_total,
            "wins_a": self.wins_a,
            "wins_b": self.wins_b,
            "draws": self.draws,
            "a_first": asdict(self.a_first),
            "b_first": asdict(self.b_first),
            "rate_a": self.rate_a,
            "rate_b": self.rate_b,
            "draw_rate": self.draw_rate,
            "ci_halfwidth": self.ci_halfwidth,
            "seed": self.seed,
            "w": self.w,
        }


def _tally(outcomes: Iterable[Outcome], a_is_first: bool) -> SideCounts:
    a = b = d = 0
    for outcome in outcomes:
        if outcome is Outcome.DRAW:
            d += 1
        elif (outcome is Outcome.FIRST_WINS) == a_is_first:
            a += 1
        else:
            b += 1
    return SideCounts(a, b, d)


def run_match(tensor_a: EvalTensor, tensor_b: EvalTensor, games: int = 500,
              w: float = DEFAULT_W, seed: int = 0,
              label_a: Optional[str] = None, label_b: Optional[str] = None) -> MatchReport:
    """Play ``games`` games, the first half with A moving first and the second
    half with B moving first.  Game ``g`` is seeded with ``derive_seed(seed, g)``.
    """
    if games <= 0 or games % 2:
        raise ValueError(f"games must be a positive even number, got {games}")
    half = games // 2
    a_first = (play_game(tensor_a, tensor_b, w, derive_seed(seed, g)) for g in range(half))
    b_first = (play_game(tensor_b, tensor_a, w, derive_seed(seed, g)) for g in range(half, games))
    return MatchReport(
        a_first=_tally(a_first, True),
        b_first=_tally(b_first, False),
        seed=seed,
        w=w,
        label_a=label_a or tensor_a.meta,
        label_b=label_b or tensor_b.meta,
    )


@dataclass(frozen=True, eq=False)
class Pairing:
    """Two tensors to pit against each other at one compression level.

    ``points`` describes the compressed side(s).
    """

    tensor_a: EvalTensor
    tensor_b: EvalTensor
    cr: float
    points: tuple[CompressionPoint, ...] = ()

    def point(self, method: str) -> Optional[CompressionPoint]:
        return next((p for p in self.points if p.method == method), None)


@dataclass(frozen=True)
class SweepResult:
    cr: float
    points: tuple[CompressionPoint, ...]
    report: MatchReport

    def point(self, method: str) -> Optional[CompressionPoint]:
        return next((p for p in self.points if p.method == method), None)

    def row(self) -> dict:
        svd_pt, hosvd_pt = self.point("svd"), self.point("hosvd")
        return {
            "cr": self.cr,
            "r_svd": svd_pt.r if svd_pt else None,
            "r_hosvd": hosvd_pt.r if hosvd_pt else None,
            "rate_A": self.report.rate_a,
            "rate_B": self.report.rate_b,
            "draw_rate": self.report.draw_rate,
            "rel_error": svd_pt.rel_error if svd_pt else None,
            "ci_halfwidth": self.report.ci_halfwidth,
            "rel_error_hosvd": hosvd_pt.rel_error if hosvd_pt else None,
            "cr_svd": svd_pt.cr if svd_pt else None,
            "cr_hosvd": hosvd_pt.cr if hosvd_pt else None,
        }


SWEEP_FIELDS = ("cr", "r_svd", "r_hosvd", "rate_A", "rate_B", "draw_rate", "rel_error",
                "ci_halfwidth", "rel_error_hosvd", "cr_svd", "cr_hosvd")


def sweep(pairings: Sequence[Pairing], games: int = 500, w: float = DEFAULT_W,
          seed: int = 0) -> list[SweepResult]:
    """One match per pairing; pairing ``p`` uses match seed ``derive_seed(seed, p)``."""
    results = []
    for p, pairing in enumerate(pairings):
        report = run_match(pairing.tensor_a, pairing.tensor_b, games, w, derive_seed(seed, p))
        results.append(SweepResult(pairing.cr, pairing.points, report))
    return results


def rank_dependence_pairings(exact: EvalTensor,
                             ranks: Iterable[int] = range(SVD_MAX_RANK + 1)) -> list[Pairing]:
    """Exact tensor (A) against its rank-r simple-SVD approximations (B)."""
    factors = svd_factorization(exact)
    out = []
    for r in ranks:
        approx = reconstruct_svd(compress_svd(exact, r, factors))
        cr = compression_ratio("svd", r)
        point = CompressionPoint("svd", r, cr, relative_error(exact, approx))
        out.append(Pairing(exact, approx, cr, (point,)))
    return out


def method_comparison_pairings(exact: EvalTensor,
                               ratios: Iterable[float] = MATCHED_RATIOS) -> list[Pairing]:
    """Simple-SVD (A) against HOSVD (B) at ranks matched by compression ratio."""
    svd_f = svd_factorization(exact)
    hosvd_f = hosvd_factors(exact)
    out = []
    for target in ratios:
        r_svd, r_hosvd = match_ranks(target)
        a = reconstruct_svd(compress_svd(exact, r_svd, svd_f))
        b = reconstruct_hosvd(compress_hosvd(exact, r_hosvd, hosvd_f))
        points = (
            CompressionPoint("svd", r_svd, compression_ratio("svd", r_svd), relative_error(exact, a)),
            CompressionPoint("hosvd", r_hosvd, compression_ratio("hosvd", r_hosvd),
                             relative_error(exact, b)),
        )
        out.append(Pairing(a, b, target, points))
    return out
