"""One-ply softmax agents over an evaluation tensor.

The agent scores each legal move by the tensor value of the board it
produces, negated when playing cross, and picks a move with probability
proportional to ``exp(w * score)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .evaluation import EvalTensor
from .game import CIRCLE, CROSS, EMPTY, GameState, IllegalMoveError, digit_table, encode, terminal_mask

DEFAULT_W = 10.0
_POWERS = 3 ** np.arange(9)


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator; streams are reproducible across platforms."""
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class PolicyConfig:
    w: float = DEFAULT_W
    side: str = "first"
    rng_seed: int = 0

    def __post_init__(self):
        if not np.isfinite(self.w) or self.w < 0:
            raise ValueError(f"w must be finite and non-negative, got {self.w}")
        if self.side not in ("first", "second"):
            raise ValueError(f"side must be 'first' or 'second', got {self.side!r}")

    @property
    def sign(self) -> float:
        return 1.0 if self.side == "first" else -1.0

    def rng(self) -> np.random.Generator:
        return make_rng(self.rng_seed)


class MoveDistribution(NamedTuple):
    moves: tuple[int, ...]  # 1-based cells, ascending
    probs: np.ndarray


def softmax(scores, w: float) -> np.ndarray:
    z = w * np.asarray(scores, dtype=np.float64)
    z = z - z.max()
    e = np.exp(z)
    return e / e.sum()


def child_codes(code: int) -> tuple[np.ndarray, np.ndarray]:
    """Empty cells (0-based) of board ``code`` and the codes after playing
    each of them with the mark whose turn it is."""
    digits = digit_table()[code]
    empties = np.flatnonzero(digits == EMPTY)
    mark = CIRCLE if (9 - empties.size) % 2 == 0 else CROSS
    return empties, code + mark * _POWERS[empties]


def distribution_for_code(tensor: EvalTensor, code: int, w: float, sign: float) -> MoveDistribution:
    if terminal_mask()[code]:
        raise IllegalMoveError("no moves from a finished game")
    empties, children = child_codes(code)
    scores = sign * tensor.at(children)
    return MoveDistribution(tuple(int(i) + 1 for i in empties), softmax(scores, w))


def move_distribution(tensor: EvalTensor, state: GameState, config: PolicyConfig) -> MoveDistribution:
    """Softmax probabilities over the legal moves of ``state``.

    Raises
    ------
    IllegalMoveError
        If ``state`` is terminal.
    """
    return distribution_for_code(tensor, encode(state), config.w, config.sign)


def sample_move(dist: MoveDistribution, rng: np.random.Generator) -> int:
    """Inverse-CDF draw over ``dist.moves`` in ascending order; consumes one
    uniform variate from ``rng``."""
    u = rng.random()
    cdf = np.cumsum(dist.probs)
    idx = int(np.searchsorted(cdf, u * cdf[-1], side="right"))
    return dist.moves[min(idx, len(dist.moves) - 1)]
