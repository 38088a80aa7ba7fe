"""The perfect evaluation function as a dense tensor over board codes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .game import (
    CIRCLE,
    CROSS,
    EMPTY,
    N_CELLS,
    N_STATES,
    POWERS,
    GameState,
    encode,
    has_line,
    valid_mask,
)

METHODS = ("exact", "svd", "hosvd")


@dataclass(frozen=True, eq=False)
class EvalTensor:
    """Evaluation values for all ``3**9`` boards, indexed by state code.

    ``method`` is one of ``"exact"``, ``"svd"`` or ``"hosvd"``; ``rank`` is
    the truncation rank for the approximations and ``None`` for the exact
    tensor.
    """

    values: np.ndarray
    method: str = "exact"
    rank: Optional[int] = None

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64).reshape(-1)
        if values.shape != (N_STATES,):
            raise ValueError(f"expected {N_STATES} values, got {values.size}")
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def meta(self) -> str:
        return "exact" if self.method == "exact" else f"{self.method}({self.rank})"

    def at(self, codes):
        """Values at one code or an array of codes.

        Every read made by the playing agents goes through here.
        """
        return self.values[codes]

    def cube(self) -> np.ndarray:
        """View as ``X[i, j, k]`` with i, j, k the base-3 codes of cells
        (1,2,3), (4,5,6) and (7,8,9)."""
        return self.values.reshape(27, 27, 27).transpose(2, 1, 0)

    def __repr__(self) -> str:
        return f"EvalTensor({self.meta})"


def build_exact() -> EvalTensor:
    """Expected final score (+1/-1/0) under uniformly random play, per board.

    Terminal boards score 1 (circle wins), -1 (cross wins) or 0 (draw).  An
    unfinished board scores the mean over its empty cells of the child
    board's score.  Invalid boards score 0.
    """
    memo = np.full(N_STATES, np.nan)

    def value(code: int, cells: list[int], n_moves: int) -> float:
        v = memo[code]
        if v == v:
            return v
        if has_line(cells, CIRCLE):
            v = 1.0
        elif has_line(cells, CROSS):
            v = -1.0
        elif n_moves == N_CELLS:
            v = 0.0
        else:
            mark = CIRCLE if n_moves % 2 == 0 else CROSS
            total = 0.0
            count = 0
            for i in range(N_CELLS):
                if cells[i] != EMPTY:
                    continue
                cells[i] = mark
                total += value(code + mark * POWERS[i], cells, n_moves + 1)
                cells[i] = EMPTY
                count += 1
            v = total / count
        memo[code] = v
        return v

    value(0, [EMPTY] * N_CELLS, 0)
    out = np.where(valid_mask(), memo, 0.0)
    # Every valid board is reachable from the empty board.
    assert not np.isnan(out).any()
    return EvalTensor(out, "exact")


def lookup(tensor: EvalTensor, state: GameState) -> float:
    return float(tensor.at(encode(state)))


def zeros(method: str = "exact", rank: Optional[int] = None) -> EvalTensor:
    return EvalTensor(np.zeros(N_STATES), method, rank)
