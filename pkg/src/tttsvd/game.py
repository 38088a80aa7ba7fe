"""Tic-Tac-Toe rules and the base-3 state codec.

Cells are numbered 1..9 row by row::

    1 | 2 | 3
    4 | 5 | 6
    7 | 8 | 9

A cell holds 0 (empty), 1 (circle, first player) or 2 (cross, second
player).  A board is encoded as ``sum(c_i * 3**(i - 1))`` so cell 1 is the
least significant digit and every board maps to an integer in
``[0, 3**9)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

EMPTY, CIRCLE, CROSS = 0, 1, 2
N_CELLS = 9
N_STATES = 3**N_CELLS

# 1-based cell triples.
LINES = (
    (1, 2, 3), (4, 5, 6), (7, 8, 9),
    (1, 4, 7), (2, 5, 8), (3, 6, 9),
    (1, 5, 9), (3, 5, 7),
)

POWERS = tuple(3**i for i in range(N_CELLS))


class Outcome(enum.Enum):
    FIRST_WINS = "first_wins"
    SECOND_WINS = "second_wins"
    DRAW = "draw"
    ONGOING = "ongoing"

    @property
    def terminal(self) -> bool:
        return self is not Outcome.ONGOING


class InvalidStateError(ValueError):
    """Raised for boards that cannot arise in a legal game."""


class IllegalMoveError(ValueError):
    pass


@dataclass(frozen=True)
class GameState:
    cells: tuple[int, ...] = (EMPTY,) * N_CELLS

    def __post_init__(self):
        cells = tuple(int(c) for c in self.cells)
        if len(cells) != N_CELLS:
            raise ValueError(f"expected {N_CELLS} cells, got {len(cells)}")
        if any(c not in (EMPTY, CIRCLE, CROSS) for c in cells):
            raise ValueError(f"cell values must be 0, 1 or 2: {cells}")
        object.__setattr__(self, "cells", cells)

    @classmethod
    def from_marks(cls, circles: Iterable[int] = (), crosses: Iterable[int] = ()) -> "GameState":
        """Build a board from 1-based cell numbers of each mark."""
        cells = [EMPTY] * N_CELLS
        for i in circles:
            cells[i - 1] = CIRCLE
        for i in crosses:
            if cells[i - 1] != EMPTY:
                raise ValueError(f"cell {i} given twice")
            cells[i - 1] = CROSS
        return cls(tuple(cells))

    def __getitem__(self, cell: int) -> int:
        """Value of 1-based ``cell``."""
        if not 1 <= cell <= N_CELLS:
            raise IndexError(cell)
        return self.cells[cell - 1]

    @property
    def n_circles(self) -> int:
        return self.cells.count(CIRCLE)

    @property
    def n_crosses(self) -> int:
        return self.cells.count(CROSS)

    @property
    def n_moves(self) -> int:
        return N_CELLS - self.cells.count(EMPTY)

    @property
    def mark_to_move(self) -> int:
        return CIRCLE if self.n_moves % 2 == 0 else CROSS

    @property
    def code(self) -> int:
        return encode(self)

    def __str__(self) -> str:
        sym = {EMPTY: ".", CIRCLE: "O", CROSS: "X"}
        rows = [self.cells[r * 3:(r + 1) * 3] for r in range(3)]
        return "\n".join("".join(sym[c] for c in row) for row in rows)


def encode(state: GameState | Sequence[int]) -> int:
    cells = state.cells if isinstance(state, GameState) else state
    return sum(c * p for c, p in zip(cells, POWERS))


def decode(code: int) -> GameState:
    if not 0 <= code < N_STATES:
        raise ValueError(f"state code out of range: {code}")
    cells = []
    for _ in range(N_CELLS):
        code, digit = divmod(code, 3)
        cells.append(digit)
    return GameState(tuple(cells))


def has_line(cells: Sequence[int], mark: int) -> bool:
    return any(cells[a - 1] == mark and cells[b - 1] == mark and cells[c - 1] == mark
               for a, b, c in LINES)


def classify(state: GameState) -> Outcome:
    """Classify a board as won, drawn or still in play.

    Raises
    ------
    InvalidStateError
        If both players have a completed line.
    """
    first = has_line(state.cells, CIRCLE)
    second = has_line(state.cells, CROSS)
    if first and second:
        raise InvalidStateError(f"both players have a line:\n{state}")
    if first:
        return Outcome.FIRST_WINS
    if second:
        return Outcome.SECOND_WINS
    if EMPTY not in state.cells:
        return Outcome.DRAW
    return Outcome.ONGOING


def is_valid(state: GameState) -> bool:
    """True if ``state`` can arise from legal alternating play.

    That requires ``n_circles - n_crosses`` in {0, 1}, at most one winner,
    and the winner (if any) being the player who moved last.
    """
    diff = state.n_circles - state.n_crosses
    if diff not in (0, 1):
        return False
    first = has_line(state.cells, CIRCLE)
    second = has_line(state.cells, CROSS)
    if first and second:
        return False
    if first:
        return diff == 1
    if second:
        return diff == 0
    return True


def legal_moves(state: GameState) -> list[int]:
    """Empty cells (1-based, ascending); empty list once the game is over."""
    if classify(state).terminal:
        return []
    return [i + 1 for i, c in enumerate(state.cells) if c == EMPTY]


def apply_move(state: GameState, cell: int) -> GameState:
    if not 1 <= cell <= N_CELLS:
        raise IllegalMoveError(f"no such cell: {cell}")
    if classify(state).terminal:
        raise IllegalMoveError("game is already over")
    if state.cells[cell - 1] != EMPTY:
        raise IllegalMoveError(f"cell {cell} is occupied")
    cells = list(state.cells)
    cells[cell - 1] = state.mark_to_move
    return GameState(tuple(cells))


def enumerate_valid_states() -> frozenset[int]:
    """Codes of every board reachable from the empty board."""
    seen = {0}
    frontier = [GameState()]
    while frontier:
        nxt = []
        for state in frontier:
            for cell in legal_moves(state):
                child = apply_move(state, cell)
                code = encode(child)
                if code not in seen:
                    seen.add(code)
                    nxt.append(child)
        frontier = nxt
    return frozenset(seen)


# Dihedral group of the square as permutations of 0-based cell positions:
# new_cells[k] = cells[perm[k]].
_ROTATE = (6, 3, 0, 7, 4, 1, 8, 5, 2)
_REFLECT = (2, 1, 0, 5, 4, 3, 8, 7, 6)


def _compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    return tuple(p[q[k]] for k in range(N_CELLS))


def _symmetries() -> tuple[tuple[int, ...], ...]:
    perms = []
    rot = tuple(range(N_CELLS))
    for _ in range(4):
        perms.append(rot)
        perms.append(_compose(rot, _REFLECT))
        rot = _compose(rot, _ROTATE)
    return tuple(perms)


SYMMETRIES = _symmetries()


def transform(state: GameState, perm: Sequence[int]) -> GameState:
    return GameState(tuple(state.cells[perm[k]] for k in range(N_CELLS)))


# ---------------------------------------------------------------------------
# Vectorised tables over all 3**9 codes, used by the evaluator and agents.

@lru_cache(maxsize=None)
def digit_table() -> np.ndarray:
    """``(3**9, 9)`` array of cell values for every code."""
    codes = np.arange(N_STATES)
    table = (codes[:, None] // np.array(POWERS)[None, :]) % 3
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def _line_tables() -> tuple[np.ndarray, np.ndarray]:
    d = digit_table()
    first = np.zeros(N_STATES, dtype=bool)
    second = np.zeros(N_STATES, dtype=bool)
    for line in np.array(LINES) - 1:
        first |= (d[:, line] == CIRCLE).all(1)
        second |= (d[:, line] == CROSS).all(1)
    return first, second


@lru_cache(maxsize=None)
def terminal_mask() -> np.ndarray:
    """True for codes where a line is complete or the board is full."""
    first, second = _line_tables()
    full = (digit_table() != EMPTY).all(1)
    out = first | second | full
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def valid_mask() -> np.ndarray:
    """Boolean mask over codes, True exactly for valid boards."""
    d = digit_table()
    diff = (d == CIRCLE).sum(1) - (d == CROSS).sum(1)
    first, second = _line_tables()
    ok = (diff == 0) | (diff == 1)
    ok &= ~(first & second)
    ok &= ~first | (diff == 1)
    ok &= ~second | (diff == 0)
    ok.setflags(write=False)
    return ok
