"""Independent reference implementations used only by the tests.

Nothing here imports the package's evaluation, policy or tournament code;
they work directly on 0-based 9-tuples.
"""

from fractions import Fraction

import numpy as np

LINES0 = [(0, 1, 2), (3, 4, 5), (6, 7, 8), (0, 3, 6), (1, 4, 7), (2, 5, 8), (0, 4, 8), (2, 4, 6)]

# 187/630, computed by random_play_expectation() below with exact fractions
# over all 255 168 complete games.
EMPTY_BOARD_VALUE = Fraction(187, 630)


def won(board, mark):
    return any(board[i] == board[j] == board[k] == mark for i, j, k in LINES0)


def random_play_expectation(board=(0,) * 9, exact=False):
    """Expected final score under uniformly random play, by walking every
    complete move sequence and weighting it by its probability."""
    one = Fraction(1) if exact else 1.0
    board = list(board)
    n_moves = sum(c != 0 for c in board)
    total = [0 * one, 0]

    def walk(prob, mark):
        if won(board, 1):
            total[0] += prob
        elif won(board, 2):
            total[0] -= prob
        else:
            empties = [i for i in range(9) if board[i] == 0]
            if not empties:
                total[1] += 1
                return
            for i in empties:
                board[i] = mark
                walk(prob / len(empties), 3 - mark)
                board[i] = 0
            return
        total[1] += 1

    walk(one, 1 if n_moves % 2 == 0 else 2)
    return total[0], total[1]


def naive_value(board):
    """Recursive mean over children without any memoisation."""
    if won(board, 1):
        return 1.0
    if won(board, 2):
        return -1.0
    empties = [i for i in range(9) if board[i] == 0]
    if not empties:
        return 0.0
    mark = 1 if (9 - len(empties)) % 2 == 0 else 2
    acc = 0.0
    for i in empties:
        child = board[:i] + (mark,) + board[i + 1:]
        acc += naive_value(child)
    return acc / len(empties)


def code_of(board):
    return sum(c * 3**i for i, c in enumerate(board))


def reachable_boards():
    """All boards reachable from the empty one, by depth-first search."""
    seen = set()
    stack = [(0,) * 9]
    while stack:
        b = stack.pop()
        if b in seen:
            continue
        seen.add(b)
        if won(b, 1) or won(b, 2):
            continue
        empties = [i for i in range(9) if b[i] == 0]
        mark = 1 if (9 - len(empties)) % 2 == 0 else 2
        for i in empties:
            stack.append(b[:i] + (mark,) + b[i + 1:])
    return seen


def simulate(values_first, values_second, w, seed):
    """Plain-Python replay of one game.

    Mirrors the documented sampling contract (PCG64 stream, one uniform per
    move, inverse CDF over ascending cells) so outcomes can be compared game
    by game against the package.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    board = (0,) * 9
    moves = []
    turn = 0
    while not (won(board, 1) or won(board, 2) or 0 not in board):
        mark = 1 if turn % 2 == 0 else 2
        values = values_first if mark == 1 else values_second
        sign = 1.0 if mark == 1 else -1.0
        empties = [i for i in range(9) if board[i] == 0]
        scores = [sign * values[code_of(board[:i] + (mark,) + board[i + 1:])] for i in empties]
        top = max(scores)
        weights = [np.exp(w * (s - top)) for s in scores]
        u = rng.random() * sum(weights)
        acc = 0.0
        pick = empties[-1]
        for i, wt in zip(empties, weights):
            acc += wt
            if u < acc:
                pick = i
                break
        board = board[:pick] + (mark,) + board[pick + 1:]
        moves.append(pick + 1)
        turn += 1
    if won(board, 1):
        return "first", moves
    if won(board, 2):
        return "second", moves
    return "draw", moves


def outcome_probabilities(values_first, values_second, w):
    """Exact (P first wins, P second wins, P draw) for two softmax agents,
    by recursion over the game tree."""
    memo = {}

    def rec(board):
        if board in memo:
            return memo[board]
        if won(board, 1):
            out = np.array([1.0, 0.0, 0.0])
        elif won(board, 2):
            out = np.array([0.0, 1.0, 0.0])
        elif 0 not in board:
            out = np.array([0.0, 0.0, 1.0])
        else:
            empties = [i for i in range(9) if board[i] == 0]
            mark = 1 if (9 - len(empties)) % 2 == 0 else 2
            values = values_first if mark == 1 else values_second
            sign = 1.0 if mark == 1 else -1.0
            children = [board[:i] + (mark,) + board[i + 1:] for i in empties]
            scores = np.array([sign * values[code_of(c)] for c in children])
            p = np.exp(w * (scores - scores.max()))
            p /= p.sum()
            out = sum(pi * rec(c) for pi, c in zip(p, children))
        memo[board] = out
        return out

    return rec((0,) * 9)


def expected_match_rates(values_a, values_b, w):
    """Expected (rate A, rate B, draw rate) of a half/half side-swapped match."""
    p1 = outcome_probabilities(values_a, values_b, w)
    p2 = outcome_probabilities(values_b, values_a, w)
    return (p1[0] + p2[1]) / 2, (p1[1] + p2[0]) / 2, (p1[2] + p2[2]) / 2
