"""Perfect evaluation of Tic-Tac-Toe under uniformly random play.

Builds the 3**9 evaluation tensor, counts reachable positions and walks a
mid-game position through its children.
"""

from tttsvd import GameState, apply_move, build_exact, enumerate_valid_states, legal_moves, lookup

exact = build_exact()
print(f"reachable positions: {len(enumerate_valid_states())} of {exact.values.size}")
print(f"empty board value: {lookup(exact, GameState()):.6f}  (187/630 = {187 / 630:.6f})")

state = GameState.from_marks(circles=(1, 6, 8), crosses=(2, 5, 7))
print(state)
for cell in legal_moves(state):
    print(f"  circle at {cell}: {lookup(exact, apply_move(state, cell)):+.3f}")
print(f"position value (mean of children): {lookup(exact, state):+.3f}")
