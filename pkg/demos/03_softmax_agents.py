"""Softmax move selection driven by an evaluation tensor.

Shows how the inverse temperature ``w`` sharpens the move distribution at
the opening and plays one reproducible game.
"""

import numpy as np

from tttsvd import GameState, PolicyConfig, approximate, build_exact, move_distribution
from tttsvd.tournament import simulate_game

exact = build_exact()
for w in (0.0, 1.0, 10.0, 50.0):
    dist = move_distribution(exact, GameState(), PolicyConfig(w=w))
    print(f"w={w:5.1f}  opening probabilities: {np.round(dist.probs, 3)}")

svd3 = approximate(exact, "svd", 3)
record = simulate_game(exact, svd3, w=10.0, seed=2024)
print(f"\nexact (circle) vs svd(3) (cross): moves {record.moves}, {record.outcome.name}")
