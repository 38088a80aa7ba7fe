"""Winning-rate sweeps.

A short version of both sweeps: the exact player against rank-r SVD
players, then SVD against HOSVD at matched compression ratios.  Pass a
game count as the first argument (default 100; 500 for the full run).
"""

import sys

from tttsvd import build_exact
from tttsvd.tournament import method_comparison_pairings, rank_dependence_pairings, sweep

games = int(sys.argv[1]) if len(sys.argv) > 1 else 100
exact = build_exact()

print("exact vs svd(r)")
for res in sweep(rank_dependence_pairings(exact, ranks=[0, 3, 6, 9, 18, 36, 61, 81]), games, 10.0, 0):
    rep = res.report
    print(f"  r={res.point('svd').r:2d}  exact wins {rep.rate_a:.3f}  svd wins {rep.rate_b:.3f}  draws {rep.draw_rate:.3f}")

print("svd vs hosvd at matched ratios")
for res in sweep(method_comparison_pairings(exact), games, 10.0, 0):
    rep = res.report
    print(f"  Cr={res.cr:5.3f}  svd {rep.rate_a:.3f}  hosvd {rep.rate_b:.3f}  draws {rep.draw_rate:.3f}")
