"""Low-rank compression of the perfect Tic-Tac-Toe evaluation function."""

__version__ = "0.1.0"

from .compression import (
    HosvdFactors,
    SvdModel,
    TuckerModel,
    approximate,
    compress_hosvd,
    compress_svd,
    hosvd_factors,
    reconstruct_hosvd,
    reconstruct_svd,
)
from .evaluation import EvalTensor, build_exact, lookup
from .game import GameState, Outcome, apply_move, classify, decode, encode, enumerate_valid_states, legal_moves
from .metrics import CompressionPoint, compression_ratio, match_ranks, relative_error
from .policy import PolicyConfig, move_distribution, sample_move
from .tournament import MatchReport, play_game, run_match, sweep
