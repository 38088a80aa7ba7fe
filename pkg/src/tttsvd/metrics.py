"""Compression ratio, relative error and rank matching."""

from __future__ import annotations

from dataclasses import dataclass

from .compression import HOSVD_MAX_RANK, SVD_MAX_RANK
from .evaluation import EvalTensor
from .game import N_STATES
from .linalg import frobenius_norm

MAX_RANK = {"svd": SVD_MAX_RANK, "hosvd": HOSVD_MAX_RANK}


def element_count(method: str, r: int) -> int:
    """Stored entries of a rank-``r`` model (metadata not counted)."""
    if method not in MAX_RANK:
        raise ValueError(f"unknown method {method!r}")
    if not 0 <= r <= MAX_RANK[method]:
        raise ValueError(f"{method} rank must lie in [0, {MAX_RANK[method]}], got {r}")
    if method == "svd":
        return (81 + 243) * r
    return 3 * 27 * r + r**3


def compression_ratio(method: str, r: int) -> float:
    """``element_count / 3**9``: 4r/243 for SVD, (81r + r^3)/19683 for HOSVD."""
    return element_count(method, r) / N_STATES


def relative_error(exact: EvalTensor, approx: EvalTensor) -> float:
    norm = frobenius_norm(exact.values)
    if norm == 0:
        raise ValueError("relative error undefined for a zero reference tensor")
    return frobenius_norm(exact.values - approx.values) / norm


def nearest_rank(method: str, target: float) -> int:
    """Rank whose compression ratio is closest to ``target``; ties go to the
    smaller rank."""
    return min(range(MAX_RANK[method] + 1),
               key=lambda r: (abs(compression_ratio(method, r) - target), r))


def match_ranks(target: float) -> tuple[int, int]:
    """``(r_svd, r_hosvd)`` giving compression ratios nearest to ``target``."""
    if not 0.0 <= target <= 1.0:
        raise ValueError(f"target compression ratio must lie in [0, 1], got {target}")
    return nearest_rank("svd", target), nearest_rank("hosvd", target)


@dataclass(frozen=True)
class CompressionPoint:
    method: str
    r: int
    cr: float
    rel_error: float

    CSV_FIELDS = ("method", "r", "cr", "rel_error")

    def row(self) -> dict:
        return {"method": self.method, "r": self.r, "cr": self.cr,
                "rel_error": self.rel_error}
