"""Rank-r approximations of the evaluation tensor.

Two pipelines are provided:

* simple SVD: unfold with cells (1,2,3,4) as rows and (5,...,9) as
  columns, keep the leading ``r`` singular triplets and split the singular
  values evenly, ``Q = U sqrt(S)`` and ``S = sqrt(S) Vt``;
* HOSVD: view the tensor as ``27 x 27 x 27`` over the board columns
  (1,2,3), (4,5,6), (7,8,9), take one factor per mode from an unfolding's
  SVD, truncate all three to ``r`` directions and project onto them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .evaluation import EvalTensor
from .linalg import SvdFactors, dematricize, matricize, svd

SVD_ROWS = (1, 2, 3, 4)
SVD_COLS = (5, 6, 7, 8, 9)
SVD_MAX_RANK = 3 ** len(SVD_ROWS)

# (column group, row group) of the unfolding that yields each mode factor.
# Rows list the remaining cells in the cyclic order used to reorder indices.
MODE_GROUPS = (
    ((1, 2, 3), (4, 5, 6, 7, 8, 9)),
    ((4, 5, 6), (1, 2, 3, 7, 8, 9)),
    ((7, 8, 9), (1, 2, 3, 4, 5, 6)),
)
HOSVD_MAX_RANK = 27


def _check_rank(r: int, max_rank: int, method: str) -> int:
    if isinstance(r, bool) or int(r) != r:
        raise TypeError(f"rank must be an integer, got {r!r}")
    r = int(r)
    if not 0 <= r <= max_rank:
        raise ValueError(f"{method} rank must lie in [0, {max_rank}], got {r}")
    return r


@dataclass(frozen=True, eq=False)
class SvdModel:
    rank: int
    q: np.ndarray  # (81, r)
    s: np.ndarray  # (r, 243)

    @property
    def element_count(self) -> int:
        return self.q.size + self.s.size


@dataclass(frozen=True, eq=False)
class TuckerModel:
    rank: int
    core: np.ndarray    # (r, r, r)
    left: np.ndarray    # (27, r), cells 1-3
    middle: np.ndarray  # (27, r), cells 4-6
    right: np.ndarray   # (27, r), cells 7-9

    @property
    def element_count(self) -> int:
        return self.core.size + self.left.size + self.middle.size + self.right.size


def svd_factorization(exact: EvalTensor) -> SvdFactors:
    """Full SVD of the 81 x 243 unfolding."""
    return svd(matricize(exact.values, SVD_ROWS, SVD_COLS))


def compress_svd(exact: EvalTensor, r: int,
                 factors: Optional[SvdFactors] = None) -> SvdModel:
    """Keep the ``r`` leading singular triplets of the 81 x 243 unfolding.

    ``factors`` may be passed to reuse a factorization across ranks.
    """
    r = _check_rank(r, SVD_MAX_RANK, "svd")
    if factors is None:
        factors = svd_factorization(exact)
    root = np.sqrt(factors.s[:r])
    q = factors.u[:, :r] * root
    s = root[:, None] * factors.vt[:r]
    return SvdModel(r, q, s)


def reconstruct_svd(model: SvdModel) -> EvalTensor:
    matrix = model.q @ model.s
    if model.rank == 0:
        matrix = np.zeros((model.q.shape[0], model.s.shape[1]))
    return EvalTensor(dematricize(matrix, SVD_ROWS, SVD_COLS), "svd", model.rank)


class HosvdFactors(NamedTuple):
    """Mode factors of the HOSVD.

    Each of ``left``, ``middle``, ``right`` is 27 x 27 orthogonal with the
    singular vectors as *rows*, dominant first.  ``spectra`` holds the
    singular values of the three unfoldings in the same order.
    """

    left: np.ndarray
    middle: np.ndarray
    right: np.ndarray
    spectra: tuple


def hosvd_factors(exact: EvalTensor) -> HosvdFactors:
    rows, spectra = [], []
    for cols, other in MODE_GROUPS:
        f = svd(matricize(exact.values, other, cols))
        rows.append(f.vt)
        spectra.append(f.s)
    return HosvdFactors(*rows, tuple(spectra))


def compress_hosvd(exact: EvalTensor, r: int,
                   factors: Optional[HosvdFactors] = None) -> TuckerModel:
    """Truncate every mode to ``r`` directions and project the tensor onto
    them to get an ``r x r x r`` core."""
    r = _check_rank(r, HOSVD_MAX_RANK, "hosvd")
    if factors is None:
        factors = hosvd_factors(exact)
    left = factors.left[:r].T.copy()
    middle = factors.middle[:r].T.copy()
    right = factors.right[:r].T.copy()
    core = np.einsum("ijk,ia,jb,kc->abc", exact.cube(), left, middle, right,
                     optimize=True)
    return TuckerModel(r, core, left, middle, right)


def reconstruct_hosvd(model: TuckerModel) -> EvalTensor:
    cube = np.einsum("abc,ia,jb,kc->ijk", model.core, model.left, model.middle,
                     model.right, optimize=True)
    if model.rank == 0:
        cube = np.zeros((27, 27, 27))
    return EvalTensor(cube.transpose(2, 1, 0).reshape(-1), "hosvd", model.rank)


def approximate(exact: EvalTensor, method: str, r: int) -> EvalTensor:
    """Compress and reconstruct in one call."""
    if method == "svd":
        return reconstruct_svd(compress_svd(exact, r))
    if method == "hosvd":
        return reconstruct_hosvd(compress_hosvd(exact, r))
    raise ValueError(f"unknown method {method!r}")
