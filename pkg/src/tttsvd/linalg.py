"""Unfoldings of the 9th-order board tensor and a one-sided Jacobi SVD."""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from .game import N_CELLS

# Off-diagonal threshold: a column pair counts as orthogonal once
# |<a_i, a_j>| <= JACOBI_TOL * |a_i| |a_j|.
JACOBI_TOL = 1e-14
MAX_SWEEPS = 60


def _check_groups(row_cells: Sequence[int], col_cells: Sequence[int]) -> None:
    cells = list(row_cells) + list(col_cells)
    if sorted(cells) != list(range(1, N_CELLS + 1)):
        raise ValueError(
            f"row and column cells must partition 1..9, got {row_cells} / {col_cells}")


def _axes(row_cells, col_cells):
    # values.reshape((3,)*9) puts cell c on axis 9 - c; the first listed cell
    # of each group must end up least significant, i.e. last.
    return [N_CELLS - c for c in reversed(row_cells)] + \
           [N_CELLS - c for c in reversed(col_cells)]


def matricize(values, row_cells: Sequence[int], col_cells: Sequence[int]) -> np.ndarray:
    """Unfold a ``3**9`` tensor into a ``3**len(row_cells) x 3**len(col_cells)``
    matrix.

    Entry ``(a, b)`` is the value of the board whose ``row_cells`` digits
    spell ``a`` and ``col_cells`` digits spell ``b`` in base 3, the first
    listed cell being least significant.
    """
    _check_groups(row_cells, col_cells)
    t = np.asarray(values, dtype=np.float64).reshape((3,) * N_CELLS)
    t = t.transpose(_axes(row_cells, col_cells))
    return np.ascontiguousarray(t.reshape(3 ** len(row_cells), 3 ** len(col_cells)))


def dematricize(matrix, row_cells: Sequence[int], col_cells: Sequence[int]) -> np.ndarray:
    """Inverse of :func:`matricize`; returns the flat ``3**9`` array."""
    _check_groups(row_cells, col_cells)
    matrix = np.asarray(matrix, dtype=np.float64)
    expected = (3 ** len(row_cells), 3 ** len(col_cells))
    if matrix.shape != expected:
        raise ValueError(f"expected shape {expected}, got {matrix.shape}")
    t = matrix.reshape((3,) * N_CELLS)
    t = t.transpose(np.argsort(_axes(row_cells, col_cells)))
    return np.ascontiguousarray(t).reshape(-1)


def frobenius_norm(a) -> float:
    a = np.asarray(a, dtype=np.float64)
    return float(np.sqrt(np.sum(a * a)))


class SvdFactors(NamedTuple):
    """Thin SVD ``a = u @ diag(s) @ vt`` with ``k = min(m, n)``."""

    u: np.ndarray   # (m, k)
    s: np.ndarray   # (k,), descending
    vt: np.ndarray  # (k, n)

    def truncate(self, r: int) -> "SvdFactors":
        return SvdFactors(self.u[:, :r], self.s[:r], self.vt[:r])

    def reconstruct(self) -> np.ndarray:
        return (self.u * self.s) @ self.vt


def _jacobi_tall(a: np.ndarray):
    """One-sided Jacobi on an m x n matrix with m >= n.

    Rotates column pairs in cyclic order until all pairs are orthogonal.
    Returns ``(w, v)`` with ``a @ v == w`` and the columns of ``w`` mutually
    orthogonal.
    """
    m, n = a.shape
    # Work on rows for contiguous access: row i of w is column i of a @ v.
    w = a.T.copy()
    v = np.eye(n)
    scale = frobenius_norm(a)
    # Columns below this squared norm are treated as exact zeros.
    negligible = (np.finfo(float).eps * scale) ** 2
    norms = np.einsum("ij,ij->i", w, w)

    for _ in range(MAX_SWEEPS):
        rotated = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                alpha = norms[i]
                beta = norms[j]
                if alpha <= negligible or beta <= negligible:
                    continue
                gamma = w[i] @ w[j]
                if abs(gamma) <= JACOBI_TOL * np.sqrt(alpha * beta):
                    continue
                zeta = (beta - alpha) / (2.0 * gamma)
                t = np.copysign(1.0, zeta) / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                wi, wj = w[i].copy(), w[j]
                w[i] = c * wi - s * wj
                w[j] = s * wi + c * wj
                vi, vj = v[:, i].copy(), v[:, j]
                v[:, i] = c * vi - s * vj
                v[:, j] = s * vi + c * vj
                norms[i] = w[i] @ w[i]
                norms[j] = w[j] @ w[j]
                rotated = True
        if not rotated:
            break
    return w.T, v


def _complete_basis(u: np.ndarray, filled: np.ndarray) -> np.ndarray:
    """Replace the unfilled columns of ``u`` by an orthonormal completion,
    drawn from the standard basis in order."""
    m, k = u.shape
    basis = [u[:, j] for j in range(k) if filled[j]]
    candidates = iter(np.eye(m))
    for j in range(k):
        if filled[j]:
            continue
        for e in candidates:
            x = e.copy()
            for _ in range(2):
                for b in basis:
                    x -= (b @ x) * b
            nx = np.linalg.norm(x)
            if nx > 0.5:
                u[:, j] = x / nx
                basis.append(u[:, j])
                break
    return u


def svd(matrix) -> SvdFactors:
    """Thin SVD by one-sided Jacobi rotations.

    Singular values are returned in descending order (stable with respect
    to the sweep order on ties) and each singular pair is signed so that
    the largest-magnitude entry of its left vector is positive.  The result
    is a deterministic function of the input.
    """
    a = np.asarray(matrix, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError("svd expects a 2-D array")
    if not np.all(np.isfinite(a)):
        raise ValueError("svd input contains non-finite entries")
    m, n = a.shape
    transpose = m < n
    if transpose:
        a = a.T
        m, n = n, m

    w, v = _jacobi_tall(a)
    s = np.sqrt(np.einsum("ij,ij->j", w, w))
    negligible = np.finfo(float).eps * frobenius_norm(a)
    filled = s > negligible
    u = np.zeros((m, n))
    u[:, filled] = w[:, filled] / s[filled]
    s = np.where(filled, s, 0.0)
    u = _complete_basis(u, filled)

    order = np.argsort(-s, kind="stable")
    s, u, v = s[order], u[:, order], v[:, order]
    # u holds the left vectors of whichever orientation was decomposed.
    left, right = (v, u) if transpose else (u, v)
    idx = np.argmax(np.abs(left), axis=0)
    signs = np.where(left[idx, np.arange(left.shape[1])] < 0, -1.0, 1.0)
    left = left * signs
    right = right * signs
    return SvdFactors(left, s, right.T.copy())
