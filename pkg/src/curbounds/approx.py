"""Skeleton (CUR) approximations and their measured errors.

Three low-rank constructions share one kernel: classical CUR through the
pseudo-inverse of the selected block, the rank-r variant that truncates
the block before inverting, and CUR followed by truncated SVD of the
approximant.  The pseudo-inverse product is always evaluated through the
SVD factors of the block (never by forming the inverse explicitly), which
keeps the ill-conditioned maximal-volume blocks of decaying spectra from
contaminating the result.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_RANK_TOL,
    DenseMatrix,
    _singular_values,
    svd,
    truncate_svd,
)
from .errors import IndexOutOfRange, RankOutOfRange
from .search import SkeletonSelection


class Method(enum.Enum):
    MAXVOL_CUR = "maxvol_cur"
    RANK_R_CUR = "rank_r_cur"
    CUR_THEN_TRUNCATE = "cur_then_truncate"
    TRUNCATED_SVD = "truncated_svd"


@dataclass(frozen=True, eq=False)
class ApproximationResult:
    """A computed approximant plus the errors measured against the input.

    The selection is stored so every reported error is reproducible from
    (matrix, method, selection, target_rank).
    """

    approximant: DenseMatrix
    method: Method
    selection: SkeletonSelection | None
    target_rank: int
    chebyshev_error: float
    spectral_error: float


def _errors(approx: np.ndarray, original: np.ndarray) -> tuple[float, float]:
    diff = approx - original
    return float(np.abs(diff).max()), float(_singular_values(diff)[0])


def _index_arrays(m: DenseMatrix, sel: SkeletonSelection) -> tuple[np.ndarray, np.ndarray]:
    rows = sel.row_set.as_array()
    cols = sel.col_set.as_array()
    if rows[-1] >= m.rows or cols[-1] >= m.cols:
        raise IndexOutOfRange(
            f"selection {tuple(rows)}, {tuple(cols)} does not fit a "
            f"{m.rows}x{m.cols} matrix"
        )
    return rows, cols


def _skeleton_product(
    m: DenseMatrix, sel: SkeletonSelection, keep_rank: int | None, rank_tol: float
) -> tuple[np.ndarray, int]:
    """``m[:, cols] @ pinv(block) @ m[rows, :]`` via the block's SVD factors.

    ``keep_rank`` truncates the block spectrum first (None keeps the full
    numerical rank).  Returns the approximant array and the rank used.
    """
    arr = m.array
    rows, cols = _index_arrays(m, sel)
    block = arr[np.ix_(rows, cols)]
    if block.shape[0] == block.shape[1] and tuple(rows) == tuple(cols):
        # principal block of a symmetric matrix: kill roundoff asymmetry
        defect = np.abs(block - block.T).max()
        if defect <= 1e-12 * max(np.abs(block).max(), 1.0):
            block = 0.5 * (block + block.T)
    f = svd(DenseMatrix(block))
    s = f.singular_values.values
    limit = len(s) if keep_rank is None else min(keep_rank, len(s))
    keep = np.zeros(len(s), dtype=bool)
    if limit > 0 and s[0] > 0:
        keep[:limit] = s[:limit] > rank_tol * s[0]
    rank_used = int(keep.sum())
    if rank_used == 0:
        return np.zeros(m.shape), 0
    u = f.left_factor.array[:, keep]
    v = f.right_factor.array[:, keep]
    left = arr[:, cols] @ v / s[keep]
    right = u.T @ arr[rows, :]
    return left @ right, rank_used


def cur(
    m: DenseMatrix, sel: SkeletonSelection, rank_tol: float = DEFAULT_RANK_TOL
) -> ApproximationResult:
    """Classical pseudo-skeleton approximation
    ``m[:, cols] @ pinv(block) @ m[rows, :]``.

    The approximant rank equals the numerical rank of the selected block;
    when that rank matches the block's row and column count, the
    approximant reproduces every selected row and column of ``m``.
    """
    approx, rank_used = _skeleton_product(m, sel, None, rank_tol)
    cheb, spec = _errors(approx, m.array)
    return ApproximationResult(
        DenseMatrix(approx), Method.MAXVOL_CUR, sel, rank_used, cheb, spec
    )


def rank_r_cur(
    m: DenseMatrix, sel: SkeletonSelection, r: int, rank_tol: float = DEFAULT_RANK_TOL
) -> ApproximationResult:
    """Rank-r skeleton: the block is replaced by its rank-r truncation
    before pseudo-inversion, so the approximant rank never exceeds r."""
    max_rank = min(len(sel.row_set), len(sel.col_set))
    if not 0 <= r <= max_rank:
        raise RankOutOfRange(f"need 0 <= r <= {max_rank}, got r={r}")
    approx, _ = _skeleton_product(m, sel, r, rank_tol)
    cheb, spec = _errors(approx, m.array)
    return ApproximationResult(
        DenseMatrix(approx), Method.RANK_R_CUR, sel, r, cheb, spec
    )


def cur_then_truncate(
    m: DenseMatrix, sel: SkeletonSelection, r: int, rank_tol: float = DEFAULT_RANK_TOL
) -> ApproximationResult:
    """Truncated-SVD compression of the classical CUR approximant.

    The proven error bound needs ``r < len(row_set)``; ``r == len(row_set)``
    is still accepted (the truncation is then the identity on a full-rank
    block and the result coincides with :func:`cur`).
    """
    if not 0 <= r <= len(sel.row_set):
        raise RankOutOfRange(f"need 0 <= r <= {len(sel.row_set)}, got r={r}")
    base, _ = _skeleton_product(m, sel, None, rank_tol)
    approx = truncate_svd(DenseMatrix(base), min(r, min(m.rows, m.cols))).array
    cheb, spec = _errors(approx, m.array)
    return ApproximationResult(
        DenseMatrix(approx), Method.CUR_THEN_TRUNCATE, sel, r, cheb, spec
    )


def truncated_svd_approx(m: DenseMatrix, r: int) -> ApproximationResult:
    """Plain truncated-SVD baseline, packaged like the skeleton methods."""
    approx = truncate_svd(m, r).array
    cheb, spec = _errors(approx, m.array)
    return ApproximationResult(
        DenseMatrix(approx), Method.TRUNCATED_SVD, None, r, cheb, spec
    )


def residual_blocks(
    m: DenseMatrix, sel: SkeletonSelection, rank_tol: float = DEFAULT_RANK_TOL
) -> DenseMatrix:
    """Error matrix ``approximant - m`` of the classical CUR approximation.

    When the selected block has full row rank its nonzero pattern avoids
    the selected rows, and for an invertible square block it is confined
    to the unselected rows and columns (the negated Schur complement).
    """
    approx, _ = _skeleton_product(m, sel, None, rank_tol)
    return DenseMatrix(approx - m.array)
