"""Search for submatrices of (approximately or exactly) maximal volume.

The exhaustive searches are the reference oracles: the proven error
bounds apply verbatim only to their output.  The greedy swap search is a
practical fallback for instances whose enumeration would blow the budget;
its result is only guaranteed to be single-swap locally maximal.

All searches are deterministic: candidates are compared first by numerical
rank, then by log-volume, and exact ties resolve to the lexicographically
smallest (row_set, col_set).  Rows never outnumber columns; callers with
p > q should search the transpose.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .core import (
    DEFAULT_RANK_TOL,
    DenseMatrix,
    IndexSet,
    _singular_values,
    chebyshev_norm,
    symmetry_defect,
)
from .errors import BudgetExceeded, DegenerateStart, NotSymmetric, RankOutOfRange

DEFAULT_BUDGET = 2_000_000
DEFAULT_GROWTH_TOL = 1.0 + 1e-9
DEFAULT_MAX_SWEEPS = 100


@dataclass(frozen=True)
class SkeletonSelection:
    """Chosen rows and columns plus the value of the selected block.

    ``log_volume`` is the natural log of the block's volume at
    ``selected_rank`` (``-inf`` when that volume vanishes).
    """

    row_set: IndexSet
    col_set: IndexSet
    log_volume: float
    selected_rank: int

    def __post_init__(self):
        if len(self.row_set) > len(self.col_set):
            raise ValueError(
                f"row count {len(self.row_set)} exceeds column count "
                f"{len(self.col_set)}; search the transpose instead"
            )


@dataclass(frozen=True)
class SearchReport:
    selection: SkeletonSelection
    candidates_examined: int
    swaps_performed: int
    converged: bool


def _block_value(block: np.ndarray, rank_tol: float) -> tuple[int, float]:
    """(numerical rank, log-volume at that rank) of a block."""
    s = _singular_values(block)
    if s[0] <= 0.0:
        return 0, float("-inf")
    rank = int((s > rank_tol * s[0]).sum())
    if rank == 0:
        return 0, float("-inf")
    return rank, float(np.log(s[:rank]).sum())


def _value_at(arr: np.ndarray, rows, cols, rank_tol: float) -> tuple[int, float]:
    return _block_value(arr[np.ix_(rows, cols)], rank_tol)


def _check_shape(m: DenseMatrix, p: int, q: int) -> None:
    if not (1 <= p <= q and p <= m.rows and q <= m.cols):
        raise RankOutOfRange(
            f"need 1 <= p <= q, p <= {m.rows}, q <= {m.cols}; got p={p}, q={q}"
        )


def exhaustive_maxvol(
    m: DenseMatrix,
    p: int,
    q: int,
    rank_tol: float = DEFAULT_RANK_TOL,
    budget: int = DEFAULT_BUDGET,
) -> SearchReport:
    """Globally maximal-volume p x q submatrix by full enumeration.

    Among all C(rows, p) * C(cols, q) candidates, returns the one with
    maximal numerical rank and, at that rank, maximal log-volume.

    Raises
    ------
    BudgetExceeded
        If the enumeration size exceeds ``budget``; use
        :func:`greedy_maxvol` in that case.
    """
    _check_shape(m, p, q)
    count = math.comb(m.rows, p) * math.comb(m.cols, q)
    if count > budget:
        raise BudgetExceeded(f"{count} candidates exceed the budget of {budget}")
    arr = m.array
    best_val: tuple[int, float] | None = None
    best_sets = None
    for rows in combinations(range(m.rows), p):
        rowblock = arr[np.asarray(rows), :]
        for cols in combinations(range(m.cols), q):
            value = _block_value(rowblock[:, np.asarray(cols)], rank_tol)
            if best_val is None or value > best_val:
                best_val = value
                best_sets = (rows, cols)
    selection = SkeletonSelection(
        IndexSet(best_sets[0]), IndexSet(best_sets[1]), best_val[1], best_val[0]
    )
    return SearchReport(selection, count, 0, True)


def exhaustive_principal_maxvol(
    m: DenseMatrix,
    p: int,
    rank_tol: float = DEFAULT_RANK_TOL,
    budget: int = DEFAULT_BUDGET,
) -> SearchReport:
    """Maximal-volume principal p x p submatrix of a symmetric matrix.

    Restricted to row_set == col_set; for SPD input this maximizes the
    principal p x p minor determinant.
    """
    if m.rows != m.cols or symmetry_defect(m) > 1e-12 * chebyshev_norm(m):
        raise NotSymmetric("principal maxvol search needs a symmetric matrix")
    if not 1 <= p <= m.rows:
        raise RankOutOfRange(f"need 1 <= p <= {m.rows}, got p={p}")
    count = math.comb(m.rows, p)
    if count > budget:
        raise BudgetExceeded(f"{count} candidates exceed the budget of {budget}")
    arr = m.array
    best_val: tuple[int, float] | None = None
    best_rows = None
    for rows in combinations(range(m.rows), p):
        value = _value_at(arr, rows, rows, rank_tol)
        if best_val is None or value > best_val:
            best_val = value
            best_rows = rows
    selection = SkeletonSelection(
        IndexSet(best_rows), IndexSet(best_rows), best_val[1], best_val[0]
    )
    return SearchReport(selection, count, 0, True)


def exhaustive_max_projective_volume(
    m: DenseMatrix,
    p: int,
    q: int,
    r: int,
    rank_tol: float = DEFAULT_RANK_TOL,
    budget: int = DEFAULT_BUDGET,
) -> SearchReport:
    """p x q submatrix maximizing the r-projective volume (the product of
    its r largest singular values); with r = p = q this coincides with
    :func:`exhaustive_maxvol`."""
    _check_shape(m, p, q)
    if not 1 <= r <= p:
        raise RankOutOfRange(f"need 1 <= r <= p, got r={r}, p={p}")
    count = math.comb(m.rows, p) * math.comb(m.cols, q)
    if count > budget:
        raise BudgetExceeded(f"{count} candidates exceed the budget of {budget}")
    arr = m.array
    best_lv = None
    best_sets = None
    for rows in combinations(range(m.rows), p):
        rowblock = arr[np.asarray(rows), :]
        for cols in combinations(range(m.cols), q):
            s = _singular_values(rowblock[:, np.asarray(cols)])
            if s[0] <= 0.0 or s[r - 1] <= rank_tol * s[0]:
                lv = float("-inf")
            else:
                lv = float(np.log(s[:r]).sum())
            if best_lv is None or lv > best_lv:
                best_lv = lv
                best_sets = (rows, cols)
    selection = SkeletonSelection(
        IndexSet(best_sets[0]), IndexSet(best_sets[1]), best_lv, r
    )
    return SearchReport(selection, count, 0, True)


def _pivoted_selection(mat: np.ndarray, count: int) -> list[int]:
    """Pick ``count`` row indices of ``mat`` by pivoted Gram-Schmidt:
    repeatedly take the row with largest residual norm (ties -> smallest
    index), then project it out of the rest."""
    work = np.array(mat, dtype=float)
    n_rows = work.shape[0]
    available = np.ones(n_rows, dtype=bool)
    chosen: list[int] = []
    for _ in range(count):
        norms = (work * work).sum(axis=1)
        norms[~available] = -1.0
        pick = int(np.argmax(norms))
        if norms[pick] <= 0.0:
            break
        chosen.append(pick)
        available[pick] = False
        direction = work[pick] / math.sqrt(norms[pick])
        work = work - np.outer(work @ direction, direction)
    for idx in range(n_rows):
        # rank-deficient input: pad deterministically with unused indices
        if len(chosen) == count:
            break
        if available[idx]:
            chosen.append(idx)
            available[idx] = False
    return chosen


def greedy_maxvol(
    m: DenseMatrix,
    p: int,
    q: int,
    rank_tol: float = DEFAULT_RANK_TOL,
    growth_tol: float = DEFAULT_GROWTH_TOL,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
) -> SearchReport:
    """Single-swap hill climbing toward a locally maximal-volume block.

    Columns are initialized by pivoted Gram-Schmidt on the columns of
    ``m``, rows by pivoted Gram-Schmidt on the selected column block.
    Each sweep evaluates every single row and column replacement and
    applies the best one if it raises the numerical rank or grows the
    log-volume by more than ``ln(growth_tol)``.  The returned selection is
    single-swap locally maximal unless ``max_sweeps`` ran out
    (``converged`` is False then).

    Raises
    ------
    DegenerateStart
        If no starting block of numerical rank >= 1 exists (zero matrix).
    """
    _check_shape(m, p, q)
    if not growth_tol > 1.0:
        raise ValueError(f"growth_tol must exceed 1, got {growth_tol}")
    if max_sweeps < 1:
        raise ValueError(f"max_sweeps must be >= 1, got {max_sweeps}")
    arr = m.array
    cols = tuple(sorted(_pivoted_selection(arr.T, q)))
    rows = tuple(sorted(_pivoted_selection(arr[:, np.asarray(cols)], p)))
    current = _value_at(arr, rows, cols, rank_tol)
    examined = 1
    if current[0] < 1:
        raise DegenerateStart("no starting block of numerical rank >= 1 (zero matrix)")
    ln_growth = math.log(growth_tol)
    swaps = 0
    converged = False
    for _ in range(max_sweeps):
        best = None  # (value, rows, cols)
        for out_idx in rows:
            for in_idx in range(m.rows):
                if in_idx in rows:
                    continue
                cand_rows = tuple(sorted(set(rows) - {out_idx} | {in_idx}))
                value = _value_at(arr, cand_rows, cols, rank_tol)
                examined += 1
                cand = (value, cand_rows, cols)
                if best is None or value > best[0] or (
                    value == best[0] and (cand_rows, cols) < (best[1], best[2])
                ):
                    best = cand
        for out_idx in cols:
            for in_idx in range(m.cols):
                if in_idx in cols:
                    continue
                cand_cols = tuple(sorted(set(cols) - {out_idx} | {in_idx}))
                value = _value_at(arr, rows, cand_cols, rank_tol)
                examined += 1
                cand = (value, rows, cand_cols)
                if best is None or value > best[0] or (
                    value == best[0] and (rows, cand_cols) < (best[1], best[2])
                ):
                    best = cand
        if best is None or best[0] <= (current[0], current[1] + ln_growth):
            converged = True
            break
        current, rows, cols = best[0], best[1], best[2]
        swaps += 1
    selection = SkeletonSelection(IndexSet(rows), IndexSet(cols), current[1], current[0])
    return SearchReport(selection, examined, swaps, converged)
