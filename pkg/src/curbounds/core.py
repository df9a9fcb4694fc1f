"""Dense matrix values, Jacobi factorizations, norms, and volumes.

Everything else in the package is built on the immutable value types and
pure operations defined here.  The factorizations are one-sided Jacobi
(singular values) and cyclic two-sided Jacobi (symmetric eigenvalues);
both deliver high relative accuracy for small singular values, which
matters because the error bounds divide by trailing spectrum entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceFailure,
    IndexOutOfRange,
    NotSymmetric,
    RankOutOfRange,
)

DEFAULT_RANK_TOL = 1e-10

# Rotations stop once every column (or off-diagonal) coupling is below this
# factor relative to the participating diagonal scale.  Must sit safely above
# the dot-product noise floor (~dim * eps) or noise-scale pairs never settle.
_JACOBI_TOL = 1e-14
_SWEEP_BUDGET = 30
# Relative size below which a singular value is indistinguishable from zero
# in double precision; its vector is then synthesised by basis completion.
_ZERO_CUTOFF = 1e-13
_MAX_ABS_SYMMETRY_TOL = 1e-12


class DenseMatrix:
    """Immutable dense real matrix stored in row-major order.

    Entries must be finite; NaN and infinity are rejected at construction
    and never produced by the operations in this package.  Instances can be
    shared freely across threads.
    """

    __slots__ = ("_array",)

    def __init__(self, values):
        arr = np.array(values, dtype=float, order="C")
        if arr.ndim != 2:
            raise ValueError(f"matrix must be 2-D, got shape {arr.shape}")
        if arr.size == 0:
            raise ValueError("matrix must be non-empty")
        if not np.isfinite(arr).all():
            raise ValueError("matrix entries must be finite")
        arr.setflags(write=False)
        self._array = arr

    @property
    def array(self) -> np.ndarray:
        """Read-only ndarray view of the entries."""
        return self._array

    @property
    def rows(self) -> int:
        return self._array.shape[0]

    @property
    def cols(self) -> int:
        return self._array.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._array.shape

    def transpose(self) -> "DenseMatrix":
        return DenseMatrix(self._array.T)

    def __sub__(self, other: "DenseMatrix") -> "DenseMatrix":
        return DenseMatrix(self._array - other._array)

    def __add__(self, other: "DenseMatrix") -> "DenseMatrix":
        return DenseMatrix(self._array + other._array)

    def __mul__(self, scalar: float) -> "DenseMatrix":
        return DenseMatrix(self._array * float(scalar))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(
            np.array_equal(self._array, other._array)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"DenseMatrix({self.rows}x{self.cols})"


class Spectrum:
    """Finite, non-increasing sequence of spectrum values."""

    __slots__ = ("_values",)

    def __init__(self, values):
        arr = np.array(values, dtype=float)
        if arr.ndim != 1:
            raise ValueError(f"spectrum must be 1-D, got shape {arr.shape}")
        if not np.isfinite(arr).all():
            raise ValueError("spectrum values must be finite")
        if arr.size > 1 and np.any(np.diff(arr) > 0):
            raise ValueError("spectrum values must be non-increasing")
        arr.setflags(write=False)
        self._values = arr

    @property
    def values(self) -> np.ndarray:
        return self._values

    def __len__(self) -> int:
        return self._values.size

    def __iter__(self):
        return iter(self._values.tolist())

    def __getitem__(self, index):
        return float(self._values[index])

    def __repr__(self) -> str:
        return f"Spectrum({self._values.tolist()!r})"


@dataclass(frozen=True)
class IndexSet:
    """Strictly increasing 0-based row or column indices."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        object.__setattr__(self, "indices", idx)
        if any(i < 0 for i in idx):
            raise ValueError("indices must be non-negative")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError("indices must be strictly increasing")

    @classmethod
    def sorted_from(cls, iterable) -> "IndexSet":
        return cls(tuple(sorted(iterable)))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.indices, dtype=int)

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, value) -> bool:
        return value in self.indices


@dataclass(frozen=True, eq=False)
class SvdFactorization:
    """Thin SVD: ``left_factor @ diag(singular_values) @ right_factor.T``."""

    left_factor: DenseMatrix
    singular_values: Spectrum
    right_factor: DenseMatrix

    def __post_init__(self):
        if len(self.singular_values) and self.singular_values[-1] < 0:
            raise ValueError("singular values must be non-negative")

    def reconstruct(self) -> DenseMatrix:
        u = self.left_factor.array
        s = self.singular_values.values
        v = self.right_factor.array
        return DenseMatrix((u * s) @ v.T)


# ---------------------------------------------------------------------------
# Jacobi kernels


def _orthogonalize_columns(w: np.ndarray, v: np.ndarray | None) -> None:
    """Apply Jacobi rotations in place until the columns of ``w`` are
    pairwise orthogonal; accumulate the rotations into ``v`` if given."""
    n = w.shape[1]
    for _ in range(_SWEEP_BUDGET):
        rotated = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                wi = w[:, i]
                wj = w[:, j]
                gij = float(wi @ wj)
                if gij == 0.0:
                    continue
                gii = float(wi @ wi)
                gjj = float(wj @ wj)
                scale = gii * gjj
                # underflowed scale: at least one column is negligible at
                # double precision and its dot products are pure noise
                if scale == 0.0 or abs(gij) <= _JACOBI_TOL * math.sqrt(scale):
                    continue
                rotated = True
                tau = (gjj - gii) / (2.0 * gij)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                new_i = c * wi - s * wj
                new_j = s * wi + c * wj
                w[:, i] = new_i
                w[:, j] = new_j
                if v is not None:
                    vi = v[:, i].copy()
                    vj = v[:, j]
                    v[:, i] = c * vi - s * vj
                    v[:, j] = s * vi + c * vj
        if not rotated:
            return
    raise ConvergenceFailure(
        f"one-sided Jacobi did not converge within {_SWEEP_BUDGET} sweeps"
    )


def _singular_values(arr: np.ndarray) -> np.ndarray:
    """Descending singular values of a 2-D array."""
    a = np.asarray(arr, dtype=float)
    if a.shape[0] < a.shape[1]:
        a = a.T
    if a.shape[1] == 1:
        return np.array([math.sqrt(float(a[:, 0] @ a[:, 0]))])
    w = a.copy()
    _orthogonalize_columns(w, None)
    s = np.sqrt((w * w).sum(axis=0))
    s[::-1].sort()
    return s


def _complete_orthonormal(u: np.ndarray, missing: list[int]) -> None:
    """Fill the ``missing`` columns of ``u`` with an orthonormal completion,
    picking standard basis vectors with maximal residual (deterministic)."""
    rows = u.shape[0]
    filled = [c for c in range(u.shape[1]) if c not in missing]
    for idx in missing:
        basis = np.eye(rows)
        if filled:
            q = u[:, filled]
            resid = basis - q @ (q.T @ basis)
        else:
            resid = basis
        pick = int(np.argmax((resid * resid).sum(axis=0)))
        cand = resid[:, pick]
        if filled:
            q = u[:, filled]
            cand = cand - q @ (q.T @ cand)
        cand = cand / math.sqrt(float(cand @ cand))
        u[:, idx] = cand
        filled.append(idx)


def _jacobi_eigensystem(arr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic two-sided Jacobi on a symmetric array; returns descending
    eigenvalues and the matching orthonormal eigenvector columns."""
    s = np.array(arr, dtype=float)
    n = s.shape[0]
    q = np.eye(n)
    if n > 1:
        # Couplings this small relative to the matrix scale are noise even
        # when the diagonal passes through zero.
        floor = float(np.abs(s).max()) * 1e-17
        for _ in range(_SWEEP_BUDGET):
            rotated = False
            for i in range(n - 1):
                for j in range(i + 1, n):
                    sij = s[i, j]
                    if sij == 0.0 or abs(sij) <= floor:
                        continue
                    if abs(sij) <= _JACOBI_TOL * math.sqrt(abs(s[i, i] * s[j, j])):
                        continue
                    rotated = True
                    theta = (s[j, j] - s[i, i]) / (2.0 * sij)
                    t = math.copysign(1.0, theta) / (
                        abs(theta) + math.hypot(1.0, theta)
                    )
                    c = 1.0 / math.sqrt(1.0 + t * t)
                    sn = t * c
                    ri = s[i, :].copy()
                    rj = s[j, :].copy()
                    s[i, :] = c * ri - sn * rj
                    s[j, :] = sn * ri + c * rj
                    ci = s[:, i].copy()
                    cj = s[:, j].copy()
                    s[:, i] = c * ci - sn * cj
                    s[:, j] = sn * ci + c * cj
                    s[i, j] = 0.0
                    s[j, i] = 0.0
                    qi = q[:, i].copy()
                    qj = q[:, j]
                    q[:, i] = c * qi - sn * qj
                    q[:, j] = sn * qi + c * qj
            if not rotated:
                break
        else:
            raise ConvergenceFailure(
                f"cyclic Jacobi did not converge within {_SWEEP_BUDGET} sweeps"
            )
    eigenvalues = s.diagonal().copy()
    order = np.argsort(-eigenvalues, kind="stable")
    return eigenvalues[order], q[:, order]


# ---------------------------------------------------------------------------
# Public operations


def chebyshev_norm(m: DenseMatrix) -> float:
    """Maximum absolute entry."""
    return float(np.abs(m.array).max())


def spectral_norm(m: DenseMatrix) -> float:
    """Largest singular value."""
    return float(_singular_values(m.array)[0])


def svd(m: DenseMatrix) -> SvdFactorization:
    """Thin singular value decomposition via one-sided Jacobi.

    Returns factors with ``k = min(rows, cols)`` columns.  Singular values
    are non-increasing; values below ``1e-13`` relative to the largest are
    returned as exact zeros and their left/right vectors are completed to
    an orthonormal basis.

    Raises
    ------
    ConvergenceFailure
        If the rotation sweeps do not settle within the sweep budget.
    """
    arr = m.array
    transposed = arr.shape[0] < arr.shape[1]
    work = arr.T.copy() if transposed else arr.copy()
    height, k = work.shape
    v = np.eye(k)
    if k > 1:
        _orthogonalize_columns(work, v)
    norms = np.sqrt((work * work).sum(axis=0))
    order = np.argsort(-norms, kind="stable")
    norms = norms[order]
    work = work[:, order]
    v = v[:, order]
    cutoff = norms[0] * _ZERO_CUTOFF
    u = np.zeros((height, k))
    missing: list[int] = []
    for idx in range(k):
        if norms[idx] > cutoff:
            u[:, idx] = work[:, idx] / norms[idx]
        else:
            norms[idx] = 0.0
            missing.append(idx)
    if missing:
        _complete_orthonormal(u, missing)
    left, right = (v, u) if transposed else (u, v)
    return SvdFactorization(DenseMatrix(left), Spectrum(norms), DenseMatrix(right))


def truncate_svd(m: DenseMatrix, r: int) -> DenseMatrix:
    """Best rank-``r`` approximation in the spectral norm.

    ``r`` must satisfy ``0 <= r <= min(rows, cols)``; ``r = 0`` yields the
    zero matrix and ``r = min(rows, cols)`` reproduces the input up to
    factorization roundoff.
    """
    k = min(m.rows, m.cols)
    if not 0 <= r <= k:
        raise RankOutOfRange(f"truncation rank {r} not in [0, {k}]")
    if r == 0:
        return DenseMatrix(np.zeros(m.shape))
    f = svd(m)
    u = f.left_factor.array[:, :r]
    s = f.singular_values.values[:r]
    v = f.right_factor.array[:, :r]
    return DenseMatrix((u * s) @ v.T)


def pseudo_inverse(a: DenseMatrix, rank_tol: float = DEFAULT_RANK_TOL) -> DenseMatrix:
    """Moore-Penrose pseudo-inverse.

    Singular values at or below ``rank_tol`` times the largest are treated
    as zero.  The result satisfies the four Penrose identities to roughly
    ``1e-8 * spectral_norm(a)`` for well-scaled inputs.
    """
    if rank_tol < 0:
        raise ValueError("rank_tol must be non-negative")
    f = svd(a)
    s = f.singular_values.values
    keep = s > rank_tol * s[0] if s[0] > 0 else np.zeros(len(s), dtype=bool)
    if not keep.any():
        return DenseMatrix(np.zeros((a.cols, a.rows)))
    u = f.left_factor.array[:, keep]
    v = f.right_factor.array[:, keep]
    return DenseMatrix((v / s[keep]) @ u.T)


def volume(a: DenseMatrix, r: int, rank_tol: float = DEFAULT_RANK_TOL) -> float:
    """Natural log of the r-volume ``sigma_1 * ... * sigma_r``.

    Returned in log space to avoid underflow for decaying spectra; if any
    of the first ``r`` singular values is numerically zero the result is
    ``-inf``.
    """
    k = min(a.rows, a.cols)
    if not 1 <= r <= k:
        raise RankOutOfRange(f"volume rank {r} not in [1, {k}]")
    s = _singular_values(a.array)
    if s[0] <= 0.0 or s[r - 1] <= rank_tol * s[0]:
        return float("-inf")
    return float(np.log(s[:r]).sum())


def numerical_rank(m: DenseMatrix, rank_tol: float = DEFAULT_RANK_TOL) -> int:
    """Number of singular values above ``rank_tol`` times the largest."""
    if rank_tol < 0:
        raise ValueError("rank_tol must be non-negative")
    s = _singular_values(m.array)
    if s[0] <= 0.0:
        return 0
    return int((s > rank_tol * s[0]).sum())


def symmetry_defect(m: DenseMatrix) -> float:
    """Maximum absolute entrywise deviation from symmetry."""
    if m.rows != m.cols:
        return float("inf")
    return float(np.abs(m.array - m.array.T).max())


def is_symmetric(m: DenseMatrix, tol: float = _MAX_ABS_SYMMETRY_TOL) -> bool:
    """True when square and symmetric within ``tol`` times the max entry."""
    return m.rows == m.cols and symmetry_defect(m) <= tol * chebyshev_norm(m)


def symmetric_eigen(m: DenseMatrix) -> tuple[Spectrum, DenseMatrix]:
    """Eigen decomposition of a symmetric matrix via cyclic Jacobi.

    Returns ``(eigenvalues, q)`` with eigenvalues in descending order and
    orthonormal eigenvector columns such that ``q @ diag(vals) @ q.T``
    reconstructs the input.

    Raises
    ------
    NotSymmetric
        If the input deviates from symmetry by more than ``1e-12`` times
        its largest entry.
    ConvergenceFailure
        If the rotation sweeps do not settle within the sweep budget.
    """
    if m.rows != m.cols:
        raise NotSymmetric(f"matrix is {m.rows}x{m.cols}, not square")
    defect = symmetry_defect(m)
    if defect > _MAX_ABS_SYMMETRY_TOL * chebyshev_norm(m):
        raise NotSymmetric(f"symmetry defect {defect:.3e} exceeds tolerance")
    sym = 0.5 * (m.array + m.array.T)
    values, q = _jacobi_eigensystem(sym)
    return Spectrum(values), DenseMatrix(q)


def submatrix(m: DenseMatrix, rows: IndexSet, cols: IndexSet) -> DenseMatrix:
    """Extract the block ``m[rows, cols]`` preserving index order."""
    if len(rows) == 0 or len(cols) == 0:
        raise IndexOutOfRange("index sets must be non-empty")
    if rows.indices[-1] >= m.rows or cols.indices[-1] >= m.cols:
        raise IndexOutOfRange(
            f"indices exceed matrix shape {m.rows}x{m.cols}: "
            f"rows {rows.indices}, cols {cols.indices}"
        )
    return DenseMatrix(m.array[np.ix_(rows.as_array(), cols.as_array())])
