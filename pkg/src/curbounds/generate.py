"""Seeded generators for test matrices with prescribed spectra.

The random stream is SplitMix64 (a fixed 64-bit counter-hash generator)
with Gaussian samples drawn by Box-Muller, so identical seeds give
bit-identical matrices on any platform and regardless of thread count.
Parallel trial generation must derive per-trial seeds (``seed ^ trial``)
instead of sharing a stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DenseMatrix, Spectrum
from .errors import InvalidDecayParams, NonPositiveValue

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_TWO_PI = 2.0 * math.pi


class SplitMix64:
    """Deterministic uniform/Gaussian stream from a 64-bit seed."""

    __slots__ = ("_state", "_spare")

    def __init__(self, seed: int):
        self._state = int(seed) & _MASK64
        self._spare: float | None = None

    def next_uint64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform double in [0, 1) with 53 random bits."""
        return (self.next_uint64() >> 11) * 2.0 ** -53

    def gaussian(self) -> float:
        if self._spare is not None:
            value = self._spare
            self._spare = None
            return value
        u1 = 1.0 - self.uniform()  # (0, 1], keeps log() finite
        u2 = self.uniform()
        radius = math.sqrt(-2.0 * math.log(u1))
        self._spare = radius * math.sin(_TWO_PI * u2)
        return radius * math.cos(_TWO_PI * u2)

    def gaussian_matrix(self, rows: int, cols: int) -> np.ndarray:
        out = np.empty((rows, cols))
        flat = out.reshape(-1)
        for k in range(flat.size):
            flat[k] = self.gaussian()
        return out


@dataclass(frozen=True)
class PowerDecay:
    """Spectrum values ``scale * k**-s`` for k = 1, 2, ..."""

    s: float
    scale: float = 1.0

    def __post_init__(self):
        if not (self.s > 0 and self.scale > 0):
            raise InvalidDecayParams(
                f"power decay needs s > 0 and scale > 0, got s={self.s}, scale={self.scale}"
            )


@dataclass(frozen=True)
class GeometricDecay:
    """Spectrum values ``scale * ratio**k`` for k = 1, 2, ..."""

    ratio: float
    scale: float = 1.0

    def __post_init__(self):
        if not (0 < self.ratio < 1 and self.scale > 0):
            raise InvalidDecayParams(
                f"geometric decay needs ratio in (0,1) and scale > 0, "
                f"got ratio={self.ratio}, scale={self.scale}"
            )


@dataclass(frozen=True)
class ExplicitSpectrum:
    """A literal non-increasing positive value list."""

    values: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if not vals or any(v <= 0 for v in vals):
            raise InvalidDecayParams("explicit spectrum values must be positive")
        if any(b > a for a, b in zip(vals, vals[1:])):
            raise InvalidDecayParams("explicit spectrum values must be non-increasing")


DecayKind = PowerDecay | GeometricDecay | ExplicitSpectrum


@dataclass(frozen=True)
class SpectrumModel:
    kind: DecayKind
    length: int

    def __post_init__(self):
        if self.length < 1:
            raise InvalidDecayParams(f"spectrum length must be >= 1, got {self.length}")
        if isinstance(self.kind, ExplicitSpectrum) and len(self.kind.values) != self.length:
            raise InvalidDecayParams(
                f"explicit spectrum has {len(self.kind.values)} values, expected {self.length}"
            )


def spectrum(model: SpectrumModel) -> Spectrum:
    """Evaluate a spectrum model into a concrete value list."""
    kind = model.kind
    k = np.arange(1, model.length + 1, dtype=float)
    if isinstance(kind, PowerDecay):
        return Spectrum(kind.scale * k ** (-kind.s))
    if isinstance(kind, GeometricDecay):
        return Spectrum(kind.scale * kind.ratio ** k)
    return Spectrum(np.asarray(kind.values))


def _haar_factor(rows: int, cols: int, rng: SplitMix64) -> np.ndarray:
    """Haar-distributed orthonormal ``rows x cols`` factor (``cols <= rows``).

    QR of a Gaussian matrix with the R-diagonal sign fix, which makes the
    distribution exactly Haar rather than merely orthonormal.
    """
    g = rng.gaussian_matrix(rows, cols)
    q, r = np.linalg.qr(g)
    signs = np.sign(np.diagonal(r)).copy()
    signs[signs == 0] = 1.0
    return q * signs


def spd_with_spectrum(eigs, seed: int) -> DenseMatrix:
    """Random SPD matrix ``Q diag(eigs) Q^T`` with Haar-random ``Q``.

    Deterministic per seed; the result is explicitly symmetrized so no
    roundoff asymmetry leaks out.
    """
    values = eigs.values if isinstance(eigs, Spectrum) else Spectrum(eigs).values
    if values.size == 0 or values[-1] <= 0:
        raise NonPositiveValue("SPD construction needs strictly positive eigenvalues")
    n = values.size
    q = _haar_factor(n, n, SplitMix64(seed))
    m = (q * values) @ q.T
    return DenseMatrix(0.5 * (m + m.T))


def general_with_spectrum(rows: int, cols: int, sigma, seed: int) -> DenseMatrix:
    """Random ``rows x cols`` matrix ``U diag(sigma) V^T`` with independent
    Haar factors; deterministic per seed."""
    values = sigma.values if isinstance(sigma, Spectrum) else Spectrum(sigma).values
    k = min(rows, cols)
    if values.size != k:
        raise ValueError(f"need {k} singular values for a {rows}x{cols} matrix, got {values.size}")
    if values.size and values[-1] < 0:
        raise NonPositiveValue("singular values must be non-negative")
    rng = SplitMix64(seed)
    u = _haar_factor(rows, k, rng)
    v = _haar_factor(cols, k, rng)
    return DenseMatrix((u * values) @ v.T)


def paper_2x2(sigma1: float, sigma2: float) -> DenseMatrix:
    """Symmetric 2x2 matrix with prescribed singular values whose rank-1
    truncation error is ``sigma2 / 2`` in the Chebyshev norm."""
    if not sigma1 >= sigma2 >= 0:
        raise InvalidDecayParams(f"need sigma1 >= sigma2 >= 0, got ({sigma1}, {sigma2})")
    hi = 0.5 * (sigma1 + sigma2)
    lo = 0.5 * (sigma1 - sigma2)
    return DenseMatrix([[hi, lo], [lo, hi]])


def hilbert(n: int) -> DenseMatrix:
    """Hilbert matrix, entries ``1 / (i + j + 1)`` (0-based)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    i = np.arange(n)
    return DenseMatrix(1.0 / (i[:, None] + i[None, :] + 1.0))
