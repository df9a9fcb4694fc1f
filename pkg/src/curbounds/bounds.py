"""Chebyshev-norm error bounds as pure functions of a spectrum.

Every bound takes a descending value list (eigenvalues or singular
values) plus shape parameters, never a matrix.  Callers decide whether
the spectrum comes from an exact factorization or from a decay model,
which keeps model curves and matrix-driven curves on one code path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Spectrum
from .errors import InvalidDecayParams, NonPositiveValue, RankOutOfRange


def _leading(values, count: int) -> np.ndarray:
    vals = values.values if isinstance(values, Spectrum) else np.asarray(values, dtype=float)
    if count > vals.size:
        raise RankOutOfRange(f"need {count} spectrum values, have {vals.size}")
    return vals[:count]


def harmonic_mean(values, count: int) -> float:
    """Harmonic mean of the first ``count`` values: ``count / sum(1/v)``."""
    if count < 1:
        raise RankOutOfRange(f"count must be >= 1, got {count}")
    vals = _leading(values, count)
    if np.any(vals <= 0):
        raise NonPositiveValue("harmonic mean needs strictly positive values")
    # Reciprocals accumulate in the widest float the platform offers; the
    # values arrive largest first, so the reciprocal sum grows smallest first.
    total = np.reciprocal(vals.astype(np.longdouble)).sum()
    return float(np.longdouble(count) / total)


def zeta(values, r: int) -> float:
    """Spectral decay factor ``H(v_1..v_{r+1}) / v_{r+1}``, in [1, r+1].

    Close to ``r+1`` for fast decay, close to 1 for slow decay.
    """
    if r < 0:
        raise RankOutOfRange(f"r must be >= 0, got {r}")
    vals = _leading(values, r + 1)
    return harmonic_mean(vals, r + 1) / float(vals[r])


def gt_bound(sigma, r: int) -> float:
    """Classical maximal-volume bound ``(r+1) * sigma_{r+1}`` (p = q)."""
    if r < 0:
        raise RankOutOfRange(f"r must be >= 0, got {r}")
    vals = _leading(sigma, r + 1)
    return (r + 1) * float(vals[r])


def oz_bound(sigma, r: int, p: int, q: int) -> float:
    """Bound for the rank-r skeleton built on a maximal r-projective-volume
    p x q block: ``sqrt((1 + r/(p-r+1)) (1 + r/(q-r+1))) * sigma_{r+1}``."""
    if not 0 <= r <= p <= q:
        raise RankOutOfRange(f"need 0 <= r <= p <= q, got r={r}, p={p}, q={q}")
    vals = _leading(sigma, r + 1)
    factor = math.sqrt((1.0 + r / (p - r + 1.0)) * (1.0 + r / (q - r + 1.0)))
    return factor * float(vals[r])


def spd_zeta_bound(eigs, r: int) -> float:
    """Decay-aware SPD bound ``zeta_r * lambda_{r+1}`` for the maximal-volume
    principal skeleton with p = q = r."""
    vals = _leading(eigs, r + 1)
    return zeta(vals, r) * float(vals[r])


def spd_truncated_bound(eigs, r: int, p: int) -> float:
    """Bound for truncating a rank-p SPD skeleton down to rank r < p:
    ``(zeta_p * lambda_{p+1} / lambda_{r+1} + 1) * lambda_{r+1}``."""
    if not 0 <= r < p:
        raise RankOutOfRange(f"need 0 <= r < p, got r={r}, p={p}")
    vals = _leading(eigs, p + 1)
    if vals[r] <= 0:
        raise NonPositiveValue("eigenvalues must be positive through index p+1")
    lam_r1 = float(vals[r])
    return (zeta(vals, p) * float(vals[p]) / lam_r1 + 1.0) * lam_r1


def general_zeta_bound(sigma, r: int, q: int) -> float:
    """Decay-aware bound for general maximal-volume skeletons:
    ``sqrt(zeta_r(squared spectrum) / (1 - r/(q+1))) * sigma_{r+1}``.

    The squared spectrum realizes the Gram-matrix decay factor
    ``H(s_1^2..s_{r+1}^2) / s_{r+1}^2``.
    """
    if not 0 <= r <= q:
        raise RankOutOfRange(f"need 0 <= r <= q, got r={r}, q={q}")
    vals = _leading(sigma, r + 1)
    if np.any(vals <= 0):
        raise NonPositiveValue("singular values must be positive through index r+1")
    z = zeta(vals * vals, r)
    return math.sqrt(z / (1.0 - r / (q + 1.0))) * float(vals[r])


def _check_decay(s: float, c1: float, c2: float) -> None:
    if not (s > 0 and 0 < c1 <= c2):
        raise InvalidDecayParams(f"need s > 0 and 0 < C1 <= C2, got s={s}, C1={c1}, C2={c2}")


def spd_decay_constant(s: float, c1: float, c2: float) -> float:
    """Constant ``(s+1) C2/C1`` bounding zeta_r for power-decay SPD spectra
    sandwiched by ``C1 k**-s <= lambda_k <= C2 k**-s``."""
    _check_decay(s, c1, c2)
    return (s + 1.0) * c2 / c1


def general_decay_constant(s: float, c1: float, c2: float, alpha: float) -> float:
    """Constant ``alpha/(alpha-1) * C2/C1 * (2s+1)`` bounding the *squared*
    error ratio ``err_C**2 / sigma_{r+1}**2`` when q = alpha*r - 1 columns
    oversample a power-decay spectrum."""
    _check_decay(s, c1, c2)
    if not alpha > 1:
        raise InvalidDecayParams(f"need alpha > 1, got {alpha}")
    return alpha / (alpha - 1.0) * c2 / c1 * (2.0 * s + 1.0)


@dataclass(frozen=True)
class PowerTruncation:
    """Truncated-skeleton constant for power decay with p = alpha*(r+1) - 1."""

    alpha: float

    def __post_init__(self):
        if not self.alpha > 1:
            raise InvalidDecayParams(f"need alpha > 1, got {self.alpha}")


@dataclass(frozen=True)
class GeometricTruncation:
    """Truncated-skeleton constant for geometric decay with p = 2r."""

    r: int

    def __post_init__(self):
        if self.r < 1:
            raise InvalidDecayParams(f"need r >= 1, got {self.r}")


def truncated_decay_constant(s_or_q: float, c1: float, c2: float, mode) -> float:
    """Constant c with ``truncated-skeleton error <= c * lambda_{r+1}``.

    Power mode: ``(C2/C1)**2 (s+1) alpha**-s + 1`` with ``s = s_or_q``.
    Geometric mode: ``(C2/C1) (2r+1) q**r + 1`` with ``q = s_or_q``.
    """
    if not 0 < c1 <= c2:
        raise InvalidDecayParams(f"need 0 < C1 <= C2, got C1={c1}, C2={c2}")
    if isinstance(mode, PowerTruncation):
        s = s_or_q
        if not s > 0:
            raise InvalidDecayParams(f"power decay needs s > 0, got {s}")
        return (c2 / c1) ** 2 * (s + 1.0) * mode.alpha ** (-s) + 1.0
    if isinstance(mode, GeometricTruncation):
        q = s_or_q
        if not 0 < q < 1:
            raise InvalidDecayParams(f"geometric decay needs q in (0,1), got {q}")
        return (c2 / c1) * (2.0 * mode.r + 1.0) * q ** mode.r + 1.0
    raise InvalidDecayParams(f"unknown truncation mode {mode!r}")


@dataclass(frozen=True)
class BoundReport:
    """Every bound applicable to one (r, p, q, spectrum) combination.

    Optional fields are ``None`` (not zero) when their preconditions fail,
    e.g. the SPD bounds on non-symmetric input, so reports never silently
    mix regimes.
    """

    r: int
    p: int
    q: int
    sigma_r_plus_1: float
    gt_bound: float
    oz_bound: float | None = None
    spd_zeta_bound: float | None = None
    spd_truncated_bound: float | None = None
    general_zeta_bound: float | None = None
    actual_error: float | None = None


def evaluate_bounds(
    r: int,
    p: int,
    q: int,
    singular_values,
    eigenvalues=None,
    actual_error: float | None = None,
) -> BoundReport:
    """Assemble a :class:`BoundReport`, leaving inapplicable bounds absent.

    ``eigenvalues`` should only be passed for symmetric matrices; the SPD
    bounds additionally require positivity through the needed index and
    stay ``None`` otherwise.
    """
    sig = _leading(singular_values, r + 1)
    gt = gt_bound(sig, r)

    def _try(fn, *args):
        try:
            return fn(*args)
        except (NonPositiveValue, RankOutOfRange):
            return None

    oz = _try(oz_bound, singular_values, r, p, q)
    gen = _try(general_zeta_bound, singular_values, r, q)
    spd_z = _try(spd_zeta_bound, eigenvalues, r) if eigenvalues is not None else None
    spd_t = (
        _try(spd_truncated_bound, eigenvalues, r, p) if eigenvalues is not None else None
    )
    return BoundReport(
        r=r,
        p=p,
        q=q,
        sigma_r_plus_1=float(sig[r]),
        gt_bound=gt,
        oz_bound=oz,
        spd_zeta_bound=spd_z,
        spd_truncated_bound=spd_t,
        general_zeta_bound=gen,
        actual_error=actual_error,
    )
