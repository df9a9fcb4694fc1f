"""Experiment configuration, CSV rows, and theorem-verification sweeps.

A sweep runs every configured method over an (r, p, q) grid for a number
of seeded trials, measures the actual Chebyshev and spectral errors, and
pairs them with every applicable bound.  Rows are emitted in a fixed
(trial, method, grid) order with fixed 17-significant-digit float
formatting, so identical configs give byte-identical CSV output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .approx import Method, cur, cur_then_truncate, rank_r_cur, truncated_svd_approx
from .bounds import BoundReport, evaluate_bounds
from .core import (
    DEFAULT_RANK_TOL,
    DenseMatrix,
    Spectrum,
    _singular_values,
    is_symmetric,
    symmetric_eigen,
)
from .errors import BudgetExceeded
from .generate import SpectrumModel, general_with_spectrum, spd_with_spectrum, spectrum
from .mmio import read_matrix_market
from .search import (
    DEFAULT_BUDGET,
    DEFAULT_GROWTH_TOL,
    SkeletonSelection,
    exhaustive_max_projective_volume,
    exhaustive_maxvol,
    exhaustive_principal_maxvol,
    greedy_maxvol,
)

_MASK64 = (1 << 64) - 1
# Multiplicative guard so bound-tight cases (identity) never flag on roundoff.
VIOLATION_GUARD = 1e-9

CSV_HEADER = (
    "trial,seed,method,search,r,p,q,actual_cheb,actual_spec,gt_bound,"
    "oz_bound,spd_zeta_bound,spd_trunc_bound,gen_zeta_bound,violated"
)


class SearchKind:
    EXHAUSTIVE = "exhaustive"
    GREEDY = "greedy"
    PRINCIPAL = "principal"

    ALL = (EXHAUSTIVE, GREEDY, PRINCIPAL)


@dataclass(frozen=True)
class GeneratorSource:
    """Seeded generator source: SPD (rows == cols) or general."""

    model: SpectrumModel
    rows: int
    cols: int
    spd: bool = False

    def __post_init__(self):
        if self.spd and self.rows != self.cols:
            raise ValueError("SPD generation needs a square shape")
        if self.model.length != min(self.rows, self.cols):
            raise ValueError(
                f"model length {self.model.length} != min(rows, cols) "
                f"= {min(self.rows, self.cols)}"
            )


@dataclass(frozen=True)
class FileSource:
    path: str


MatrixSource = GeneratorSource | FileSource


@dataclass(frozen=True)
class ExperimentConfig:
    source: MatrixSource
    methods: tuple[Method, ...]
    grid: tuple[tuple[int, int, int], ...]
    search: str = SearchKind.EXHAUSTIVE
    trials: int = 1
    base_seed: int = 0
    rank_tol: float = DEFAULT_RANK_TOL
    growth_tol: float = DEFAULT_GROWTH_TOL
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.search not in SearchKind.ALL:
            raise ValueError(f"unknown search kind {self.search!r}")
        if not self.grid:
            raise ValueError("grid must contain at least one (r, p, q) triple")
        for r, p, q in self.grid:
            if not (0 <= r <= p <= q):
                raise ValueError(f"grid entry needs 0 <= r <= p <= q, got {(r, p, q)}")
        if not self.methods:
            raise ValueError("at least one method is required")


@dataclass(frozen=True)
class CsvRow:
    trial: int
    seed: int
    method: str
    search: str
    r: int
    p: int
    q: int
    actual_cheb: float | None
    actual_spec: float | None
    gt_bound: float | None
    oz_bound: float | None
    spd_zeta_bound: float | None
    spd_trunc_bound: float | None
    gen_zeta_bound: float | None
    violated: bool

    def to_line(self) -> str:
        cells = [
            str(self.trial),
            str(self.seed),
            self.method,
            self.search,
            str(self.r),
            str(self.p),
            str(self.q),
            _fmt(self.actual_cheb),
            _fmt(self.actual_spec),
            _fmt(self.gt_bound),
            _fmt(self.oz_bound),
            _fmt(self.spd_zeta_bound),
            _fmt(self.spd_trunc_bound),
            _fmt(self.gen_zeta_bound),
            "true" if self.violated else "false",
        ]
        return ",".join(cells)


def _fmt(x: float | None) -> str:
    return "" if x is None else format(x, ".17g")


@dataclass
class ExperimentOutcome:
    rows: list[CsvRow] = field(default_factory=list)
    violations: int = 0
    skipped: int = 0
    worst_ratios: dict[str, float] = field(default_factory=dict)
    trunc_sigma_ratio: float | None = None
    warnings: list[str] = field(default_factory=list)

    def merge(self, other: "ExperimentOutcome") -> None:
        self.rows.extend(other.rows)
        self.violations += other.violations
        self.skipped += other.skipped
        for name, ratio in other.worst_ratios.items():
            self.worst_ratios[name] = max(self.worst_ratios.get(name, 0.0), ratio)
        if other.trunc_sigma_ratio is not None:
            self.trunc_sigma_ratio = max(
                self.trunc_sigma_ratio or 0.0, other.trunc_sigma_ratio
            )
        self.warnings.extend(other.warnings)

    def to_csv(self) -> str:
        return "\n".join([CSV_HEADER] + [row.to_line() for row in self.rows]) + "\n"


def derive_seed(base_seed: int, trial: int) -> int:
    return (int(base_seed) ^ int(trial)) & _MASK64


def _trial_matrix(source: MatrixSource, seed: int, cache: dict) -> DenseMatrix:
    if isinstance(source, FileSource):
        if "matrix" not in cache:
            cache["matrix"] = read_matrix_market(source.path)
        return cache["matrix"]
    values = spectrum(source.model)
    if source.spd:
        return spd_with_spectrum(values, seed)
    return general_with_spectrum(source.rows, source.cols, values, seed)


def _selection(
    m: DenseMatrix, method: Method, config: ExperimentConfig, r: int, p: int, q: int,
    cache: dict,
) -> SkeletonSelection | None:
    if method is Method.TRUNCATED_SVD:
        return None
    if config.search == SearchKind.GREEDY:
        key = ("greedy", p, q)
        if key not in cache:
            cache[key] = greedy_maxvol(
                m, p, q, config.rank_tol, config.growth_tol
            ).selection
        return cache[key]
    if config.search == SearchKind.PRINCIPAL:
        if p != q:
            raise ValueError(f"principal search needs p == q, got p={p}, q={q}")
        key = ("principal", p)
        if key not in cache:
            cache[key] = exhaustive_principal_maxvol(
                m, p, config.rank_tol, config.budget
            ).selection
        return cache[key]
    if method is Method.RANK_R_CUR:
        key = ("projective", p, q, r)
        if key not in cache:
            cache[key] = exhaustive_max_projective_volume(
                m, p, q, r, config.rank_tol, config.budget
            ).selection
        return cache[key]
    key = ("maxvol", p, q)
    if key not in cache:
        cache[key] = exhaustive_maxvol(m, p, q, config.rank_tol, config.budget).selection
    return cache[key]


def _approximate(m, method, selection, r, rank_tol):
    if method is Method.TRUNCATED_SVD:
        return truncated_svd_approx(m, r)
    if method is Method.MAXVOL_CUR:
        return cur(m, selection, rank_tol)
    if method is Method.RANK_R_CUR:
        return rank_r_cur(m, selection, r, rank_tol)
    if method is Method.CUR_THEN_TRUNCATE:
        return cur_then_truncate(m, selection, r, rank_tol)
    raise ValueError(f"unknown method {method!r}")


def _governing_bounds(
    method: Method, search: str, spd: bool, r: int, p: int, q: int, report: BoundReport
) -> list[tuple[str, float]]:
    """The proven bounds a row is checked against.

    Greedy selections have no proven bound (the theorems assume a global
    maximum) and never flag.
    """
    if search == SearchKind.GREEDY:
        return []
    out: list[tuple[str, float]] = []
    if method is Method.TRUNCATED_SVD:
        out.append(("sigma_r_plus_1", report.sigma_r_plus_1))
    elif method is Method.MAXVOL_CUR:
        if search == SearchKind.PRINCIPAL and spd and report.spd_zeta_bound is not None:
            out.append(("spd_zeta_bound", report.spd_zeta_bound))
        if search == SearchKind.EXHAUSTIVE:
            if report.general_zeta_bound is not None:
                out.append(("gen_zeta_bound", report.general_zeta_bound))
            if p == q:
                out.append(("gt_bound", report.gt_bound))
    elif method is Method.RANK_R_CUR:
        if search == SearchKind.EXHAUSTIVE and report.oz_bound is not None:
            out.append(("oz_bound", report.oz_bound))
    elif method is Method.CUR_THEN_TRUNCATE:
        if (
            search == SearchKind.PRINCIPAL
            and spd
            and r < p
            and report.spd_truncated_bound is not None
        ):
            out.append(("spd_trunc_bound", report.spd_truncated_bound))
    return out


def run_experiment(config: ExperimentConfig) -> ExperimentOutcome:
    """Execute the configured sweep and collect rows plus summary stats."""
    outcome = ExperimentOutcome()
    source_cache: dict = {}
    for trial in range(config.trials):
        seed = derive_seed(config.base_seed, trial)
        m = _trial_matrix(config.source, seed, source_cache)
        symmetric = is_symmetric(m)
        eigs: Spectrum | None = None
        spd = False
        if symmetric:
            eigs, _ = symmetric_eigen(m)
            spd = eigs[len(eigs) - 1] > 0
        if spd:
            sigma = eigs  # SPD: singular values equal eigenvalues
        else:
            sigma = Spectrum(_singular_values(m.array))
        selection_cache: dict = {}
        for method in config.methods:
            for r, p, q in config.grid:
                try:
                    selection = _selection(m, method, config, r, p, q, selection_cache)
                except BudgetExceeded as exc:
                    outcome.skipped += 1
                    outcome.warnings.append(
                        f"trial {trial} {method.value} grid {(r, p, q)}: {exc}"
                    )
                    outcome.rows.append(
                        CsvRow(trial, seed, method.value, config.search, r, p, q,
                               None, None, None, None, None, None, None, False)
                    )
                    continue
                result = _approximate(m, method, selection, r, config.rank_tol)
                report = evaluate_bounds(
                    r, p, q, sigma,
                    eigenvalues=eigs if symmetric else None,
                    actual_error=result.chebyshev_error,
                )
                governing = _governing_bounds(
                    method, config.search, spd, r, p, q, report
                )
                violated = False
                for name, bound in governing:
                    if result.chebyshev_error > bound * (1.0 + VIOLATION_GUARD):
                        violated = True
                    if bound > 0:
                        ratio = result.chebyshev_error / bound
                        outcome.worst_ratios[name] = max(
                            outcome.worst_ratios.get(name, 0.0), ratio
                        )
                if violated:
                    outcome.violations += 1
                if (
                    method is Method.MAXVOL_CUR
                    and config.search == SearchKind.EXHAUSTIVE
                    and not symmetric
                    and p >= 2
                    and sigma[p - 1] > 0
                ):
                    # measured spectrum inflation of the skeleton, relevant to
                    # truncating general skeletons at r = p - 1
                    approx_sigma = _singular_values(result.approximant.array)
                    ratio = float(approx_sigma[p - 1]) / sigma[p - 1]
                    outcome.trunc_sigma_ratio = max(
                        outcome.trunc_sigma_ratio or 0.0, ratio
                    )
                outcome.rows.append(
                    CsvRow(
                        trial, seed, method.value, config.search, r, p, q,
                        result.chebyshev_error, result.spectral_error,
                        report.gt_bound, report.oz_bound, report.spd_zeta_bound,
                        report.spd_truncated_bound, report.general_zeta_bound,
                        violated,
                    )
                )
    return outcome


# ---------------------------------------------------------------------------
# Default verification suites


def spd_suite_configs(trials: int, base_seed: int, n: int = 8) -> list[ExperimentConfig]:
    """Maximal-volume CUR on SPD matrices: power (s = 1, 2) and geometric
    (ratio 0.5) spectra, principal search, r = p = q in {1, 2, 3}."""
    from .generate import GeometricDecay, PowerDecay  # local to avoid cycle noise

    models = [
        SpectrumModel(PowerDecay(1.0), n),
        SpectrumModel(PowerDecay(2.0), n),
        SpectrumModel(GeometricDecay(0.5), n),
    ]
    grid = tuple((r, r, r) for r in (1, 2, 3))
    return [
        ExperimentConfig(
            source=GeneratorSource(model, n, n, spd=True),
            methods=(Method.MAXVOL_CUR,),
            grid=grid,
            search=SearchKind.PRINCIPAL,
            trials=trials,
            base_seed=base_seed,
        )
        for model in models
    ]


def general_suite_configs(
    trials: int, base_seed: int, rows: int = 7, cols: int = 9
) -> list[ExperimentConfig]:
    """Maximal-volume CUR on general matrices with power spectra,
    exhaustive search, r = p = q in {1, 2}."""
    from .generate import PowerDecay

    k = min(rows, cols)
    models = [SpectrumModel(PowerDecay(1.0), k), SpectrumModel(PowerDecay(2.0), k)]
    grid = tuple((r, r, r) for r in (1, 2))
    return [
        ExperimentConfig(
            source=GeneratorSource(model, rows, cols, spd=False),
            methods=(Method.MAXVOL_CUR,),
            grid=grid,
            search=SearchKind.EXHAUSTIVE,
            trials=trials,
            base_seed=base_seed,
        )
        for model in models
    ]


def truncated_suite_configs(
    trials: int, base_seed: int, n: int = 8
) -> list[ExperimentConfig]:
    """CUR-then-truncate on the same SPD population with p = 2r."""
    from .generate import GeometricDecay, PowerDecay

    models = [
        SpectrumModel(PowerDecay(1.0), n),
        SpectrumModel(PowerDecay(2.0), n),
        SpectrumModel(GeometricDecay(0.5), n),
    ]
    grid = tuple((r, 2 * r, 2 * r) for r in (1, 2, 3))
    return [
        ExperimentConfig(
            source=GeneratorSource(model, n, n, spd=True),
            methods=(Method.CUR_THEN_TRUNCATE,),
            grid=grid,
            search=SearchKind.PRINCIPAL,
            trials=trials,
            base_seed=base_seed,
        )
        for model in models
    ]
