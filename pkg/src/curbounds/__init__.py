"""Pseudo-skeleton (CUR) approximation with maximal-volume submatrix
selection and Chebyshev-norm error bounds."""

from .core import (
    DEFAULT_RANK_TOL,
    DenseMatrix,
    IndexSet,
    Spectrum,
    SvdFactorization,
    chebyshev_norm,
    is_symmetric,
    numerical_rank,
    pseudo_inverse,
    spectral_norm,
    submatrix,
    svd,
    symmetric_eigen,
    truncate_svd,
    volume,
)
from .errors import (
    BudgetExceeded,
    ConvergenceFailure,
    DegenerateStart,
    IndexOutOfRange,
    InvalidDecayParams,
    NonPositiveValue,
    NotSymmetric,
    RankOutOfRange,
)
from .search import (
    SearchReport,
    SkeletonSelection,
    exhaustive_max_projective_volume,
    exhaustive_maxvol,
    exhaustive_principal_maxvol,
    greedy_maxvol,
)
from .approx import (
    ApproximationResult,
    Method,
    cur,
    cur_then_truncate,
    rank_r_cur,
    residual_blocks,
    truncated_svd_approx,
)
from .bounds import (
    BoundReport,
    GeometricTruncation,
    PowerTruncation,
    evaluate_bounds,
    general_decay_constant,
    general_zeta_bound,
    gt_bound,
    harmonic_mean,
    oz_bound,
    spd_decay_constant,
    spd_truncated_bound,
    spd_zeta_bound,
    truncated_decay_constant,
    zeta,
)
from .generate import (
    ExplicitSpectrum,
    GeometricDecay,
    PowerDecay,
    SpectrumModel,
    SplitMix64,
    general_with_spectrum,
    hilbert,
    paper_2x2,
    spd_with_spectrum,
    spectrum,
)
from .mmio import read_matrix_market, write_matrix_market

__version__ = "0.1.0"
