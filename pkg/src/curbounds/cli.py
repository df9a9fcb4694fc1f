"""Command-line harness: generate matrices, run approximation sweeps,
verify the error bounds empirically, and render the bound-comparison
figure.

Exit codes: 0 success / no violations, 1 bound violations or check
mismatch, 2 configuration error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .approx import Method
from .bounds import gt_bound, oz_bound, spd_zeta_bound
from .chart import write_line_chart_svg
from .errors import BudgetExceeded, ConvergenceFailure, InvalidDecayParams, NotSymmetric
from .generate import (
    ExplicitSpectrum,
    GeometricDecay,
    PowerDecay,
    SpectrumModel,
    general_with_spectrum,
    hilbert,
    paper_2x2,
    spd_with_spectrum,
    spectrum,
)
from .mmio import write_matrix_market
from .sweeps import (
    ExperimentConfig,
    FileSource,
    GeneratorSource,
    SearchKind,
    general_suite_configs,
    run_experiment,
    spd_suite_configs,
    truncated_suite_configs,
)

_METHOD_NAMES = {m.value: m for m in Method}

FIG_CSV_HEADER = "r,gt_bound,spd_zeta_bound,oz_bound,sigma_r_plus_1"


def _add_model_flags(parser, include_shape=True):
    parser.add_argument("--power", type=float, metavar="S", help="power-decay spectrum k**-S")
    parser.add_argument("--geometric", type=float, metavar="Q", help="geometric-decay spectrum Q**k")
    parser.add_argument("--explicit", metavar="V1,V2,...", help="explicit spectrum values")
    parser.add_argument("--scale", type=float, default=1.0, metavar="C", help="spectrum scale factor")
    if include_shape:
        parser.add_argument("--n", type=int, help="columns (and rows unless --m is given)")
        parser.add_argument("--m", type=int, help="rows for non-square generation")
        parser.add_argument("--spd", action="store_true", help="generate SPD via a Haar rotation")
    parser.add_argument("--seed", type=int, default=0, help="base seed (64-bit)")


def _model_from_args(args, length):
    chosen = [name for name in ("power", "geometric", "explicit") if getattr(args, name) is not None]
    if len(chosen) != 1:
        raise InvalidDecayParams("exactly one of --power/--geometric/--explicit is required")
    if args.power is not None:
        kind = PowerDecay(args.power, args.scale)
    elif args.geometric is not None:
        kind = GeometricDecay(args.geometric, args.scale)
    else:
        values = tuple(args.scale * float(tok) for tok in args.explicit.split(","))
        if length is not None and len(values) != length:
            raise InvalidDecayParams(f"--explicit needs {length} values, got {len(values)}")
        kind = ExplicitSpectrum(values)
        length = len(values)
    return SpectrumModel(kind, length)


def _parse_grid(text):
    grid = []
    for chunk in text.split(";"):
        parts = chunk.split(",")
        if len(parts) != 3:
            raise ValueError(f"grid entry {chunk!r} is not of the form r,p,q")
        grid.append(tuple(int(v) for v in parts))
    return tuple(grid)


def _parse_methods(text):
    methods = []
    for name in text.split(","):
        key = name.strip()
        if key not in _METHOD_NAMES:
            raise ValueError(
                f"unknown method {key!r}; choose from {', '.join(sorted(_METHOD_NAMES))}"
            )
        methods.append(_METHOD_NAMES[key])
    return tuple(methods)


def _emit(text, out_path):
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    if args.paper2x2 is not None:
        matrix = paper_2x2(args.paper2x2[0], args.paper2x2[1])
    elif args.hilbert is not None:
        matrix = hilbert(args.hilbert)
    else:
        if args.n is None:
            raise InvalidDecayParams("--n is required for spectrum-based generation")
        rows = args.m if args.m is not None else args.n
        cols = args.n
        if args.spd and rows != cols:
            raise InvalidDecayParams("--spd needs a square shape")
        model = _model_from_args(args, min(rows, cols))
        values = spectrum(model)
        if args.spd:
            matrix = spd_with_spectrum(values, args.seed)
        else:
            matrix = general_with_spectrum(rows, cols, values, args.seed)
    write_matrix_market(args.out, matrix)
    return 0


def _config_from_args(args) -> ExperimentConfig:
    if args.infile:
        source = FileSource(args.infile)
    else:
        if args.n is None:
            raise InvalidDecayParams("either --in or a generator spec (--n ...) is required")
        rows = args.m if args.m is not None else args.n
        cols = args.n
        model = _model_from_args(args, min(rows, cols))
        source = GeneratorSource(model, rows, cols, spd=args.spd)
    return ExperimentConfig(
        source=source,
        methods=_parse_methods(args.methods),
        grid=_parse_grid(args.grid),
        search=args.search,
        trials=args.trials,
        base_seed=args.seed,
        rank_tol=args.rank_tol,
        growth_tol=args.growth_tol,
        budget=args.budget,
    )


def cmd_approx(args) -> int:
    outcome = run_experiment(_config_from_args(args))
    for warning in outcome.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    _emit(outcome.to_csv(), args.out)
    return 0


def cmd_verify(args) -> int:
    if args.search == SearchKind.GREEDY:
        print(
            "error: the verified bounds assume a submatrix of globally maximal "
            "volume; greedy search only finds a local maximum and is excluded "
            "from verification",
            file=sys.stderr,
        )
        return 2
    configs = []
    if args.suite in ("all", "spd"):
        configs += [("spd", cfg) for cfg in spd_suite_configs(args.trials, args.seed)]
    if args.suite in ("all", "general"):
        configs += [
            ("general", cfg) for cfg in general_suite_configs(args.trials, args.seed)
        ]
    if args.suite in ("all", "truncated"):
        configs += [
            ("truncated", cfg) for cfg in truncated_suite_configs(args.trials, args.seed)
        ]
    if args.search is not None:
        for name, cfg in configs:
            if cfg.search != args.search:
                print(
                    f"error: suite {name!r} verifies bounds proven for "
                    f"{cfg.search!r} search, not {args.search!r}",
                    file=sys.stderr,
                )
                return 2

    from .sweeps import ExperimentOutcome

    combined = ExperimentOutcome()
    per_suite: dict[str, ExperimentOutcome] = {}
    for name, cfg in configs:
        outcome = run_experiment(cfg)
        combined.merge(outcome)
        if name not in per_suite:
            per_suite[name] = ExperimentOutcome()
        per_suite[name].merge(outcome)

    csv_text = combined.to_csv()
    _emit(csv_text, args.out)

    for name, outcome in per_suite.items():
        ratios = ", ".join(
            f"{bound}={ratio:.6f}" for bound, ratio in sorted(outcome.worst_ratios.items())
        )
        print(
            f"suite {name}: rows={len(outcome.rows)} violations={outcome.violations} "
            f"worst actual/bound: {ratios}",
            file=sys.stderr,
        )
        if name == "general" and outcome.trunc_sigma_ratio is not None:
            print(
                f"suite general: measured skeleton spectrum inflation "
                f"sigma_p(approx)/sigma_p(M) max={outcome.trunc_sigma_ratio:.6f}",
                file=sys.stderr,
            )
    print(
        f"total: rows={len(combined.rows)} violations={combined.violations}",
        file=sys.stderr,
    )

    if args.check:
        reference = Path(args.check).read_text()
        if reference != csv_text:
            print(f"error: {args.check} does not match the recomputed CSV", file=sys.stderr)
            return 1
        print(f"check: {args.check} matches the recomputed CSV", file=sys.stderr)
    return 0 if combined.violations == 0 else 1


def cmd_fig1(args) -> int:
    if args.s <= 0:
        raise InvalidDecayParams(f"--s must be positive, got {args.s}")
    if args.r_max < 1:
        raise InvalidDecayParams(f"--r-max must be >= 1, got {args.r_max}")
    model = spectrum(SpectrumModel(PowerDecay(args.s), args.r_max + 1)).values
    rs = list(range(1, args.r_max + 1))
    gt = [gt_bound(model, r) for r in rs]
    spd_z = [spd_zeta_bound(model, r) for r in rs]
    oz = [oz_bound(model, r, 2 * r - 1, 2 * r - 1) for r in rs]
    sigma_next = [float(model[r]) for r in rs]

    lines = [FIG_CSV_HEADER]
    for k, r in enumerate(rs):
        lines.append(
            f"{r},{gt[k]:.17g},{spd_z[k]:.17g},{oz[k]:.17g},{sigma_next[k]:.17g}"
        )
    Path(args.out_csv).write_text("\n".join(lines) + "\n")

    write_line_chart_svg(
        args.out_svg,
        rs,
        {
            "gt_bound": gt,
            "spd_zeta_bound": spd_z,
            "oz_bound (p=q=2r-1)": oz,
            "sigma_r_plus_1": sigma_next,
        },
        title=f"Chebyshev error bounds for the spectrum k^-{args.s:g}",
        x_label="r",
        y_label="bound",
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curbounds",
        description="CUR approximation with maximal-volume selection and "
        "Chebyshev-norm error bounds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a generated matrix in Matrix Market format")
    _add_model_flags(gen)
    gen.add_argument("--paper2x2", nargs=2, type=float, metavar=("S1", "S2"),
                     help="2x2 matrix with the given singular values")
    gen.add_argument("--hilbert", type=int, metavar="N", help="Hilbert matrix of order N")
    gen.add_argument("-o", "--out", required=True, help="output .mtx path")
    gen.set_defaults(func=cmd_gen)

    approx = sub.add_parser("approx", help="run approximation methods over a grid, emit CSV")
    _add_model_flags(approx)
    approx.add_argument("--in", dest="infile", metavar="PATH",
                        help="read the matrix from a Matrix Market file")
    approx.add_argument("--grid", required=True, metavar="R,P,Q[;...]",
                        help="semicolon-separated r,p,q triples")
    approx.add_argument("--methods", default="maxvol_cur",
                        help="comma-separated: " + ", ".join(sorted(_METHOD_NAMES)))
    approx.add_argument("--search", default=SearchKind.EXHAUSTIVE,
                        choices=SearchKind.ALL)
    approx.add_argument("--trials", type=int, default=1)
    approx.add_argument("--rank-tol", type=float, default=1e-10)
    approx.add_argument("--growth-tol", type=float, default=1.0 + 1e-9)
    approx.add_argument("--budget", type=int, default=2_000_000)
    approx.add_argument("-o", "--out", help="CSV output path (default stdout)")
    approx.set_defaults(func=cmd_approx)

    verify = sub.add_parser("verify", help="run the bound-verification suites")
    verify.add_argument("--suite", default="all",
                        choices=("all", "spd", "general", "truncated"))
    verify.add_argument("--trials", type=int, default=200,
                        help="seeded trials per spectrum model")
    verify.add_argument("--seed", type=int, default=12345)
    verify.add_argument("--search", choices=SearchKind.ALL,
                        help="must match the suite's proven search kind")
    verify.add_argument("--check", metavar="CSV",
                        help="compare the recomputed CSV against this file")
    verify.add_argument("-o", "--out", help="CSV output path (default stdout)")
    verify.set_defaults(func=cmd_verify)

    fig1 = sub.add_parser("fig1", help="bound-comparison curves for a power spectrum")
    fig1.add_argument("--s", type=float, default=2.0, help="power-decay exponent")
    fig1.add_argument("--r-max", type=int, default=50)
    fig1.add_argument("--out-csv", default="fig1.csv")
    fig1.add_argument("--out-svg", default="fig1.svg")
    fig1.set_defaults(func=cmd_fig1)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConvergenceFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvalidDecayParams, NotSymmetric, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
