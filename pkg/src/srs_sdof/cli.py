"""Command-line front end: ``srs-sdof {formulas,simulate,verify,plot}``.

Every subcommand reads ``--config`` (INI, see :mod:`srs_sdof.config`) and
accepts ``--seed``, ``--trials`` and ``--out`` overrides.
"""

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import formulas
from .channel import DEFAULT_SNR_GRID, ScenarioConfig, csit_rng, sample_realization, split_csit
from .config import (
    ConfigError,
    ExperimentResultRow,
    format_results_csv,
    load_config,
    parse_float_list,
    parse_int_list,
    parse_str_list,
    read_results_csv,
)
from .estimator import SCHEMES, ResampleLimitError, sweep
from .plotting import plot_results
from .precoders import InfeasibleDesignError, design_srs, regime_of, verify

log = logging.getLogger("srs_sdof")

DEFAULTS_HELP = """\
config sections and defaults:
  [scenario]  M=3 N=2 J=4 alpha=0.5 snr_exponents=6,7.5,9,10.5,12 trials=200
              seed=0 n_jobs=1
  [formulas]  preset=grid (grid|fig2|fig3) M=1..8 N=2 alpha=0,0.5,1
              K=1..6 (fig3; alpha defaults to 0,0.25,0.5,0.75,1 there)
  [simulate]  M=<scenario M> alpha=<scenario alpha> schemes=SRS,ZF
              tolerance=0.15 leak_tolerance=0.1 strict=false
  [verify]    cells=2x2x4,3x2x4,4x2x4,6x2x4 draws=1000 power=1e6
              alpha=<scenario alpha> tolerance=1e-8 corrupt=false
  [plot]      input=results.csv title=
"""


def _section(cp, name):
    return cp[name] if cp.has_section(name) else {}


def _get(sec, key, default, cast=str):
    raw = sec.get(key, None)
    if raw is None or str(raw).strip() == "":
        return default
    try:
        return cast(raw)
    except (ValueError, ConfigError) as exc:
        raise ConfigError(f"bad value for {key}: {raw!r}") from exc


def _bool(text):
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(text)


def scenario_from(cp, args):
    sec = _section(cp, "scenario")
    exps = _get(sec, "snr_exponents", None, parse_float_list)
    grid = DEFAULT_SNR_GRID if exps is None else tuple(10.0**e for e in exps)
    trials = args.trials if args.trials is not None else _get(sec, "trials", 200, int)
    seed = args.seed if args.seed is not None else _get(sec, "seed", 0, int)
    try:
        return ScenarioConfig(
            M=_get(sec, "M", 3, int),
            N=_get(sec, "N", 2, int),
            J=_get(sec, "J", 4, int),
            alpha=_get(sec, "alpha", 0.5, float),
            snr_grid=grid,
            trials=trials,
            seed=seed,
        )
    except ValueError as exc:
        raise ConfigError(f"invalid scenario: {exc}") from exc


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)
        log.info("wrote %s", out)


def _seed(cp, args):
    if args.seed is not None:
        return args.seed
    return _get(_section(cp, "scenario"), "seed", 0, int)


def formula_rows(preset, M_list, N, alphas, K_list, seed=0):
    """Closed-form rows for the grid, fig2 or fig3 presets.

    ``grid`` adds the upper-bound rows (scheme ``UB``) next to S-RS and ZF;
    ``fig3`` evaluates the K-user bound at ``M = K * N``.
    """
    rows = []
    if preset == "fig3":
        for a in alphas:
            for K in K_list:
                rows.append(ExperimentResultRow(
                    "SRS", K * N, N, None, K, a, float(formulas.corollary2(K, N, a, K * N)),
                    seed=seed,
                ))
        return rows
    schemes = [("SRS", formulas.theorem1), ("ZF", formulas.zf_bound)]
    if preset == "grid":
        schemes.append(("UB", formulas.upper_bound_sum))
    for scheme, fn in schemes:
        for a in alphas:
            for M in M_list:
                rows.append(ExperimentResultRow(scheme, M, N, None, None, a, float(fn(M, N, a)), seed=seed))
    return rows


def cmd_formulas(args, cp):
    sec = _section(cp, "formulas")
    preset = _get(sec, "preset", "grid")
    N = _get(sec, "N", 2, int)
    if preset == "fig3":
        alphas = _get(sec, "alpha", [0.0, 0.25, 0.5, 0.75, 1.0], parse_float_list)
        K_list = _get(sec, "K", list(range(1, 7)), parse_int_list)
        M_list = []
    elif preset in ("grid", "fig2"):
        alphas = _get(sec, "alpha", [0.0, 0.5, 1.0], parse_float_list)
        default_M = list(range(1, 9)) if preset == "grid" else [N // 2 or 1, N, 3 * N // 2, 2 * N, 5 * N // 2, 3 * N]
        M_list = _get(sec, "M", default_M, parse_int_list)
        K_list = []
    else:
        raise ConfigError(f"unknown formulas preset {preset!r} (grid, fig2, fig3)")
    try:
        rows = formula_rows(preset, M_list, N, alphas, K_list, _seed(cp, args))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    _emit(format_results_csv(rows), args.out)
    return 0


def cmd_simulate(args, cp):
    base = scenario_from(cp, args)
    sec = _section(cp, "simulate")
    Ms = _get(sec, "M", [base.M], parse_int_list)
    alphas = _get(sec, "alpha", [base.alpha], parse_float_list)
    schemes = _get(sec, "schemes", list(SCHEMES), parse_str_list)
    tol = _get(sec, "tolerance", 0.15, float)
    leak_tol = _get(sec, "leak_tolerance", 0.1, float)
    strict = _get(sec, "strict", False, _bool)
    n_jobs = _get(_section(cp, "scenario"), "n_jobs", 1, int)
    if bad := [s for s in schemes if s not in SCHEMES]:
        raise ConfigError(f"unknown schemes {bad}; choose from {SCHEMES}")
    for M in Ms:
        try:
            ScenarioConfig(M, base.N, base.J, base.alpha, base.snr_grid, base.trials, base.seed)
        except ValueError as exc:
            raise ConfigError(f"invalid scenario: {exc}") from exc
    try:
        results = sweep(base, {"M": Ms, "alpha": alphas, "scheme": schemes}, n_jobs=n_jobs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    rows, failures = [], 0
    for (M, N, a, scheme), est in results:
        fn = formulas.theorem1 if scheme == "SRS" else formulas.zf_bound
        target = float(fn(M, N, a))
        ok = abs(est.sum_sdof_slope - target) <= tol and est.leakage_slope <= leak_tol
        failures += not ok
        print(
            f"{'PASS' if ok else 'FAIL'} {scheme:3s} M={M} N={N} alpha={a:g}: "
            f"slope={est.sum_sdof_slope:.3f} formula={target:.3f} "
            f"leak={est.leakage_slope:.3f} stderr={est.stderr:.3f}",
            file=sys.stderr,
        )
        rows.append(ExperimentResultRow(
            scheme, M, N, base.J, None, a, target, est.sum_sdof_slope,
            est.leakage_slope, est.stderr, base.trials, base.seed,
        ))
    out = args.out if args.out is not None else _get(sec, "out", None)
    _emit(format_results_csv(rows), out)
    print(f"{len(rows) - failures}/{len(rows)} cells within tolerance {tol}", file=sys.stderr)
    return 1 if strict and failures else 0


def _parse_cells(text):
    cells = []
    for tok in parse_str_list(text):
        try:
            M, N, J = (int(v) for v in tok.lower().split("x"))
        except ValueError as exc:
            raise ConfigError(f"bad cell {tok!r}, expected MxNxJ") from exc
        cells.append((M, N, J))
    return cells


def cmd_verify(args, cp):
    sec = _section(cp, "verify")
    cells = _get(sec, "cells", [(2, 2, 4), (3, 2, 4), (4, 2, 4), (6, 2, 4)], _parse_cells)
    draws = args.trials if args.trials is not None else _get(sec, "draws", 1000, int)
    power = _get(sec, "power", 1e6, float)
    alpha = _get(sec, "alpha", _get(_section(cp, "scenario"), "alpha", 0.5, float), float)
    tol = _get(sec, "tolerance", 1e-8, float)
    corrupt = args.corrupt or _get(sec, "corrupt", False, _bool)
    seed = _seed(cp, args)
    configs = []
    for M, N, J in cells:
        try:
            configs.append(ScenarioConfig(M, N, J, alpha, (power,), draws, seed))
        except ValueError as exc:
            raise ConfigError(f"invalid verify cell {M}x{N}x{J}: {exc}") from exc
    lines, ok = [], True
    for cfg in configs:
        worst, worst_name, degenerate = 0.0, None, 0
        for t in range(cfg.trials):
            real = sample_realization(cfg, t)
            csit = split_csit(real, cfg.alpha, power, csit_rng(cfg, t))
            try:
                ps = design_srs(csit, real)
            except InfeasibleDesignError:
                degenerate += 1
                continue
            if corrupt:
                rng = np.random.default_rng([seed, t])
                ps = ps.replace(Wc1=ps.Wc1 + 1e-2 * rng.standard_normal(ps.Wc1.shape))
            rep = verify(ps, csit, real)
            if rep.max_residual > worst or worst_name is None:
                worst, worst_name = rep.max_residual, rep.worst()
        passed = worst <= tol
        ok &= passed
        lines.append(
            f"{'PASS' if passed else 'FAIL'} M={cfg.M} N={cfg.N} J={cfg.J} "
            f"({regime_of(cfg.M, cfg.N)}): max_residual={worst:.3e} "
            f"worst_condition='{worst_name}' draws={cfg.trials} degenerate={degenerate}"
        )
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if ok else 1


def cmd_plot(args, cp):
    sec = _section(cp, "plot")
    src = args.input if args.input is not None else _get(sec, "input", None)
    out = args.out if args.out is not None else _get(sec, "out", None)
    if src is None or out is None:
        raise ConfigError("plot needs an input CSV and an --out SVG path")
    if not Path(src).exists():
        raise ConfigError(f"results CSV {src} not found")
    rows = read_results_csv(src, required=("scheme", "M", "N", "alpha", "formula"))
    if not rows:
        raise ConfigError(f"{src} has no result rows")
    n = plot_results(rows, out, title=_get(sec, "title", None))
    log.info("wrote %s with %d curves", out, n)
    return 0


COMMANDS = {
    "formulas": (cmd_formulas, "closed-form SDoF tables (grid, fig2, fig3 presets)"),
    "simulate": (cmd_simulate, "Monte Carlo slope estimation vs. formulas"),
    "verify": (cmd_verify, "precoder nulling/alignment residual suite"),
    "plot": (cmd_plot, "SVG line chart from a results CSV"),
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="srs-sdof",
        description="Secure rate-splitting SDoF experiments.",
        epilog=DEFAULTS_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, epilog=DEFAULTS_HELP,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.add_argument("--config", help="INI config file")
        p.add_argument("--seed", type=int, help="override [scenario] seed")
        p.add_argument("--trials", type=int, help="override trials (draws for verify)")
        p.add_argument("--out", help="output path (stdout when omitted)")
        if name == "verify":
            p.add_argument("--corrupt", action="store_true",
                           help="perturb Wc1 by 1e-2 to check that verification fails")
        if name == "plot":
            p.add_argument("--input", help="results CSV (overrides [plot] input)")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(message)s",
    )
    fn = COMMANDS[args.command][0]
    try:
        cp = load_config(args.config)
        return fn(args, cp)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResampleLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
