"""Command line interface.

Commands::

    llolqs run       --config FILE [--out DIR] [--seed N]
    llolqs verify    [--suite NAME] [--seed N] [--instances N]
    llolqs sweep     --config FILE [--out DIR] [--workers N]
    llolqs hindsight REPLAY_FILE

Exit codes: 0 success; 1 failed verification checks; 2 invalid configuration
or unreadable input; 3 solver failure (partial outputs are still written).
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .config import ConfigError, RunConfig, load_config
from .ellipsoid import SolverError, hindsight_optimum
from .game import GameAborted, RealityStrategy, play_game, run_sweep_cell
from .io import (
    ReplayFormatError, fmt, read_observables, write_density, write_summary,
    write_sweep_csv, write_trace_csv,
)
from .verify import SUITES, run_suites

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_SOLVER = 3


def _strategy_from_config(cfg: RunConfig) -> RealityStrategy:
    replay = None
    if cfg.reality == "replay-file":
        replay = tuple(read_observables(cfg.replay_path))
    return RealityStrategy(kind=cfg.reality, seed=cfg.seed,
                           diag_lo=cfg.diag_lo, diag_hi=cfg.diag_hi, replay=replay)


def _write_run_outputs(cfg: RunConfig, trace, out_dir: Path, status: str) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    write_trace_csv(out_dir / "trace.csv", trace, record_timings=cfg.record_timings)
    if trace.rounds:
        write_density(out_dir / "rho_final.txt", trace.rounds[-1].rho)
    write_summary(out_dir / "summary.json", trace, cfg.echo(),
                  solver_value_tol=cfg.solver_value_tol, status=status)
    if cfg.plots and trace.rounds:
        from .plots import render_trace_figure

        render_trace_figure(trace, out_dir / "figures" / "trace.png")


def cmd_run(args: argparse.Namespace) -> int:
    try:
        cfg = load_config(args.config)
        if args.out:
            cfg.out_dir = args.out
        if args.seed is not None:
            cfg.seed = args.seed
        strategy = _strategy_from_config(cfg)
    except (ConfigError, ReplayFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    out_dir = Path(cfg.out_dir)
    print(f"run: d={cfg.d} T={cfg.T} lambda={cfg.lam:g} mu={cfg.mu:g} "
          f"learner={cfg.learner} reality={cfg.reality} seed={cfg.seed}")
    try:
        trace = play_game(cfg.d, cfg.T, strategy, cfg.learner, cfg.lam, cfg.mu,
                          cfg.solver_config())
    except GameAborted as exc:
        _write_run_outputs(cfg, exc.partial, out_dir, status="solver-failure")
        print(f"error: {exc}", file=sys.stderr)
        print(f"partial trace written to {out_dir}", file=sys.stderr)
        return EXIT_SOLVER
    _write_run_outputs(cfg, trace, out_dir, status="ok")
    print(f"total loss {trace.total_loss:.6f}  hindsight {trace.hindsight_value:.6f}  "
          f"regret {trace.regret:.6f}")
    print(f"outputs in {out_dir}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    results = run_suites(args.suite, base_seed=args.seed, instances=args.instances)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed "
          f"(suite={args.suite}, seed={args.seed})")
    return EXIT_OK if not failed else EXIT_CHECK_FAILED


def _sweep_cell_args(cfg: RunConfig):
    for d in cfg.d_list:
        for T in cfg.T_list:
            for kind in cfg.realities:
                for seed in cfg.seeds:
                    for learner in cfg.learners:
                        yield (d, T, seed, learner, kind, cfg.lam, cfg.mu,
                               cfg.solver_config(), cfg.diag_lo, cfg.diag_hi)


def cmd_sweep(args: argparse.Namespace) -> int:
    try:
        cfg = load_config(args.config)
        if args.out:
            cfg.out_dir = args.out
        if args.workers is not None:
            cfg.workers = args.workers
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    cells_args = list(_sweep_cell_args(cfg))
    workers = cfg.workers or os.cpu_count() or 1
    print(f"sweep: {len(cells_args)} cells, {workers} workers")
    try:
        if workers > 1 and len(cells_args) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                cells = list(pool.map(_run_cell_star, cells_args))
        else:
            cells = [_run_cell_star(a) for a in cells_args]
    except (SolverError, GameAborted) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    out_dir = Path(cfg.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_sweep_csv(out_dir / "sweep.csv", cells)
    if cfg.plots:
        from .plots import render_sweep_figure

        render_sweep_figure(cells, out_dir / "figures" / "regret_vs_T.png")
    ratios = [c.ratio for c in cells]
    print(f"max fitted constant regret/(d^2 log(d+T)) = {max(ratios):.6f}")
    print(f"outputs in {out_dir}")
    return EXIT_OK


def _run_cell_star(a) -> "object":
    return run_sweep_cell(*a)


def cmd_hindsight(args: argparse.Namespace) -> int:
    try:
        observables = read_observables(args.replay)
    except (ReplayFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    d = observables[0].shape[0]
    try:
        rho, value = hindsight_optimum(observables, d)
    except SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    print(f"records: {len(observables)}  d: {d}")
    print(f"hindsight value: {fmt(value)}")
    print("optimal density matrix (re:im):")
    for i in range(d):
        print("  " + " ".join(f"{fmt(rho[i, j].real)}:{fmt(rho[i, j].imag)}" for j in range(d)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="llolqs",
        description="Online learning of quantum states under log loss: "
                    "volumetric-barrier FTRL, ellipsoid solver, and verification suites.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="play a seeded game and write trace/summary/figures")
    p_run.add_argument("--config", required=True, help="path to a key = value config file")
    p_run.add_argument("--out", help="output directory (overrides config)")
    p_run.add_argument("--seed", type=int, help="seed (overrides config)")
    p_run.set_defaults(fn=cmd_run)

    p_ver = sub.add_parser("verify", help="run the numerical property suites")
    p_ver.add_argument("--suite", default="all", choices=SUITES)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--instances", type=int, default=None,
                       help="instances per configuration (default: suite-specific)")
    p_ver.set_defaults(fn=cmd_verify)

    p_sw = sub.add_parser("sweep", help="grid of games; writes sweep.csv and figures")
    p_sw.add_argument("--config", required=True)
    p_sw.add_argument("--out", help="output directory (overrides config)")
    p_sw.add_argument("--workers", type=int, help="worker processes (overrides config)")
    p_sw.set_defaults(fn=cmd_sweep)

    p_h = sub.add_parser("hindsight", help="best fixed state for a replay file")
    p_h.add_argument("replay", help="path to an observable replay file")
    p_h.set_defaults(fn=cmd_hindsight)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
