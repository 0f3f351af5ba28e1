"""Command-line entry point.

Exit codes: 0 all checks pass, 1 some check fails, 2 usage, config or cap error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import census as cen
from . import experiments as exps
from . import games
from .models import CapExceeded, PointedModel, parse_kripke
from .plotting import PlotError, PlotSpec, emit_plot
from .syntax import GMLU, MLU, FormulaError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    # SUPPRESS lets the flags appear before or after the subcommand
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed")
    p.add_argument("--out", default=argparse.SUPPRESS, help="output directory")
    p.add_argument("--format", choices=("csv", "json"), default=argparse.SUPPRESS, help="table format")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="desc-entropy", parents=[common],
                                     description="Description complexity, formula-size games and entropy of finite model classes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classes", parents=[common], help="list the classes of a modal partition")
    p.add_argument("--dialect", choices=(MLU, GMLU), default=MLU)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("entropy", parents=[common], help="Shannon/Boltzmann entropy table")
    p.add_argument("--dialect", choices=(MLU, GMLU, "both"), default="both")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--tolerance", type=float, default=1e-9, help="allowed |identity residual|")

    p = sub.add_parser("complexity", parents=[common], help="exact minimal defining formulas per class")
    p.add_argument("--dialect", choices=(MLU, GMLU), default=GMLU)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)

    game = sub.add_parser("game", help="formula-size games").add_subparsers(dest="game_command", required=True)
    p = game.add_parser("solve", parents=[common], help="decide who wins a game position")
    p.add_argument("--game", choices=("fs", "fsc"), default="fs", help="fs: ungraded, fsc: graded")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--r", type=int, required=True, help="resource")
    p.add_argument("--A", action="append", default=[], metavar="MODEL@POINT",
                   help='pointed model such as "n=2; w1:p1; w2:!p1@1" (repeatable)')
    p.add_argument("--B", action="append", default=[], metavar="MODEL@POINT")
    p.add_argument("--instance", choices=("all-types", "cover"), help="use a built-in starting position")
    p.add_argument("--n", type=int, help="domain size for the cover instance")
    p.add_argument("--counts", help="type-count vector for the cover instance, e.g. 2,1")
    p.add_argument("--trace", action="store_true", help="print a winning line for S")
    p.add_argument("--least", action="store_true", help="also report the least winning resource")

    p = game.add_parser("verify", parents=[common], help="machine-check a D strategy")
    p.add_argument("--strategy", choices=games.STRATEGIES, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--r", type=int, help="resource (default: one below the strategy's bound)")
    p.add_argument("--n", type=int)
    p.add_argument("--counts")

    p = sub.add_parser("fo-census", parents=[common], help="labeled, isomorphism and rigid structure counts")
    p.add_argument("--arities", default="2", help="comma-separated relation arities")
    p.add_argument("--n-max", type=int, default=4)

    p = sub.add_parser("bounds", parents=[common], help="entropy upper bound vs complexity lower bound")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--c", type=float, default=0.1)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=10 ** 6)

    exp = sub.add_parser("experiment", help="named experiment suites").add_subparsers(dest="exp_command", required=True)
    p = exp.add_parser("run", parents=[common], help="run an experiment from a JSON config")
    p.add_argument("--config", required=True)
    return parser


# ---------------------------------------------------------------- helpers


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").strip("[]()").split(",") if x)
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _emit(args, name: str, header, rows) -> str | None:
    """Print the table and, with --out, also write it to <out>/<name>.csv|json."""
    as_json = args.format == "json"
    if as_json:
        print(json.dumps([dict(zip(header, map(exps.fmt, r))) for r in rows], indent=1))
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows([exps.fmt(v) for v in r] for r in rows)
        sys.stdout.write(buf.getvalue())
    if args.out:
        return exps.write_table(os.path.join(args.out, f"{name}.csv"), header, rows, as_json)
    return None


def _pointed(text: str, k: int) -> PointedModel:
    model_text, sep, point = text.rpartition("@")
    if not sep:
        raise UsageError(f"pointed model {text!r} needs @<point>")
    try:
        model = parse_kripke(model_text, k)
        w = int(point)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not 1 <= w <= model.n:
        raise UsageError(f"point {w} outside 1..{model.n}")
    return PointedModel(model, w)


# ---------------------------------------------------------------- commands


def cmd_classes(args) -> int:
    _emit(args, "classes", exps.CLASSES_HEADER, exps.class_rows(args.dialect, args.k, args.n))
    return EXIT_OK


def cmd_entropy(args) -> int:
    dialects = (MLU, GMLU) if args.dialect == "both" else (args.dialect,)
    rows = [exps.entropy_row(d, args.k, n) for d in dialects for n in range(1, args.n_max + 1)]
    _emit(args, "entropy", exps.ENTROPY_HEADER, rows)
    bad = [r for r in rows if abs(r[6]) >= args.tolerance]
    if bad:
        print(f"FAIL: {len(bad)} rows exceed residual tolerance {args.tolerance}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_complexity(args) -> int:
    budget = args.budget or (24 if args.dialect == MLU else 14 if args.k == 1 else 10)
    rows = exps.complexity_rows(args.dialect, args.k, args.n, budget)
    _emit(args, "complexity", exps.COMPLEXITY_HEADER, rows)
    if args.dialect == GMLU:
        bad = [r for r in rows if r[7] is not None and not r[4] <= r[7] <= min(r[5], r[6])]
        if bad:
            print(f"FAIL: {len(bad)} classes outside the size bounds", file=sys.stderr)
            return EXIT_FAIL
    return EXIT_OK


def _game_position(args):
    if args.instance == "all-types":
        inst = games.build_hardness_instance(args.k)
        return games.GamePosition(args.r, inst.A0, inst.B0), inst.n
    if args.instance == "cover":
        if args.n is None or args.counts is None:
            raise UsageError("--instance cover needs --n and --counts")
        inst = games.build_cover_instance(args.k, args.n, _ints(args.counts))
        return games.GamePosition(args.r, inst.A0, inst.B0), args.n
    if not args.A or not args.B:
        raise UsageError("give --instance or at least one --A and one --B pointed model")
    A = [_pointed(t, args.k) for t in args.A]
    B = [_pointed(t, args.k) for t in args.B]
    sizes = {pm.model.n for pm in A + B}
    if args.game == "fsc" and len(sizes) != 1:
        raise UsageError("graded game needs all models over the same domain size")
    return games.GamePosition.make(args.r, A, B), max(sizes)


def cmd_game_solve(args) -> int:
    pos, n = _game_position(args)
    graded = args.game == "fsc"
    if graded:
        winner = games.solve_fsc(pos, args.k, n)
    else:
        winner = games.solve_fs(pos, args.k)
    print(f"winner: {winner} (r={args.r}, game={args.game})")
    if args.least:
        least = games.least_winning_resource(pos, args.k, n if graded else None, graded=graded)
        print(f"least winning resource for S: {least if least is not None else f'> {games.MAX_RESOURCE}'}")
    if args.trace:
        if winner == games.S_WINS:
            print("\n".join(games.game_trace(pos, args.k, n if graded else None, graded)))
        else:
            print("no S win to trace")
    return EXIT_OK


def cmd_game_verify(args) -> int:
    if args.strategy == "cover":
        if args.n is None or args.counts is None:
            raise UsageError("the cover strategy needs --n and --counts")
        counts = _ints(args.counts)
        instance = {"k": args.k, "n": args.n, "counts": counts}
        r = args.r if args.r is not None else games.initial_cover_value(args.k, args.n, counts) - 1
    else:
        instance = {"k": args.k}
        r = args.r if args.r is not None else games.initial_hardness(args.k).total - 1
    cert = games.verify_d_strategy(instance, r, args.strategy)
    print(cert.summary())
    for path, reason in cert.violations[:20]:
        print(f"  violation: {' / '.join(path) or '<root>'} -> {reason}")
    if args.out:
        rows = [[cert.strategy, args.k, args.n, exps.fmt(instance.get("counts")), r, cert.valid,
                 cert.positions_checked, len(cert.violations)]]
        exps.write_table(os.path.join(args.out, "certificate.csv"),
                         ["strategy", "k", "n", "class_id", "r", "valid", "positions_checked", "violations"],
                         rows, args.format == "json")
    return EXIT_OK if cert.valid else EXIT_FAIL


def cmd_fo_census(args) -> int:
    rows = cen.census(_ints(args.arities), args.n_max)
    table = [[r.n, r.labeled, r.iso, r.rigid_labeled, r.rigid_fraction, r.fagin_ratio] for r in rows]
    _emit(args, "census", exps.CENSUS_HEADER, table)
    return EXIT_OK


def cmd_bounds(args) -> int:
    grid = cen.log_grid(args.n_min, args.n_max, 8)
    crossover = cen.find_crossover(args.m, args.c, args.n_max)
    if crossover is not None:
        grid = sorted(set(grid) | {crossover})
    rows, _ = cen.bounds_compare(args.m, args.c, grid)
    path = _emit(args, "bounds", exps.BOUNDS_HEADER, [[r.n, r.entropy_upper, r.complexity_lower] for r in rows])
    print(f"crossover: {crossover}", file=sys.stderr)
    if path and args.format != "json":
        emit_plot(path, PlotSpec("n", ["hb_upper_bits", "c_lower_bits"], title=f"bounds, m={args.m}, c={args.c}",
                                 logx=True, logy=True, marker_x=crossover, marker_label="crossover"),
                  os.path.join(args.out, "bounds.svg"))
    return EXIT_OK if crossover is not None else EXIT_FAIL


def cmd_experiment_run(args) -> int:
    cfg = exps.load_config(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.out:
        cfg.out = args.out
    results = exps.run(cfg, as_json=args.format == "json")
    for line in exps.summary_lines(results):
        print(line)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


COMMANDS = {
    "classes": cmd_classes,
    "entropy": cmd_entropy,
    "complexity": cmd_complexity,
    ("game", "solve"): cmd_game_solve,
    ("game", "verify"): cmd_game_verify,
    "fo-census": cmd_fo_census,
    "bounds": cmd_bounds,
    ("experiment", "run"): cmd_experiment_run,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    for name, default in (("seed", None), ("out", None), ("format", "csv")):
        if not hasattr(args, name):
            setattr(args, name, default)
    key = args.command
    if key == "game":
        key = ("game", args.game_command)
    elif key == "experiment":
        key = ("experiment", args.exp_command)
    try:
        return COMMANDS[key](args)
    except (UsageError, exps.ConfigError, CapExceeded, FormulaError, PlotError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
