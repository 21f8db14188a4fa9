"""Workbench command line.

Subcommands:

* ``generate`` -- write an instance file (cluster / random / adversarial).
* ``run``      -- feed an instance to one algorithm, emit a step transcript.
* ``game``     -- play an adversary game against an algorithm, emit a report.
* ``verify``   -- run a named verification suite; nonzero exit on failure.
* ``ratio``    -- measure competitive ratios over instances, emit CSV/JSON
                  (optionally a rendered figure next to it).
* ``count``    -- the nearest-center per-point budget for a dimension.

Exit codes: 0 success, 1 property failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from . import adversary, online, oracle
from .geometry import BALL, CUBE, hits_any
from .instances import (
    adversarial_instance,
    cluster_instance,
    dump_instance,
    random_instance,
    read_instance,
)
from .reporting import (
    ExperimentReport,
    ReportRow,
    format_ratio,
    render_bookkeeping_figure,
    render_ratio_figure,
)
from .suites import SUITES, SuiteParams, nc_bound, nc_bound_bruteforce, run_suite

USAGE_ERROR = 2
PROPERTY_FAILURE = 1


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _warn_nc_on_cubes(algorithm: str, kind: str) -> None:
    if algorithm == online.NC and kind == CUBE:
        print(
            "warning: nearest-center on hypercubes has no polynomial per-point "
            "guarantee (it may place up to 3^d points per optimum point)",
            file=sys.stderr,
        )


def _cmd_generate(args) -> int:
    if args.mode == "cluster":
        anchor = tuple(int(x) for x in args.anchor.split()) if args.anchor \
            else tuple(0 for _ in range(args.dim))
        inst = cluster_instance(args.kind, args.dim, args.count, anchor,
                                seed=args.seed, denominator=args.denominator)
    elif args.mode == "random":
        inst = random_instance(args.kind, args.dim, args.count, seed=args.seed,
                               window=args.window, denominator=args.denominator)
    else:
        game = args.game or (adversary.BALL_GAME if args.kind == BALL else adversary.HYPERCUBE_GAME)
        inst, report = adversarial_instance(game, args.dim, args.algo,
                                            seed=args.seed, start=args.start, eps=args.eps)
        if args.report:
            with open(args.report, "w") as f:
                f.write(report.to_json() + "\n")
    _emit(dump_instance(inst), args.output)
    return 0


def _cmd_run(args) -> int:
    inst = read_instance(args.instance)
    _warn_nc_on_cubes(args.algo, inst.kind)
    try:
        result = online.run(args.algo, inst.objects, seed=args.seed,
                            filter_variant=args.filter)
    except online.RunError as e:
        print(f"error: {e}", file=sys.stderr)
        return PROPERTY_FAILURE
    if args.out == "json":
        import json

        doc = {
            "steps": [online.outcome_record(i, o) for i, o in enumerate(result.transcript)],
            "final": {"algorithm": args.algo, "hits": [list(p) for p in result.state.hits]},
        }
        _emit(json.dumps(doc, indent=2) + "\n", args.output)
    else:
        _emit(online.transcript_jsonl(result), args.output)
    return 0


def _make_game(args):
    if args.game == adversary.INTERVAL_GAME:
        return adversary.IntervalGame(args.start)
    if args.game == adversary.BALL_GAME:
        return adversary.BallGame(args.dim, eps=args.eps)
    return adversary.HypercubeGame(
        args.dim, eps=args.eps if args.eps is not None else adversary.HYPERCUBE_EPS_DEFAULT)


def _cmd_game(args) -> int:
    game = _make_game(args)
    if args.algo.startswith("script"):
        first = args.algo.partition(":")[2] or "center"
        opponent = adversary.ScriptedBallOpponent(first)
    else:
        _warn_nc_on_cubes(args.algo, game.kind)
        opponent = adversary.AlgorithmOpponent(args.algo, game.kind, game.dim, seed=args.seed)
    report = adversary.play(game, opponent)
    _emit(report.to_json() + "\n", args.output)
    return 0 if report.invariants_ok else PROPERTY_FAILURE


def _cmd_verify(args) -> int:
    if args.list:
        for name, (_, desc) in sorted(SUITES.items()):
            print(f"{name:12s} {desc}")
        return 0
    if not args.suite:
        print("error: no suite named (try --list)", file=sys.stderr)
        return USAGE_ERROR
    params = SuiteParams(
        dim=args.dim,
        trials=args.trials,
        seed=args.seed,
        clusters=args.clusters,
        objects=args.objects,
        eps=args.eps,
    )
    try:
        result = run_suite(args.suite, params)
    except KeyError:
        print(f"error: unknown suite {args.suite!r} (try --list)", file=sys.stderr)
        return USAGE_ERROR
    print(result.summary())
    return 0 if result.passed else PROPERTY_FAILURE


def _cmd_ratio(args) -> int:
    report = ExperimentReport()
    failures = 0
    b_violations = 0
    b_sizes: list[int] = []
    bounds: list[int] = []
    for path in args.instance:
        inst = read_instance(path)
        instance_id = path.rsplit("/", 1)[-1].rsplit(".", 1)[0]
        batch = oracle.Instance(tuple(inst.objects))
        if args.known_opt is not None:
            opt = args.known_opt
        else:
            try:
                opt = len(oracle.opt_hitting_set(batch, cap=args.opt_cap))
            except oracle.CapExceededError:
                print(
                    f"warning: {instance_id}: {len(inst.centers)} objects exceeds "
                    f"--opt-cap {args.opt_cap}; pass --known-opt for cluster instances",
                    file=sys.stderr,
                )
                opt = None
        for algorithm in args.algo:
            _warn_nc_on_cubes(algorithm, inst.kind)
            runs = args.runs if algorithm == online.RIR else 1
            for r in range(runs):
                seed = args.seed + r
                started = time.monotonic()
                try:
                    result = online.run(algorithm, inst.objects, seed=seed)
                except online.RunError as e:
                    print(f"error: {algorithm} on {instance_id}: {e}", file=sys.stderr)
                    return PROPERTY_FAILURE
                elapsed_ms = int((time.monotonic() - started) * 1000) if args.timing else 0
                hits = result.state.hits
                if not all(hits_any(o, hits) for o in inst.objects):
                    print(f"error: {algorithm} left {instance_id} unhit", file=sys.stderr)
                    failures += 1
                ratio = Fraction(len(hits), opt) if opt else None
                report.rows.append(ReportRow(instance_id, algorithm, seed,
                                             len(hits), opt, ratio, elapsed_ms))
                if algorithm == online.RIR:
                    bound = online.rir_draw_count(inst.dim) * (inst.dim + 2) * (opt or 1)
                    b = len(result.state.bookkeeping)
                    b_sizes.append(b)
                    bounds.append(bound)
                    if b > bound:
                        print(
                            f"error: bookkeeping set {b} exceeds bound {bound} "
                            f"on {instance_id} seed {seed}",
                            file=sys.stderr,
                        )
                        failures += 1
                        b_violations += 1
    if b_sizes:
        report.extras["rir_mean_b"] = format_ratio(Fraction(sum(b_sizes), len(b_sizes)))
        report.extras["rir_b_bound"] = str(max(bounds))
        report.extras["rir_b_violations"] = str(b_violations)
    text = report.to_json() if args.out == "json" else report.to_csv()
    _emit(text, args.output)
    if args.fig:
        if b_sizes and args.algo == [online.RIR]:
            render_bookkeeping_figure(b_sizes, max(bounds), args.fig)
        else:
            render_ratio_figure(report, args.fig)
    return PROPERTY_FAILURE if failures else 0


def _cmd_count(args) -> int:
    formula = nc_bound(args.dim)
    print(f"dim={args.dim} count={formula}")
    if args.check:
        brute = nc_bound_bruteforce(args.dim)
        if brute != formula:
            print(f"mismatch: box scan found {brute}", file=sys.stderr)
            return PROPERTY_FAILURE
        print(f"box scan agrees: {brute}")
    return 0


def _fraction(text: str) -> Fraction:
    return Fraction(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridhit",
        description="online hitting of unit balls and hypercubes with integer grid points",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write an instance file")
    g.add_argument("--kind", choices=[BALL, CUBE], required=True)
    g.add_argument("--dim", type=int, required=True)
    g.add_argument("--mode", choices=["cluster", "random", "adversarial"], default="random")
    g.add_argument("--count", type=int, default=20)
    g.add_argument("--anchor", default="", help="cluster anchor, e.g. '0 0 0'")
    g.add_argument("--window", type=int, default=4, help="random-mode box half-side")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--denominator", type=int, default=97)
    g.add_argument("--game", choices=["interval", "ball", "cube"], default=None,
                   help="adversarial mode: which game to replay")
    g.add_argument("--algo", default="bpa", help="adversarial mode: opponent algorithm")
    g.add_argument("--start", type=int, default=0, help="interval game start")
    g.add_argument("--eps", type=_fraction, default=None, help="game eps, e.g. 1/4")
    g.add_argument("--report", default=None, help="adversarial mode: also write the game report here")
    g.add_argument("-o", "--output", default=None)
    g.set_defaults(fn=_cmd_generate)

    r = sub.add_parser("run", help="run one algorithm over an instance file")
    r.add_argument("--instance", required=True)
    r.add_argument("--algo", choices=list(online.ALGORITHMS), required=True)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--filter", choices=[BALL, CUBE], default=None,
                   help="override the best-point filter variant")
    r.add_argument("--out", choices=["jsonl", "json"], default="jsonl")
    r.add_argument("-o", "--output", default=None)
    r.set_defaults(fn=_cmd_run)

    a = sub.add_parser("game", help="play an adversary game against an algorithm")
    a.add_argument("--game", choices=["interval", "ball", "cube"], required=True)
    a.add_argument("--dim", type=int, default=2)
    a.add_argument("--algo", default="bpa",
                   help="bpa | nc | rir | script[:center|minus|plus]")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--eps", type=_fraction, default=None)
    a.add_argument("--start", type=int, default=0)
    a.add_argument("-o", "--output", default=None)
    a.set_defaults(fn=_cmd_game)

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("suite", nargs="?", default=None)
    v.add_argument("--list", action="store_true", help="list available suites")
    v.add_argument("--dim", type=int, default=None)
    v.add_argument("--trials", type=int, default=None)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--clusters", type=int, default=60)
    v.add_argument("--objects", type=int, default=100)
    v.add_argument("--eps", type=_fraction, default=None)
    v.set_defaults(fn=_cmd_verify)

    t = sub.add_parser("ratio", help="measure competitive ratios over instance files")
    t.add_argument("--instance", nargs="+", required=True)
    t.add_argument("--algo", nargs="+", choices=list(online.ALGORITHMS), required=True)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--runs", type=int, default=1,
                   help="independent seeds per instance (randomized algorithms)")
    t.add_argument("--opt-cap", type=int, default=oracle.DEFAULT_CAP)
    t.add_argument("--known-opt", type=int, default=None,
                   help="skip the oracle and use this optimum (cluster instances)")
    t.add_argument("--out", choices=["csv", "json"], default="csv")
    t.add_argument("--timing", action="store_true",
                   help="record wall-clock runtimes (breaks byte-identical reports)")
    t.add_argument("--fig", default=None, help="also render a figure to this path")
    t.add_argument("-o", "--output", default=None)
    t.set_defaults(fn=_cmd_ratio)

    c = sub.add_parser("count", help="nearest-center per-point budget")
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--check", action="store_true", help="cross-check with a box scan")
    c.set_defaults(fn=_cmd_count)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
