"""Command-line front end: Monte Carlo sweeps, analytic curves, self-checks.

Exit codes: 0 success, 1 runtime/I-O failure or failed self-check, 2 flag
errors (argparse prints usage).  Output is deterministic for fixed flags
and seed; the QSN_THREADS environment variable only changes how many
worker threads compute the blocks, never the bytes written.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import montecarlo as mc
from . import selfcheck
from .discrimination import analytic_mean

CSV_HEADER = "case,strategy,N,trials,M,seed,backend,mean_perr,std_error,analytic_perr"
ANALYTIC_CSV_HEADER = "case,strategy,N,M,analytic_perr,approx"


def _fmt(x: float) -> str:
    """17 significant digits: lossless for doubles, stable across runs."""
    return f"{x:.17g}"


def _parse_n_values(text: str) -> tuple[int, ...]:
    """Comma list ("2,4,8") or inclusive range ("2:10:2", end kept when hit)."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError("range syntax is start:end:step")
        start, end, step = (int(p) for p in parts)
        if step < 1:
            raise ValueError("range step must be >= 1")
        if end < start:
            raise ValueError("range end must be >= start")
        return tuple(range(start, end + 1, step))
    values = tuple(int(tok) for tok in text.split(",") if tok.strip())
    if not values:
        raise ValueError("empty N list")
    return values


def _seed_type(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsnsim",
        description="Error-probability sweeps for single-photon phase-plate identification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run a Monte Carlo sweep and emit CSV/JSON")
    sweep.add_argument("--case", required=True, choices=["a", "b"],
                       help="a: same vs uniformly random plates; b: narrow vs uniformly random")
    sweep.add_argument("--strategy", required=True, choices=["local", "nonlocal", "both"])
    sweep.add_argument("--n", required=True, metavar="LIST",
                       help="mode counts: comma list '2,4,8' or inclusive range '2:10:2'")
    sweep.add_argument("--trials", required=True, type=int, help="trials per (strategy, N) cell")
    sweep.add_argument("--m", type=int, default=None,
                       help="narrow-interval divisor for case b: phases in [-pi/M, pi/M]")
    sweep.add_argument("--seed", type=_seed_type, default=0, help="64-bit stream seed")
    sweep.add_argument("--backend", default=mc.BACKEND_CLOSED_FORM, choices=list(mc.BACKENDS),
                       help="per-trial evaluation path (sim-* are slow audit modes)")
    sweep.add_argument("--out", default="-", metavar="PATH", help="output file, '-' for stdout")
    sweep.add_argument("--format", default="csv", choices=["csv", "json"])

    analytic = sub.add_parser("analytic", help="print the analytic mean curve (no sampling)")
    analytic.add_argument("--case", required=True, choices=["a", "b"])
    analytic.add_argument("--strategy", required=True, choices=["local", "nonlocal", "both"])
    analytic.add_argument("--n", required=True, metavar="LIST")
    analytic.add_argument("--m", type=int, default=None)

    verify = sub.add_parser("verify", help="run the oracle-equivalence self checks")
    verify.add_argument("--n-max", type=int, default=selfcheck.DEFAULT_N_MAX)
    verify.add_argument("--draws", type=int, default=selfcheck.DEFAULT_DRAWS)
    verify.add_argument("--seed", type=_seed_type, default=selfcheck.DEFAULT_SEED)
    verify.add_argument("--replay", metavar="FILE", default=None,
                        help="re-run a dumped failure case instead of the full suite")

    return parser


def _sweep_rows(args, aggregates) -> list[str]:
    m_field = "" if args.m is None else str(args.m)
    rows = []
    for agg in aggregates:
        rows.append(
            f"{agg.case},{agg.strategy},{agg.n},{agg.trials},{m_field},{args.seed},"
            f"{args.backend},{_fmt(agg.mean_perr)},{_fmt(agg.std_error)},{_fmt(agg.analytic_perr)}"
        )
    return rows


def _sweep_json(args, plan, aggregates) -> str:
    data = {
        "metadata": {
            "case": plan.case,
            "strategy": plan.strategy,
            "n_values": list(plan.n_values),
            "trials": plan.trials,
            "m": plan.m,
            "seed": plan.seed,
            "t": plan.t,
            "backend": args.backend,
            "rng": mc.RNG_ALGORITHM,
            "block_trials": mc.BLOCK_TRIALS,
        },
        "rows": [
            {
                "case": agg.case,
                "strategy": agg.strategy,
                "n": agg.n,
                "trials": agg.trials,
                "m": plan.m,
                "seed": plan.seed,
                "backend": args.backend,
                "mean_perr": agg.mean_perr,
                "std_error": agg.std_error,
                "analytic_perr": agg.analytic_perr,
                "analytic_is_approximate": agg.analytic_is_approximate,
            }
            for agg in aggregates
        ],
    }
    return json.dumps(data, indent=2) + "\n"


def _write_output(text: str, path: str) -> int:
    if path == "-":
        sys.stdout.write(text)
        return 0
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"qsnsim: cannot write {path}: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_sweep(args, parser) -> int:
    try:
        n_values = _parse_n_values(args.n)
    except ValueError as exc:
        parser.error(f"--n: {exc}")
    if args.case == "b" and args.m is None:
        parser.error("--m is required for case b")
    if args.backend == mc.BACKEND_SIM_DENSE and max(n_values) > 20:
        parser.error("--backend sim-dense is capped at N <= 20")
    try:
        plan = mc.SamplingPlan(
            case=args.case,
            strategy=args.strategy,
            n_values=n_values,
            trials=args.trials,
            seed=args.seed,
            m=args.m,
        )
    except ValueError as exc:
        parser.error(str(exc))
    if (
        args.backend != mc.BACKEND_CLOSED_FORM
        and "nonlocal" in plan.strategies
        and any(n & (n - 1) != 0 for n in plan.n_values)
    ):
        print(
            "qsnsim: note: beam-splitter cascades need a power-of-two N; "
            "other mode counts use the direct W-state construction",
            file=sys.stderr,
        )
    aggregates = mc.run_plan(plan, backend=args.backend)
    if args.format == "csv":
        text = "\n".join([CSV_HEADER, *_sweep_rows(args, aggregates)]) + "\n"
    else:
        text = _sweep_json(args, plan, aggregates)
    return _write_output(text, args.out)


def cmd_analytic(args, parser) -> int:
    try:
        n_values = _parse_n_values(args.n)
    except ValueError as exc:
        parser.error(f"--n: {exc}")
    if args.case == "b" and args.m is None:
        parser.error("--m is required for case b")
    strategies = ("local", "nonlocal") if args.strategy == "both" else (args.strategy,)
    lines = [ANALYTIC_CSV_HEADER]
    m_field = "" if args.m is None else str(args.m)
    for strategy in strategies:
        for n in n_values:
            try:
                mean = analytic_mean(args.case, strategy, n, args.m)
            except ValueError as exc:
                parser.error(str(exc))
            approx = "leading-order" if mean.approximate else "exact"
            lines.append(f"{args.case},{strategy},{n},{m_field},{_fmt(mean.value)},{approx}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def _print_check_table(results) -> None:
    print(f"{'check':<28} {'status':<6} {'worst':>12} {'tolerance':>10} {'cases':>6}")
    for r in results:
        line = (
            f"{r.name:<28} {'PASS' if r.passed else 'FAIL':<6} "
            f"{r.worst:>12.3e} {r.tolerance:>10.0e} {r.cases:>6}"
        )
        if r.note:
            line += f"  [{r.note}]"
        print(line)


def cmd_verify(args, parser) -> int:
    if args.replay is not None:
        try:
            with open(args.replay, "r", encoding="utf-8") as fh:
                payload = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"qsnsim: cannot read replay file: {exc}", file=sys.stderr)
            return 1
        try:
            result = selfcheck.replay(payload)
        except ValueError as exc:
            print(f"qsnsim: bad replay payload: {exc}", file=sys.stderr)
            return 1
        _print_check_table([result])
        if not result.passed and result.failure is not None:
            print(json.dumps(result.failure))
        return 0 if result.passed else 1
    if args.n_max < 2 or args.draws < 1:
        parser.error("--n-max must be >= 2 and --draws >= 1")
    results = selfcheck.run_checks(n_max=args.n_max, draws=args.draws, seed=args.seed)
    _print_check_table(results)
    failures = [r for r in results if not r.passed]
    if failures:
        first = failures[0]
        print(f"first failing check: {first.name}")
        if first.failure is not None:
            print(json.dumps(first.failure))
        return 1
    print(f"all {len(results)} checks passed")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "sweep":
        return cmd_sweep(args, parser)
    if args.command == "analytic":
        return cmd_analytic(args, parser)
    return cmd_verify(args, parser)


if __name__ == "__main__":
    sys.exit(main())
