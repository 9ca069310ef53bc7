"""Command-line interface: ``smallw {eval,grid,sample,bench,selftest}``.

Exit codes: 0 success, 2 usage error, 3 point outside the certified
domain, 4 internal or oracle failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from typing import Sequence

from .analysis import (
    DEFAULT_ORACLE_DIGITS,
    GridSpec,
    error_grid,
    random_accuracy,
    relative_errors,
)
from .dispatch import evaluate
from .errors import DivisionHazard, InvalidArgument, OutOfDomain, OutOfRange, SmallWError
from .values import ComplexPoint, MethodKind

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_FAILURE = 4

CLI_METHODS = ["auto", "basic6", "main7", "eq8", "a4", "a5", "b2", "cfrac"]
GRID_HEADER = ["x", "y", "k", "l", "k_ref", "l_ref", "delta_re", "delta_im", "flag"]
BENCH_SEED = 2014
BENCH_POINTS = 20000


def fmt17(v: float) -> str:
    """17 significant digits, trailing zeros kept: ``1.0000000000000000``."""
    return format(v, "#.17g")


def _num(v: float) -> str:
    return repr(float(v))


def _common(p: argparse.ArgumentParser, method_default: str) -> None:
    p.add_argument("--method", choices=CLI_METHODS, default=method_default)
    p.add_argument("--digits", type=int, default=None, help="oracle digits (default 30)")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--format", choices=["csv", "json"], default=None)
    p.add_argument("--workers", type=int, default=1, help="oracle worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smallw", description="Faddeeva function w(z) for small Im z."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate w at one point")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    _common(p, "auto")

    p = sub.add_parser("grid", help="error grid against the oracle")
    p.add_argument("--x-min", type=float, required=True)
    p.add_argument("--x-max", type=float, required=True)
    p.add_argument("--nx", type=int, required=True)
    p.add_argument("--y-min", type=float, required=True)
    p.add_argument("--y-max", type=float, required=True)
    p.add_argument("--ny", type=int, required=True)
    p.add_argument("--log-y", action="store_true")
    _common(p, "main7")

    p = sub.add_parser("sample", help="random-sampling accuracy campaign")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    _common(p, "main7")

    p = sub.add_parser("bench", help="per-call timing of basic6 and main7")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["csv", "json"], default="json")

    p = sub.add_parser("selftest", help="run the invariant checks")
    p.add_argument("--quick", action="store_true", help="smaller sample sizes")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _cmd_eval(args) -> int:
    method = MethodKind.parse(args.method)
    p = ComplexPoint(args.x, args.y)
    v = evaluate(p, method)
    record = {"x": p.x, "y": p.y, "method": method.value, "k": v.k, "l": v.l}
    if args.digits is not None:
        from .oracle import reference_w_series

        ref = reference_w_series(p, args.digits)
        core = relative_errors(v, ref)
        record.update(
            k_ref=float(ref.k),
            l_ref=float(ref.l),
            delta_re=core.delta_re,
            delta_im=core.delta_im,
        )
    if args.format == "json":
        text = json.dumps(record) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(list(record))
        w.writerow([_num(v) if isinstance(v, float) else v for v in record.values()])
        text = buf.getvalue()
    else:
        lines = [f"K={fmt17(v.k)}", f"L={fmt17(v.l)}"]
        if args.digits is not None:
            lines += [
                f"K_ref={fmt17(record['k_ref'])}",
                f"L_ref={fmt17(record['l_ref'])}",
                f"delta_re={record['delta_re']!r}",
                f"delta_im={record['delta_im']!r}",
            ]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def grid_to_csv(samples) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(GRID_HEADER)
    for s in samples:
        w.writerow(
            [
                _num(s.x),
                _num(s.y),
                _num(s.k),
                _num(s.l),
                _num(s.k_ref),
                _num(s.l_ref),
                _num(s.delta_re),
                _num(s.delta_im),
                s.flag,
            ]
        )
    return buf.getvalue()


def grid_to_json(samples) -> str:
    rows = [
        {
            "x": s.x,
            "y": s.y,
            "k": s.k,
            "l": s.l,
            "k_ref": s.k_ref,
            "l_ref": s.l_ref,
            "delta_re": s.delta_re,
            "delta_im": s.delta_im,
            "flag": s.flag,
        }
        for s in samples
    ]
    return json.dumps(rows) + "\n"


def _cmd_grid(args) -> int:
    spec = GridSpec(args.x_min, args.x_max, args.nx, args.y_min, args.y_max, args.ny, args.log_y)
    digits = args.digits or DEFAULT_ORACLE_DIGITS
    samples = error_grid(spec, args.method, digits, workers=args.workers)
    text = grid_to_json(samples) if args.format == "json" else grid_to_csv(samples)
    _emit(text, args.out)
    return EXIT_OK


def _cmd_sample(args) -> int:
    digits = args.digits or DEFAULT_ORACLE_DIGITS
    stats = random_accuracy(args.n, args.seed, args.method, digits, workers=args.workers)
    d = stats.to_json_dict()
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(list(d))
        w.writerow([_num(v) if isinstance(v, float) else v for v in d.values()])
        text = buf.getvalue()
    else:
        text = json.dumps(d) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def bench_workload() -> list[ComplexPoint]:
    from .analysis import sample_points

    return [ComplexPoint(x, y) for x, y in sample_points(BENCH_POINTS, BENCH_SEED)]


def run_bench(repeats: int = 3) -> dict:
    from .smally import basic_eq6, main_eq7

    points = bench_workload()
    result = {"n": len(points)}
    for name, fn in (("basic6", basic_eq6), ("main7", main_eq7)):
        best = math.inf
        for _ in range(repeats):
            t0 = time.perf_counter_ns()
            for p in points:
                fn(p)
            best = min(best, time.perf_counter_ns() - t0)
        result[f"{name}_ns_per_call"] = best / len(points)
    return result


def _cmd_bench(args) -> int:
    result = run_bench()
    if result["basic6_ns_per_call"] > result["main7_ns_per_call"]:
        print(
            "warning: basic6 slower than main7 on this machine "
            f"({result['basic6_ns_per_call']:.0f} ns vs {result['main7_ns_per_call']:.0f} ns)",
            file=sys.stderr,
        )
    if args.format == "csv":
        text = "method,ns_per_call\n" + "".join(
            f"{m},{result[f'{m}_ns_per_call']!r}\n" for m in ("basic6", "main7")
        )
    else:
        text = json.dumps(result) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def _cmd_selftest(args) -> int:
    from .selftest import run_selftest

    return EXIT_OK if run_selftest(quick=args.quick) else 1


_COMMANDS = {
    "eval": _cmd_eval,
    "grid": _cmd_grid,
    "sample": _cmd_sample,
    "bench": _cmd_bench,
    "selftest": _cmd_selftest,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return _COMMANDS[args.command](args)
    except (OutOfDomain, DivisionHazard, OutOfRange) as exc:
        print(f"smallw: out of domain: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except InvalidArgument as exc:
        print(f"smallw: invalid argument: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SmallWError as exc:
        print(f"smallw: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except OSError as exc:
        print(f"smallw: I/O error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except Exception as exc:  # noqa: BLE001 - last-resort diagnostic for exit code 4
        print(f"smallw: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILURE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
