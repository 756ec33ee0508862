"""Command-line interface: ``numrad {bound,w,fuzz,sweep,incomparable}``.

Exit codes: 0 success, 1 bad input or flags, 2 a proven ordering was violated.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import harness, matrixio
from .blocks import BlockMatrix
from .bounds import bound_chain
from .errors import NumradError
from .radius import numerical_radius

DEFAULT_SEED = 42

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


class UsageError(Exception):
    pass


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(text: str, out: str | None) -> None:
    # outputs are written once, after the computation has finished
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_bound(args) -> int:
    M = matrixio.load(args.path)
    if not isinstance(M, BlockMatrix):
        raise UsageError(f"{args.path}: expected a block matrix file (with block_dims and blocks)")
    report = bound_chain(M, t=args.t, tol=args.tol)
    if args.json:
        print(_dump_json(report.to_dict()), end="")
    else:
        print(f"exact w      {report.exact_w:.17g}")
        for name, value in report.bound_values.items():
            if name != "exact":
                print(f"{name:<12s} {value:.17g}")
        for key, v in report.verdicts.items():
            kind = "proven" if v.proven else "observed"
            print(f"{key:<20s} {v.status:<14s} slack={v.slack:+.3e} ({kind})")
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_w(args) -> int:
    A = matrixio.load(args.path)
    if isinstance(A, BlockMatrix):
        A = A.embed()
    res = numerical_radius(A, tol=args.tol)
    if args.json:
        print(_dump_json({"w": res.value, "argmax_theta": res.argmax_theta, "tol": args.tol}), end="")
    else:
        print(f"w = {res.value:.17g}")
        print(f"argmax theta = {res.argmax_theta:.17g}")
    return EXIT_OK


def cmd_fuzz(args) -> int:
    props = args.props.split(",") if args.props else list(harness.DEFAULT_PROPERTIES)
    count = args.count if args.count is not None else harness.PROFILES[args.profile]
    grid = None
    if args.block_dims:
        grid = (len(args.block_dims), tuple(args.block_dims))
    cfg = harness.EnsembleConfig(args.kind, args.dim, grid, args.seed, count)
    report = harness.fuzz_invariants(cfg, props, threads=args.threads)
    _emit(_dump_json(report.to_dict()), args.out)
    if args.out:
        for p, c in report.counts.items():
            print(f"{p:<22s} pass={c['pass']:<6d} fail={c['fail']}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_sweep(args) -> int:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=harness.CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    rows = []
    for d in args.dims:
        cfg = harness.EnsembleConfig(args.kind, d, None, args.seed, args.count)
        rows.extend(harness.tightness_stats(cfg, args.t_grid, block_dim=args.block_dim))
    for r in rows:
        writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})
    _emit(buf.getvalue(), args.out)
    return EXIT_OK if harness.chain_is_monotone(rows) else EXIT_VIOLATION


def cmd_incomparable(args) -> int:
    cfg = harness.EnsembleConfig(args.kind, max(args.dims), None, args.seed, args.count)
    res = harness.search_incomparability(cfg, dims=args.dims)
    payload = res.to_dict()
    for direction in ("p11_lt_p12", "p12_lt_p11"):
        wit = getattr(res, direction)
        if wit is not None:
            payload[direction]["verified"] = harness.verify_incomparability_witness(wit)
    if args.out:
        _emit(_dump_json(payload), args.out)
    for direction, label in (("p11_lt_p12", "p11 < p12"), ("p12_lt_p11", "p12 < p11")):
        wit = getattr(res, direction)
        if wit is None:
            print(f"{label}: NotFound after {res.scanned} pairs")
        else:
            where = f"index {wit['index']}" if wit.get("source") == "random" else "candidate"
            print(
                f"{label}: found at {where} (p11={wit['p11']:.12g}, p12={wit['p12']:.12g}, "
                f"margin={wit['margin']:.3e}, verified={payload[direction]['verified']})"
            )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="numrad", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="bound chain report for a block matrix file")
    p.add_argument("path")
    p.add_argument("--t", type=float, default=0.5)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("w", help="numerical radius of a matrix file")
    p.add_argument("path")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_w)

    def common(p, count_default=None):
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--kind", choices=harness.KINDS, default="ginibre")
        p.add_argument("--count", type=int, default=count_default)
        p.add_argument("--out")

    p = sub.add_parser("fuzz", help="randomized certification of every proven inequality")
    common(p)
    p.add_argument("--profile", choices=sorted(harness.PROFILES), default="ci")
    p.add_argument("--props", help="comma-separated property ids (default: all proven properties)")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--block-dims", type=_int_list, help="fixed block partition, e.g. 1,2,2")
    p.add_argument("--threads", type=int, help="worker threads (default: $NUMRAD_THREADS, 0 = auto)")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("sweep", help="tightness statistics of the compression bounds as CSV")
    common(p, 200)
    p.add_argument("--dims", type=_int_list, default=[2, 3], help="grid orders")
    p.add_argument("--block-dim", type=int, default=2)
    p.add_argument("--t-grid", type=_float_list, default=list(harness.T_GRID))
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("incomparable", help="search witnesses separating the two commutator bounds")
    common(p, 10_000)
    p.add_argument("--dims", type=_int_list, default=[2, 3, 4])
    p.set_defaults(func=cmd_incomparable)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (OSError, NumradError, UsageError, ValueError) as exc:
        print(f"numrad {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
