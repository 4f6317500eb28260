"""Command-line surface: align, compare, memreport, synth.

Exit codes: 0 success, 2 invalid input, 3 resource exhaustion (the textbook
algorithm running out of memory reports the estimated table size).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .approx import fastdtw, mrmsdtw
from .core import DEFAULT_FPS, InvalidInputError, PathValidationError
from .divide import LinMdtwConfig, linmdtw
from .fileformat import FormatError, load_features, load_path, save_features, save_path
from .metrics import (
    DEFAULT_THRESHOLDS_S,
    discrepancy,
    format_bytes,
    memory_estimate,
    proportion_below,
    save_report,
)
from .oracle import TIE_DIAG_FIRST, TIE_LEFT_FIRST, dtw_full
from .synth import synth_pair

_TIE_RULES = {"diag-first": TIE_DIAG_FIRST, "left-first": TIE_LEFT_FIRST}


def _cmd_align(args) -> int:
    A = load_features(args.features_a)
    B = load_features(args.features_b)
    if A.dim != B.dim:
        raise InvalidInputError(f"feature dimension mismatch: {A.dim} vs {B.dim}")
    M, N = len(A), len(B)
    tie = _TIE_RULES[args.tie_rule]
    progress = None
    if args.progress:
        def progress(done, budget):
            print(f"\rprogress: {100.0 * done / budget:6.2f}% "
                  f"({done}/{budget} cells)", end="", file=sys.stderr)

    if args.algo == "dtw":
        try:
            result = dtw_full(A, B, tie_rule=tie, precision=args.precision)
        except MemoryError:
            est = memory_estimate("textbook", M, N)
            print(f"error: textbook DTW needs {format_bytes(est.bytes)} of "
                  f"accumulated-cost cells for {M}x{N}; use --algo linmdtw",
                  file=sys.stderr)
            return 3
    elif args.algo == "linmdtw":
        cfg = LinMdtwConfig(min_dim=args.min_dim, precision=args.precision,
                            tie_rule=tie, parallel_diagonals=(args.threads != 1))
        result = linmdtw(A, B, config=cfg, progress=progress)
    elif args.algo == "fastdtw":
        result = fastdtw(A, B, radius=args.radius, tie_rule=tie, precision=args.precision)
    else:
        result = mrmsdtw(A, B, max_cells=args.budget, tie_rule=tie, precision=args.precision)
    if args.progress:
        print(file=sys.stderr)

    if args.out:
        save_path(result.path, M, N, A.frame_rate, result.cost, result.algorithm, args.out)
    peak = max(result.peak_diag_values, result.peak_table_cells)
    print(f"algorithm:        {result.algorithm}")
    print(f"M x N:            {M} x {N}")
    print(f"cost:             {result.cost:.6f}")
    print(f"cells processed:  {result.cells_processed}")
    print(f"cells ratio:      {result.cells_processed / (M * N):.4f}")
    print(f"peak cells:       {peak} ({format_bytes(4 * peak)})")
    if args.algo == "fastdtw":
        est = memory_estimate("fastdtw", M, N, delta=args.radius)
        print(f"estimated cells:  {est.cells} ({format_bytes(est.bytes)})")
    if args.out:
        print(f"path written to:  {args.out}")
    return 0


def _cmd_compare(args) -> int:
    p1, meta1 = load_path(args.path_a)
    p2, meta2 = load_path(args.path_b)
    if (meta1["M"], meta1["N"]) != (meta2["M"], meta2["N"]):
        raise InvalidInputError(
            f"paths cover different grids: {meta1['M']}x{meta1['N']} vs "
            f"{meta2['M']}x{meta2['N']}"
        )
    thresholds = tuple(float(t) for t in args.thresholds.split(","))
    report = discrepancy(p1, p2, fps=meta1["fps"])
    props = proportion_below(report, thresholds)
    for t, p in zip(thresholds, props):
        print(f"<= {t * 1000:8.1f} ms : {p:.4f}")
    if args.out:
        with open(args.out, "w") as f:
            save_report(report, f, thresholds)
        print(f"distribution written to: {args.out}")
    return 0


def _cmd_memreport(args) -> int:
    M = round(args.m_seconds * args.fps)
    N = round(args.n_seconds * args.fps)
    budgets = args.budget or [10 ** 5, 10 ** 7]
    print(f"frames: M={M} N={N} (fps {args.fps})")
    rows = [("textbook", memory_estimate("textbook", M, N)),
            (f"fastdtw (radius {args.radius})",
             memory_estimate("fastdtw", M, N, delta=args.radius)),
            ("linmdtw", memory_estimate("linmdtw", M, N))]
    for b in budgets:
        rows.append((f"mrmsdtw (budget {b:.0e})",
                     memory_estimate("mrmsdtw", M, N, budget=int(b))))
    for name, est in rows:
        print(f"{name:24s} {est.cells:>16d} cells  {format_bytes(est.bytes)}")
    return 0


def _cmd_synth(args) -> int:
    A, B = synth_pair(args.kind, args.length, args.seed, args.warp_strength)
    save_features(A, args.out_a)
    save_features(B, args.out_b)
    print(f"wrote {args.out_a} and {args.out_b} "
          f"(kind={args.kind}, length={args.length}, seed={args.seed}, "
          f"warp-strength={args.warp_strength})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lmdtw",
                                 description="Exact linear-memory DTW alignment toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    al = sub.add_parser("align", help="align two feature files")
    al.add_argument("features_a")
    al.add_argument("features_b")
    al.add_argument("--algo", choices=["dtw", "linmdtw", "fastdtw", "mrmsdtw"],
                    default="linmdtw")
    al.add_argument("--radius", type=int, default=30, help="fastdtw band radius")
    al.add_argument("--budget", type=int, default=10 ** 5, help="mrmsdtw cell budget")
    al.add_argument("--min-dim", type=int, default=500, help="linmdtw recursion cutoff")
    al.add_argument("--precision", type=int, choices=[32, 64], default=64)
    al.add_argument("--tie-rule", choices=sorted(_TIE_RULES), default="diag-first")
    al.add_argument("--threads", type=int, default=0,
                    help="0 = auto; 1 forces the sequential wavefront schedule")
    al.add_argument("--progress", action="store_true")
    al.add_argument("--out", help="write the warping path here")
    al.set_defaults(func=_cmd_align)

    cp = sub.add_parser("compare", help="discrepancy between two path files")
    cp.add_argument("path_a")
    cp.add_argument("path_b")
    cp.add_argument("--thresholds",
                    default=",".join(str(t) for t in DEFAULT_THRESHOLDS_S),
                    help="comma-separated thresholds in seconds")
    cp.add_argument("--out", help="write the error distribution here")
    cp.set_defaults(func=_cmd_compare)

    mr = sub.add_parser("memreport", help="closed-form memory requirements")
    mr.add_argument("--m-seconds", type=float, required=True)
    mr.add_argument("--n-seconds", type=float, required=True)
    mr.add_argument("--fps", type=float, default=DEFAULT_FPS)
    mr.add_argument("--radius", type=int, default=30)
    mr.add_argument("--budget", type=float, action="append",
                    help="mrmsdtw budget; repeatable (default 1e5 and 1e7)")
    mr.set_defaults(func=_cmd_memreport)

    sy = sub.add_parser("synth", help="generate a deterministic warped test pair")
    sy.add_argument("--kind", choices=["warped-sine", "random-walk"],
                    default="warped-sine")
    sy.add_argument("--length", type=int, default=1000)
    sy.add_argument("--seed", type=int, default=0)
    sy.add_argument("--warp-strength", type=float, default=0.3)
    sy.add_argument("--out-a", required=True)
    sy.add_argument("--out-b", required=True)
    sy.set_defaults(func=_cmd_synth)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InvalidInputError, PathValidationError, FormatError, FileNotFoundError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MemoryError:
        print("error: out of memory", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
