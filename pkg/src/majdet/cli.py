"""Command-line surface.

Commands: verify-paper | check | fuzz | gen. Machine-readable results go to
stdout as line-delimited JSON; a human-readable table goes to stderr unless
--json-only is set. Exit codes: 0 = holds/pass, 1 = usage or input error,
2 = inequality violated.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import matio, scenarios
from .blocks import Partition, diag_blocks, validate_partition
from .catalog import (
    INEQUALITY_IDS,
    Instance,
    inv_square_sum_exact,
    matic_exact,
    run_check,
)
from .errors import BadMatrixFile, MajdetError
from .exact import submatrix as exact_submatrix
from .fuzzing import GenConfig, GenStyle, fuzz, sample_pd, trial_rng
from .orders import DEFAULT_TOL

BLOCK_D_IDS = frozenset(
    {"main-thm", "matic", "det-power", "abs-power", "commuted-power",
     "inv-square-sum", "neg-power", "sv-weak-log"}
)
GENERAL_D_IDS = frozenset({"matic-general-d", "weak-log-general-d"})
MATS_IDS = frozenset({"choi", "thm32", "open-q"})
DEFAULT_P = {
    "det-power": 1.0,
    "abs-power": 2.0,
    "commuted-power": 2.0,
    "neg-power": -1.0,
    "thm32": 1.0,
}


class _Parser(argparse.ArgumentParser):
    """argparse that exits 1 (not 2) on usage errors, per the CLI contract."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _parse_partition(text: str, n: int) -> Partition:
    try:
        sizes = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise MajdetError(f"bad partition {text!r}; expected n1,n2,...,nk") from None
    return validate_partition(sizes, n)


def _parse_idx(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise MajdetError(f"bad index list {text!r}; expected i,j,... (0-based)") from None


def _emit(payload: dict) -> None:
    print(json.dumps(payload))


def _table(lines, json_only: bool) -> None:
    if not json_only:
        for line in lines:
            print(line, file=sys.stderr)


def _split_block_file(arr, exact, part: Partition, path: str):
    """Split a single block-diagonal matrix file into blocks; off-blocks must be zero."""
    mask = np.ones_like(arr, dtype=bool)
    for lo, hi in part.offsets():
        mask[lo:hi, lo:hi] = False
    if np.any(arr[mask] != 0.0):
        raise BadMatrixFile(
            f"{path}: single D file must be block diagonal for this partition"
        )
    blocks = diag_blocks(arr, part)
    exact_blocks = None
    if exact is not None:
        exact_blocks = [exact_submatrix(exact, lo, hi) for lo, hi in part.offsets()]
    return blocks, exact_blocks


def _load_check_inputs(args) -> tuple[Instance, dict]:
    """Build the Instance for `check` from files and flags; returns extras for
    exact certification."""
    ineq = args.inequality
    extras: dict = {}
    p = args.p if args.p is not None else DEFAULT_P.get(ineq)

    if ineq in BLOCK_D_IDS or ineq in GENERAL_D_IDS:
        if not args.c:
            raise MajdetError(f"{ineq} needs --c")
        c_arr, c_exact = matio.read_matrix(args.c)
        n = c_arr.shape[0]
        if not args.part:
            raise MajdetError(f"{ineq} needs --part")
        part = _parse_partition(args.part, n)
        if ineq in GENERAL_D_IDS:
            if not args.d or len(args.d) != 1:
                raise MajdetError(f"{ineq} needs exactly one --d file")
            d_arr, d_exact = matio.read_matrix(args.d[0])
            extras.update(c_exact=c_exact, d_exact=d_exact, part=part)
            return Instance(partition=part, c=c_arr, d=d_arr, p=p), extras
        if not args.d:
            raise MajdetError(f"{ineq} needs --d (block files, or one block-diagonal file)")
        if len(args.d) == 1 and part.k > 1:
            d_arr, d_exact = matio.read_matrix(args.d[0])
            if d_arr.shape[0] != n:
                raise MajdetError(f"D is {d_arr.shape[0]}x{d_arr.shape[0]}, expected {n}")
            blocks, exact_blocks = _split_block_file(d_arr, d_exact, part, args.d[0])
        else:
            if len(args.d) != part.k:
                raise MajdetError(f"expected {part.k} D block files, got {len(args.d)}")
            blocks = []
            exact_blocks = []
            for path in args.d:
                arr, ex = matio.read_matrix(path)
                blocks.append(arr)
                exact_blocks.append(ex)
            if any(b is None for b in exact_blocks):
                exact_blocks = None
        extras.update(c_exact=c_exact, d_blocks_exact=exact_blocks, part=part)
        return Instance(partition=part, c=c_arr, d_blocks=tuple(blocks), p=p), extras

    if ineq in MATS_IDS:
        if not args.a:
            raise MajdetError(f"{ineq} needs --a matrix files")
        mats = []
        for path in args.a:
            arr, _ = matio.read_matrix(path)
            mats.append(arr)
        n = mats[0].shape[0]
        if not args.part:
            raise MajdetError(f"{ineq} needs --part")
        part = _parse_partition(args.part, n)
        return Instance(partition=part, mats=tuple(mats), p=p), extras

    if ineq == "lemma31":
        if not args.a or len(args.a) != 1:
            raise MajdetError("lemma31 needs exactly one --a file")
        arr, _ = matio.read_matrix(args.a[0])
        if not args.idx:
            raise MajdetError("lemma31 needs --idx (0-based, comma separated)")
        return Instance(c=arr, idx=_parse_idx(args.idx)), extras

    # fischer-tail, ky-fan
    if not args.c:
        raise MajdetError(f"{ineq} needs --c")
    arr, _ = matio.read_matrix(args.c)
    if not args.part:
        raise MajdetError(f"{ineq} needs --part")
    part = _parse_partition(args.part, arr.shape[0])
    return Instance(partition=part, c=arr, m=args.m if ineq == "fischer-tail" else None), extras


def _exact_certification(ineq: str, extras: dict) -> dict | None:
    """Exact rational recomputation of both sides when all inputs are rational."""
    c_exact = extras.get("c_exact")
    part = extras.get("part")
    if c_exact is None or part is None:
        return None
    if ineq in ("matic", "inv-square-sum"):
        blocks = extras.get("d_blocks_exact")
        if blocks is None or any(b is None for b in blocks):
            return None
        fn = matic_exact if ineq == "matic" else inv_square_sum_exact
        lhs, rhs = fn(c_exact, blocks, part)
    elif ineq == "matic-general-d":
        d_exact = extras.get("d_exact")
        if d_exact is None:
            return None
        blocks = [exact_submatrix(d_exact, lo, hi) for lo, hi in part.offsets()]
        lhs, rhs = matic_exact(c_exact, blocks, part)
    else:
        return None
    return {
        "lhs": f"{lhs.numerator}/{lhs.denominator}",
        "rhs": f"{rhs.numerator}/{rhs.denominator}",
        "holds": lhs <= rhs,
    }


def cmd_verify_paper(args) -> int:
    results = scenarios.run_all()
    ok = True
    for res in results:
        _emit(res.to_json())
        lines = [f"scenario {res.scenario}: {'PASS' if res.passed else 'FAIL'}"]
        for row in res.rows:
            lines.append(
                f"  {'ok ' if row.passed else 'BAD'} {row.name}: "
                f"computed {row.computed:.6g}, expected {row.expected:.6g} "
                f"(tol {row.tol:g})"
            )
        _table(lines, args.json_only)
        ok &= res.passed
    return 0 if ok else 1


def cmd_check(args) -> int:
    inst, extras = _load_check_inputs(args)
    verdict = run_check(args.inequality, inst, tol=args.tol)
    cert = _exact_certification(args.inequality, extras)
    payload = verdict.to_json()
    if cert is not None:
        payload["exact"] = cert
    _emit(payload)
    lines = [
        f"{args.inequality}: {'holds' if verdict.holds else 'VIOLATED'} "
        f"(margin {verdict.margin:.6g}, tol {verdict.tol:g})"
    ]
    if verdict.lhs is not None:
        lines.append(f"  lhs = {verdict.lhs:.10g}")
        lines.append(f"  rhs = {verdict.rhs:.10g}")
    if verdict.order is not None:
        lines.append(f"  order check: {verdict.order.verdict()}")
    if cert is not None:
        lines.append(
            f"  exact: lhs {cert['lhs']} rhs {cert['rhs']} "
            f"-> {'holds' if cert['holds'] else 'VIOLATED'} (zero tolerance)"
        )
    _table(lines, args.json_only)
    return 0 if verdict.holds else 2


def cmd_fuzz(args) -> int:
    if args.inequality not in INEQUALITY_IDS:
        raise MajdetError(
            f"unknown inequality {args.inequality!r}; known: {', '.join(INEQUALITY_IDS)}"
        )
    part = _parse_partition(args.part, args.n) if args.part else None
    cfg = GenConfig(
        n=args.n,
        partition=part,
        m=args.m,
        style=GenStyle(args.style),
        kappa_max=args.kappa_max,
        entry_scale=args.scale,
        seed=args.seed,
    )
    report = fuzz(args.inequality, cfg, args.trials, p=args.p, tol=args.tol,
                  keep_instances=args.keep_instances)
    _emit(report.to_json())
    lines = [
        f"fuzz {args.inequality}: {report.trials} trials, "
        f"{report.violations} violations, worst margin {report.worst_margin:.6g} "
        f"({report.wall_time:.2f}s)"
    ]
    for rec in report.records[:5]:
        if not rec.verdict.holds:
            lines.append(f"  trial {rec.trial}: margin {rec.verdict.margin:.6g}")
    _table(lines, args.json_only)
    return 0 if report.violations == 0 else 2


def cmd_gen(args) -> int:
    if args.n < 1:
        raise MajdetError(f"--n must be >= 1, got {args.n}")
    part = _parse_partition(args.part, args.n) if args.part else None
    cfg = GenConfig(
        n=args.n,
        partition=part,
        style=GenStyle(args.style),
        kappa_max=args.kappa_max,
        entry_scale=args.scale,
        seed=args.seed,
    )
    rng = trial_rng(cfg, 0)
    written = []
    out = Path(args.out)
    if part is None or part.k == 1:
        matio.write_matrix(out, sample_pd(rng, args.n, cfg.style, cfg.kappa_max, cfg.entry_scale))
        written.append(str(out))
    else:
        for i, size in enumerate(part.sizes, start=1):
            block = sample_pd(rng, size, cfg.style, cfg.kappa_max, cfg.entry_scale)
            path = out.with_name(f"{out.stem}.{i}{out.suffix or '.json'}")
            matio.write_matrix(path, block)
            written.append(str(path))
    _emit({"written": written})
    _table([f"wrote {p}" for p in written], args.json_only)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="majdet", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("verify-paper", help="replicate the built-in reference examples")
    sp.add_argument("--json-only", action="store_true", help="suppress the stderr table")
    sp.set_defaults(fn=cmd_verify_paper)

    sp = sub.add_parser("check", help="check one inequality on matrix files")
    sp.add_argument("inequality", choices=sorted(INEQUALITY_IDS))
    sp.add_argument("--c", help="matrix file for C")
    sp.add_argument("--d", nargs="+", help="D block files (or one block-diagonal/general D)")
    sp.add_argument("--a", nargs="+", help="matrix files for the A_i family / lemma31 input")
    sp.add_argument("--part", help="partition sizes n1,n2,...,nk")
    sp.add_argument("--p", type=float, default=None, help="exponent for parametrized checks")
    sp.add_argument("--m", type=int, default=None, help="tail start (fischer-tail; 1-based)")
    sp.add_argument("--idx", help="0-based principal submatrix indices, e.g. 0,2,3")
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
    sp.add_argument("--json-only", action="store_true")
    sp.set_defaults(fn=cmd_check)

    sp = sub.add_parser("fuzz", help="randomized trials of one inequality")
    sp.add_argument("inequality")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--part", help="partition sizes; default single block")
    sp.add_argument("--m", type=int, default=2, help="matrix count for the choi family")
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--style", choices=[s.value for s in GenStyle], default="spectral")
    sp.add_argument("--kappa-max", type=float, default=1e6)
    sp.add_argument("--scale", type=float, default=1.0)
    sp.add_argument("--p", type=float, default=None,
                    help="fix the exponent (default: id-specific grid)")
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
    sp.add_argument("--keep-instances", action="store_true",
                    help="serialize every trial's instance, not just violations")
    sp.add_argument("--json-only", action="store_true")
    sp.set_defaults(fn=cmd_fuzz)

    sp = sub.add_parser("gen", help="write random PD matrix file(s)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--part", help="write one file per block of this partition")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--style", choices=[s.value for s in GenStyle], default="spectral")
    sp.add_argument("--kappa-max", type=float, default=1e6)
    sp.add_argument("--scale", type=float, default=1.0)
    sp.add_argument("--out", required=True, help="output path")
    sp.add_argument("--json-only", action="store_true")
    sp.set_defaults(fn=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return int(err.code or 0)
    try:
        return args.fn(args)
    except MajdetError as err:
        print(f"majdet: error: {err}", file=sys.stderr)
        return 1
    except OSError as err:
        print(f"majdet: error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
