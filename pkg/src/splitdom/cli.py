"""Command line front end.

Every command prints one JSON record (or a plain table with ``--pretty``).
Exit status: 0 success / dominated / verified, 1 negative answer or failed
property (a witness is included), 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from splitdom.constructive import CubeEmptySplit, cover_with_F3, cover_with_F4, dominate_with_F2
from splitdom.dominance import CellLimitExceeded, NoneWithin, min_cover, union_dominates, dominates
from splitdom.families import (
    experiment_lower_bound,
    experiment_prop2,
    experiment_prop_upper,
    experiment_thm3,
    experiment_witness_soundness,
    gen_S_gamma,
    gen_S_theta,
)
from splitdom.splits import SplitFamily, SplitSet, enumerate_family


class InputError(ValueError):
    pass


def _load_json(text: str, what: str):
    stripped = text.strip()
    if not stripped.startswith(("{", "[")):
        if not os.path.isfile(stripped):
            raise InputError(f"{what}: not JSON and no such file: {text}")
        with open(stripped, encoding="utf-8") as fh:
            stripped = fh.read()
    try:
        return json.loads(stripped)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: malformed JSON ({exc.msg})") from None


def _split(text: str, what: str = "split") -> SplitSet:
    try:
        return SplitSet.from_record(_load_json(text, what))
    except (ValueError, TypeError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"{what}: {exc}") from None


def _split_list(text: str) -> list[SplitSet]:
    data = _load_json(text, "list")
    if isinstance(data, dict) and "splits" in data:
        data = data["splits"]
    if not isinstance(data, list):
        raise InputError("list: expected a JSON array of split records")
    try:
        return [SplitSet.from_record(r) for r in data]
    except (ValueError, TypeError) as exc:
        raise InputError(f"list: {exc}") from None


def _family(name: str, n: Optional[int]) -> SplitFamily:
    if name.upper() in ("F1", "F2", "F3", "F4"):
        if n is None:
            raise InputError("--n is required with a built-in family")
        k = int(name[1])
        if not 1 <= k <= n:
            raise InputError(f"family {name} needs --n >= {k}")
        return enumerate_family(n, k)
    try:
        return SplitFamily.from_record(_load_json(name, "family"))
    except (ValueError, TypeError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"family: {exc}") from None


def _int_range(text: str) -> list[int]:
    """``"5..10"``, ``"2,4,8"`` or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InputError(f"bad integer range {text!r}; use 'a..b' or 'a,b,c'") from None


def _same_dim(*splits: SplitSet) -> None:
    dims = {s.n for s in splits}
    if len(dims) > 1:
        raise InputError(f"dimension mismatch: {sorted(dims)}")


def _emit(record: dict, pretty: bool, out) -> None:
    if not pretty:
        out.write(json.dumps(record, sort_keys=True, separators=(",", ":")) + "\n")
        return
    width = max((len(k) for k in record), default=0)
    for key in sorted(record):
        value = record[key]
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        out.write(f"{key:<{width}}  {value}\n")


def _report_record(report, args) -> dict:
    rec = report.to_record(include_timing=args.timing, include_details=args.details)
    if not args.details:
        rec["failures"] = report.failures()
    return rec


def cmd_check_dominance(args):
    s1, s0 = _split(args.s1, "s1"), _split(args.s0, "s0")
    _same_dim(s1, s0)
    rep = dominates(s1, s0)
    rec = {"s1": s1.to_record(), "s0": s0.to_record(), **rep.to_record()}
    return rec, 0 if rep.dominated else 1


def cmd_check_union(args):
    splits = _split_list(args.list)
    s = _split(args.split)
    _same_dim(s, *splits)
    try:
        rep = union_dominates(splits, s, cell_limit=args.cell_limit)
    except CellLimitExceeded as exc:
        raise InputError(str(exc)) from None
    rec = {"list": [t.to_record() for t in splits], "split": s.to_record(), **rep.to_record()}
    return rec, 0 if rep.dominated else 1


def cmd_min_cover(args):
    fam = _family(args.family, args.n)
    s = _split(args.split)
    if s.n != fam.n:
        raise InputError(f"dimension mismatch: split {s.n}, family {fam.n}")
    if args.pmax < 0:
        raise InputError("--pmax must be nonnegative")
    if len(fam) == 0:
        raise InputError("family is empty")
    res = min_cover(fam, s, args.pmax)
    rec = {"split": s.to_record(), "family_size": len(fam), **res.to_record()}
    return rec, 1 if isinstance(res, NoneWithin) else 0


def _construct(func, args):
    s = _split(args.split)
    try:
        out, tag = func(s, verify=True)
    except CubeEmptySplit as exc:
        raise InputError(str(exc)) from None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    outs = out if isinstance(out, tuple) else (out,)
    rec = {"split": s.to_record(), "case": tag, "cover": [t.to_record() for t in outs], "verified": True}
    return rec, 0


def cmd_family(args):
    if not 1 <= args.k <= args.n:
        raise InputError("need 1 <= k <= n")
    return enumerate_family(args.n, args.k).to_record(), 0


def cmd_gen(args):
    try:
        if args.which == "s-gamma":
            s = gen_S_gamma(args.gamma)
        else:
            s = gen_S_theta(args.k, args.theta, args.parity)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return s.to_record(), 0


def cmd_verify(args):
    try:
        if args.target == "prop2":
            report = experiment_prop2(args.M if args.M is not None else 8, args.E, jobs=args.jobs)
        elif args.target == "prop-upper":
            default_m = 8 if args.k == 3 else 5
            report = experiment_prop_upper(args.k, args.M if args.M is not None else default_m, jobs=args.jobs)
        elif args.target == "thm3":
            report = experiment_thm3(_int_range(args.gamma_range), args.B, with_cover=args.with_cover,
                                     jobs=args.jobs)
        elif args.target == "lower-bound":
            report = experiment_lower_bound(args.k, _int_range(args.theta_range), args.pmax, jobs=args.jobs)
        else:
            report = experiment_witness_soundness(args.count, args.seed)
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(str(exc)) from None
    return _report_record(report, args), 0 if report.verdict else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")

    p = argparse.ArgumentParser(prog="splitdom", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("check-dominance", parents=[common], help="does S1 contain S0 on the cube")
    c.add_argument("--s1", required=True)
    c.add_argument("--s0", required=True)
    c.set_defaults(func=cmd_check_dominance)

    c = sub.add_parser("check-union", parents=[common], help="does a list of splits cover S")
    c.add_argument("--list", required=True, help="JSON array of splits, or a family record/file")
    c.add_argument("--split", required=True)
    c.add_argument("--cell-limit", type=int, default=20)
    c.set_defaults(func=cmd_check_union)

    c = sub.add_parser("min-cover", parents=[common], help="minimum dominating sublist of a family")
    c.add_argument("--family", required=True, help="F1..F4 or a family JSON record/file")
    c.add_argument("--n", type=int)
    c.add_argument("--split", required=True)
    c.add_argument("--pmax", type=int, default=3)
    c.set_defaults(func=cmd_min_cover)

    for verb, func in (("dominate2", dominate_with_F2), ("cover3", cover_with_F3), ("cover4", cover_with_F4)):
        c = sub.add_parser(verb, parents=[common], help=f"constructive answer ({func.__name__})")
        c.add_argument("--split", required=True)
        c.set_defaults(func=lambda a, f=func: _construct(f, a))

    c = sub.add_parser("family", parents=[common], help="enumerate F_k in dimension n")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.set_defaults(func=cmd_family)

    c = sub.add_parser("gen", parents=[common], help="generate a counterexample split")
    c.add_argument("which", choices=["s-gamma", "s-theta"])
    c.add_argument("--gamma", type=int, default=1)
    c.add_argument("--k", type=int, default=2)
    c.add_argument("--theta", type=int, default=2)
    c.add_argument("--parity", choices=["even", "odd"], default="even")
    c.set_defaults(func=cmd_gen)

    c = sub.add_parser("verify", parents=[common], help="run a sweep experiment")
    c.add_argument("target", choices=["prop2", "prop-upper", "thm3", "lower-bound", "witnesses"])
    c.add_argument("--M", type=int, default=None, help="coefficient bound (prop2: 8, prop-upper: 8 for k=3, 5 for k=4)")
    c.add_argument("--E", type=int, default=16, help="eta bound for prop2")
    c.add_argument("--k", type=int, default=4)
    c.add_argument("--B", type=int, default=3)
    c.add_argument("--gamma-range", default="5..10")
    c.add_argument("--theta-range", default="2..10")
    c.add_argument("--pmax", type=int, default=3)
    c.add_argument("--with-cover", action="store_true", help="thm3: also compute min F_3 covers")
    c.add_argument("--seed", type=int, default=0, help="witnesses: RNG seed")
    c.add_argument("--count", type=int, default=1000, help="witnesses: number of instances")
    c.add_argument("--details", action="store_true", help="include every per-instance record")
    c.add_argument("--timing", action="store_true", help="include wall-clock seconds")
    c.set_defaults(func=cmd_verify)
    return p


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        record, code = args.func(args)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return 2
    _emit(record, args.pretty, out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
