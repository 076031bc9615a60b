"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 computation error, 3 verification
failure.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import clifford, zoo
from .cover import CoverError
from .documents import DocumentError, GroupInputDocument, ReportDocument
from .ktheory import (InconsistentCounts, KRankReport, compute, is_cyclic,
                      karoubi_ranks, pinc_for_group)
from .matgroup import DEFAULT_CAP, MATCH_TOL, GroupError, generate_group
from .onfamily import gl_table
from .partitions import alt_ranks, partition_counts, sym_ranks
from .verify import SUITES, run_suite

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--tolerance", type=float, default=None,
                        help=f"matrix matching tolerance (default {MATCH_TOL})")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum group order")
    common.add_argument("--max-dim", type=int, default=clifford.DEFAULT_MAX_DIMENSION,
                        help="largest Clifford algebra dimension allowed")

    p = _Parser(prog="equivk", description="Equivariant K-theory ranks of finite orthogonal groups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", parents=[common], help="ranks of K^0_G(V), K^1_G(V)")
    c.add_argument("input", nargs="?", help="group document (JSON); '-' for stdin")
    c.add_argument("--builtin", choices=zoo.BUILTINS)
    c.add_argument("--m", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--action", choices=("rotation", "reflection"), default="rotation")
    c.add_argument("--ambient", type=int)
    c.add_argument("--pinc", action="store_true", help="assert the Pin^c condition")
    c.add_argument("--verify", action="store_true",
                   help="also run the independent methods and compare")

    v = sub.add_parser("verify", parents=[common], help="run the cross-verification suite")
    v.add_argument("--suite", choices=SUITES, default="small")
    v.add_argument("--check", action="append", help="run only the named check(s)")
    v.add_argument("--tamper-cocycle", action="store_true", help=argparse.SUPPRESS)

    pt = sub.add_parser("partitions", parents=[common], help="distinct-part partition table")
    pt.add_argument("n_max", type=int)

    gl = sub.add_parser("gl-table", parents=[common], help="K-theory of C*_r(GL(n,R))")
    gl.add_argument("n_max", type=int)

    b = sub.add_parser("builtin", parents=[common], help="built-in groups")
    b.add_argument("action", choices=("list",))
    return p


def _emit(args, text: str, machine) -> None:
    if args.format == "machine":
        print(machine if isinstance(machine, str) else json.dumps(machine, indent=2, sort_keys=True))
    else:
        print(text)


def _load_group(args):
    kw = {"cap": args.cap}
    pinc = args.pinc
    label = None
    if args.builtin:
        if args.input:
            raise UsageError("give either an input document or --builtin, not both")
        tol = args.tolerance
        if tol is not None:
            kw["tol"] = tol
        G = zoo.builtin(args.builtin, m=args.m, n=args.n, action=args.action,
                        ambient=args.ambient, **kw)
        echo = {"builtin": args.builtin}
        for key in ("m", "n", "ambient"):
            if getattr(args, key) is not None:
                echo[key] = getattr(args, key)
        if args.builtin == "cyclic":
            echo["action"] = args.action
        label = " ".join([args.builtin] + [f"{k}={v}" for k, v in echo.items() if k != "builtin"])
        return G, echo, pinc, label
    if not args.input:
        raise UsageError("compute needs an input document or --builtin")
    if args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.input) as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError(str(e)) from None
    doc = GroupInputDocument.loads(text)
    tol = args.tolerance if args.tolerance is not None else doc.tolerance
    if tol is not None:
        kw["tol"] = tol
    G = generate_group(doc.matrices(), **kw)
    return G, doc.to_dict(), pinc or bool(doc.pinc_assertion), doc.label


def _format_report(label, r: KRankReport, subs: dict) -> str:
    lines = []
    if label:
        lines.append(f"group: {label}")
    lines.append(f"order: {r.group_order}  dim V: {r.dim_V}  "
                 f"orientation preserving: {'yes' if r.orientation_preserving else 'no'}")
    if r.counts:
        cgr, cg, ckr, ck = r.counts
        lines.append(f"class counts: C_Grho={cgr} C_G={cg} C_Krho={ckr} C_K={ck}")
    lines.append(f"rank K^0 = {r.rank_k0}")
    lines.append(f"rank K^1 = {r.rank_k1}")
    lines.append(f"method: {r.method}")
    for name, sr in subs.items():
        mark = "agree" if (sr["rank_k0"], sr["rank_k1"]) == r.ranks else "DISAGREE"
        lines.append(f"  {name}: ({sr['rank_k0']}, {sr['rank_k1']}) {mark}")
    return "\n".join(lines)


def cmd_compute(args) -> int:
    t0 = time.perf_counter()
    G, echo, pinc, label = _load_group(args)
    t_group = time.perf_counter()
    report = compute(G)
    t_rank = time.perf_counter()
    subs = {}
    if pinc or is_cyclic(G):
        subs["pinc_formula"] = pinc_for_group(G).to_dict()
    if args.verify:
        subs["karoubi"] = karoubi_ranks(G).to_dict()
        if args.builtin == "sym" and args.n >= 2:
            subs["partition_formula"] = sym_ranks(args.n).to_dict()
        elif args.builtin == "alt":
            subs["partition_formula"] = alt_ranks(args.n).to_dict()
    timing = {"group_seconds": round(t_group - t0, 6),
              "rank_seconds": round(t_rank - t_group, 6),
              "total_seconds": round(time.perf_counter() - t0, 6)}
    doc = ReportDocument(echo, report.to_dict(), subs, timing)
    _emit(args, _format_report(label, report, subs), doc.dumps())
    agree = all((s["rank_k0"], s["rank_k1"]) == report.ranks for s in subs.values())
    return EXIT_OK if agree else EXIT_VERIFY


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    results = run_suite(args.suite, tamper=args.tamper_cocycle, only=args.check)
    ok = all(r.passed for r in results)
    lines = []
    for r in results:
        line = f"{'PASS' if r.passed else 'FAIL'}  {r.name:32s} {r.seconds:7.2f}s"
        if not r.passed:
            line += "  " + json.dumps(r.detail, sort_keys=True)
        lines.append(line)
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed "
                 f"({args.suite} suite, {time.perf_counter() - t0:.1f}s)")
    machine = {"schema_version": 1, "input_echo": {"suite": args.suite},
               "report": {"passed": ok, "checks": [r.to_dict() for r in results]}}
    _emit(args, "\n".join(lines), machine)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_partitions(args) -> int:
    if args.n_max < 2:
        raise UsageError("partitions: n >= 2 required")
    rows = [partition_counts(n) for n in range(2, args.n_max + 1)]
    text = [f"{'n':>4} {'a_n':>8} {'b_n':>8} {'p_n':>8} {'i_n':>8}"]
    text += [f"{c.n:>4} {c.a_n:>8} {c.b_n:>8} {c.p_n:>8} {c.i_n:>8}" for c in rows]
    machine = {"schema_version": 1, "input_echo": {"n_max": args.n_max},
               "report": {"rows": [{"n": c.n, "a": c.a_n, "b": c.b_n, "p": c.p_n, "i": c.i_n}
                                   for c in rows]}}
    _emit(args, "\n".join(text), machine)
    return EXIT_OK


def cmd_gl_table(args) -> int:
    if args.n_max < 2:
        raise UsageError("gl-table: n >= 2 required")
    rows = gl_table(args.n_max)
    text = [f"{'n':>3}  {'K_0':<10} {'K_1':<10}"]
    text += [f"{n:>3}  {str(k0):<10} {str(k1):<10}" for n, k0, k1 in rows]
    machine = {"schema_version": 1, "input_echo": {"n_max": args.n_max},
               "report": {"rows": [{"n": n, "K0": k0.to_dict(), "K1": k1.to_dict()}
                                   for n, k0, k1 in rows]}}
    _emit(args, "\n".join(text), machine)
    return EXIT_OK


_DESCRIPTIONS = {
    "trivial": "trivial group on R^ambient (--ambient, default 2)",
    "cyclic": "Z_m by rotation, or with a det -1 generator (--m, --action, --ambient)",
    "dihedral": "symmetries of the regular m-gon on R^2 (--m)",
    "sym": "S_n permuting coordinates of R^n (--n)",
    "alt": "A_n permuting coordinates of R^n (--n)",
    "hyperoctahedral": "signed permutation matrices on R^n (--n)",
}


def cmd_builtin(args) -> int:
    _emit(args, "\n".join(f"{k:16s} {v}" for k, v in _DESCRIPTIONS.items()),
          {"schema_version": 1, "input_echo": {}, "report": {"builtins": _DESCRIPTIONS}})
    return EXIT_OK


COMMANDS = {"compute": cmd_compute, "verify": cmd_verify, "partitions": cmd_partitions,
            "gl-table": cmd_gl_table, "builtin": cmd_builtin}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        clifford.set_max_dimension(args.max_dim)
        return COMMANDS[args.command](args)
    except (UsageError, DocumentError) as e:
        print(f"equivk: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (GroupError, CoverError, InconsistentCounts, clifford.CliffordError, ValueError) as e:
        print(f"equivk: computation failed: {e}", file=sys.stderr)
        return EXIT_COMPUTE
    finally:
        clifford.set_max_dimension(clifford.DEFAULT_MAX_DIMENSION)


if __name__ == "__main__":
    sys.exit(main())
