"""Command-line front end.

Exit codes: 0 ok / property holds, 1 negative verdict or failed rule
precondition, 2 usage or parse error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Optional, Sequence

from . import derive, matching, mpi, oracle, zposet
from .core import Multisegment, MultisegmentError, Segment
from .matching import Side
from .notation import (
    LineTable,
    NotationError,
    multisegment_to_json,
    parse_multisegment,
    parse_point,
    parse_segment,
    print_multisegment,
)

SCHEMA_VERSION = 1

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class Out:
    """Collects a JSON payload and text lines; emits one of them at the end."""

    def __init__(self, command: str, as_json: bool):
        self.as_json = as_json
        self.payload: dict = {"schema_version": SCHEMA_VERSION, "command": command}
        self.lines: list[str] = []

    def text(self, line: str = "") -> None:
        self.lines.append(line)

    def emit(self, stream=None) -> None:
        stream = stream or sys.stdout
        if self.as_json:
            stream.write(json.dumps(self.payload, indent=2, sort_keys=False) + "\n")
        else:
            stream.write("\n".join(self.lines) + ("\n" if self.lines else ""))


def _ms(text: str) -> Multisegment:
    return parse_multisegment(text)


def _seg(text: str, *context: Multisegment) -> Segment:
    return parse_segment(text, LineTable.for_multisegments(*context))


def _window(args) -> oracle.Window:
    if getattr(args, "window", None):
        return oracle.Window.parse(args.window)
    return oracle.Window.from_env()


def _witness_lines(w: Optional[matching.MatchingWitness]) -> list[str]:
    if w is None:
        return []
    return ["    " + line for line in w.describe()] or ["    (empty map)"]


# -- subcommands -----------------------------------------------------------------

def cmd_check(args, out: Out) -> int:
    m = _ms(args.m)
    d = _seg(args.d, m)
    decide = matching.brute_decide if args.mode == "brute" else matching.decide
    result = {}
    out.text(f"m = {print_multisegment(m)}, D = {d}")
    for side in Side:
        w = decide(side, m, d)
        inst = matching.instance(side, m, d)
        result[side.value] = {
            "holds": w is not None,
            "left": list(inst.left),
            "right": list(inst.right),
            "witness": w.to_json() if w else None,
        }
        out.text(f"{side.value}: {'holds' if w else 'absent'}  (left {list(inst.left)}, right {list(inst.right)})")
        out.lines.extend(_witness_lines(w))
    irreducible = all(r["holds"] for r in result.values())
    out.text(f"verdict: {'irreducible' if irreducible else 'reducible'}")
    out.payload.update({"m": print_multisegment(m), "segment": str(d),
                        "labels": [str(s) for s in matching.canonical_labeling(m)],
                        **result, "irreducible": irreducible})
    return EXIT_OK if irreducible else EXIT_NEGATIVE


def cmd_mpi(args, out: Out) -> int:
    m = _ms(args.m)
    n = _ms(args.n)
    rep = mpi.in_M(m, n)
    out.payload.update(rep.to_json())
    for v in rep.verdicts:
        out.text(f"{v.segment}: LC={v.lc} RC={v.rc} -> {'in M' if v.in_M else 'not in M'}")
    out.text(f"overall: {'member' if rep.overall else 'not a member'}")
    return EXIT_OK if rep.overall else EXIT_NEGATIVE


def cmd_closure(args, out: Out) -> int:
    m = _ms(args.m)
    n = _ms(args.n)
    verdict = mpi.closure_check(m, n, budget=args.budget)
    out.payload.update({"m": print_multisegment(m), "n": print_multisegment(n), **verdict.to_json()})
    out.text(f"closure {'holds' if verdict.holds else 'FAILS'} ({verdict.nodes_checked} nodes checked)")
    if verdict.counterexample:
        out.text(json.dumps(verdict.counterexample, indent=2))
    return EXIT_OK if verdict.holds else EXIT_NEGATIVE


def cmd_poset(args, out: Out) -> int:
    m = _ms(args.m)
    g = zposet.lower_set(m, args.budget)
    out.payload.update(g.to_json())
    out.payload["minimal"] = [print_multisegment(x) for x in g.minimal()]
    if args.dot:
        out.text(g.to_dot())
        if args.json:
            out.payload["dot"] = g.to_dot()
        return EXIT_OK
    depth = g.depth()
    out.text(f"{len(g.nodes)} nodes, {len(g.edges)} edges")
    for node in g.nodes:
        mark = " (generic)" if node.is_generic() else ""
        out.text(f"  {'  ' * depth[node]}{print_multisegment(node)}{mark}")
    return EXIT_OK


def _derive_same_end(args, out: Out) -> int:
    p = _ms(args.p)
    d = _seg(args.d, p)
    rw = derive.rewrite_same_end_steinberg(p, d)
    return _emit_rewrite(rw, out)


def _derive_nested(args, out: Out) -> int:
    m = _ms(args.m)
    peel = parse_multisegment(args.peel, LineTable.for_multisegments(m))
    if len(peel) == 1 and not args.multi:
        rw = derive.rewrite_nested_zelevinsky(m, peel.entries[0])
    else:
        rw = derive.rewrite_nested_zelevinsky(m, peel)
    return _emit_rewrite(rw, out)


def _emit_rewrite(rw: derive.DerivativeRewrite, out: Out) -> int:
    out.payload.update(rw.to_json())
    out.text(f"{rw.rule.value}: {print_multisegment(rw.input)} -> {print_multisegment(rw.output)}")
    for note in rw.preconditions:
        out.text(f"  checked: {note}")
    return EXIT_OK


def _derive_compose(args, out: Out) -> int:
    m = _ms(args.m)
    table = LineTable.for_multisegments(m)
    chain = [parse_multisegment(t, table) for t in args.chain]
    res = derive.compose_check(m, chain)
    out.payload.update({
        "m": print_multisegment(m),
        "chain": [print_multisegment(c) for c in chain],
        "holds": res.ok,
        "orders_checked": res.orders_checked,
        "mismatch": list(res.mismatch) if res.mismatch else None,
        "steps": [s.to_json() for s in res.steps],
    })
    for s in res.steps:
        out.text(f"  {s.rule.value}: {print_multisegment(s.input)} -> {print_multisegment(s.output)}")
    out.text(f"composition {'holds' if res else 'FAILS'} over {res.orders_checked} order(s)")
    return EXIT_OK if res else EXIT_NEGATIVE


def _derive_jacquet(args, out: Out) -> int:
    d = _seg(args.d)
    if args.absolute:
        parts = derive.jacquet_absolute(args.kind, d, args.i)
    else:
        parts = derive.jacquet_segment(args.kind, d, args.i)
    if parts is None:
        out.payload.update({"segment": str(d), "kind": args.kind, "vanishes": True})
        out.text(f"zero: line dimension {d.line.dim} does not divide {args.i}")
        return EXIT_OK
    left, right = (str(x) if x else "0" for x in parts)
    out.payload.update({"segment": str(d), "kind": args.kind, "vanishes": False, "factors": [left, right]})
    out.text(f"{left} (x) {right}")
    return EXIT_OK


def _derive_vanishing(args, out: Out) -> int:
    d, dp = _seg(args.d), _seg(args.d_prime)
    holds = derive.vanishing_predicate(d, dp)
    out.payload.update({"delta": str(d), "delta_prime": str(dp), "holds": holds})
    out.text(f"a(D) <= a(D') <= b(D) <= b(D'): {holds}")
    return EXIT_OK if holds else EXIT_NEGATIVE


def _derive_eta(args, out: Out) -> int:
    n = _ms(args.n)
    eta = derive.eta_generic(n, _seg(args.d, n))
    out.payload.update(eta.to_json())
    out.text("  ".join(f"{s}:{k}" for s, k in eta.as_dict().items()))
    return EXIT_OK


def _derive_mxpt(args, out: Out) -> int:
    n = _ms(args.n)
    point = parse_point(args.point, LineTable.for_multisegments(n))
    mx = derive.mxpt_b_generic(n, point)
    out.payload.update({"n": print_multisegment(n), "point": args.point, "mx": print_multisegment(mx)})
    out.text(print_multisegment(mx))
    return EXIT_OK


def cmd_mx(args, out: Out) -> int:
    n = _ms(args.n)
    d = _seg(args.d, n)
    filtered = derive.mx_generic(n, d, True)
    literal = derive.mx_generic(n, d, False)
    chosen = literal if args.unfiltered else filtered
    out.payload.update({
        "n": print_multisegment(n), "segment": str(d),
        "mode": "unfiltered" if args.unfiltered else "filtered",
        "mx": print_multisegment(chosen), "mx_json": multisegment_to_json(chosen),
        "modes_differ": filtered != literal,
    })
    out.text(print_multisegment(chosen))
    if filtered != literal:
        other = "filtered" if args.unfiltered else "unfiltered"
        out.text(f"note: {other} mode gives {print_multisegment(filtered if args.unfiltered else literal)}")
    return EXIT_OK


def cmd_enumerate(args, out: Out) -> int:
    w = _window(args)
    out.payload["window"] = str(w)
    if args.segments:
        items = [str(s) for s in oracle.enumerate_segments(w)]
    else:
        items = [print_multisegment(m) for m in oracle.enumerate_multisegments(w, args.budget)]
    out.payload["count"] = len(items)
    if not args.count:
        out.payload["items"] = items
        out.lines.extend(items)
    out.text(f"{len(items)} {'segments' if args.segments else 'multisegments'} in window {w}")
    return EXIT_OK


def cmd_selftest(args, out: Out) -> int:
    w = _window(args)
    names = sorted(oracle.SUITES) if args.suite == "all" else [args.suite]
    reports = [oracle.run_suite(name, w, corrupt=args.corrupt, jobs=args.jobs) for name in names]
    out.payload["reports"] = [r.to_json() for r in reports]
    for r in reports:
        status = "ok" if r.ok else f"{len(r.violations)} violation(s)"
        out.text(f"{r.suite:<15} window {r.window}: {r.checked} checked, {status}, {r.wall_time_ms:.0f} ms")
        for v in r.violations[:args.show]:
            out.text(f"    {v.input}: {v.detail}")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_NEGATIVE


def cmd_parse(args, out: Out) -> int:
    m = _ms(args.text)
    out.payload.update({"canonical": print_multisegment(m), "segments": multisegment_to_json(m),
                        "lines": sorted(line.id for line in m.lines())})
    out.text(print_multisegment(m))
    return EXIT_OK


def cmd_report(args, out: Out) -> int:
    from .plotting.report import write_report

    w = _window(args)
    files = write_report(args.out, w, fixture=_ms(args.fixture) if args.fixture else None,
                         suites=args.suite or None)
    out.payload.update({"window": str(w), "files": [str(f) for f in files]})
    out.lines.extend(str(f) for f in files)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--window", help="lo:hi:segments:length[:lines[:abs]] (overrides $%s)" % oracle.WINDOW_ENV)
    common.add_argument("--budget", type=int, default=zposet.DEFAULT_BUDGET, help="node/instance budget")
    common.add_argument("--mode", choices=["matching", "brute"], default="matching",
                        help="decision procedure for LC/RC")

    p = _Parser(prog="multiseg", description="Multisegment combinatorics: irreducibility, M_pi, Zelevinsky order.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=help, description=help)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("check", cmd_check, "LC/RC conditions and irreducibility of <m> x <D>, with witnesses")
    sp.add_argument("m")
    sp.add_argument("d")

    sp = add("mpi", cmd_mpi, "per-segment membership of n in M_<m>")
    sp.add_argument("m")
    sp.add_argument("n")

    sp = add("closure", cmd_closure, "check every n' <=_Z n lies in M_<m>")
    sp.add_argument("m")
    sp.add_argument("n")

    sp = add("poset", cmd_poset, "lower set of m under the Zelevinsky order")
    sp.add_argument("m")
    sp.add_argument("--dot", action="store_true", help="print Graphviz source")

    sp = add("derive", None, "multisegment rewrites for derivatives")
    rules = sp.add_subparsers(dest="rule", required=True, parser_class=_Parser)

    def rule(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        rp = rules.add_parser(name, parents=[common], help=help, description=help)
        rp.set_defaults(fn=fn)
        return rp

    rp = rule("same-end-steinberg", _derive_same_end, "peel D from p when all of p ends at one point")
    rp.add_argument("p")
    rp.add_argument("d")
    rp = rule("nested-zelevinsky", _derive_nested, "peel a containing segment, or copies of the single segment")
    rp.add_argument("m")
    rp.add_argument("peel")
    rp.add_argument("--multi", action="store_true", help="treat a one-segment peel as the all-equal form")
    rp = rule("compose", _derive_compose, "iterated peeling equals peeling the sum, in every permitted order")
    rp.add_argument("m")
    rp.add_argument("chain", nargs="+")
    rp = rule("jacquet", _derive_jacquet, "Jacquet factors of a segment")
    rp.add_argument("kind", choices=[k.value for k in derive.JacquetKind])
    rp.add_argument("d")
    rp.add_argument("i", type=int)
    rp.add_argument("--absolute", action="store_true", help="i is in absolute units")
    rp = rule("vanishing", _derive_vanishing, "endpoint trigger a(D) <= a(D') <= b(D) <= b(D')")
    rp.add_argument("d")
    rp.add_argument("d_prime")
    rp = rule("eta", _derive_eta, "eta vector for generic n")
    rp.add_argument("n")
    rp.add_argument("d")
    rp = rule("mxpt", _derive_mxpt, "mx at the longest segment of n ending at a point")
    rp.add_argument("n")
    rp.add_argument("point")

    sp = add("mx", cmd_mx, "mx multisegment for generic n")
    sp.add_argument("n")
    sp.add_argument("d")
    sp.add_argument("--unfiltered", action="store_true", help="literal formula without the saturation filter")

    sp = add("enumerate", cmd_enumerate, "list the window's multisegments (or segments)")
    sp.add_argument("--segments", action="store_true")
    sp.add_argument("--count", action="store_true", help="only print the count")

    sp = add("selftest", cmd_selftest, "run a property suite exhaustively over the window")
    sp.add_argument("suite", choices=sorted(oracle.SUITES) + ["all"])
    sp.add_argument("--corrupt", action="store_true", help="use the corrupted admissibility relation")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--show", type=int, default=5, help="violations to print per suite")

    sp = add("parse", cmd_parse, "parse and print in canonical form")
    sp.add_argument("text")

    sp = add("report", cmd_report, "write suite CSVs and figures to a directory")
    sp.add_argument("--out", default="multiseg-report")
    sp.add_argument("--fixture", help="multisegment whose lower set is drawn (default [0,2]+[1,3]+[2,4])")
    sp.add_argument("--suite", action="append", help="suite to include (repeatable; default all)")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    out = Out(args.command if args.command != "derive" else f"derive {args.rule}", args.json)
    try:
        code = args.fn(args, out)
    except NotationError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        if exc.text:
            print(exc.pointer(), file=sys.stderr)
        return EXIT_USAGE
    except (oracle.OracleError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (zposet.BudgetExceeded,) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (mpi.PreconditionError, derive.RuleError, derive.GenericError,
            MultisegmentError, matching.WitnessError) as exc:
        out.payload.update({"error": str(exc), "holds": False})
        msg = str(exc)
        out.text(msg if msg.startswith("precondition failed") else f"precondition failed: {msg}")
        out.emit()
        return EXIT_NEGATIVE
    out.payload["exit_code"] = code
    out.emit()
    return code


if __name__ == "__main__":
    sys.exit(main())
