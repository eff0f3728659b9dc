"""Bounded exhaustive enumeration and the property suites run over it.

A suite maps a ``Window`` to a ``Report``.  Suites are organised as a list
of work units (usually one multisegment each) and a per-unit checker, so a
run can be sharded across processes; reports merge by summing counts and
concatenating violations.
"""

from __future__ import annotations

import itertools
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Union

from . import derive, matching
from .core import (
    DEFAULT_LINE,
    CuspidalLine,
    Multisegment,
    Relation,
    Segment,
    canonical_labeling,
    dual,
    is_saturated,
    lengths,
    linked,
    precedes,
    segment_relation,
    shift_left,
    shift_right,
    union_intersection,
)
from .matching import Side
from .mpi import is_member
from .notation import LineTable, parse_multisegment, print_multisegment, print_source
from .zposet import is_acyclic, length_profile, lower_set

WINDOW_ENV = "MULTISEG_WINDOW"


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class Window:
    lo: int = 0
    hi: int = 4
    max_segments: int = 3
    max_length: int = 5
    lines: int = 1
    max_abs_length: Optional[int] = None

    def __post_init__(self):
        if self.lo > self.hi:
            raise OracleError(f"empty exponent range [{self.lo}, {self.hi}]")
        if self.max_segments < 0 or self.max_length < 1 or self.lines < 1:
            raise OracleError("window bounds must be non-negative (lengths and lines >= 1)")

    @classmethod
    def parse(cls, text: str) -> "Window":
        """``lo:hi:segments:length[:lines[:abs]]``, e.g. ``0:4:3:5``."""
        try:
            parts = [int(p) for p in text.split(":")]
        except ValueError:
            raise OracleError(f"bad window {text!r}; expected lo:hi:segments:length") from None
        if not 4 <= len(parts) <= 6:
            raise OracleError(f"bad window {text!r}; expected lo:hi:segments:length")
        return cls(*parts)

    @classmethod
    def from_env(cls, default: Optional["Window"] = None) -> "Window":
        text = os.environ.get(WINDOW_ENV)
        return cls.parse(text) if text else (default or cls())

    def __str__(self):
        parts = [self.lo, self.hi, self.max_segments, self.max_length]
        if self.lines != 1 or self.max_abs_length is not None:
            parts.append(self.lines)
        if self.max_abs_length is not None:
            parts.append(self.max_abs_length)
        return ":".join(map(str, parts))

    def line_objects(self) -> list[CuspidalLine]:
        return [DEFAULT_LINE] + [CuspidalLine(f"r{k}") for k in range(1, self.lines)]


DEFAULT_WINDOW = Window()
WIDE_WINDOW = Window(0, 5, 3, 6)


def enumerate_segments(w: Window) -> Iterator[Segment]:
    for line in w.line_objects():
        for a in range(w.lo, w.hi + 1):
            for b in range(a, min(w.hi, a + w.max_length - 1) + 1):
                yield Segment(line, a, b)


def count_segments(w: Window) -> int:
    return sum(1 for _ in enumerate_segments(w))


def multiset_count(n_items: int, max_size: int) -> int:
    """Number of multisets of size 0..max_size drawn from n_items kinds."""
    return sum(math.comb(n_items + k - 1, k) for k in range(max_size + 1))


def enumerate_multisegments(w: Window, budget: Optional[int] = None) -> Iterator[Multisegment]:
    segs = list(enumerate_segments(w))
    if budget is not None and w.max_abs_length is None:
        total = multiset_count(len(segs), w.max_segments)
        if total > budget:
            raise OracleError(f"window {w} has {total} multisegments, budget is {budget}")
    emitted = 0
    for k in range(w.max_segments + 1):
        for combo in itertools.combinations_with_replacement(segs, k):
            m = Multisegment(combo)
            if w.max_abs_length is not None and lengths(m)[1] > w.max_abs_length:
                continue
            emitted += 1
            if budget is not None and emitted > budget:
                raise OracleError(f"window {w} exceeds budget of {budget} multisegments")
            yield m


# -- reports -----------------------------------------------------------------

@dataclass
class Violation:
    input: str
    detail: str
    original: Optional[str] = None  # pre-minimization input, when it differs


@dataclass
class Report:
    suite: str
    window: str
    checked: int = 0
    violations: list[Violation] = field(default_factory=list)
    wall_time_ms: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, other: "Report") -> "Report":
        return Report(self.suite, self.window, self.checked + other.checked,
                      self.violations + other.violations, self.wall_time_ms + other.wall_time_ms)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "window": self.window,
            "checked": self.checked,
            "violations": [asdict(v) for v in self.violations],
            "wall_time_ms": round(self.wall_time_ms, 3),
        }


Part = Union[Multisegment, Segment]


def render(parts: Iterable[Part]) -> str:
    texts = []
    for p in parts:
        texts.append(print_multisegment(p) if isinstance(p, Multisegment) else str(p))
    return " ; ".join(texts)


def _shrinks(parts: tuple[Part, ...]) -> Iterator[tuple[Part, ...]]:
    # segment removal first
    for k, p in enumerate(parts):
        if isinstance(p, Multisegment):
            for seg in p.distinct():
                yield parts[:k] + (p - seg,) + parts[k + 1:]
    # then endpoint shrinking
    for k, p in enumerate(parts):
        segs = [p] if isinstance(p, Segment) else p.distinct()
        for seg in segs:
            for smaller in (Segment.make(seg.line, seg.a + 1, seg.b), Segment.make(seg.line, seg.a, seg.b - 1)):
                if not smaller:
                    continue
                if isinstance(p, Segment):
                    yield parts[:k] + (smaller,) + parts[k + 1:]
                else:
                    yield parts[:k] + (p - seg + smaller,) + parts[k + 1:]


def minimize(parts: tuple[Part, ...], fails: Callable[..., bool], max_rounds: int = 200) -> tuple[Part, ...]:
    """Greedy shrink: keep taking the first smaller input that still fails."""
    current = parts
    for _ in range(max_rounds):
        for cand in _shrinks(current):
            try:
                still = fails(*cand)
            except (ValueError, matching.WitnessError):
                still = False
            if still:
                current = cand
                break
        else:
            return current
    return current


# -- corrupted relation used to prove the suites can fail -----------------------

def corrupted_admissible(side: Side, labels: tuple, i: int, j: int) -> bool:
    """Accept any pair on the same line: precedence is ignored entirely."""
    return labels[i].line == labels[j].line


# -- suites ----------------------------------------------------------------------

@dataclass
class Ctx:
    window: Window
    segments: list[Segment]
    multisegments: list[Multisegment]
    corrupt: bool = False

    @property
    def admissible(self):
        return corrupted_admissible if self.corrupt else None


Unit = object
Checker = Callable[[Ctx, Unit], tuple[int, list[tuple[tuple[Part, ...], str]]]]


@dataclass
class Suite:
    name: str
    units: Callable[[Ctx], list]
    check: Checker
    fails: Optional[Callable[..., bool]] = None
    doc: str = ""


SUITES: dict[str, Suite] = {}


def suite(name: str, units: Callable[[Ctx], list], doc: str = "", fails=None):
    def register(fn: Checker) -> Checker:
        SUITES[name] = Suite(name, units, fn, fails, doc)
        return fn
    return register


def _ms(ctx: Ctx) -> list:
    return ctx.multisegments


def _segs(ctx: Ctx) -> list:
    return ctx.segments


def _hall_fails(m, d, side=None):
    sides = [side] if side else list(Side)
    for s in sides:
        try:
            brute = matching.brute_decide(s, m, d)
        except matching.WitnessError:
            continue
        if (matching.decide(s, m, d) is None) != (brute is None):
            return True
    return False


@suite("hall", _ms, "decide (augmenting paths) agrees with brute-force injection search")
def _hall(ctx: Ctx, m: Multisegment):
    checked, bad = 0, []
    for d in ctx.segments:
        for side in Side:
            inst = matching.instance(side, m, d)
            if len(inst.left) > matching.BRUTE_BOUND:
                continue
            checked += 1
            fast = matching.decide(side, m, d, ctx.admissible)
            slow = matching.brute_decide(side, m, d)
            if (fast is None) != (slow is None):
                bad.append(((m, d), f"{side.value}: decide={fast is not None} brute={slow is not None}"))
            elif fast is not None and not ctx.corrupt:
                if not matching.is_valid_witness(fast):
                    bad.append(((m, d), f"{side.value}: decide returned an invalid witness"))
                elif fast != slow:
                    bad.append(((m, d), f"{side.value}: witnesses differ {fast.to_json()} vs {slow.to_json()}"))
    return checked, bad


def _hall_fails_corrupt(m, d):
    for side in Side:
        fast = matching.decide(side, m, d, corrupted_admissible)
        if (fast is None) != (matching.brute_decide(side, m, d) is None):
            return True
    return False


@suite("duality", _ms, "LC(m,D) = RC(m^v,D^v) and irreducibility is invariant under duals")
def _duality(ctx: Ctx, m: Multisegment):
    checked, bad = 0, []
    mv = dual(m)
    for d in ctx.segments:
        dv = dual(d)
        checked += 1
        lc, rc = matching.lc(m, d, ctx.admissible), matching.rc(m, d, ctx.admissible)
        lcv, rcv = matching.lc(mv, dv, ctx.admissible), matching.rc(mv, dv, ctx.admissible)
        if lc != rcv or rc != lcv:
            bad.append(((m, d), f"LC={lc} RC={rc} but dual LC={lcv} RC={rcv}"))
        if matching.is_irreducible_product(m, d) != matching.is_irreducible_product(mv, dv):
            bad.append(((m, d), "irreducibility differs from the dual instance"))
    return checked, bad


def _closure_fails(m, n, admissible=None):
    if not is_member(m, n, admissible):
        return False
    return any(not is_member(m, node, admissible) for node in lower_set(n).nodes)


@suite("closure", _ms, "every n' <=_Z n stays in M_<m> when n is in M_<m>")
def _closure(ctx: Ctx, n: Multisegment):
    checked, bad = 0, []
    nodes = lower_set(n).nodes
    adm = ctx.admissible
    for m in ctx.multisegments:
        if not is_member(m, n, adm):
            continue
        checked += 1
        for node in nodes[1:]:
            if not is_member(m, node, adm):
                bad.append(((m, n), f"{print_multisegment(node)} <=_Z n is not in M"))
                break
    return checked, bad


def _witness_fails(m, dx, dy):
    return bool(_witness_problems(m, dx, dy)[1])


def _witness_problems(m, dx, dy) -> tuple[int, list[str]]:
    """(witness triples examined, problems found) for the pair dx < dy."""
    if not precedes(dx, dy):
        return 0, []
    fxs = list(matching.all_witnesses(Side.LC, m, dx))
    frs = list(matching.all_witnesses(Side.RC, m, dx))
    fys = list(matching.all_witnesses(Side.LC, m, dy))
    if not (fxs and frs and fys):
        return 0, []
    problems = []
    _, inter = union_intersection(dx, dy)
    for fx, fy, fr in itertools.product(fxs, fys, frs):
        u = matching.combine_union_witness(m, dx, dy, fx, fy, fr)
        if not _independent_witness_check(u):
            problems.append(f"union witness {u.to_json()} fails for fx={fx.to_json()} fy={fy.to_json()}")
        if inter:
            i = matching.combine_intersection_witness(m, dx, dy, fx, fy, fr)
            if not _independent_witness_check(i):
                problems.append(f"intersection witness {i.to_json()} fails for fx={fx.to_json()} fy={fy.to_json()}")
        for kind in ("N", "O"):
            obs = matching.obstruction_sets(kind, m, dx, dy, fy)
            if obs:
                problems.append(f"obstruction set {kind} = {list(obs)} for fy={fy.to_json()}")
    return len(fxs) * len(fys) * len(frs), problems


def _independent_witness_check(w: matching.MatchingWitness) -> bool:
    """Re-derive the matching sets from the point-set definition of linkedness."""
    labels = canonical_labeling(w.m)

    def pts(s):
        return set(range(s.a, s.b + 1))

    def lt(s, t):
        if s.line != t.line:
            return False
        u = pts(s) | pts(t)
        contiguous = u == set(range(min(u), max(u) + 1))
        return contiguous and not pts(s) <= pts(t) and not pts(t) <= pts(s) and s.a < t.a

    t = w.target
    back = Segment(t.line, t.a - 1, t.b - 1)
    if w.side is Side.LC:
        left = {i for i, s in enumerate(labels) if lt(s, t)}
        right = {i for i, s in enumerate(labels) if lt(Segment(s.line, s.a - 1, s.b - 1), t)}
    else:
        left = {i for i, s in enumerate(labels) if lt(t, s)}
        right = {i for i, s in enumerate(labels) if lt(back, s)}
    f = dict(w.assignment)
    if set(f) != left or len(set(f.values())) != len(f) or not set(f.values()) <= right:
        return False
    if w.side is Side.LC:
        return all(lt(labels[i], labels[j]) for i, j in f.items())
    return all(lt(labels[j], labels[i]) for i, j in f.items())


@suite("witness", _ms, "union/intersection witness combinators verify; obstruction sets N and O are empty")
def _witness(ctx: Ctx, m: Multisegment):
    checked, bad = 0, []
    for dx in ctx.segments:
        for dy in ctx.segments:
            n, problems = _witness_problems(m, dx, dy)
            checked += n
            for problem in problems:
                bad.append(((m, dx, dy), problem))
    return checked, bad


def _right_matching_fails(m, dx, dy):
    if not precedes(dx, dy):
        return False
    return any(matching.right_matching_image_ok(m, dx, dy, fr)
               for fr in matching.all_witnesses(Side.RC, m, dx))


@suite("right_matching", _ms, "RC witnesses for dx send Y^dx & Xt^dy into X^dy")
def _right_matching(ctx: Ctx, m: Multisegment):
    checked, bad = 0, []
    for dx in ctx.segments:
        frs = list(matching.all_witnesses(Side.RC, m, dx))
        if not frs:
            continue
        for dy in ctx.segments:
            if not precedes(dx, dy):
                continue
            for fr in frs:
                checked += 1
                off = matching.right_matching_image_ok(m, dx, dy, fr)
                if off:
                    bad.append(((m, dx, dy), f"indices {off} map outside X^dy under {fr.to_json()}"))
    return checked, bad


def _poset_fails(n):
    return bool(_poset_problems(n))


def _poset_problems(n: Multisegment) -> list[str]:
    g = lower_set(n)
    problems = []
    supp, absl = n.support(), lengths(n)[1]
    for node in g.nodes:
        if node.support() != supp or lengths(node)[1] != absl:
            problems.append(f"{print_multisegment(node)} changes support or length")
    minimal = set(g.minimal())
    for node in g.nodes:
        if (node in minimal) != node.is_generic():
            problems.append(f"{print_multisegment(node)}: minimal={node in minimal} generic={node.is_generic()}")
    for e in g.edges:
        if not length_profile(e.parent) < length_profile(e.child):
            problems.append(f"edge {print_multisegment(e.parent)} -> {print_multisegment(e.child)} does not descend")
    if is_acyclic(g) is not None:
        problems.append("lower set has a cycle")
    return problems


@suite("poset", _ms, "lower sets conserve support/length, minimal = generic, strict descent, acyclic")
def _poset(ctx: Ctx, n: Multisegment):
    return 1, [((n,), p) for p in _poset_problems(n)]


def _derive_problems(m: Multisegment, segments: list[Segment]) -> list[str]:
    problems = []
    for chain in derive.chains(m, 3):
        res = derive.compose_check(m, chain)
        if not res:
            problems.append(f"compose_check fails on chain {[print_multisegment(c) for c in chain]}")
        for step in res.steps:
            peeled = step.peeled if isinstance(step.peeled, Multisegment) else Multisegment([step.peeled])
            if step.output + peeled != step.input:
                problems.append(f"{step.rule.value}: output + peeled != input")
    if m.is_generic():
        for d in segments:
            mx = derive.mx_generic(m, d, True)
            if not all(is_saturated(s, d) for s in mx):
                problems.append(f"mx at {d} has a non-saturated segment")
            eta = derive.eta_generic(m, d)
            if dict((s, k) for s, k in eta.as_dict().items() if k) != dict(mx.counts()):
                problems.append(f"eta at {d} disagrees with mx multiplicities")
    return problems


def _jacquet_problems(d: Segment) -> list[str]:
    problems = []
    rel = lengths(d)[0]
    whole = set(range(d.a, d.b + 1))
    for kind in derive.JacquetKind:
        for i in range(rel + 1):
            left, right = derive.jacquet_segment(kind, d, i)
            lp = set(range(left.a, left.b + 1)) if left else set()
            rp = set(range(right.a, right.b + 1)) if right else set()
            if lp & rp or lp | rp != whole or (len(lp), len(rp)) != (rel - i, i):
                problems.append(f"{kind.value} i={i}: factors {left}, {right} do not split {d}")
    return problems


@suite("derive", _ms, "subtraction laws, composition, mx saturation and eta multiplicities")
def _derive(ctx: Ctx, m: Multisegment):
    bad = [((m,), p) for p in _derive_problems(m, ctx.segments)]
    if len(m) == 1:
        bad += [((m,), p) for p in _jacquet_problems(m.entries[0])]
    return 1, bad


@suite("parser", _ms, "parse(print(m)) = m and print(parse(text)) is canonical")
def _parser(ctx: Ctx, m: Multisegment):
    bad = []
    text = print_source(m)
    back = parse_multisegment(text)
    if back != m:
        bad.append(((m,), f"round trip gave {print_multisegment(back)}"))
    # shuffled, spaced input must print canonically
    shuffled = " + ".join(str(s) for s in reversed(m.entries)) or "0"
    table = LineTable.for_multisegments(m)
    if print_multisegment(parse_multisegment(shuffled, table)) != print_multisegment(m):
        bad.append(((m,), f"{shuffled!r} does not print canonically"))
    return 1, bad


@suite("core", _segs, "relation totality/symmetry, dual order reversal, shift-dual law, labelling")
def _core(ctx: Ctx, d1: Segment):
    checked, bad = 0, []
    mirror = {
        Relation.LINKED_BEFORE: Relation.LINKED_AFTER,
        Relation.LINKED_AFTER: Relation.LINKED_BEFORE,
        Relation.CONTAINS: Relation.CONTAINED_IN,
        Relation.CONTAINED_IN: Relation.CONTAINS,
    }
    if dual(shift_left(d1)) != shift_right(dual(d1)):
        bad.append(((d1,), "dual of left shift is not the right shift of the dual"))
    for d2 in ctx.segments:
        checked += 1
        r, r2 = segment_relation(d1, d2), segment_relation(d2, d1)
        if mirror.get(r, r) != r2:
            bad.append(((d1, d2), f"relation {r.value} not mirrored: {r2.value}"))
        if (r is Relation.EQUAL) == linked(d1, d2) and r is Relation.EQUAL:
            bad.append(((d1, d2), "a segment is linked to itself"))
        if precedes(d1, d2) != precedes(dual(d2), dual(d1)):
            bad.append(((d1, d2), "duality does not reverse precedence"))
        if precedes(d1, d2):
            u, i = union_intersection(d1, d2)
            if lengths(d1)[0] + lengths(d2)[0] != lengths(u)[0] + lengths(i)[0]:
                bad.append(((d1, d2), "union/intersection does not conserve length"))
            if not (d1.a < d2.a and d1.b < d2.b):
                bad.append(((d1, d2), "precedence without increasing endpoints"))
        labels = canonical_labeling(Multisegment([d1, d2]))
        if labels[0].line == labels[1].line and labels[0].b < labels[1].b:
            bad.append(((d1, d2), "canonical labelling puts a smaller right end first"))
    return checked, bad


@suite("xtilde", _ms, "Xt^D = X^{D->}; members of Xt but not X share an endpoint with D or equal it")
def _xtilde(ctx: Ctx, m: Multisegment):
    checked, bad = 0, []
    labels = canonical_labeling(m)
    for d in ctx.segments:
        checked += 1
        x, xt = matching.lc_sets(m, d)
        if xt != matching.lc_sets(m, shift_right(d))[0]:
            bad.append(((m, d), "Xt differs from X of the right shift"))
        y, yt = matching.rc_sets(m, d)
        if yt != matching.rc_sets(m, shift_left(d))[0]:
            bad.append(((m, d), "Yt differs from Y of the left shift"))
        for i in set(xt) - set(x):
            s = labels[i]
            same_end = s.b == d.b and s.a < d.a
            same_start = s.a == d.a and s.b < d.b
            if not (same_end or same_start or s == d):
                bad.append(((m, d), f"{s} is in Xt but not X without sharing an endpoint"))
    return checked, bad


FAILS = {
    "hall": _hall_fails,
    "closure": _closure_fails,
    "witness": _witness_fails,
    "right_matching": _right_matching_fails,
    "poset": _poset_fails,
}


def _context(w: Window, corrupt: bool) -> Ctx:
    return Ctx(w, list(enumerate_segments(w)), list(enumerate_multisegments(w)), corrupt)


def _run_shard(args) -> tuple[int, list]:
    name, w, corrupt, units = args
    ctx = _context(w, corrupt)
    checker = SUITES[name].check
    checked, bad = 0, []
    for u in units:
        c, b = checker(ctx, u)
        checked += c
        bad.extend(b)
    return checked, bad


def run_suite(name: str, w: Window = DEFAULT_WINDOW, corrupt: bool = False,
              jobs: int = 1, minimize_first: int = 10,
              units: Optional[list] = None) -> Report:
    """Run one registered suite exhaustively over ``w``.

    ``corrupt`` swaps the admissibility relation used by ``decide`` for one
    that ignores precedence; it exists to show the suites can fail.
    ``units`` restricts the run to the given work units (e.g. one fixture).
    """
    if name not in SUITES:
        raise OracleError(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}")
    start = time.perf_counter()
    entry = SUITES[name]
    ctx = _context(w, corrupt)
    work = entry.units(ctx) if units is None else list(units)
    if jobs > 1 and len(work) > 1:
        shards = [work[k::jobs] for k in range(jobs)]
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_run_shard, [(name, w, corrupt, s) for s in shards]))
    else:
        results = [_run_shard((name, w, corrupt, work))]
    checked = sum(c for c, _ in results)
    raw = [item for _, b in results for item in b]
    raw.sort(key=lambda item: (render(item[0]), item[1]))
    fails = FAILS.get(name)
    if corrupt and name == "hall":
        fails = _hall_fails_corrupt
    elif corrupt and name == "closure":
        fails = lambda m, n: _closure_fails(m, n, corrupted_admissible)  # noqa: E731
    violations = []
    for k, (parts, detail) in enumerate(raw):
        original = render(parts)
        if fails is not None and k < minimize_first:
            parts = minimize(tuple(parts), fails)
        shown = render(parts)
        violations.append(Violation(shown, detail, None if shown == original else original))
    elapsed = (time.perf_counter() - start) * 1000
    return Report(name, str(w), checked, violations, elapsed)


def mx_divergence(w: Window = DEFAULT_WINDOW) -> list[tuple[Multisegment, Segment]]:
    """Generic instances where the literal and the saturation-filtered mx differ."""
    segs = list(enumerate_segments(w))
    out = []
    for n in enumerate_multisegments(w):
        if not n.is_generic():
            continue
        for d in segs:
            if derive.mx_modes_differ(n, d):
                out.append((n, d))
    return out


@dataclass
class FastpathStats:
    instances: int = 0
    agree: int = 0
    disagreements: list = field(default_factory=list)


def fastpath_crosscheck(w: Window = DEFAULT_WINDOW) -> dict[str, FastpathStats]:
    """Exploratory comparison of the two closed-form criteria with the matching test.

    The criteria are stated for pi = St(m) while the matching test reads m as
    a Zelevinsky parameter, so disagreement is expected and not an error.
    """
    from .mpi import fastpath_speh, fastpath_unlinked_tempered, ladder_order, PreconditionError

    stats = {"unlinked_tempered": FastpathStats(), "speh": FastpathStats()}
    ms = list(enumerate_multisegments(w))
    segs = list(enumerate_segments(w))
    singles = [Multisegment([d]) for d in segs]
    for m in ms:
        if not m:
            continue
        checks = []
        if m.is_generic():
            checks.append(("unlinked_tempered", fastpath_unlinked_tempered))
        try:
            ladder_order(m)
            checks.append(("speh", fastpath_speh))
        except PreconditionError:
            pass
        for key, fn in checks:
            for n in singles:
                st = stats[key]
                st.instances += 1
                fast, slow = fn(m, n), is_member(m, n)
                if fast == slow:
                    st.agree += 1
                elif len(st.disagreements) < 20:
                    st.disagreements.append((print_multisegment(m), print_multisegment(n), fast, slow))
    return stats
