"""Multisegment-level rewrites for big derivatives.

Only the combinatorial conclusions are computed: which multisegment a
derivative lands on when the rule's hypotheses hold.  Representation-level
hypotheses (e.g. that a derivative is nonzero) are the caller's to assert.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Union

from .core import (
    EMPTY,
    AnySegment,
    CuspidalPoint,
    Multisegment,
    Segment,
    is_saturated,
    lengths,
    linked,
    mult_sum,
)
from .notation import print_multisegment


class RuleError(ValueError):
    """A rewrite rule's hypotheses do not hold."""


class Rule(enum.Enum):
    SAME_END_STEINBERG = "SameEndSteinberg"
    NESTED_ZELEVINSKY = "NestedZelevinsky"
    COMPOSITION = "Composition"


@dataclass(frozen=True)
class DerivativeRewrite:
    input: Multisegment
    peeled: Union[Multisegment, Segment]
    output: Multisegment
    rule: Rule
    preconditions: tuple[str, ...] = ()

    def to_json(self) -> dict:
        peeled = self.peeled if isinstance(self.peeled, Multisegment) else Multisegment([self.peeled])
        return {
            "rule": self.rule.value,
            "input": print_multisegment(self.input),
            "peeled": print_multisegment(peeled),
            "output": print_multisegment(self.output),
            "preconditions": list(self.preconditions),
        }


class JacquetKind(enum.Enum):
    ZELEVINSKY = "zelevinsky"
    STEINBERG = "steinberg"


def jacquet_segment(kind: JacquetKind, delta: Segment, i: int) -> tuple[AnySegment, AnySegment]:
    """Factors of the Jacquet module along N_{i n(rho)}, as (left, right) segments.

    Zelevinsky: [a,b] -> [a,b-i] (x) [b-i+1,b]
    Steinberg:  [a,b] -> [a+i,b] (x) [a,a+i-1]
    """
    kind = JacquetKind(kind)
    rel = lengths(delta)[0]
    if not 0 <= i <= rel:
        raise RuleError(f"i = {i} outside 0..{rel}")
    a, b, line = delta.a, delta.b, delta.line
    if kind is JacquetKind.ZELEVINSKY:
        return Segment.make(line, a, b - i), Segment.make(line, b - i + 1, b)
    return Segment.make(line, a + i, b), Segment.make(line, a, a + i - 1)


def jacquet_absolute(kind: JacquetKind, delta: Segment, j: int) -> Optional[tuple[AnySegment, AnySegment]]:
    """Same as ``jacquet_segment`` with j in absolute units; None when n(rho) does not divide j."""
    k = delta.line.dim
    if j % k:
        return None
    return jacquet_segment(kind, delta, j // k)


def _check(cond: bool, text: str, transcript: list[str]) -> None:
    if not cond:
        raise RuleError(f"precondition failed: {text}")
    transcript.append(text)


def rewrite_same_end_steinberg(p: Multisegment, delta: Segment) -> DerivativeRewrite:
    notes: list[str] = []
    _check(delta in p, f"{delta} occurs in {print_multisegment(p)}", notes)
    ends = {s.end for s in p}
    _check(len(ends) == 1, f"all segments of {print_multisegment(p)} share the right end {delta.end}", notes)
    return DerivativeRewrite(p, delta, p - delta, Rule.SAME_END_STEINBERG, tuple(notes))


def derivative_same_end_steinberg(p: Multisegment, delta: Segment) -> Multisegment:
    return rewrite_same_end_steinberg(p, delta).output


def rewrite_nested_zelevinsky(m: Multisegment, peel: Union[Segment, Multisegment]) -> DerivativeRewrite:
    """Peel a segment that contains all others, or a sub-multiset of copies of one segment."""
    notes: list[str] = []
    if isinstance(peel, Segment):
        _check(peel in m, f"{peel} occurs in {print_multisegment(m)}", notes)
        _check(all(s in peel for s in m), f"every segment of {print_multisegment(m)} lies inside {peel}", notes)
        return DerivativeRewrite(m, peel, m - peel, Rule.NESTED_ZELEVINSKY, tuple(notes))
    _check(len(set(m)) <= 1, f"all segments of {print_multisegment(m)} are equal", notes)
    _check(peel.issubset(m), f"{print_multisegment(peel)} is a sub-multisegment of {print_multisegment(m)}", notes)
    return DerivativeRewrite(m, peel, m - peel, Rule.NESTED_ZELEVINSKY, tuple(notes))


def derivative_nested_zelevinsky(m: Multisegment, peel: Union[Segment, Multisegment]) -> Multisegment:
    return rewrite_nested_zelevinsky(m, peel).output


def rewrite_step(m: Multisegment, peel: Multisegment) -> DerivativeRewrite:
    """Apply whichever subtraction rule accepts ``peel`` at ``m``."""
    errors = []
    if len(peel) == 1:
        seg = peel.entries[0]
        for fn in (rewrite_same_end_steinberg, rewrite_nested_zelevinsky):
            try:
                return fn(m, seg)
            except RuleError as exc:
                errors.append(str(exc))
    try:
        return rewrite_nested_zelevinsky(m, peel)
    except RuleError as exc:
        errors.append(str(exc))
    raise RuleError("; ".join(errors))


@dataclass
class ComposeResult:
    ok: bool
    orders_checked: int = 0
    mismatch: Optional[tuple[int, int]] = None
    steps: list[DerivativeRewrite] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _peels_unlinked(p: Multisegment, q: Multisegment) -> bool:
    return not any(linked(s, t) for s in p for t in q)


def permitted_orders(chain: list[Multisegment]) -> list[tuple[int, ...]]:
    """Orders reachable from the given one by swapping adjacent, mutually unlinked peels."""
    start = tuple(range(len(chain)))
    seen = {start}
    frontier = [start]
    while frontier:
        order = frontier.pop()
        for k in range(len(order) - 1):
            if _peels_unlinked(chain[order[k]], chain[order[k + 1]]):
                swapped = order[:k] + (order[k + 1], order[k]) + order[k + 2:]
                if swapped not in seen:
                    seen.add(swapped)
                    frontier.append(swapped)
    return sorted(seen)


def compose_check(m: Multisegment, chain: list[Multisegment]) -> ComposeResult:
    """Peeling step by step equals peeling the whole chain at once, in every permitted order.

    The given order must satisfy a rule at each step (RuleError otherwise,
    naming the step).  Reorderings are compared at the multiset level.
    """
    steps = []
    current = m
    for k, peel in enumerate(chain):
        try:
            step = rewrite_step(current, peel)
        except RuleError as exc:
            raise RuleError(f"step {k}: {exc}") from None
        steps.append(step)
        current = step.output
    total = m - mult_sum(*chain)
    orders = permitted_orders(chain)
    for order in orders:
        cur = m
        for k in order:
            if not chain[k].issubset(cur):
                return ComposeResult(False, len(orders), (order[0], k), steps)
            cur = cur - chain[k]
        if cur != total:
            return ComposeResult(False, len(orders), (order[0], order[-1]), steps)
    return ComposeResult(current == total, len(orders), None, steps)


class GenericError(ValueError):
    pass


def _require_generic(n: Multisegment) -> None:
    if not n.is_generic():
        raise GenericError(f"{print_multisegment(n)} is not generic")


def mx_generic(n: Multisegment, delta: Segment, filter_saturated: bool = True) -> Multisegment:
    """The mx multisegment of St(n) at ``delta`` for generic ``n``.

    Unfiltered: {[a(D'), b(delta)] : D' in n, a(D') <= b(delta)}.
    Filtered (default) also requires a(delta) <= a(D'), i.e. keeps only
    delta-saturated segments.
    """
    _require_generic(n)
    out = []
    for s in n:
        if s.line != delta.line or s.a > delta.b:
            continue
        if filter_saturated and s.a < delta.a:
            continue
        out.append(Segment(delta.line, s.a, delta.b))
    return Multisegment(out)


@dataclass(frozen=True)
class EtaVector:
    """Multiplicities of [a,b], [a+1,b], ..., [b,b] for base [a,b]."""

    base: Segment
    entries: tuple[int, ...]

    def segments(self) -> list[Segment]:
        return [Segment(self.base.line, c, self.base.b) for c in range(self.base.a, self.base.b + 1)]

    def as_dict(self) -> dict[Segment, int]:
        return dict(zip(self.segments(), self.entries))

    def to_json(self) -> dict:
        return {"base": str(self.base), "entries": [[str(s), k] for s, k in self.as_dict().items()]}


def eta_generic(n: Multisegment, delta: Segment) -> EtaVector:
    mx = mx_generic(n, delta, True)
    counts = mx.counts()
    entries = tuple(counts[Segment(delta.line, c, delta.b)] for c in range(delta.a, delta.b + 1))
    return EtaVector(delta, entries)


def mxpt_b_generic(n: Multisegment, point: CuspidalPoint) -> Multisegment:
    _require_generic(n)
    sl = n.slice_b(point)
    if not sl:
        raise RuleError(f"no segment of {print_multisegment(n)} ends at {point}")
    longest = max(lengths(s)[0] for s in sl)
    candidates = sorted({s for s in sl if lengths(s)[0] == longest})
    if len(candidates) > 1:
        raise RuleError(f"longest segment ending at {point} is ambiguous: {candidates}")
    return mx_generic(n, candidates[0], True)


def vanishing_predicate(delta: Segment, delta_prime: Segment) -> bool:
    """a(delta) <= a(delta') <= b(delta) <= b(delta') on a common line."""
    return (delta.line == delta_prime.line
            and delta.a <= delta_prime.a <= delta.b <= delta_prime.b)


def mx_modes_differ(n: Multisegment, delta: Segment) -> bool:
    return mx_generic(n, delta, True) != mx_generic(n, delta, False)


def chains(m: Multisegment, max_len: int = 3) -> list[list[Multisegment]]:
    """Every rule-respecting peel chain of length 1..max_len starting at ``m``."""
    out: list[list[Multisegment]] = []

    def candidates(cur: Multisegment) -> list[Multisegment]:
        cands = []
        for seg in cur.distinct():
            try:
                rewrite_step(cur, Multisegment([seg]))
                cands.append(Multisegment([seg]))
            except RuleError:
                pass
        if cur and len(set(cur)) == 1:
            for k in range(2, len(cur) + 1):
                cands.append(Multisegment(cur.entries[:k]))
        return cands

    def grow(cur: Multisegment, prefix: list[Multisegment]):
        if len(prefix) == max_len:
            return
        for peel in candidates(cur):
            chain = prefix + [peel]
            out.append(chain)
            grow(cur - peel, chain)

    grow(m, [])
    return out


__all__ = [
    "RuleError", "Rule", "DerivativeRewrite", "JacquetKind", "jacquet_segment", "jacquet_absolute",
    "rewrite_same_end_steinberg", "derivative_same_end_steinberg", "rewrite_nested_zelevinsky",
    "derivative_nested_zelevinsky", "rewrite_step", "ComposeResult", "permitted_orders",
    "compose_check", "GenericError", "mx_generic", "EtaVector", "eta_generic", "mxpt_b_generic",
    "vanishing_predicate", "mx_modes_differ", "chains", "is_saturated", "EMPTY",
]
