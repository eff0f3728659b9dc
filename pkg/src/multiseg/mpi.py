"""Membership in M_pi for pi = <m>, and the downward-closure check.

``n`` lies in M_pi when <D> x pi is irreducible for every segment D of n.
The set is closed under the Zelevinsky order; ``closure_check`` re-verifies
that on a given n by walking its whole lower set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import matching
from .core import (
    Multisegment,
    MultisegmentError,
    Segment,
    juxtaposed,
    precedes,
    shift_right,
    union_intersection,
)
from .matching import Admissible, Side
from .notation import print_multisegment
from .zposet import DEFAULT_BUDGET, lower_set


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class SegmentVerdict:
    segment: Segment
    lc: bool
    rc: bool

    @property
    def in_M(self) -> bool:
        return self.lc and self.rc


@dataclass(frozen=True)
class MembershipReport:
    m: Multisegment
    n: Multisegment
    verdicts: tuple[SegmentVerdict, ...]

    @property
    def overall(self) -> bool:
        return all(v.in_M for v in self.verdicts)

    def failing(self) -> list[Segment]:
        return [v.segment for v in self.verdicts if not v.in_M]

    def to_json(self) -> dict:
        return {
            "m": print_multisegment(self.m),
            "n": print_multisegment(self.n),
            "verdicts": [
                {"segment": str(v.segment), "lc": v.lc, "rc": v.rc, "in_M": v.in_M}
                for v in self.verdicts
            ],
            "overall": self.overall,
        }


def in_M(m: Multisegment, n: Multisegment, admissible: Optional[Admissible] = None) -> MembershipReport:
    verdicts = []
    for d in n.distinct():
        verdicts.append(SegmentVerdict(d, matching.lc(m, d, admissible), matching.rc(m, d, admissible)))
    return MembershipReport(m, n, tuple(verdicts))


def is_member(m: Multisegment, n: Multisegment, admissible: Optional[Admissible] = None) -> bool:
    """Fast boolean form of ``in_M(...).overall`` backed by the cached product test."""
    return all(matching.is_irreducible_product(m, d, admissible) for d in n.distinct())


@dataclass
class Verdict:
    holds: bool
    nodes_checked: int
    counterexample: Optional[dict] = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"holds": self.holds, "nodes_checked": self.nodes_checked,
                "counterexample": self.counterexample}


def _dump_failure(m: Multisegment, node: Multisegment, report: MembershipReport) -> dict:
    dump = {"node": print_multisegment(node), "report": report.to_json(), "sets": []}
    for d in report.failing():
        x, xt = matching.lc_sets(m, d)
        y, yt = matching.rc_sets(m, d)
        dump["sets"].append({"segment": str(d), "X": list(x), "Xt": list(xt), "Y": list(y), "Yt": list(yt)})
    return dump


def closure_check(m: Multisegment, n: Multisegment, budget: int = DEFAULT_BUDGET,
                  admissible: Optional[Admissible] = None) -> Verdict:
    """Check every n' <=_Z n is in M_<m>; ``n`` itself must already be in it."""
    if not is_member(m, n, admissible):
        raise PreconditionError(f"{print_multisegment(n)} is not in M for m = {print_multisegment(m)}")
    graph = lower_set(n, budget)
    for count, node in enumerate(graph.nodes, 1):
        if not is_member(m, node, admissible):
            report = in_M(m, node, admissible)
            return Verdict(False, count, _dump_failure(m, node, report))
    return Verdict(True, len(graph.nodes))


def fastpath_unlinked_tempered(m: Multisegment, n: Multisegment) -> bool:
    """Criterion for pi = St(m) with m generic: no segment of n juxtaposed to one of m."""
    if not m.is_generic():
        raise PreconditionError(f"{print_multisegment(m)} is not generic")
    return not any(juxtaposed(d1, d2) for d1 in n for d2 in m)


def ladder_order(m: Multisegment) -> list[Segment]:
    """Segments of a Speh-type multisegment in increasing order.

    Here a ladder means consecutive unit right-shifts of one segment on one
    line, all of the same length.
    """
    segs = sorted(m, key=lambda s: (s.a, s.b))
    if not segs:
        raise PreconditionError("the empty multisegment is not a ladder")
    for prev, nxt in zip(segs, segs[1:]):
        if nxt != shift_right(prev):
            raise PreconditionError(f"{print_multisegment(m)} is not a ladder: {nxt} follows {prev}")
    return segs


def fastpath_speh(m: Multisegment, n: Multisegment) -> bool:
    segs = ladder_order(m)
    first, last = segs[0], segs[-1]
    return all(not precedes(d, first) and not precedes(last, d) for d in n)


def pair_constructions(m: Multisegment, dx: Segment, dy: Segment) -> Optional[dict]:
    """Build the union/intersection LC witnesses for dx < dy from fresh witnesses.

    Returns None when LC(m,dx), LC(m,dy) or RC(m,dx) fails.
    """
    fx = matching.decide(Side.LC, m, dx)
    fy = matching.decide(Side.LC, m, dy)
    fr = matching.decide(Side.RC, m, dx)
    if fx is None or fy is None or fr is None:
        return None
    out = {"union": matching.combine_union_witness(m, dx, dy, fx, fy, fr), "intersection": None}
    if union_intersection(dx, dy)[1]:
        out["intersection"] = matching.combine_intersection_witness(m, dx, dy, fx, fy, fr)
    return out


__all__ = [
    "PreconditionError", "SegmentVerdict", "MembershipReport", "Verdict", "in_M", "is_member",
    "closure_check", "fastpath_unlinked_tempered", "fastpath_speh", "ladder_order",
    "pair_constructions", "MultisegmentError",
]
