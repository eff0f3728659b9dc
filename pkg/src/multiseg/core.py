"""Segments and multisegments on cuspidal lines.

A cuspidal line is the orbit ``{nu^a rho : a in Z}`` of a fixed cuspidal
representation under the unramified shift.  Everything here is combinatorial:
a point on a line is an integer exponent, a segment is a contiguous interval
of exponents, and a multisegment is a finite multiset of nonempty segments.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union


class MultisegmentError(ValueError):
    """Raised on malformed segments or invalid multiset arithmetic."""


@dataclass(frozen=True, order=True)
class CuspidalLine:
    """A Z-torsor of cuspidal representations.

    ``dim`` is n(rho), the size of the general linear group the cuspidal
    representation lives on.  ``dual_id`` names the line of rho^vee; ``None``
    means the line is self-dual.
    """

    id: str
    dim: int = 1
    dual_id: Optional[str] = None

    def __post_init__(self):
        if self.dim < 1:
            raise MultisegmentError(f"line {self.id!r}: dim must be >= 1, got {self.dim}")
        if self.dual_id == self.id:
            object.__setattr__(self, "dual_id", None)

    @property
    def self_dual(self) -> bool:
        return self.dual_id is None

    def dual(self) -> "CuspidalLine":
        if self.dual_id is None:
            return self
        return CuspidalLine(self.dual_id, self.dim, self.id)


DEFAULT_LINE = CuspidalLine("1")


@dataclass(frozen=True, order=True)
class CuspidalPoint:
    """The cuspidal representation ``nu^exp rho`` with rho the base of ``line``."""

    line: CuspidalLine
    exp: int

    def comparable(self, other: "CuspidalPoint") -> bool:
        return self.line == other.line

    def precedes(self, other: "CuspidalPoint") -> bool:
        """Strict order: same line and the exponent goes up by a positive integer."""
        return self.line == other.line and self.exp < other.exp

    def shift(self, c: int = 1) -> "CuspidalPoint":
        return CuspidalPoint(self.line, self.exp + c)

    def __str__(self):
        if self.line == DEFAULT_LINE:
            return f"nu^{self.exp}"
        return f"nu^{self.exp}{self.line.id}"


class _Empty:
    """The empty segment [a, a-1].  Only ever produced as an intersection."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "EMPTY"

    def __bool__(self):
        return False

    def __reduce__(self):
        return (_Empty, ())


EMPTY = _Empty()


@dataclass(frozen=True, order=True)
class Segment:
    """The segment ``[a, b]_rho``; always nonempty (``a <= b``)."""

    line: CuspidalLine
    a: int
    b: int

    def __post_init__(self):
        if self.b < self.a:
            raise MultisegmentError(f"empty segment [{self.a},{self.b}] is not a Segment value")

    @classmethod
    def of(cls, a: int, b: Optional[int] = None, line: CuspidalLine = DEFAULT_LINE) -> "Segment":
        return cls(line, a, a if b is None else b)

    @classmethod
    def make(cls, line: CuspidalLine, a: int, b: int) -> Union["Segment", _Empty]:
        """Like the constructor but normalises ``b < a`` to EMPTY."""
        if b < a:
            return EMPTY
        return cls(line, a, b)

    @property
    def start(self) -> CuspidalPoint:
        return CuspidalPoint(self.line, self.a)

    @property
    def end(self) -> CuspidalPoint:
        return CuspidalPoint(self.line, self.b)

    def points(self) -> list[CuspidalPoint]:
        return [CuspidalPoint(self.line, e) for e in range(self.a, self.b + 1)]

    def __contains__(self, other) -> bool:
        if isinstance(other, Segment):
            return other.line == self.line and self.a <= other.a and other.b <= self.b
        if isinstance(other, CuspidalPoint):
            return other.line == self.line and self.a <= other.exp <= self.b
        return False

    def __str__(self):
        body = f"[{self.a}]" if self.a == self.b else f"[{self.a},{self.b}]"
        if self.line != DEFAULT_LINE:
            body += f"_{self.line.id}"
        return body


AnySegment = Union[Segment, _Empty]


class Relation(enum.Enum):
    EQUAL = "equal"
    CONTAINS = "contains"
    CONTAINED_IN = "contained_in"
    UNLINKED_DISJOINT = "unlinked_disjoint"
    LINKED_BEFORE = "linked_before"
    LINKED_AFTER = "linked_after"
    DIFFERENT_LINE = "different_line"


def segment_relation(d1: Segment, d2: Segment) -> Relation:
    if d1.line != d2.line:
        return Relation.DIFFERENT_LINE
    if d1.a == d2.a and d1.b == d2.b:
        return Relation.EQUAL
    if d1.a <= d2.a and d2.b <= d1.b:
        return Relation.CONTAINS
    if d2.a <= d1.a and d1.b <= d2.b:
        return Relation.CONTAINED_IN
    # no containment from here on; the union is a segment iff there is no gap
    if d1.a < d2.a:
        return Relation.LINKED_BEFORE if d2.a <= d1.b + 1 else Relation.UNLINKED_DISJOINT
    return Relation.LINKED_AFTER if d1.a <= d2.b + 1 else Relation.UNLINKED_DISJOINT


def precedes(d1: Segment, d2: Segment) -> bool:
    """``d1 < d2``: linked with a(d1) < a(d2)."""
    return d1.line == d2.line and d1.a < d2.a and d1.b < d2.b and d2.a <= d1.b + 1


def linked(d1: Segment, d2: Segment) -> bool:
    return precedes(d1, d2) or precedes(d2, d1)


def union_intersection(d1: Segment, d2: Segment) -> tuple[Segment, AnySegment]:
    if not linked(d1, d2):
        raise MultisegmentError(f"{d1} and {d2} are not linked")
    line = d1.line
    return (
        Segment(line, min(d1.a, d2.a), max(d1.b, d2.b)),
        Segment.make(line, max(d1.a, d2.a), min(d1.b, d2.b)),
    )


def shift_left(d: Segment) -> Segment:
    return Segment(d.line, d.a - 1, d.b - 1)


def shift_right(d: Segment) -> Segment:
    return Segment(d.line, d.a + 1, d.b + 1)


def juxtaposed(d1: Segment, d2: Segment) -> bool:
    return d1.line == d2.line and (d1.b + 1 == d2.a or d2.b + 1 == d1.a)


def is_saturated(d_prime: Segment, d: Segment) -> bool:
    """Whether ``d_prime`` is ``d``-saturated: same right end, starts no earlier."""
    return d_prime.line == d.line and d_prime.b == d.b and d.a <= d_prime.a


def leq_b(d: Segment, d_prime: Segment) -> bool:
    if d == d_prime:
        return True
    if d.line != d_prime.line:
        return False
    return d.b < d_prime.b or (d.b == d_prime.b and d.a <= d_prime.a)


def leq_a(d: Segment, d_prime: Segment) -> bool:
    if d == d_prime:
        return True
    if d.line != d_prime.line:
        return False
    return d.a < d_prime.a or (d.a == d_prime.a and d.b <= d_prime.b)


def lengths(x: Union[AnySegment, "Multisegment"]) -> tuple[int, int]:
    """(relative, absolute) length; the relative length of a multisegment sums its entries."""
    if x is EMPTY:
        return 0, 0
    if isinstance(x, Segment):
        rel = x.b - x.a + 1
        return rel, rel * x.line.dim
    rel = absolute = 0
    for seg in x:
        r, ab = lengths(seg)
        rel += r
        absolute += ab
    return rel, absolute


@dataclass(frozen=True, init=False)
class Multisegment:
    """A finite multiset of nonempty segments, stored sorted by (line, a, b)."""

    entries: tuple[Segment, ...] = field(default=())

    def __init__(self, segments: Iterable[AnySegment] = ()):
        segs = []
        for s in segments:
            if s is EMPTY:
                continue
            if not isinstance(s, Segment):
                raise TypeError(f"not a segment: {s!r}")
            segs.append(s)
        object.__setattr__(self, "entries", tuple(sorted(segs)))

    @classmethod
    def of(cls, *pairs, line: CuspidalLine = DEFAULT_LINE) -> "Multisegment":
        """Shorthand: ``Multisegment.of((0,), (1, 5))`` is {[0], [1,5]}."""
        return cls(Segment.of(*p, line=line) for p in pairs)

    def __iter__(self) -> Iterator[Segment]:
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __bool__(self):
        return bool(self.entries)

    def __contains__(self, seg) -> bool:
        return seg in self.entries

    def __lt__(self, other: "Multisegment") -> bool:
        return (len(self), self.entries) < (len(other), other.entries)

    def counts(self) -> Counter:
        return Counter(self.entries)

    def count(self, seg: Segment) -> int:
        return self.entries.count(seg)

    def distinct(self) -> list[Segment]:
        return sorted(set(self.entries))

    def __add__(self, other: Union["Multisegment", Segment]) -> "Multisegment":
        if isinstance(other, Segment):
            return Multisegment(self.entries + (other,))
        return Multisegment(self.entries + other.entries)

    def __sub__(self, other: Union["Multisegment", Segment]) -> "Multisegment":
        if isinstance(other, Segment):
            other = Multisegment([other])
        left = self.counts()
        for seg, k in other.counts().items():
            if left[seg] < k:
                raise MultisegmentError(
                    f"cannot subtract {seg}: multiplicity {k} exceeds {left[seg]}"
                )
            left[seg] -= k
        return Multisegment(left.elements())

    def issubset(self, other: "Multisegment") -> bool:
        theirs = other.counts()
        return all(theirs[s] >= k for s, k in self.counts().items())

    def support(self) -> Counter:
        """The cuspidal support as a multiset of points."""
        supp: Counter = Counter()
        for seg in self.entries:
            supp.update(seg.points())
        return supp

    def is_generic(self) -> bool:
        segs = self.entries
        return not any(
            linked(segs[i], segs[j]) for i in range(len(segs)) for j in range(i + 1, len(segs))
        )

    def is_saturated(self, d: Segment) -> bool:
        return all(is_saturated(s, d) for s in self.entries)

    def slice_b(self, point: CuspidalPoint) -> "Multisegment":
        return Multisegment(s for s in self.entries if s.end == point)

    def dual(self) -> "Multisegment":
        return Multisegment(dual(s) for s in self.entries)

    def lines(self) -> list[CuspidalLine]:
        return sorted({s.line for s in self.entries})

    def __str__(self):
        # notation.print_multisegment is the canonical printer; this mirrors it
        return "+".join(str(s) for s in self.entries) if self.entries else "0"

    def __repr__(self):
        return f"Multisegment({self})"


def dual(x):
    """Contragredient: [a,b]_rho -> [-b,-a]_{rho^vee}, entrywise on multisegments."""
    if isinstance(x, Multisegment):
        return x.dual()
    if x is EMPTY:
        return EMPTY
    return Segment(x.line.dual(), -x.b, -x.a)


def mult_sum(*ms: Multisegment) -> Multisegment:
    out = Multisegment()
    for m in ms:
        out = out + m
    return out


def canonical_labeling(m: Multisegment) -> list[Segment]:
    """Order the segments so that no b(D_i) < b(D_{i+1}).

    Within a line the right ends are non-increasing; ties fall back to the
    canonical segment order so the result is deterministic.
    """
    return sorted(m.entries, key=lambda s: (s.line, -s.b, s.a))
