"""LC/RC matching conditions for products of a multisegment with a segment.

For ``m`` labelled ``D_1, ..., D_r`` (see ``core.canonical_labeling``) and a
segment ``D``::

    X  = {i : D_i < D}        Xt = {i : <-D_i < D}
    Y  = {i : D < D_i}        Yt = {i : <-D < D_i}

LC(m, D) asks for an injection f: X -> Xt with D_i < D_f(i); RC(m, D) for an
injection Y -> Yt with D_f(i) < D_i.  Both together are equivalent to the
irreducibility of <m> x <D>.  Everything below works on label indices, so
repeated segments are distinct vertices.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Optional

from .core import (
    Multisegment,
    MultisegmentError,
    Segment,
    canonical_labeling,
    precedes,
    shift_left,
    shift_right,
    union_intersection,
)

# admissible(side, labels, i, j): may left index i be sent to right index j
Admissible = Callable[["Side", tuple, int, int], bool]

BRUTE_BOUND = 6


class Side(enum.Enum):
    LC = "LC"
    RC = "RC"


class WitnessError(ValueError):
    pass


def true_admissible(side: "Side", labels: tuple, i: int, j: int) -> bool:
    if side is Side.LC:
        return precedes(labels[i], labels[j])
    return precedes(labels[j], labels[i])


@dataclass(frozen=True)
class MatchingInstance:
    m: Multisegment
    target: Segment
    side: Side
    labels: tuple[Segment, ...]
    left: tuple[int, ...]
    right: tuple[int, ...]

    def edges(self, admissible: Optional[Admissible] = None) -> dict[int, list[int]]:
        adm = admissible or true_admissible
        return {i: [j for j in self.right if adm(self.side, self.labels, i, j)] for i in self.left}


@dataclass(frozen=True)
class MatchingWitness:
    """An injective assignment left -> right, stored as sorted (left, right) pairs."""

    side: Side
    m: Multisegment
    target: Segment
    assignment: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict[int, int]:
        return dict(self.assignment)

    def __call__(self, i: int) -> int:
        return self.as_dict()[i]

    def to_json(self) -> list[list[int]]:
        return [[i, j] for i, j in self.assignment]

    def describe(self) -> list[str]:
        labels = canonical_labeling(self.m)
        return [f"{labels[i]} -> {labels[j]}" for i, j in self.assignment]


def lc_sets(m: Multisegment, delta: Segment) -> tuple[tuple[int, ...], tuple[int, ...]]:
    labels = canonical_labeling(m)
    left = tuple(i for i, d in enumerate(labels) if precedes(d, delta))
    right = tuple(i for i, d in enumerate(labels) if precedes(shift_left(d), delta))
    # shifting both sides: <-D_i < D  iff  D_i < D->
    assert right == tuple(i for i, d in enumerate(labels) if precedes(d, shift_right(delta)))
    return left, right


def rc_sets(m: Multisegment, delta: Segment) -> tuple[tuple[int, ...], tuple[int, ...]]:
    labels = canonical_labeling(m)
    left = tuple(i for i, d in enumerate(labels) if precedes(delta, d))
    back = shift_left(delta)
    right = tuple(i for i, d in enumerate(labels) if precedes(back, d))
    return left, right


def instance(side: Side, m: Multisegment, delta: Segment) -> MatchingInstance:
    left, right = (lc_sets if side is Side.LC else rc_sets)(m, delta)
    return MatchingInstance(m, delta, side, tuple(canonical_labeling(m)), left, right)


def _augment(i: int, edges: dict, owner: dict, seen: set, banned: frozenset) -> bool:
    for j in edges[i]:
        if j in seen or j in banned:
            continue
        seen.add(j)
        if j not in owner or _augment(owner[j], edges, owner, seen, banned):
            owner[j] = i
            return True
    return False


def max_matching(edges: dict[int, list[int]], lefts=None, banned: frozenset = frozenset()) -> dict[int, int]:
    """Augmenting-path maximum matching; returns left -> right."""
    owner: dict[int, int] = {}
    for i in (edges if lefts is None else lefts):
        _augment(i, edges, owner, set(), banned)
    return {i: j for j, i in owner.items()}


def _lexmin_perfect(edges: dict[int, list[int]]) -> Optional[dict[int, int]]:
    """Lexicographically smallest full assignment of the left side, or None."""
    lefts = sorted(edges)
    if len(max_matching(edges)) < len(lefts):
        return None
    fixed: dict[int, int] = {}
    for pos, i in enumerate(lefts):
        rest = lefts[pos + 1:]
        for j in sorted(edges[i]):
            if j in fixed.values():
                continue
            banned = frozenset(fixed.values()) | {j}
            if len(max_matching(edges, rest, banned)) == len(rest):
                fixed[i] = j
                break
        else:  # pragma: no cover - feasibility was established above
            return None
    return fixed


def decide(side: Side, m: Multisegment, delta: Segment,
           admissible: Optional[Admissible] = None) -> Optional[MatchingWitness]:
    """The lexicographically smallest witness for LC/RC, or None if none exists."""
    inst = instance(side, m, delta)
    found = _lexmin_perfect(inst.edges(admissible))
    if found is None:
        return None
    return MatchingWitness(side, m, delta, tuple(sorted(found.items())))


def brute_decide(side: Side, m: Multisegment, delta: Segment,
                 bound: int = BRUTE_BOUND) -> Optional[MatchingWitness]:
    """Reference decision by enumerating every injection; first hit in lexicographic order."""
    for w in all_witnesses(side, m, delta, bound):
        return w
    return None


def all_witnesses(side: Side, m: Multisegment, delta: Segment,
                  bound: int = BRUTE_BOUND) -> Iterator[MatchingWitness]:
    labels = canonical_labeling(m)
    left, right = (lc_sets if side is Side.LC else rc_sets)(m, delta)
    if len(left) > bound:
        raise WitnessError(f"|left| = {len(left)} exceeds brute-force bound {bound}")
    for image in itertools.permutations(right, len(left)):
        ok = True
        for i, j in zip(left, image):
            d_i, d_j = labels[i], labels[j]
            if not (precedes(d_i, d_j) if side is Side.LC else precedes(d_j, d_i)):
                ok = False
                break
        if ok:
            yield MatchingWitness(side, m, delta, tuple(sorted(zip(left, image))))


def lc(m: Multisegment, delta: Segment, admissible: Optional[Admissible] = None) -> bool:
    return decide(Side.LC, m, delta, admissible) is not None


def rc(m: Multisegment, delta: Segment, admissible: Optional[Admissible] = None) -> bool:
    return decide(Side.RC, m, delta, admissible) is not None


@lru_cache(maxsize=1 << 18)
def is_irreducible_product(m: Multisegment, delta: Segment,
                           admissible: Optional[Admissible] = None) -> bool:
    """Whether <m> x <delta> is irreducible: LC and RC both hold."""
    return lc(m, delta, admissible) and rc(m, delta, admissible)


def validate_witness(w: MatchingWitness) -> None:
    """Raise WitnessError unless ``w`` is a full, injective, admissible assignment."""
    left, right = (lc_sets if w.side is Side.LC else rc_sets)(w.m, w.target)
    labels = canonical_labeling(w.m)
    f = dict(w.assignment)
    if len(f) != len(w.assignment):
        raise WitnessError("left index assigned twice")
    if set(f) != set(left):
        raise WitnessError(f"domain {sorted(f)} differs from left set {list(left)}")
    if len(set(f.values())) != len(f):
        raise WitnessError("assignment is not injective")
    for i, j in f.items():
        if j not in right:
            raise WitnessError(f"{labels[j]} (index {j}) is outside the right set")
        ok = precedes(labels[i], labels[j]) if w.side is Side.LC else precedes(labels[j], labels[i])
        if not ok:
            raise WitnessError(f"{labels[i]} -> {labels[j]} violates strict precedence")


def is_valid_witness(w: MatchingWitness) -> bool:
    try:
        validate_witness(w)
    except WitnessError:
        return False
    return True


def _check_inputs(m, dx, dy, fx, fy, fr):
    if not precedes(dx, dy):
        raise WitnessError(f"need {dx} < {dy} (linked, {dx} first)")
    expected = ((fx, Side.LC, dx), (fy, Side.LC, dy), (fr, Side.RC, dx))
    for w, side, target in expected:
        if w.side is not side or w.target != target or w.m != m:
            raise WitnessError(f"expected a {side.value} witness for ({m}, {target})")
        validate_witness(w)


def combine_union_witness(m: Multisegment, dx: Segment, dy: Segment,
                          fx: MatchingWitness, fy: MatchingWitness,
                          fr: MatchingWitness) -> MatchingWitness:
    """LC witness for dx u dy assembled from witnesses for dx and dy.

    Indices in X^{dx} keep their dx-image; indices only in X^{dy} take their
    dy-image.  ``fr`` (an RC witness for dx) is not consulted by the map, it is
    required because the construction is only sound when RC(m, dx) holds.
    """
    _check_inputs(m, dx, dy, fx, fy, fr)
    union, _ = union_intersection(dx, dy)
    x_union, _ = lc_sets(m, union)
    x_x, _ = lc_sets(m, dx)
    x_y, _ = lc_sets(m, dy)
    gx, gy = fx.as_dict(), fy.as_dict()
    out = {}
    for i in x_union:
        if i in x_x:
            out[i] = gx[i]
        elif i in x_y:
            out[i] = gy[i]
        else:
            raise WitnessError(f"index {i} lies in X of the union but in neither X^dx nor X^dy")
    return MatchingWitness(Side.LC, m, union, tuple(sorted(out.items())))


def combine_intersection_witness(m: Multisegment, dx: Segment, dy: Segment,
                                 fx: MatchingWitness, fy: MatchingWitness,
                                 fr: MatchingWitness) -> MatchingWitness:
    _check_inputs(m, dx, dy, fx, fy, fr)
    _, inter = union_intersection(dx, dy)
    if not inter:
        raise WitnessError(f"{dx} and {dy} have empty intersection")
    x_inter, _ = lc_sets(m, inter)
    x_x, _ = lc_sets(m, dx)
    x_y, _ = lc_sets(m, dy)
    gx, gy = fx.as_dict(), fy.as_dict()
    out = {}
    for i in x_inter:
        if i in x_x:
            out[i] = gx[i]
        elif i in x_y:
            out[i] = gy[i]
        else:
            raise WitnessError(f"index {i} lies in X of the intersection but not in X^dy")
    return MatchingWitness(Side.LC, m, inter, tuple(sorted(out.items())))


def obstruction_sets(kind: str, m: Multisegment, dx: Segment, dy: Segment,
                     fy: MatchingWitness) -> tuple[int, ...]:
    """The index sets N and O that must be empty for the combinators to be sound.

    N: i in X^{dy} with a(dx) < a(fy(i)), dx inside D_i and a(D_i) != a(dx).
    O: i in X^{dy} with a(dx) <= a(D_i) <= b(D_i) < b(dx) and b(dx) < b(fy(i)).
    """
    if kind not in ("N", "O"):
        raise ValueError(f"unknown obstruction kind {kind!r}; use 'N' or 'O'")
    if not precedes(dx, dy):
        raise WitnessError(f"need {dx} < {dy}")
    labels = canonical_labeling(m)
    x_y, _ = lc_sets(m, dy)
    g = fy.as_dict()
    out = []
    for i in x_y:
        d, img = labels[i], labels[g[i]]
        if kind == "N":
            hit = dx.a < img.a and dx in d and d.a != dx.a
        else:
            hit = dx.a <= d.a and d.b < dx.b and dx.b < img.b
        if hit:
            out.append(i)
    return tuple(out)


def right_matching_image_ok(m: Multisegment, dx: Segment, dy: Segment,
                            fr: MatchingWitness) -> list[int]:
    """Indices i in Y^{dx} & Xt^{dy} whose image fr(i) falls outside X^{dy}.

    Empty for every valid RC witness ``fr`` of dx when dx < dy.
    """
    y_x, _ = rc_sets(m, dx)
    x_y, xt_y = lc_sets(m, dy)
    g = fr.as_dict()
    return [i for i in y_x if i in xt_y and g[i] not in x_y]


__all__ = [
    "Side", "MatchingInstance", "MatchingWitness", "WitnessError", "BRUTE_BOUND",
    "lc_sets", "rc_sets", "instance", "decide", "brute_decide", "all_witnesses",
    "lc", "rc", "is_irreducible_product", "validate_witness", "is_valid_witness",
    "combine_union_witness", "combine_intersection_witness", "obstruction_sets",
    "right_matching_image_ok", "max_matching", "true_admissible", "MultisegmentError",
]
