import itertools

import pytest
from hypothesis import given

from conftest import LINES, RHO, M, S, multisegments, segments
from multiseg.core import (
    EMPTY,
    CuspidalLine,
    CuspidalPoint,
    Multisegment,
    MultisegmentError,
    Relation,
    Segment,
    canonical_labeling,
    dual,
    is_saturated,
    juxtaposed,
    lengths,
    leq_a,
    leq_b,
    linked,
    mult_sum,
    precedes,
    segment_relation,
    shift_left,
    shift_right,
    union_intersection,
)


@pytest.mark.parametrize("d1, d2, rel", [
    (S(0, 1), S(1, 2), Relation.LINKED_BEFORE),
    (S(1, 2), S(0, 1), Relation.LINKED_AFTER),
    (S(1), S(1, 5), Relation.CONTAINED_IN),
    (S(1, 5), S(1), Relation.CONTAINS),
    (S(0), S(2, 3), Relation.UNLINKED_DISJOINT),
    (S(2, 3), S(2, 3), Relation.EQUAL),
    (S(0, 1), S(2, 3), Relation.LINKED_BEFORE),
    (S(0, 1), S(0, 1, RHO), Relation.DIFFERENT_LINE),
])
def test_segment_relation(d1, d2, rel):
    assert segment_relation(d1, d2) is rel


def test_segment_rejects_reversed_endpoints():
    with pytest.raises(MultisegmentError):
        Segment.of(2, 0)
    assert Segment.make(S(0).line, 2, 1) is EMPTY
    assert not EMPTY


@pytest.mark.parametrize("d1, d2, expected", [
    (S(0, 1), S(1, 2), (S(0, 2), S(1))),
    (S(0, 1), S(2, 3), (S(0, 3), EMPTY)),
])
def test_union_intersection(d1, d2, expected):
    assert union_intersection(d1, d2) == expected
    assert union_intersection(d2, d1) == expected


def test_union_intersection_needs_linked_pair():
    with pytest.raises(MultisegmentError):
        union_intersection(S(0), S(0, 1))


@pytest.mark.parametrize("d, left", [
    (S(1, 5), S(0, 4)),
    (S(0), S(-1)),
    (S(3, 4, RHO), S(2, 3, RHO)),
])
def test_shift_left(d, left):
    assert shift_left(d) == left
    assert shift_right(left) == d


def test_dual_of_segment_and_multisegment():
    assert dual(S(0, 2, RHO)) == S(-2, 0, RHO.dual())
    assert dual(M((0, 1), (1, 2))) == M((-1, 0), (-2, -1))
    assert dual(EMPTY) is EMPTY


def test_line_dual_normalisation():
    assert CuspidalLine("x", 1, "x").self_dual
    assert RHO.dual().dual() == RHO
    with pytest.raises(MultisegmentError):
        CuspidalLine("bad", 0)


@pytest.mark.parametrize("x, expected", [
    (S(0, 2, RHO), (3, 6)),
    (Multisegment(), (0, 0)),
    (M((0,), (1, 5)), (6, 6)),
    (EMPTY, (0, 0)),
])
def test_lengths(x, expected):
    assert lengths(x) == expected


@pytest.mark.parametrize("d1, d2, expected", [
    (S(0, 1), S(2, 3), True),
    (S(2, 3), S(0, 1), True),
    (S(0, 1), S(1, 2), False),
    (S(0, 1), S(2, 3, RHO), False),
])
def test_juxtaposed(d1, d2, expected):
    assert juxtaposed(d1, d2) is expected


@pytest.mark.parametrize("dp, d, expected", [
    (S(2, 4), S(1, 4), True),
    (S(1, 3), S(1, 4), False),
    (S(0, 4), S(1, 4), False),
    (S(1, 4), S(1, 4), True),
])
def test_is_saturated(dp, d, expected):
    assert is_saturated(dp, d) is expected


def test_multisegment_algebra():
    n = M((0, 1), (-1, 0), (0,), (-1, 1))
    assert n - S(0) == M((0, 1), (-1, 0), (-1, 1))
    assert not M((0,), (1, 5)).is_generic()
    assert M((0,), (2, 3)).is_generic()
    assert M((0, 2), (1, 2), (0,)).slice_b(CuspidalPoint(S(0).line, 2)) == M((0, 2), (1, 2))
    assert mult_sum(M((0,)), M((0,)), M((1,))) == M((0,), (0,), (1,))
    assert M((0, 2), (1, 2)).is_saturated(S(0, 2))
    assert M((0,), (1, 2)).support() == M((0, 1), (2,)).support()


def test_subtraction_underflow_names_segment():
    with pytest.raises(MultisegmentError, match=r"\[2,3\]"):
        M((0, 1)) - S(2, 3)


@pytest.mark.parametrize("kind, d, dp, expected", [
    ("b", S(0, 2), S(1, 2), True),
    ("b", S(0, 2), S(0, 1), False),
    ("a", S(1, 3), S(1, 5), True),
    ("a", S(1, 5), S(1, 3), False),
    ("b", S(0, 1), S(0, 1, RHO), False),
])
def test_order_predicates(kind, d, dp, expected):
    assert (leq_b if kind == "b" else leq_a)(d, dp) is expected


@pytest.mark.parametrize("m, labels", [
    (M((0, 1), (1, 2)), [S(1, 2), S(0, 1)]),
    (M((0,), (0,)), [S(0), S(0)]),
    (M((0,), (1, 5)), [S(1, 5), S(0)]),
])
def test_canonical_labeling(m, labels):
    assert canonical_labeling(m) == labels


def _labelling_ok(order):
    return all(not (s.line == t.line and s.b < t.b) for s, t in itertools.combinations(order, 2))


@given(multisegments(LINES))
def test_canonical_labeling_respects_right_ends(m):
    labels = canonical_labeling(m)
    assert sorted(labels) == sorted(m.entries)
    assert _labelling_ok(labels)


@given(segments(LINES), segments(LINES))
def test_relation_is_mirrored(d1, d2):
    mirror = {Relation.LINKED_BEFORE: Relation.LINKED_AFTER, Relation.CONTAINS: Relation.CONTAINED_IN}
    mirror.update({v: k for k, v in mirror.items()})
    r = segment_relation(d1, d2)
    assert segment_relation(d2, d1) is mirror.get(r, r)
    assert linked(d1, d2) == (precedes(d1, d2) or precedes(d2, d1))


@given(segments(LINES), segments(LINES))
def test_dual_reverses_precedence(d1, d2):
    assert precedes(d1, d2) == precedes(dual(d2), dual(d1))
    assert dual(dual(d1)) == d1


@given(segments(LINES))
def test_shift_and_dual_commute(d):
    assert dual(shift_left(d)) == shift_right(dual(d))


@given(segments(), segments())
def test_union_intersection_matches_point_sets(d1, d2):
    if not linked(d1, d2):
        return
    u, i = union_intersection(d1, d2)
    p1, p2 = set(range(d1.a, d1.b + 1)), set(range(d2.a, d2.b + 1))
    assert set(range(u.a, u.b + 1)) == p1 | p2
    assert (set(range(i.a, i.b + 1)) if i else set()) == p1 & p2


@given(multisegments(LINES), multisegments(LINES))
def test_sum_then_subtract(m, n):
    assert (m + n) - n == m
    assert n.issubset(m + n)
    assert lengths(m + n)[1] == lengths(m)[1] + lengths(n)[1]
