import pytest
from hypothesis import given, strategies as st

from conftest import RHO, M, S, multisegments, segments
from multiseg.core import CuspidalPoint, DEFAULT_LINE, EMPTY, Multisegment, is_saturated, lengths
from multiseg.derive import (
    GenericError,
    JacquetKind,
    Rule,
    RuleError,
    chains,
    compose_check,
    derivative_nested_zelevinsky,
    derivative_same_end_steinberg,
    eta_generic,
    jacquet_absolute,
    jacquet_segment,
    mx_generic,
    mx_modes_differ,
    mxpt_b_generic,
    permitted_orders,
    rewrite_step,
    vanishing_predicate,
)


@pytest.mark.parametrize("kind, d, i, expected", [
    ("zelevinsky", S(0, 3), 1, (S(0, 2), S(3))),
    ("steinberg", S(0, 3), 1, (S(1, 3), S(0))),
    ("zelevinsky", S(0, 3), 0, (S(0, 3), EMPTY)),
    ("steinberg", S(0, 3), 0, (S(0, 3), EMPTY)),
    ("zelevinsky", S(0, 3), 4, (EMPTY, S(0, 3))),
])
def test_jacquet_segment(kind, d, i, expected):
    assert jacquet_segment(kind, d, i) == expected


def test_jacquet_range_and_absolute_units():
    with pytest.raises(RuleError):
        jacquet_segment(JacquetKind.ZELEVINSKY, S(0, 3), 5)
    d = S(0, 3, RHO)
    assert jacquet_absolute("zelevinsky", d, 3) is None
    assert jacquet_absolute("zelevinsky", d, 2) == jacquet_segment("zelevinsky", d, 1)


@given(segments(), st.integers(0, 6))
def test_jacquet_partitions_support(d, i):
    rel = lengths(d)[0]
    if i > rel:
        return
    for kind in JacquetKind:
        left, right = jacquet_segment(kind, d, i)
        pts = [set(range(x.a, x.b + 1)) if x else set() for x in (left, right)]
        assert not pts[0] & pts[1]
        assert pts[0] | pts[1] == set(range(d.a, d.b + 1))
        assert (len(pts[0]), len(pts[1])) == (rel - i, i)


@pytest.mark.parametrize("p, d, expected", [
    (M((0, 2), (1, 2), (2,)), S(1, 2), M((0, 2), (2,))),
    (M((1, 2)), S(1, 2), Multisegment()),
])
def test_same_end_steinberg(p, d, expected):
    assert derivative_same_end_steinberg(p, d) == expected


@pytest.mark.parametrize("p, d", [(M((0, 2), (1, 3)), S(1, 3)), (M((0, 2)), S(1, 2))])
def test_same_end_steinberg_errors(p, d):
    with pytest.raises(RuleError):
        derivative_same_end_steinberg(p, d)


@pytest.mark.parametrize("m, peel, expected", [
    (M((0, 1), (0, 1), (0, 1)), M((0, 1), (0, 1)), M((0, 1))),
    (M((0, 1), (0,)), S(0, 1), M((0,))),
])
def test_nested_zelevinsky(m, peel, expected):
    assert derivative_nested_zelevinsky(m, peel) == expected


@pytest.mark.parametrize("m, peel", [
    (M((0, 1)), S(2, 3)),
    (M((0, 1), (1, 2)), S(0, 1)),
    (M((0, 1), (0,)), M((0,), (0, 1))),
])
def test_nested_zelevinsky_errors(m, peel):
    with pytest.raises(RuleError):
        derivative_nested_zelevinsky(m, peel)


def test_rewrite_records_preconditions():
    rw = rewrite_step(M((0, 2), (1, 2)), M((1, 2)))
    assert rw.rule is Rule.SAME_END_STEINBERG
    assert rw.output + rw.peeled == rw.input
    assert rw.to_json()["preconditions"]


def test_compose_fixture():
    res = compose_check(M((0, 1), (0, 1), (0, 1)), [M((0, 1)), M((0, 1))])
    assert res and res.mismatch is None
    assert res.orders_checked == 2


def test_compose_names_failing_step():
    with pytest.raises(RuleError, match="step 1"):
        compose_check(M((0, 2), (1, 2)), [M((1, 2)), M((3,))])


def test_permitted_orders():
    assert permitted_orders([M((0,)), M((1,))]) == [(0, 1)]
    assert permitted_orders([M((0,)), M((2,))]) == [(0, 1), (1, 0)]


@pytest.mark.parametrize("n, d, filtered, literal", [
    (M((0, 2), (1, 2)), S(0, 2), M((0, 2), (1, 2)), M((0, 2), (1, 2))),
    (M((0, 1), (3, 4)), S(2, 4), M((3, 4)), M((0, 4), (3, 4))),
    (Multisegment(), S(0, 2), Multisegment(), Multisegment()),
])
def test_mx_generic(n, d, filtered, literal):
    assert mx_generic(n, d) == filtered
    assert mx_generic(n, d, filter_saturated=False) == literal
    assert mx_modes_differ(n, d) is (filtered != literal)


def test_mx_requires_generic():
    with pytest.raises(GenericError):
        mx_generic(M((0,), (1, 5)), S(1, 5))


@pytest.mark.parametrize("n, d, entries", [
    (M((0, 2), (1, 2)), S(0, 2), (1, 1, 0)),
    (Multisegment(), S(0, 2), (0, 0, 0)),
    (M((5, 6)), S(0, 1), (0, 0)),
])
def test_eta(n, d, entries):
    eta = eta_generic(n, d)
    assert eta.entries == entries
    assert eta.segments()[0] == d and eta.segments()[-1] == S(d.b)


def test_mxpt():
    n = M((0, 2), (1, 2))
    assert mxpt_b_generic(n, CuspidalPoint(DEFAULT_LINE, 2)) == M((0, 2), (1, 2))
    with pytest.raises(RuleError, match="no segment"):
        mxpt_b_generic(n, CuspidalPoint(DEFAULT_LINE, 5))


@pytest.mark.parametrize("d, dp, expected", [
    (S(0, 2), S(1, 3), True),
    (S(0, 2), S(3, 4), False),
    (S(0, 2), S(0, 2), True),
    (S(1, 2), S(0, 3), False),
])
def test_vanishing_predicate(d, dp, expected):
    assert vanishing_predicate(d, dp) is expected


@given(multisegments(max_size=3, lo=0, hi=4))
def test_chains_compose(m):
    for chain in chains(m, 3):
        res = compose_check(m, chain)
        assert res
        for step in res.steps:
            peeled = step.peeled if isinstance(step.peeled, Multisegment) else Multisegment([step.peeled])
            assert step.output + peeled == step.input


@given(multisegments(max_size=4), segments())
def test_mx_saturation_and_eta(n, d):
    if not n.is_generic():
        return
    mx = mx_generic(n, d)
    assert all(is_saturated(s, d) for s in mx)
    counts = mx.counts()
    assert all(counts[s] == k for s, k in eta_generic(n, d).as_dict().items())
    assert sum(eta_generic(n, d).entries) == len(mx)
