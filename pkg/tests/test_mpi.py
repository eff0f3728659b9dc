import pytest

from conftest import M, S
from multiseg.core import Multisegment
from multiseg.mpi import (
    PreconditionError,
    closure_check,
    fastpath_speh,
    fastpath_unlinked_tempered,
    in_M,
    is_member,
    ladder_order,
    pair_constructions,
)
from multiseg.oracle import corrupted_admissible

ZERO_ONE_FIVE = M((0,), (1, 5))


@pytest.mark.parametrize("m, n, overall", [
    (M((0, 1)), M((-1, 1), (0, 2)), True),
    (ZERO_ONE_FIVE, M((1,)), False),
    (ZERO_ONE_FIVE, Multisegment(), True),
    (ZERO_ONE_FIVE, M((1, 5)), True),
])
def test_in_M(m, n, overall):
    rep = in_M(m, n)
    assert rep.overall is overall
    assert is_member(m, n) is overall
    assert rep.to_json()["overall"] is overall


def test_in_M_reports_failing_side():
    rep = in_M(ZERO_ONE_FIVE, M((1,), (1, 5)))
    assert rep.failing() == [S(1)]
    (bad,) = [v for v in rep.verdicts if not v.in_M]
    assert not bad.lc


def test_closure_fixture():
    v = closure_check(M((0, 1)), M((-1, 1), (0, 2)))
    assert v.holds and v.nodes_checked == 2


def test_closure_on_generic_n():
    assert closure_check(ZERO_ONE_FIVE, M((1, 5))).nodes_checked == 1


def test_closure_requires_membership():
    with pytest.raises(PreconditionError):
        closure_check(ZERO_ONE_FIVE, M((1,)))


def test_closure_counterexample_dump():
    # with precedence ignored, membership of n no longer propagates downward
    v = closure_check(M((0, 1), (2,)), M((0, 1), (1, 2)), admissible=corrupted_admissible)
    assert not v.holds
    dump = v.counterexample
    assert dump["node"] == "[0,2]+[1]"
    assert dump["sets"] and {"X", "Xt", "Y", "Yt"} <= set(dump["sets"][0])
    with pytest.raises(PreconditionError):
        closure_check(M((0, 1), (2,)), M((0, 1), (1, 2)))


@pytest.mark.parametrize("m, n, expected", [
    (M((0,), (2, 3)), M((5, 6)), True),
    (M((0,)), M((1, 2)), False),
    (M((0,)), Multisegment(), True),
    (M((0,), (2, 3)), M((4,)), False),
])
def test_fastpath_unlinked_tempered(m, n, expected):
    assert fastpath_unlinked_tempered(m, n) is expected


def test_fastpath_unlinked_requires_generic():
    with pytest.raises(PreconditionError):
        fastpath_unlinked_tempered(ZERO_ONE_FIVE, M((7,)))


@pytest.mark.parametrize("n, expected", [
    (M((3, 4)), False),
    (M((1,), (0, 1)), True),
    (Multisegment(), True),
    (M((-2, -1)), False),
])
def test_fastpath_speh(n, expected):
    assert fastpath_speh(M((0, 1), (1, 2)), n) is expected


@pytest.mark.parametrize("m", [Multisegment(), M((0, 1), (2, 3)), M((0, 1), (1, 3))])
def test_ladder_rejects(m):
    with pytest.raises(PreconditionError):
        ladder_order(m)


def test_pair_constructions():
    out = pair_constructions(M((0, 1)), S(-1, 1), S(0, 2))
    assert out["union"].target == S(-1, 2)
    assert out["intersection"].target == S(0, 1)
    assert pair_constructions(ZERO_ONE_FIVE, S(1), S(1, 5)) is None
