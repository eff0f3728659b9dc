import pytest

from conftest import M, S
from multiseg import oracle
from multiseg.core import Multisegment
from multiseg.oracle import OracleError, Window

SMALL = Window(0, 3, 2, 4)


@pytest.mark.parametrize("w, expected", [
    (Window(0, 1, 1, 2), [S(0), S(0, 1), S(1)]),
    (Window(0, 2, 1, 1), [S(0), S(1), S(2)]),
])
def test_enumerate_segments(w, expected):
    assert list(oracle.enumerate_segments(w)) == expected


def test_empty_range_is_an_error():
    with pytest.raises(OracleError):
        Window(2, 1)


@pytest.mark.parametrize("w, count", [
    (Window(0, 1, 2, 2), 10),
    (Window(0, 1, 0, 2), 1),
    (Window(0, 4, 3, 5), 816),
    (Window(0, 5, 3, 6), 2024),
])
def test_multisegment_counts(w, count):
    ms = list(oracle.enumerate_multisegments(w))
    assert len(ms) == count == oracle.multiset_count(oracle.count_segments(w), w.max_segments)
    assert len(set(ms)) == count


def test_zero_segments_is_just_empty():
    assert list(oracle.enumerate_multisegments(Window(0, 1, 0, 2))) == [Multisegment()]


def test_budget():
    with pytest.raises(OracleError, match="budget"):
        list(oracle.enumerate_multisegments(oracle.DEFAULT_WINDOW, budget=100))


def test_abs_length_bound_and_lines():
    w = Window(0, 2, 2, 3, lines=2, max_abs_length=3)
    ms = list(oracle.enumerate_multisegments(w))
    assert all(sum(s.b - s.a + 1 for s in m) <= 3 for m in ms)
    assert len({s.line for m in ms for s in m}) == 2


def test_window_parse_and_env(monkeypatch):
    assert Window.parse("0:4:3:5") == oracle.DEFAULT_WINDOW
    assert str(Window.parse("0:2:2:3:2:4")) == "0:2:2:3:2:4"
    for bad in ("0:4", "a:b:c:d", "3:1:2:2"):
        with pytest.raises(OracleError):
            Window.parse(bad)
    monkeypatch.setenv(oracle.WINDOW_ENV, "0:2:1:1")
    assert Window.from_env() == Window(0, 2, 1, 1)
    monkeypatch.delenv(oracle.WINDOW_ENV)
    assert Window.from_env() == oracle.DEFAULT_WINDOW


def test_enumeration_is_deterministic():
    assert list(oracle.enumerate_multisegments(SMALL)) == list(oracle.enumerate_multisegments(SMALL))


@pytest.mark.parametrize("suite", sorted(oracle.SUITES))
def test_suites_clean_on_small_window(suite):
    r = oracle.run_suite(suite, SMALL)
    assert r.checked > 0
    assert r.violations == []
    js = r.to_json()
    assert set(js) == {"suite", "window", "checked", "violations", "wall_time_ms"}


def test_unknown_suite():
    with pytest.raises(OracleError):
        oracle.run_suite("nope")


@pytest.mark.parametrize("suite", ["hall", "closure"])
def test_corruption_is_detected_and_minimized(suite):
    r = oracle.run_suite(suite, SMALL, corrupt=True)
    assert r.violations
    first = r.violations[0]
    assert first.input.count("[") <= (first.original or first.input).count("[")


def test_reports_are_deterministic_and_shard_independent():
    a = oracle.run_suite("closure", SMALL, corrupt=True)
    b = oracle.run_suite("closure", SMALL, corrupt=True, jobs=2)
    assert a.checked == b.checked
    assert [v.input for v in a.violations] == [v.input for v in b.violations]


def test_report_merge():
    a = oracle.Report("x", "w", 3, [oracle.Violation("i", "d")], 1.0)
    b = oracle.Report("x", "w", 4, [], 2.0)
    m = a.merge(b)
    assert (m.checked, len(m.violations), m.wall_time_ms) == (7, 1, 3.0)


def test_minimize_removes_then_shrinks():
    # fails whenever some segment of m covers the point 3
    def fails(m):
        return any(s.a <= 3 <= s.b for s in m)

    (out,) = oracle.minimize((M((0, 1), (2, 5), (0, 4)),), fails)
    assert out == M((3,))


def test_minimize_respects_segment_parts():
    (out,) = oracle.minimize((S(0, 6),), lambda d: d.b - d.a >= 2)
    assert out.b - out.a == 2


def test_mx_divergence_and_fastpath_stats():
    div = oracle.mx_divergence(SMALL)
    assert (M((0,)), S(1)) in div
    assert (M((1,)), S(0, 1)) not in div
    assert all(n.is_generic() for n, _ in div)
    assert any(d.a > min(s.a for s in n) for n, d in div)
    stats = oracle.fastpath_crosscheck(Window(0, 2, 2, 2))
    assert stats["speh"].instances > 0 and stats["unlinked_tempered"].instances > 0
