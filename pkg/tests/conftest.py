from hypothesis import settings, strategies as st

from multiseg.core import DEFAULT_LINE, CuspidalLine, Multisegment, Segment

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

RHO = CuspidalLine("rho", 2, "rhov")
SIGMA = CuspidalLine("sigma")
LINES = [DEFAULT_LINE, RHO, RHO.dual(), SIGMA]


@st.composite
def segments(draw, lines=(DEFAULT_LINE,), lo=-3, hi=6, max_len=5):
    line = draw(st.sampled_from(list(lines)))
    a = draw(st.integers(lo, hi))
    b = draw(st.integers(a, min(hi, a + max_len - 1)))
    return Segment(line, a, b)


def multisegments(lines=(DEFAULT_LINE,), max_size=4, **kw):
    return st.lists(segments(lines, **kw), max_size=max_size).map(Multisegment)


def S(a, b=None, line=DEFAULT_LINE):
    return Segment.of(a, b, line)


def M(*pairs, line=DEFAULT_LINE):
    return Multisegment.of(*pairs, line=line)


# acceptance criteria report one line each; printed after the run
ACCEPTANCE: dict[int, str] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[criterion] = f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
