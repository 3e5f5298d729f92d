import pytest
from hypothesis import strategies as st

from affinecluster.laurent import LaurentPoly

NVARS = 3

exponents = st.tuples(*[st.integers(-3, 3)] * NVARS)
term_maps = st.dictionaries(exponents, st.integers(-20, 20).filter(bool), max_size=6)


@st.composite
def polys(draw, nvars=NVARS):
    terms = draw(st.dictionaries(st.tuples(*[st.integers(-3, 3)] * nvars),
                                 st.integers(-20, 20).filter(bool), max_size=6))
    return LaurentPoly(nvars, terms)


nonzero_polys = polys().filter(bool)


# acceptance summary: one line per criterion, collected from user properties

_CRITERIA = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    props = dict(report.user_properties)
    if "criterion" in props:
        _CRITERIA[props["criterion"]] = (report.outcome, report.duration, props.get("budget"),
                                         props.get("variables"))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda s: int(s.split(".")[0])):
        outcome, duration, budget, count = _CRITERIA[name]
        mark = "PASS" if outcome == "passed" else "FAIL"
        limit = f" (budget {budget} s)" if budget else ""
        extra = f", {count} distinct variables" if count else ""
        terminalreporter.write_line(f"{mark}  {name}  [{duration:.2f} s{limit}{extra}]")


@pytest.fixture
def timed(record_property):
    """Record criterion name and budget for the summary line."""
    def _mark(name, budget=None):
        record_property("criterion", name)
        if budget is not None:
            record_property("budget", budget)
    return _mark
