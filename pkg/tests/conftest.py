from hypothesis import strategies as st

from salemlab.polyint import IntPoly

LEHMER = IntPoly([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
SMALLEST_PISOT = IntPoly([1, 1, 0, -1])
GOLDEN = IntPoly([1, 1, -1])


def int_polys(max_degree=8, bound=6, min_degree=0):
    return st.lists(st.integers(-bound, bound), min_size=min_degree + 1,
                    max_size=max_degree + 1).map(IntPoly)


def nonzero_polys(**kw):
    return int_polys(**kw).filter(lambda p: not p.is_zero())


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
