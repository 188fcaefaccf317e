import pytest
from hypothesis import settings, strategies as st

from dicksonhit.f2poly import Polynomial
from dicksonhit.hitsolver import HitSolver

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def polynomials(nvars: int, max_degree: int = 6, max_terms: int = 6):
    mono = st.lists(st.integers(0, nvars - 1), max_size=max_degree).map(
        lambda picks: tuple(picks.count(k) for k in range(nvars))
    )
    return st.lists(mono, max_size=max_terms).map(lambda ms: Polynomial(nvars, ms))


@pytest.fixture(scope="session")
def solver():
    return HitSolver()


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
