import pytest
from hypothesis import settings, strategies as st

from racg import builtin_group
from racg.group import CommutationGraph

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


@pytest.fixture(scope="session")
def hexagon():
    return builtin_group("hexagon")


@pytest.fixture(scope="session")
def pentagon():
    return builtin_group("pentagon")


@st.composite
def graphs(draw, min_gens=1, max_gens=6):
    k = draw(st.integers(min_gens, max_gens))
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    gens = [f"g{i}" for i in range(k)]
    return CommutationGraph.from_edges(gens, [(gens[i], gens[j]) for i, j in chosen])


def comm_table(g):
    k = g.rank
    return [[bool((g.masks[s] >> t) & 1) for t in range(k)] for s in range(k)]


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[n])
