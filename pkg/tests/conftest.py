import pytest
from hypothesis import strategies as st

from ktreepart.graph import Graph
from ktreepart.harness import GenSpec, random_ktree

ACCEPTANCE_LINES = pytest.StashKey[list]()


@st.composite
def graphs(draw, max_vertices=8):
    n = draw(st.integers(0, max_vertices))
    ids = draw(st.lists(st.integers(0, 40), min_size=n, max_size=n, unique=True))
    pairs = [(u, w) for i, u in enumerate(ids) for w in ids[i + 1:]]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(ids, [p for p, keep in zip(pairs, mask) if keep])


@st.composite
def ktrees(draw, max_n=40, max_k=5):
    """(graph, build order) from the seeded generator."""
    spec = GenSpec(
        draw(st.integers(0, max_n)),
        draw(st.integers(0, max_k)),
        draw(st.integers(0, 2**64 - 1)),
        draw(st.booleans()),
    )
    return random_ktree(spec)


def pytest_configure(config):
    config.stash[ACCEPTANCE_LINES] = []


@pytest.fixture
def acceptance_log(request):
    return request.config.stash[ACCEPTANCE_LINES].append


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
