import random

import pytest

from thick_sandpile import (
    Multigraph,
    build_banana,
    build_basic,
    build_book_graph,
    build_thick_cycle,
)

ACCEPTANCE_LINES = []


def _complete(n, w=1):
    return Multigraph(n, [(i, j, w) for i in range(n) for j in range(i + 1, n)])


def _random_connected(rng, n, extra, wmax):
    edges = [(rng.randrange(i), i, rng.randint(1, wmax)) for i in range(1, n)]
    for _ in range(extra):
        i, j = rng.sample(range(n), 2)
        edges.append((i, j, rng.randint(1, wmax)))
    return Multigraph(n, edges)


def graph_corpus():
    """Named connected graphs with at most 8 vertices."""
    rng = random.Random(20240611)
    corpus = {
        "single_vertex": Multigraph(1),
        "single_edge": build_basic("path", 2),
        "triple_edge": Multigraph(2, [(0, 1, 3)]),
        "P4": build_basic("path", 4),
        "S5": build_basic("star", 5),
        "C3": build_basic("cycle", 3),
        "C4": build_basic("cycle", 4),
        "C6": build_basic("cycle", 6),
        "K4": _complete(4),
        "K5": _complete(5),
        "K4_double": _complete(4, 2),
        "thick_32423": build_thick_cycle((3, 2, 4, 2, 3)),
        "thick_123": build_thick_cycle((1, 2, 3)),
        "thick_13333": build_thick_cycle((1, 3, 3, 3, 3)),
        "thick_246": build_thick_cycle((2, 4, 6)),
        "book_2_2": build_book_graph(2, 2),
        "book_3_2": build_book_graph(3, 2),
        "banana_322": build_banana((3, 2, 2)),
        "banana_111": build_banana((1, 1, 1)),
    }
    for k in range(8):
        n = rng.randint(3, 8)
        corpus[f"random_{k}"] = _random_connected(rng, n, rng.randint(0, 4), 3)
    return corpus


@pytest.fixture(scope="session")
def corpus():
    return graph_corpus()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
