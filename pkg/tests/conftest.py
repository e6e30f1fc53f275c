from itertools import combinations, permutations

import pytest
from hypothesis import strategies as st

from turan2d.graph import Graph, from_edges, mask_of

_ACCEPTANCE = []


def record_acceptance(number, name, passed, detail):
    line = f"criterion {number:>2} [{'PASS' if passed else 'FAIL'}] {name}: {detail}"
    print(line)
    _ACCEPTANCE.append((number, line))


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_ACCEPTANCE):
            terminalreporter.write_line(line)


@st.composite
def graphs(draw, min_n=0, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return from_edges(n, [p for p, b in zip(pairs, bits) if b])


def all_labeled(n):
    """Every labelled graph on ``n`` vertices."""
    pairs = list(combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        yield from_edges(n, [p for i, p in enumerate(pairs) if code >> i & 1])


def perm_key(g: Graph):
    """Isomorphism-invariant key by brute force over all relabellings."""
    best = None
    for perm in permutations(range(g.n)):
        key = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in g.edges()))
        if best is None or key < best:
            best = key
    return best


def brute_alpha(g):
    for s in range(g.n, 0, -1):
        for c in combinations(range(g.n), s):
            if all(not g.has_edge(u, v) for u, v in combinations(c, 2)):
                return s
    return 0


def brute_alpha_m(g, m):
    return min(brute_alpha(g.induced(c)) for c in combinations(range(g.n), m))


def brute_m2(g):
    from fractions import Fraction

    return max(
        Fraction(g.edges_within(mask_of(c)) - 1, s - 2)
        for s in range(3, g.n + 1)
        for c in combinations(range(g.n), s)
    )


@pytest.fixture(scope="session")
def h7():
    from turan2d.constructions import ConstructionSpec, build

    return build(ConstructionSpec("h2k-1", (4,)))
