from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from turan2d.canon import are_isomorphic
from turan2d.constructions import (
    ConstructionError,
    ConstructionSpec,
    build,
    clique_blowup,
    expected_stats,
    general_example_params,
    odd_bound,
    odd_bound_term,
    odd_optimal_parameter,
)
from turan2d.density import m2
from turan2d.graph import complement, cycle_graph
from turan2d.invariants import clique_number, independence_number


def spec(text):
    return ConstructionSpec.parse(text)


def test_parse_and_str_roundtrip():
    for text in [
        "cycle:n=9",
        "clique:k=5",
        "disjoint-cliques:5,5",
        "cycle-power:n=8,d=2",
        "c5-blowup:1,2,1,1,2",
        "h2k-1:k=4",
        "odd-optimal:k=5",
        "turan-complement:m=8,parts=3",
        "general-example:m=25,r=5",
    ]:
        assert str(spec(text)) == text
    assert spec("cycle-power:d=2,n=8") == spec("cycle-power:n=8,d=2")


@pytest.mark.parametrize(
    "text",
    [
        "wheel:n=5",
        "cycle:n=2",
        "cycle:k=5",
        "cycle:",
        "cycle:n=x",
        "c5-blowup:1,2,3",
        "c5-blowup:1,0,1,1,1",
        "h2k-1:k=2",
        "odd-optimal:k=3",
        "turan-complement:m=3,parts=4",
        "general-example:m=9,r=2",
        "disjoint-cliques:",
    ],
)
def test_invalid_specs(text):
    with pytest.raises(ConstructionError):
        spec(text)


def test_build_examples(h7):
    assert (h7.n, h7.e) == (7, 11)
    g = build(spec("odd-optimal:k=4"))
    assert (g.n, g.e) == (7, 11)
    assert are_isomorphic(g, clique_blowup((1, 2, 1, 1, 2)))
    g = build(spec("disjoint-cliques:5,5,5,5"))
    assert (g.n, g.e, independence_number(g)) == (20, 40, 4)
    g = build(spec("cycle-power:n=8,d=2"))
    assert (g.n, g.e, clique_number(g), independence_number(g)) == (8, 16, 3, 2)


def test_blowup_part_order_matters():
    # odd-optimal with a=2 (k=10) uses (1, 7, 2, 2, 7), not the H order (1, 8, 1, 1, 8)
    g = build(spec("odd-optimal:k=10"))
    h = build(spec("h2k-1:k=10"))
    assert g.n == h.n == 19 and g.e != h.e


@pytest.mark.parametrize("k, a", [(4, 1), (5, 1), (10, 2)])
def test_odd_optimal_parameter_examples(k, a):
    assert odd_optimal_parameter(k) == a


def test_odd_bound_terms():
    assert odd_bound_term(5, 1) == Fraction(1, 3)
    assert odd_bound_term(5, 2) == Fraction(2, 7)
    assert odd_bound_term(10, 3) == Fraction(3, 34)
    assert odd_bound(4) == 2
    assert odd_bound(5) == Fraction(8, 3)
    with pytest.raises(ConstructionError):
        odd_optimal_parameter(3)


@pytest.mark.parametrize("k", range(4, 41))
def test_odd_optimal_parameter_is_smallest_argmax(k):
    a = odd_optimal_parameter(k)
    terms = [odd_bound_term(k, t) for t in range(1, k - 1)]
    assert terms[a - 1] == max(terms) and max(terms) not in terms[: a - 1]


@pytest.mark.parametrize(
    "text, want",
    [
        ("odd-optimal:k=5", (9, 19, 2, Fraction(8, 3))),
        ("disjoint-cliques:6,6", (12, 30, 2, Fraction(7, 2))),
        ("cycle:n=9", (9, 9, 4, Fraction(8, 7))),
    ],
)
def test_expected_stats_examples(text, want):
    e = expected_stats(spec(text))
    assert (e.vertices, e.edges, e.alpha_max, e.m2) == want


GRID = (
    [f"odd-optimal:k={k}" for k in range(4, 13)]
    + [f"disjoint-cliques:{k},{k}" for k in range(3, 9)]
    + [f"cycle:n={n}" for n in range(3, 20)]
    + ["disjoint-cliques:5,5,5", "disjoint-cliques:5,5,5,5", "cycle-power:n=8,d=2", "cycle-power:n=12,d=3"]
    + [f"h2k-1:k={k}" for k in range(3, 9)]
    + ["c5-blowup:2,3,1,4,2", "turan-complement:m=10,parts=3", "clique:k=6"]
    + ["general-example:m=25,r=5", "general-example:m=14,r=5", "general-example:m=10,r=4"]
)


@pytest.mark.parametrize("text", GRID)
def test_self_check(text):
    s = spec(text)
    g = build(s)
    e = expected_stats(s)
    assert (g.n, g.e) == (e.vertices, e.edges)
    assert independence_number(g) <= e.alpha_max
    if e.m2 is not None:
        assert m2(g) == e.m2


@pytest.mark.parametrize("text", ["c5-blowup:2,3,1,4,2", "c5-blowup:1,1,1,1,1"] + [f"h2k-1:k={k}" for k in range(3, 9)])
def test_blowup_complement_triangle_free(text):
    g = build(spec(text))
    assert clique_number(complement(g)) <= 2
    assert independence_number(g) <= 2


def test_c5_blowup_of_ones_is_c5():
    assert are_isomorphic(build(spec("c5-blowup:1,1,1,1,1")), cycle_graph(5))


def valid_general():
    for m in range(3, 41):
        for r in range(3, m):
            try:
                yield ConstructionSpec("general-example", (m, r))
            except ConstructionError:
                pass


def test_general_example_exact_alpha():
    seen = 0
    for s in valid_general():
        g = build(s)
        assert g.n == s.args[0]
        assert independence_number(g) == s.args[1] - 1
        seen += 1
    assert seen > 50


def test_general_example_params():
    assert general_example_params(25, 5) == (7, 1)
    assert general_example_params(14, 5) == (4, 2)


@given(st.integers(3, 30), st.integers(1, 5))
def test_cycle_power_edges(n, d):
    s = ConstructionSpec("cycle-power", (n, d))
    g = build(s)
    assert g.e == expected_stats(s).edges
    assert independence_number(g) <= expected_stats(s).alpha_max


def test_disjoint_cliques_even_bound():
    for k in range(3, 10):
        g = build(ConstructionSpec("disjoint-cliques", (k, k)))
        assert m2(g) == Fraction(k + 1, 2) and g.e == 2 * comb(k, 2)
