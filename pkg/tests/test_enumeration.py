import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import all_labeled, brute_alpha, perm_key
from turan2d.constructions import ConstructionSpec, build
from turan2d.density import m2
from turan2d.enumeration import (
    Constraints,
    SearchError,
    count_classes,
    enumerate_alpha_bounded,
    enumerate_class,
    generate,
    min_edges_under_m2_cap,
    min_m2,
    turan_complement,
)
from turan2d.graph import cycle_graph, parse_graph6, to_graph6
from turan2d.canon import are_isomorphic, canonical_form
from turan2d.invariants import clique_number, independence_number


def labeled_oracle(n, alpha_max):
    return {perm_key(g) for g in all_labeled(n) if brute_alpha(g) <= alpha_max}


@pytest.mark.parametrize("n, a", [(3, 1), (4, 2), (5, 2), (5, 3)])
def test_alpha_bounded_matches_labeled_brute_force(n, a):
    got = list(enumerate_alpha_bounded(n, a))
    want = labeled_oracle(n, a)
    assert len(got) == len(want)
    assert {perm_key(g) for g in got} == want


def test_five_two_is_fourteen():
    assert len(list(enumerate_alpha_bounded(5, 2))) == 14


@pytest.mark.slow
def test_six_two_matches_labeled_brute_force():
    got = list(enumerate_alpha_bounded(6, 2))
    assert {perm_key(g) for g in got} == labeled_oracle(6, 2)
    assert len(got) == 38


def test_three_one_is_triangle():
    (g,) = enumerate_alpha_bounded(3, 1)
    assert g.e == 3


@pytest.mark.parametrize("m, want", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156), (7, 1044)])
def test_count_classes(m, want):
    assert count_classes(m) == want


def test_count_classes_range():
    with pytest.raises(SearchError):
        count_classes(9)


def test_alpha_two_sequence():
    got = [len(list(enumerate_alpha_bounded(n, 2))) for n in range(1, 9)]
    assert got == [1, 2, 3, 7, 14, 38, 107, 410]


def test_stream_is_sorted_canonical_and_distinct():
    keys = [to_graph6(g) for g in enumerate_alpha_bounded(7, 2)]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    assert all(canonical_form(parse_graph6(k)) == k for k in keys)


def test_unconstrained_guard():
    with pytest.raises(SearchError):
        list(enumerate_alpha_bounded(12, 3))


def test_cache_roundtrip(tmp_path):
    first = [to_graph6(g) for g in enumerate_alpha_bounded(6, 2, cache_dir=tmp_path)]
    files = sorted(p.name for p in tmp_path.iterdir())
    assert files == ["alpha2_n6.g6", "alpha2_n6.meta"]
    meta = json.loads((tmp_path / "alpha2_n6.meta").read_text())
    assert meta["count"] == 38
    again = [to_graph6(g) for g in enumerate_alpha_bounded(6, 2, cache_dir=tmp_path)]
    assert first == again
    # a corrupted cache is ignored and rebuilt
    (tmp_path / "alpha2_n6.g6").write_bytes(b"E???\n")
    assert [to_graph6(g) for g in enumerate_alpha_bounded(6, 2, cache_dir=tmp_path)] == first


def test_constrained_classes_are_subsets_of_filtered_full():
    c = Constraints(alpha_max=3, clique_max=3, m2_max=Fraction(2))
    for n in range(3, 8):
        got = {to_graph6(g) for g in enumerate_class(n, c)}
        want = {to_graph6(g) for g in enumerate_class(n, Constraints(alpha_max=3)) if c.admits(g)}
        assert got == want


def test_forbidden_constraint(h7):
    c = Constraints(alpha_max=2, clique_max=3, forbidden=(h7,))
    got = enumerate_class(7, c)
    assert got == []
    got8 = enumerate_class(6, c)
    assert all(independence_number(g) <= 2 and clique_number(g) <= 3 for g in got8)


def test_jobs_do_not_change_results():
    c = Constraints(alpha_max=3)
    a = [k for _, level in generate(7, c, jobs=1) for k in level]
    b = [k for _, level in generate(7, c, jobs=3) for k in level]
    assert a == b


# -- min_m2 -------------------------------------------------------------------------------
def test_min_m2_examples():
    o = min_m2(5, 3)
    assert o.value == Fraction(4, 3)
    assert any(are_isomorphic(parse_graph6(w), cycle_graph(5)) for w in o.witnesses)
    assert min_m2(7, 3).value == 2


@pytest.mark.parametrize("m", [5, 6, 7, 8])
def test_profiles_agree(m):
    full = min_m2(m, 3, profile="none")
    cap = min_m2(m, 3, profile="clique-cap")
    assert full.value == cap.value
    assert full.enumerated >= cap.enumerated


def test_min_m2_witnesses_verify():
    for m in (6, 8):
        o = min_m2(m, 3)
        assert o.witnesses and o.witnesses_total >= len(o.witnesses)
        for w in o.witnesses:
            g = parse_graph6(w)
            assert g.n == m and independence_number(g) <= 2 and m2(g) == o.value


@pytest.mark.parametrize("m, r", [(4, 3), (2, 2), (5, 4)])
def test_min_m2_range(m, r):
    with pytest.raises(SearchError):
        min_m2(m, r)


def test_min_m2_bad_profile():
    with pytest.raises(SearchError):
        min_m2(5, 3, profile="fast")


def test_even_values_match_disjoint_cliques():
    for m in (6, 8):
        k = m // 2
        assert min_m2(m, 3).value == Fraction(k + 1, 2) == m2(build(ConstructionSpec("disjoint-cliques", (k, k))))


def test_m_monotone_in_m():
    vals = [min_m2(m, 3).value for m in range(5, 9)]
    assert vals == sorted(vals)


def test_benchmark_lower_bounds():
    assert min_m2(8, 4).value == Fraction(3, 2)
    assert min_m2(8, 4).value >= Fraction(7, 6)


@pytest.mark.slow
def test_eleven_five_triangle_free_profile():
    o = min_m2(11, 5, profile="triangle-free")
    assert o.value == Fraction(8, 5) and o.value >= Fraction(4, 3)


def test_turan_complement_incumbent():
    g = turan_complement(8, 3)
    assert sorted(g.degree(v) for v in range(8)) == [1, 1, 2, 2, 2, 2, 2, 2]
    assert independence_number(g) == 3


# -- min_edges_under_m2_cap ---------------------------------------------------------------
def test_min_edges_examples():
    o = min_edges_under_m2_cap(5, 3, 2)
    assert o.value == 5 and are_isomorphic(parse_graph6(o.witnesses[0]), cycle_graph(5))
    o = min_edges_under_m2_cap(3, 2, 100)
    assert o.value == 3 and o.witnesses == ["Bw"]


def test_min_edges_empty_outcome():
    o = min_edges_under_m2_cap(5, 3, Fraction(4, 3))
    assert o.value is None and o.witnesses == []


@pytest.mark.parametrize("m, r, cap", [(6, 3, Fraction(5, 2)), (7, 3, Fraction(5, 2)), (7, 4, 2)])
def test_min_edges_profiles_agree(m, r, cap):
    a = min_edges_under_m2_cap(m, r, cap, profile="none")
    b = min_edges_under_m2_cap(m, r, cap, profile="clique-cap")
    assert a.value == b.value and a.witnesses == b.witnesses


def test_min_edges_errors():
    with pytest.raises(SearchError):
        min_edges_under_m2_cap(5, 3, 0)
    with pytest.raises(SearchError):
        min_edges_under_m2_cap(5, 3, 2, profile="triangle-free")


@settings(max_examples=15, deadline=None)
@given(st.integers(5, 7), st.sampled_from([Fraction(3, 2), Fraction(2), Fraction(5, 2), Fraction(3)]))
def test_min_edges_monotone_in_cap(m, cap):
    lo = min_edges_under_m2_cap(m, 3, cap).value
    hi = min_edges_under_m2_cap(m, 3, cap + Fraction(1, 2)).value
    if lo is not None:
        assert hi is not None and hi <= lo
