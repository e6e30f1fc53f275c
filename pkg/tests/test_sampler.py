from fractions import Fraction

import numpy as np
import pytest

from turan2d.canon import are_isomorphic
from turan2d.graph import cycle_graph, empty_graph, parse_graph6, petersen_graph, to_graph6
from turan2d.invariants import independence_number, local_independence_number
from turan2d.sampler import SampleParams, edge_draws, experiment, replicate_seed, sample_lll, verify_local


def test_lll_probability_is_exact_at_4096():
    p = SampleParams.for_local(4096, 5, 3, 0)
    assert (p.t, p.M) == (2, Fraction(4, 3))
    assert p.p == Fraction(1, 49152)
    assert p.threshold == (1 << 64) // 49152


def test_irrational_root_gives_float():
    p = SampleParams.for_local(100, 5, 3, 0)
    assert isinstance(p.p, float) and abs(p.p - 1 / (96 * 100 ** 0.75)) < 1e-15


@pytest.mark.parametrize("n, m, r, seed", [(4, 5, 3, 0), (10, 4, 3, 0), (10, 5, 3, -1), (10, 5, 3, 1 << 64)])
def test_params_validation(n, m, r, seed):
    with pytest.raises(ValueError):
        SampleParams.for_local(n, m, r, seed)


def test_edge_draws_are_philox_counter_stream():
    a = edge_draws(5, 10)
    assert a.dtype == np.uint64 and len(a) == 10
    assert np.array_equal(edge_draws(5, 20)[:10], a)


def test_sample_deterministic():
    p = SampleParams.for_local(200, 5, 3, 7)
    assert to_graph6(sample_lll(p)) == to_graph6(sample_lll(p))
    q = SampleParams.for_local(200, 5, 3, 8)
    # distinct seeds give independent streams
    assert not np.array_equal(edge_draws(7, 50), edge_draws(8, 50))
    assert sample_lll(q).n == 200


def test_sample_edges_follow_threshold():
    p = SampleParams.for_local(30, 5, 3, 3)
    g = sample_lll(p)
    draws = edge_draws(3, 30 * 29 // 2)
    idx = 0
    for j in range(30):
        for i in range(j):
            assert g.has_edge(i, j) == (int(draws[idx]) < p.threshold)
            idx += 1


def test_sample_at_n_equals_m_passes():
    p = SampleParams.for_local(5, 5, 3, 11)
    ok, _ = verify_local(sample_lll(p), 5, 3)
    assert ok


def test_verify_local_examples():
    ok, wit = verify_local(cycle_graph(5), 5, 3)
    assert not ok and are_isomorphic(parse_graph6(wit["graph6"]), cycle_graph(5))
    assert sorted(wit["embedding"]) == [0, 1, 2, 3, 4]
    assert verify_local(empty_graph(10), 5, 3) == (True, None)
    ok, wit = verify_local(petersen_graph(), 5, 3)
    assert not ok and are_isomorphic(parse_graph6(wit["graph6"]), cycle_graph(5))


def test_verify_local_errors():
    with pytest.raises(ValueError):
        verify_local(cycle_graph(5), 6, 3)
    with pytest.raises(ValueError):
        verify_local(cycle_graph(5), 5, 3, mode="fast")


def test_reduced_mode_is_sound():
    rng = np.random.default_rng(0)
    for _ in range(100):
        n = int(rng.integers(5, 11))
        from turan2d.graph import from_edges

        g = from_edges(n, [(i, j) for j in range(n) for i in range(j) if rng.random() < 0.3])
        ok_red, _ = verify_local(g, 5, 3, mode="reduced")
        if ok_red:
            assert local_independence_number(g, 5) >= 3


@pytest.mark.parametrize("m, r", [(5, 3), (6, 3), (7, 3)])
def test_verify_local_agrees_with_direct(m, r):
    rng = np.random.default_rng(m)
    from turan2d.graph import from_edges

    for _ in range(70):
        n = int(rng.integers(m, 15))
        dens = rng.uniform(0.1, 0.6)
        g = from_edges(n, [(i, j) for j in range(n) for i in range(j) if rng.random() < dens])
        ok, _ = verify_local(g, m, r)
        assert ok == (local_independence_number(g, m) >= r)


def test_replicate_seed_stable():
    assert replicate_seed(1, 128, 0) == replicate_seed(1, 128, 0)
    assert replicate_seed(1, 128, 0) != replicate_seed(1, 128, 1)


def test_experiment_example():
    rep = experiment(5, 3, [128], 10, seed=1)
    (s,) = rep.summary
    assert s["replicates"] == 10 and 0 < s["acceptance_rate"] <= 1
    for row in rep.rows:
        if row["accepted"]:
            g = parse_graph6(row["graph6"]) if row["graph6"] else None
            if g is not None:
                assert verify_local(g, 5, 3)[0] and independence_number(g) == row["alpha"]


def test_experiment_zero_reps():
    rep = experiment(5, 3, [64], 0, seed=1)
    assert rep.rows == [] and rep.summary[0]["replicates"] == 0


def test_experiment_bad_grid():
    with pytest.raises(ValueError):
        experiment(5, 3, [4], 2, seed=1)
    with pytest.raises(ValueError):
        experiment(5, 3, [600], 2, seed=1)


def test_experiment_jobs_invariant_and_csv():
    a = experiment(5, 3, [20, 40], 4, seed=2)
    b = experiment(5, 3, [20, 40], 4, seed=2, jobs=2)
    assert a.to_json() == b.to_json()
    lines = a.to_csv().splitlines()
    assert lines[0] == "n,rep,accepted,alpha,predicted_scale" and len(lines) == 9


def test_median_trend_is_soft():
    rep = experiment(5, 3, [64, 128, 256, 512], 20, seed=3)
    meds = [s["alpha_median"] for s in rep.summary]
    # flagged rather than failed; record consistency between flags and medians
    drops = sum(1 for x, y in zip(meds, meds[1:]) if y < x)
    assert len(rep.flags) == drops
