"""Finite checks of the lemmas: each runs over whole graph classes and reports counterexamples.

Every check accepts ``mutate=True``, which weakens one hypothesis (or
strengthens the conclusion) so that the harness can be seen to catch a
false statement.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

import numpy as np

from .canon import canonical_form
from .constructions import ConstructionSpec, build
from .density import _class_tables, d2, twin_classes
from .enumeration import Constraints, generate
from .graph import Graph, disjoint_union, iter_bits, parse_graph6
from .invariants import clique_count, clique_number, degeneracy, independence_number
from .subgraph import contains_subgraph

COUNTEREXAMPLE_CAP = 20

CLAIMS = {
    "equivalence-7-3": "every K4-free, H7-free graph on 7 vertices has an independent set of size 3",
    "turan-lb": "t_k(G)/t_{k-1}(G) >= |G|/(k alpha^(k-1)) - 1 whenever t_{k-1}(G) > 0",
    "turan-ub": "a K_k-free G with alpha(G) < a has t_i(G) <= a^(C(k,2)-C(k-i,2))/i! for all i <= k",
    "triangle-nbhd": "in a K4-free, H7-free graph the v-extending vertices avoid N(v), are non-adjacent "
    "across vertex-disjoint v-triangles, and span no triangle",
    "m2-switching": "a d_2 maximiser with the most vertices contains both or neither of any two twin vertices",
    "disjoint-union": "d_2(G + H) < max(d_2(G), d_2(H)) when 2e(G) > |G| and 2e(H) > |H|",
    "sparse-tf-bound": "a 3-degenerate triangle-free graph on m vertices with no independent r-set has e >= 6m - 13r - 1",
    "up-bip": "a triangle-free graph on 2k-1 vertices whose k-subsets all span >= t+1 edges has e <= (k-1)^2 - t^2 + 1, "
    "for 1 <= t < sqrt((k-1)/2)",
}


@dataclass
class CheckReport:
    check_id: str
    passed: bool
    instances_checked: int
    counterexamples: list  # (graph6, context) pairs, at most COUNTEREXAMPLE_CAP
    parameters: dict
    wall_time: float = 0.0
    counterexamples_total: int = 0
    notes: dict = field(default_factory=dict)

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "check_id": self.check_id,
            "claim": CLAIMS.get(self.check_id, ""),
            "passed": self.passed,
            "instances_checked": self.instances_checked,
            "counterexamples": [{"graph6": g, "context": c} for g, c in self.counterexamples],
            "counterexamples_total": self.counterexamples_total,
            "parameters": self.parameters,
            "notes": self.notes,
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out


class _Collector:
    def __init__(self, check_id, parameters):
        self.check_id = check_id
        self.parameters = parameters
        self.items = []
        self.count = 0
        self.total = 0
        self.t0 = time.perf_counter()
        self.notes = {}

    def bad(self, g: Graph, context: dict):
        # traversal order is deterministic, so keeping the first few is reproducible
        self.total += 1
        if len(self.items) < COUNTEREXAMPLE_CAP:
            self.items.append((canonical_form(g).decode(), context))

    def report(self) -> CheckReport:
        # normalise order so reports do not depend on traversal or worker layout
        self.items.sort(key=lambda x: (x[0], repr(sorted(x[1].items()))))
        return CheckReport(
            check_id=self.check_id,
            passed=not self.items,
            instances_checked=self.count,
            counterexamples=self.items,
            parameters=self.parameters,
            wall_time=time.perf_counter() - self.t0,
            counterexamples_total=self.total,
            notes=self.notes,
        )


def _classes_upto(n_max, c=Constraints(), jobs=1, n_min=1):
    for n, level in generate(n_max, c, jobs):
        if n >= n_min:
            for key in level:
                yield parse_graph6(key)


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def h7() -> Graph:
    return build(ConstructionSpec("h2k-1", (4,)))


# -- equivalence on 7 vertices --------------------------------------------------------
def check_equivalence_7_3(n: int = 7, mutate: bool = False, jobs: int = 1) -> CheckReport:
    """No 7-vertex graph is K4-free, H7-free and has alpha <= 2.

    ``n`` below 7 makes the check vacuous. ``mutate`` drops H7-freeness.
    """
    col = _Collector("equivalence-7-3", {"n": n, "mutate": mutate})
    if n != 7:
        col.notes["vacuous"] = f"the statement concerns 7-vertex graphs; n={n} has no instances"
        return col.report()
    H = h7()
    for g in _classes_upto(7, jobs=jobs, n_min=7):
        col.count += 1
        if clique_number(g) <= 3 and independence_number(g) <= 2 and (mutate or not contains_subgraph(g, H)):
            col.bad(g, {"alpha": independence_number(g), "omega": clique_number(g)})
    return col.report()


# -- clique counts ---------------------------------------------------------------------
def check_clique_count_lower(n_max: int = 8, mutate: bool = False, jobs: int = 1) -> CheckReport:
    """``t_k/t_{k-1} >= n/(k a^{k-1}) - 1``; ``mutate`` drops the ``- 1``."""
    if n_max > 8:
        raise ValueError("turan-lb is exhaustive only up to 8 vertices")
    col = _Collector("turan-lb", {"n_max": n_max, "mutate": mutate})
    for g in _classes_upto(n_max, jobs=jobs):
        col.count += 1
        a = independence_number(g)
        w = clique_number(g)
        t = [None, g.n] + [clique_count(g, i) for i in range(2, w + 2)]
        for k in range(2, w + 2):
            lhs = Fraction(t[k], t[k - 1])
            rhs = Fraction(g.n, k * a ** (k - 1)) - (0 if mutate else 1)
            if lhs < rhs:
                col.bad(g, {"k": k, "alpha": a, "lhs": _frac(lhs), "rhs": _frac(rhs)})
    return col.report()


def check_clique_count_upper(n_max: int = 8, alpha_grid=None, k_grid=(3, 4, 5, 6), mutate: bool = False, jobs: int = 1) -> CheckReport:
    """``t_i <= a^{C(k,2)-C(k-i,2)}/i!`` for K_k-free graphs with ``alpha(G) < a``.

    ``alpha_grid=None`` means ``a`` ranges over ``alpha(G)+1 .. 6``.
    ``mutate`` replaces the exponent by ``i - 1``.
    """
    if n_max > 8:
        raise ValueError("turan-ub is exhaustive only up to 8 vertices")
    col = _Collector(
        "turan-ub",
        {"n_max": n_max, "alpha_grid": None if alpha_grid is None else list(alpha_grid), "k_grid": list(k_grid), "mutate": mutate},
    )
    for g in _classes_upto(n_max, jobs=jobs):
        col.count += 1
        a0 = independence_number(g)
        w = clique_number(g)
        t = {i: clique_count(g, i) for i in range(1, max(k_grid) + 1)}
        grid = range(a0 + 1, 7) if alpha_grid is None else [x for x in alpha_grid if x > a0]
        for k in k_grid:
            if w >= k:
                continue
            for a in grid:
                for i in range(1, k + 1):
                    expo = i - 1 if mutate else comb(k, 2) - comb(k - i, 2)
                    bound = Fraction(a ** expo, factorial(i))
                    if t[i] > bound:
                        col.bad(g, {"k": k, "alpha": a, "i": i, "t_i": t[i], "bound": _frac(bound)})
    return col.report()


# -- v-triangles -----------------------------------------------------------------------
def v_triangles(g: Graph, v: int) -> list[tuple[int, int, int]]:
    """Triangles ``(x, y, z)`` avoiding ``v`` whose edge ``xy`` lies in ``N(v)``; ``z`` is the apex.

    A triangle inside ``N(v)`` is listed once per choice of apex.
    """
    adj = g.adj
    Nv = adj[v]
    out = []
    for x in iter_bits(Nv):
        for y in iter_bits(Nv & adj[x] & ~((2 << x) - 1)):
            for z in iter_bits(adj[x] & adj[y] & ~(1 << v)):
                out.append((x, y, z))
    return out


def extending_vertices(g: Graph, v: int) -> int:
    """Bitmask of ``N_tri(v)``: apexes outside ``N(v)`` of v-triangles."""
    m = 0
    for _, _, z in v_triangles(g, v):
        if not g.adj[v] >> z & 1:
            m |= 1 << z
    return m


def triangle_nbhd_violations(g: Graph) -> list[dict]:
    adj = g.adj
    out = []
    for v in range(g.n):
        tris = v_triangles(g, v)
        # a) no v-triangle has all three vertices in N(v)
        for x, y, z in tris:
            if adj[v] >> z & 1:
                out.append({"v": v, "part": "a", "triangle": [x, y, z]})
                break
        apex_tris: dict[int, list[int]] = {}
        for x, y, z in tris:
            if not adj[v] >> z & 1:
                apex_tris.setdefault(z, []).append(1 << x | 1 << y | 1 << z)
        N = 0
        for z in apex_tris:
            N |= 1 << z
        # b) apexes of vertex-disjoint v-triangles are non-adjacent
        found = False
        for u in iter_bits(N):
            for w in iter_bits(N & adj[u]):
                if w < u or found:
                    continue
                if any(not (s & t) for s in apex_tris[u] for t in apex_tris[w]):
                    out.append({"v": v, "part": "b", "pair": [u, w]})
                    found = True
        # c) N_tri(v) is triangle-free
        for x in iter_bits(N):
            common = N & adj[x] & ~((2 << x) - 1)
            hit = next(((x, y, z) for y in iter_bits(common) for z in iter_bits(common & adj[y] & ~((2 << y) - 1))), None)
            if hit:
                out.append({"v": v, "part": "c", "triangle": list(hit)})
                break
    return out


def _random_free_graph(rng: np.random.Generator, n: int, forbid_h7: bool) -> Graph:
    """Random K4-free (and H7-free) graph: add edges in random order while the class allows."""
    H = h7()
    rows = [0] * n
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    order = rng.permutation(len(pairs))
    stop = int(rng.integers(len(pairs) // 3, len(pairs) + 1))
    for idx in order[:stop]:
        i, j = pairs[idx]
        common = rows[i] & rows[j]
        # K4 through ij needs an edge inside the common neighbourhood
        if any(rows[x] & common for x in iter_bits(common)):
            continue
        rows[i] |= 1 << j
        rows[j] |= 1 << i
        if forbid_h7:
            g = Graph._trusted(n, rows)
            if g.e >= H.e and contains_subgraph(g, H):
                rows[i] &= ~(1 << j)
                rows[j] &= ~(1 << i)
    return Graph._trusted(n, rows)


def check_triangle_nbhd(n_max: int = 9, samples: int = 1000, seed: int = 42, sample_n=(10, 14), mutate: bool = False, jobs: int = 1) -> CheckReport:
    """Parts a-c on all K4-, H7-free classes up to ``n_max`` plus seeded random samples.

    ``mutate`` drops H7-freeness (graphs are then only K4-free).
    """
    col = _Collector(
        "triangle-nbhd",
        {"n_max": n_max, "samples": samples, "seed": seed, "sample_n": list(sample_n), "mutate": mutate},
    )
    forbidden = () if mutate else (h7(),)
    for g in _classes_upto(n_max, Constraints(clique_max=3, forbidden=forbidden), jobs=jobs):
        col.count += 1
        for ctx in triangle_nbhd_violations(g):
            col.bad(g, ctx)
    rng = np.random.Generator(np.random.Philox(seed))
    for i in range(samples):
        n = int(rng.integers(sample_n[0], sample_n[1] + 1))
        g = _random_free_graph(rng, n, not mutate)
        col.count += 1
        for ctx in triangle_nbhd_violations(g):
            col.bad(g, {"sample": i, **ctx})
    return col.report()


# -- switching -----------------------------------------------------------------------------
def _subset_scores(g: Graph):
    verts, edges = _class_tables(g, [1 << v for v in range(g.n)])
    return np.asarray(verts), np.asarray(edges)


def max_vertex_maximisers(g: Graph, most: bool = True) -> tuple[Fraction, list[int]]:
    """Plain subset search: ``m_2`` and every maximising set of largest (or smallest) size."""
    verts, edges = _subset_scores(g)
    best = None
    sets = []
    for S in np.flatnonzero(verts >= 3):
        val = Fraction(int(edges[S]) - 1, int(verts[S]) - 2)
        if best is None or val > best:
            best, sets = val, [int(S)]
        elif val == best:
            sets.append(int(S))
    size = (max if most else min)(int(verts[S]) for S in sets)
    return best, [S for S in sets if int(verts[S]) == size]


def check_switching(n_max: int = 8, mutate: bool = False, jobs: int = 1) -> CheckReport:
    """Vertex-maximal d_2 maximisers never split a twin pair.

    Maximisers are found by plain subset search, independent of the twin-class
    shortcut inside ``density.m2``. ``mutate`` looks at vertex-minimal maximisers instead.
    """
    if n_max > 8:
        raise ValueError("m2-switching is exhaustive only up to 8 vertices")
    col = _Collector("m2-switching", {"n_max": n_max, "mutate": mutate})
    with_pairs = 0
    for g in _classes_upto(n_max, jobs=jobs, n_min=3):
        col.count += 1
        classes = [c for c in twin_classes(g) if c & (c - 1)]
        if not classes:
            continue
        with_pairs += 1
        _, sets = max_vertex_maximisers(g, most=not mutate)
        for S in sets:
            split = next((c for c in classes if S & c and (S & c) != c), None)
            if split is not None:
                col.bad(g, {"maximiser": list(iter_bits(S)), "twins": list(iter_bits(split))})
                break
    col.notes["graphs_with_twins"] = with_pairs
    return col.report()


# -- disjoint unions ----------------------------------------------------------------------
def check_disjoint_union(n_max: int = 6, mutate: bool = False, jobs: int = 1) -> CheckReport:
    """``d_2(G + H) < max(d_2(G), d_2(H))`` over all pairs of classes on at most ``n_max`` vertices.

    Pairs failing ``2e > |V|`` are skipped, but the first few pairs where the
    conclusion then fails are kept in ``notes`` to show the hypothesis matters.
    ``mutate`` checks every pair with at least 3 vertices on each side.
    """
    if n_max > 6:
        raise ValueError("disjoint-union is exhaustive only up to 6 vertices per factor")
    col = _Collector("disjoint-union", {"n_max": n_max, "mutate": mutate})
    gs = list(_classes_upto(n_max, jobs=jobs, n_min=3))
    necessity = []
    for i, g in enumerate(gs):
        for h in gs[i:]:
            hyp = 2 * g.e > g.n and 2 * h.e > h.n
            lhs = Fraction(g.e + h.e - 1, g.n + h.n - 2)
            rhs = max(d2(g), d2(h))
            if not hyp:
                if lhs >= rhs and len(necessity) < COUNTEREXAMPLE_CAP:
                    necessity.append([canonical_form(g).decode(), canonical_form(h).decode()])
                if not mutate:
                    continue
            col.count += 1
            if lhs >= rhs:
                u = disjoint_union(g, h)
                col.bad(u, {"left": canonical_form(g).decode(), "right": canonical_form(h).decode(), "d2_union": _frac(lhs), "max_d2": _frac(rhs)})
    col.notes["hypothesis_necessity_witnesses"] = necessity
    return col.report()


# -- sparse triangle-free graphs ----------------------------------------------------------------
def check_sparse_tf_bound(n_max: int = 10, mutate: bool = False, jobs: int = 1) -> CheckReport:
    """``e >= 6m - 13r - 1`` with ``r = alpha + 1`` over 3-degenerate triangle-free classes.

    ``mutate`` strengthens the bound to ``6m - 6r - 1``.
    """
    if n_max > 10:
        raise ValueError("sparse-tf-bound is exhaustive only up to 10 vertices")
    col = _Collector("sparse-tf-bound", {"n_max": n_max, "r": "alpha(G)+1", "mutate": mutate})
    for g in _classes_upto(n_max, Constraints(clique_max=2), jobs=jobs):
        if degeneracy(g) > 3:
            continue
        col.count += 1
        r = independence_number(g) + 1
        bound = 6 * g.n - (6 if mutate else 13) * r - 1
        if g.e < bound:
            col.bad(g, {"m": g.n, "r": r, "e": g.e, "bound": bound})
    return col.report()


# -- dense triangle-free graphs on 2k-1 vertices ---------------------------------------------
def min_edges_on_subsets(g: Graph, k: int) -> int:
    verts, edges = _subset_scores(g)
    return int(edges[verts == k].min())


def check_up_bip(k_grid=(5,), mutate: bool = False, jobs: int = 1) -> CheckReport:
    """``e <= (k-1)^2 - t^2 + 1`` for triangle-free graphs on ``2k-1`` vertices whose ``k``-subsets span ``>= t+1`` edges.

    ``mutate`` weakens the subset hypothesis to ``>= t`` edges.
    """
    k_grid = list(k_grid)
    if not set(k_grid) <= {5, 6}:
        raise ValueError("up-bip supports k in {5, 6}")
    col = _Collector("up-bip", {"k_grid": k_grid, "mutate": mutate})
    for k in k_grid:
        ts = [t for t in range(1, k) if 2 * t * t < k - 1]
        for _, level in generate(2 * k - 1, Constraints(clique_max=2), jobs):
            pass
        for key in level:
            g = parse_graph6(key)
            col.count += 1
            low = min_edges_on_subsets(g, k)
            for t in ts:
                need = t if mutate else t + 1
                if low >= need and g.e > (k - 1) ** 2 - t * t + 1:
                    col.bad(g, {"k": k, "t": t, "e": g.e, "bound": (k - 1) ** 2 - t * t + 1, "min_k_subset_edges": low})
    return col.report()


CHECKS = {
    "equivalence-7-3": check_equivalence_7_3,
    "turan-lb": check_clique_count_lower,
    "turan-ub": check_clique_count_upper,
    "triangle-nbhd": check_triangle_nbhd,
    "m2-switching": check_switching,
    "disjoint-union": check_disjoint_union,
    "sparse-tf-bound": check_sparse_tf_bound,
    "up-bip": check_up_bip,
}
