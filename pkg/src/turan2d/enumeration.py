"""Isomorph-free generation of hereditary graph classes and the extremal searches on top.

Graphs are grown one vertex at a time. Every graph ``G`` in a hereditary
class arises from ``G - v`` (also in the class) for ``v`` of maximum degree,
or of minimum degree, so only neighbourhoods that give the new vertex that
extreme degree are tried. Duplicates are removed level by level through
canonical forms and each level is kept sorted by canonical key.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from pathlib import Path
from typing import Iterator

from .canon import canonical_form
from .constructions import turan_part_sizes
from .density import format_rational, m2, m2_at_most
from .graph import Graph, complete_graph, disjoint_union, parse_graph6
from .invariants import alpha_mask, max_clique_mask
from .subgraph import find_embedding

GENERATOR_VERSION = 1
FULL_LIMIT = 11  # largest order enumerated with no constraint beyond alpha
WITNESS_CAP = 100


class SearchError(ValueError):
    pass


@dataclass(frozen=True)
class Constraints:
    """Hereditary restrictions applied during generation.

    alpha_max:  independence number at most this
    clique_max: clique number at most this
    m2_max:     m_2 at most this (strictly below when ``m2_strict``), checked from 3 vertices on
    forbidden:  graphs that must not appear as (non-induced) subgraphs
    """

    alpha_max: int | None = None
    clique_max: int | None = None
    m2_max: Fraction | None = None
    m2_strict: bool = False
    forbidden: tuple = ()

    def admits(self, g: Graph) -> bool:
        # used for the base case and by tests; generation checks these incrementally
        from .invariants import clique_number, independence_number

        if self.alpha_max is not None and independence_number(g) > self.alpha_max:
            return False
        if self.clique_max is not None and clique_number(g) > self.clique_max:
            return False
        if self.m2_max is not None and g.n >= 3 and not m2_at_most(g, self.m2_max, self.m2_strict):
            return False
        return not any(find_embedding(h, g) is not None for h in self.forbidden)


# -- one augmentation step -----------------------------------------------------------
def _neighbourhoods(p: Graph, c: Constraints) -> Iterator[int]:
    """Candidate neighbourhoods of a new vertex joined to ``p``."""
    n = p.n
    adj = p.adj
    full = p.full_mask
    degs = p.degrees()
    # maximum clique allowed inside the new vertex's neighbourhood
    ncap = n if c.clique_max is None else c.clique_max - 1
    if ncap < 0:
        return

    def clique_ok(N, u):
        if ncap >= n:
            return True
        inner = N & adj[u]
        if ncap == 0:
            return False
        if ncap == 1:
            return inner == 0
        return max_clique_mask(adj, inner, ncap - 1)[0] <= ncap - 1

    a = c.alpha_max
    if a is not None and a <= n:
        # new vertex of maximum degree; walk its non-neighbourhood T with alpha(T) <= a - 1
        if a == 0:
            return
        top = max(degs, default=0)
        tmax = n - top

        def clique_of_complement_ok(N):
            if ncap >= n:
                return True
            return max_clique_mask(adj, N, ncap)[0] <= ncap

        def walk(start, T, size):
            N = full & ~T
            k = n - size
            if all(k >= degs[u] + (N >> u & 1) for u in range(n)) and clique_of_complement_ok(N):
                yield N
            if size == tmax:
                return
            for v in range(start, n):
                if a - 1 == 0:
                    break
                if a - 2 < 0 or alpha_mask(adj, T & ~adj[v]) > a - 2:
                    continue
                yield from walk(v + 1, T | 1 << v, size + 1)

        yield from walk(0, 0, 0)
        return

    # new vertex of minimum degree; walk its neighbourhood N
    low = min(degs, default=0)
    nmax = min(low + 1, n)

    def walk_n(start, N, size):
        if all(size <= degs[u] + (N >> u & 1) for u in range(n)):
            yield N
        if size == nmax:
            return
        for v in range(start, n):
            if clique_ok(N, v):
                yield from walk_n(v + 1, N | 1 << v, size + 1)

    yield from walk_n(0, 0, 0)


def _accept(g: Graph, c: Constraints) -> bool:
    if c.m2_max is not None and g.n >= 3 and not m2_at_most(g, c.m2_max, c.m2_strict):
        return False
    for h in c.forbidden:
        # the parent was free of h, so any copy must use the new vertex
        if h.n <= g.n and find_embedding(h, g, must_hit=g.n - 1) is not None:
            return False
    return True


def _expand(parents_g6: list[bytes], c: Constraints):
    """Children keys of a batch of parents: (accepted keys, rejected keys, candidates tried)."""
    accepted: set[bytes] = set()
    rejected: set[bytes] = set()
    tried = 0
    for s in parents_g6:
        p = parse_graph6(s)
        for N in _neighbourhoods(p, c):
            tried += 1
            child = p.add_vertex(N)
            key = canonical_form(child)
            if key in accepted or key in rejected:
                continue
            if _accept(child, c):
                accepted.add(key)
            else:
                rejected.add(key)
    return accepted, rejected, tried


@dataclass
class LevelStats:
    n: int
    classes: int
    candidates: int
    pruned: int


def generate(n_max: int, c: Constraints, jobs: int = 1, stats: list | None = None) -> Iterator[tuple[int, list[bytes]]]:
    """Yield ``(n, sorted canonical keys)`` for ``n = 1..n_max``."""
    level = [canonical_form(Graph(1, [0]))]
    if not c.admits(Graph(1, [0])):
        level = []
    if stats is not None:
        stats.append(LevelStats(1, len(level), 1, 1 - len(level)))
    yield 1, level
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for n in range(2, n_max + 1):
            if pool is None:
                acc, rej, tried = _expand(level, c)
            else:
                # fixed chunking; set union makes the fold order-independent
                size = max(1, -(-len(level) // (4 * jobs)))
                chunks = [level[i:i + size] for i in range(0, len(level), size)]
                acc, rej, tried = set(), set(), 0
                for a, r, t in pool.map(_expand, chunks, [c] * len(chunks)):
                    acc |= a
                    rej |= r
                    tried += t
                rej -= acc
            level = sorted(acc)
            if stats is not None:
                stats.append(LevelStats(n, len(level), tried, len(rej)))
            yield n, level
    finally:
        if pool is not None:
            pool.shutdown()


def enumerate_class(m: int, c: Constraints, jobs: int = 1, stats: list | None = None) -> list[Graph]:
    """Canonical representatives of every ``m``-vertex graph satisfying ``c``."""
    if m < 1:
        raise SearchError("need m >= 1")
    for n, level in generate(m, c, jobs, stats):
        if n == m:
            return [parse_graph6(k) for k in level]
    return []


def _check_feasible(m: int, c: Constraints):
    constrained = c.clique_max is not None or c.m2_max is not None or c.forbidden
    if m > FULL_LIMIT and not constrained:
        raise SearchError(
            f"enumerating all {m}-vertex graphs with alpha <= {c.alpha_max} is out of reach; "
            f"add a clique or m_2 constraint (limit without one is {FULL_LIMIT})"
        )


# -- cache -----------------------------------------------------------------------------
def _cache_paths(cache_dir, alpha_max, m):
    base = Path(cache_dir) / f"alpha{alpha_max}_n{m}.g6"
    return base, base.with_suffix(".meta")


def _cache_read(cache_dir, alpha_max, m):
    path, meta = _cache_paths(cache_dir, alpha_max, m)
    try:
        info = json.loads(meta.read_text())
        if info.get("version") != GENERATOR_VERSION or info.get("m") != m or info.get("alpha_max") != alpha_max:
            return None
        lines = path.read_bytes().split()
        if len(lines) != info.get("count"):
            return None
        return lines
    except (OSError, ValueError):
        return None


def _cache_write(cache_dir, alpha_max, m, keys):
    path, meta = _cache_paths(cache_dir, alpha_max, m)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_bytes(b"".join(k + b"\n" for k in keys))
    os.replace(tmp, path)
    meta.write_text(json.dumps({"version": GENERATOR_VERSION, "m": m, "alpha_max": alpha_max, "count": len(keys)}))


def enumerate_alpha_bounded(m: int, alpha_max: int, jobs: int = 1, cache_dir=None) -> Iterator[Graph]:
    """One canonical representative per class of ``m``-vertex graphs with ``alpha <= alpha_max``.

    Stream order is ascending canonical key.
    """
    c = Constraints(alpha_max=alpha_max)
    _check_feasible(m, c)
    keys = _cache_read(cache_dir, alpha_max, m) if cache_dir else None
    if keys is None:
        keys = list(_keys_at(m, c, jobs))
        if cache_dir:
            _cache_write(cache_dir, alpha_max, m, keys)
    for k in keys:
        yield parse_graph6(k)


def _keys_at(m, c, jobs=1, stats=None):
    if m < 1:
        raise SearchError("need m >= 1")
    for n, level in generate(m, c, jobs, stats):
        if n == m:
            return level
    return []


def count_classes(m: int, jobs: int = 1) -> int:
    """Number of isomorphism classes of ``m``-vertex graphs (``m <= 8``)."""
    if not 1 <= m <= 8:
        raise SearchError(f"count_classes supports 1 <= m <= 8, got {m}")
    return len(_keys_at(m, Constraints(), jobs))


# -- extremal searches ------------------------------------------------------------------
@dataclass
class SearchOutcome:
    value: Fraction | int | None
    witnesses: list[str]
    witnesses_total: int
    enumerated: int
    pruned: int
    wall_time: float
    parameters: dict = field(default_factory=dict)
    profile: str = "none"
    citations: list[str] = field(default_factory=list)

    def to_json(self, timing: bool = False) -> dict:
        v = self.value
        out = {
            "value": format_rational(v) if isinstance(v, Fraction) else v,
            "witnesses": self.witnesses,
            "witnesses_total": self.witnesses_total,
            "enumerated": self.enumerated,
            "pruned": self.pruned,
            "profile": self.profile,
            "citations": self.citations,
            "parameters": self.parameters,
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out


PROFILES = {
    "none": "no pruning: every class with alpha <= r-1 is scored",
    "clique-cap": "a K_c subgraph forces m_2 >= (c+1)/2, so graphs beating the incumbent are K_c-free; m_2 is monotone under taking subgraphs",
    "triangle-free": "a triangle forces m_2 >= 2, so below 2 only triangle-free graphs compete; m_2 is monotone under taking subgraphs",
}


def _check_mr(m, r):
    if not (r >= 2 and m >= 2 * r - 1 and m >= 3):
        raise SearchError(f"need m >= 2r - 1 >= 3, got m={m}, r={r}")


def turan_complement(m: int, parts: int) -> Graph:
    return disjoint_union(*(complete_graph(s) for s in turan_part_sizes(m, parts)))


def _clique_cap(bound: Fraction) -> int:
    """Smallest ``c`` with ``m_2(K_c) = (c+1)/2 >= bound``."""
    return max(3, ceil(2 * bound - 1))


def min_m2(m: int, r: int, profile: str = "clique-cap", jobs: int = 1) -> SearchOutcome:
    """``M(m, r)``: least ``m_2`` over ``m``-vertex graphs with ``alpha <= r-1``."""
    _check_mr(m, r)
    if profile not in PROFILES:
        raise SearchError(f"unknown profile {profile!r}; choose from {', '.join(PROFILES)}")
    t0 = time.perf_counter()
    incumbent = None
    if profile == "none":
        c = Constraints(alpha_max=r - 1)
    else:
        inc = turan_complement(m, r - 1)
        bound = m2(inc) if profile == "clique-cap" else Fraction(2)
        if profile == "triangle-free":
            inc = None
            bound = Fraction(2)
        incumbent = (bound, inc)
        c = Constraints(alpha_max=r - 1, clique_max=_clique_cap(bound) - 1, m2_max=bound)
    _check_feasible(m, c)
    stats: list[LevelStats] = []
    graphs = [parse_graph6(k) for k in _keys_at(m, c, jobs, stats)]
    scored = [(m2(g), canonical_form(g)) for g in graphs]
    if incumbent is not None and incumbent[1] is not None:
        scored.append((incumbent[0], canonical_form(incumbent[1])))
    if scored:
        value = min(s[0] for s in scored)
    elif incumbent is not None:
        value = incumbent[0]  # nothing beats or ties the incumbent's density among K_c-free graphs
    else:
        value = None
    wit = sorted({k for v, k in scored if v == value})
    return SearchOutcome(
        value=value,
        witnesses=[k.decode() for k in wit[:WITNESS_CAP]],
        witnesses_total=len(wit),
        enumerated=sum(s.classes for s in stats),
        pruned=sum(s.pruned for s in stats),
        wall_time=time.perf_counter() - t0,
        parameters={"m": m, "r": r, **_constraint_echo(c)},
        profile=profile,
        citations=[PROFILES[profile]],
    )


def min_edges_under_m2_cap(m: int, r: int, cap, profile: str = "clique-cap", jobs: int = 1) -> SearchOutcome:
    """Least edge count over ``m``-vertex graphs with ``alpha <= r-1`` and ``m_2 < cap``.

    An empty class gives ``value=None`` rather than an error.
    """
    _check_mr(m, r)
    cap = Fraction(cap)
    if cap <= 0:
        raise SearchError("cap must be positive")
    if profile not in ("none", "clique-cap"):
        raise SearchError(f"profile {profile!r} does not apply to the edge search; use none or clique-cap")
    t0 = time.perf_counter()
    clique_max = _clique_cap(cap) - 1 if profile == "clique-cap" else None
    c = Constraints(alpha_max=r - 1, clique_max=clique_max, m2_max=cap, m2_strict=True)
    _check_feasible(m, c)
    stats: list[LevelStats] = []
    keys = _keys_at(m, c, jobs, stats)
    by_e = {}
    for k in keys:
        by_e.setdefault(parse_graph6(k).e, []).append(k)
    value = min(by_e) if by_e else None
    wit = sorted(by_e[value]) if by_e else []
    return SearchOutcome(
        value=value,
        witnesses=[k.decode() for k in wit[:WITNESS_CAP]],
        witnesses_total=len(wit),
        enumerated=sum(s.classes for s in stats),
        pruned=sum(s.pruned for s in stats),
        wall_time=time.perf_counter() - t0,
        parameters={"m": m, "r": r, "cap": format_rational(cap), **_constraint_echo(c)},
        profile=profile,
        citations=[PROFILES[profile]],
    )


def _constraint_echo(c: Constraints) -> dict:
    return {
        "alpha_max": c.alpha_max,
        "clique_max": c.clique_max,
        "m2_max": None if c.m2_max is None else format_rational(c.m2_max),
        "m2_strict": c.m2_strict,
    }
