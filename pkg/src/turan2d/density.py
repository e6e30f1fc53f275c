"""Exact 2-densities: d_2, m_2, densest fixed-size subgraphs and strict 2-balancedness.

All values are ``fractions.Fraction``. The m_2 search works on twin classes
(vertices with equal neighbourhoods outside each other): a vertex-maximal
d_2 maximiser never splits such a class, so only unions of classes need to be
scored. That reduction is re-checked against plain subset enumeration in the
test-suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .graph import Graph, GraphError, iter_bits, mask_of
from .canon import canonical_form, canonical_graph

# unions of twin classes are scored exhaustively up to this many classes
CLASS_LIMIT = 22
_NUMPY_FROM = 11


class DensityError(GraphError):
    """Raised when a 2-density is requested for a graph with fewer than 3 vertices."""


def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def _need3(g: Graph):
    if g.n < 3:
        raise DensityError(f"2-density needs at least 3 vertices, got {g.n}")


def d2(g: Graph) -> Fraction:
    """``(e(G) - 1) / (|G| - 2)``."""
    _need3(g)
    return Fraction(g.e - 1, g.n - 2)


# -- twin classes ----------------------------------------------------------------
def twin_classes(g: Graph) -> list[int]:
    """Partition into classes of pairwise equivalent vertices, as bitmasks.

    ``u`` and ``v`` are equivalent when ``N(u) - v == N(v) - u``; the
    transposition ``(u v)`` is then an automorphism. Each class is a clique
    or an independent set.
    """
    adj = g.adj
    seen = 0
    classes = []
    for u in range(g.n):
        if seen >> u & 1:
            continue
        cls = 1 << u
        for v in range(u + 1, g.n):
            if not seen >> v & 1 and adj[u] & ~(1 << v) == adj[v] & ~(1 << u):
                cls |= 1 << v
        seen |= cls
        classes.append(cls)
    return classes


def _class_tables(g: Graph, classes):
    """Vertex and edge counts of every union of classes, indexed by class bitmask."""
    q = len(classes)
    sizes = [c.bit_count() for c in classes]
    internal = [g.edges_within(c) for c in classes]
    reps = [c & -c for c in classes]
    cadj = []
    for i, c in enumerate(classes):
        row = g.adj[reps[i].bit_length() - 1]
        m = 0
        for j, d in enumerate(classes):
            if j != i and row & reps[j]:
                m |= 1 << j
        cadj.append(m)
    if q < _NUMPY_FROM:
        verts = [0] * (1 << q)
        edges = [0] * (1 << q)
        for i in range(q):
            lo = 1 << i
            s, t, ci = sizes[i], internal[i], cadj[i]
            for T in range(lo):
                verts[lo + T] = verts[T] + s
                edges[lo + T] = edges[T] + t + s * verts[T & ci]
        return verts, edges
    verts = np.zeros(1 << q, dtype=np.int64)
    edges = np.zeros(1 << q, dtype=np.int64)
    for i in range(q):
        lo = 1 << i
        idx = np.arange(lo, dtype=np.int64)
        verts[lo:2 * lo] = verts[:lo] + sizes[i]
        edges[lo:2 * lo] = edges[:lo] + internal[i] + sizes[i] * verts[idx & cadj[i]]
    return verts, edges


def _best_union(g: Graph, classes):
    verts, edges = _class_tables(g, classes)
    if isinstance(verts, list):
        best = None
        best_key = None
        for T in range(1, len(verts)):
            v = verts[T]
            if v < 3:
                continue
            val = Fraction(edges[T] - 1, v - 2)
            key = (val, v)
            if best is None or key > best_key:
                best, best_key = [T], key
            elif key == best_key:
                best.append(T)
        return best_key[0], best
    ok = verts >= 3
    ratio = np.where(ok, (edges - 1) / np.maximum(verts - 2, 1), -np.inf)
    top = ratio.max()
    near = np.flatnonzero(ratio >= top - 1e-9)
    exact = [(Fraction(int(edges[T]) - 1, int(verts[T]) - 2), int(verts[T]), int(T)) for T in near]
    val = max(x[0] for x in exact)
    vmax = max(x[1] for x in exact if x[0] == val)
    return val, [x[2] for x in exact if x[0] == val and x[1] == vmax]


def m2_with_witness(g: Graph) -> tuple[Fraction, list[int]]:
    """``m_2(G)`` and a vertex-maximal maximising vertex set (smallest bitmask among ties)."""
    _need3(g)
    classes = twin_classes(g)
    if len(classes) <= CLASS_LIMIT:
        val, unions = _best_union(g, classes)
        masks = []
        for T in unions:
            m = 0
            for i in iter_bits(T):
                m |= classes[i]
            masks.append(m)
        return val, list(iter_bits(min(masks)))
    best = None
    for s in range(3, g.n + 1):
        e, S = max_edges_at_size(g, s)
        val = Fraction(e - 1, s - 2)
        if best is None or val >= best[0]:
            best = (val, S)
    return best[0], sorted(best[1])


def m2(g: Graph) -> Fraction:
    """``max d_2(H)`` over subgraphs ``H`` on at least 3 vertices (induced ones suffice)."""
    return m2_with_witness(g)[0]


def m2_at_most(g: Graph, bound, strict: bool = False) -> bool:
    """``m_2(G) <= bound`` (or ``<`` when ``strict``), without building Fractions per subset."""
    _need3(g)
    b = Fraction(bound)
    p, q = b.numerator, b.denominator
    verts, edges = _class_tables(g, [1 << v for v in range(g.n)]) if g.n <= CLASS_LIMIT else (None, None)
    if verts is None:
        val = m2(g)
        return val < b if strict else val <= b
    if isinstance(verts, list):
        worst = max(q * (e - 1) - p * (v - 2) for v, e in zip(verts, edges) if v >= 3)
    else:
        sel = verts >= 3
        worst = int((q * (edges[sel] - 1) - p * (verts[sel] - 2)).max())
    return worst < 0 if strict else worst <= 0


# -- densest s-subgraph ----------------------------------------------------------
def max_edges_at_size(g: Graph, s: int) -> tuple[int, list[int]]:
    """Maximum edge count of an induced ``s``-vertex subgraph and one maximiser.

    Branch and bound: each undecided vertex is credited with its edges into
    the chosen set plus half its possible edges among the remaining picks.
    """
    if not 3 <= s <= g.n:
        raise DensityError(f"subset size must satisfy 3 <= s <= n, got s={s}, n={g.n}")
    adj = g.adj
    order = sorted(range(g.n), key=lambda v: -g.degree(v))
    best = [-1, 0]

    def bound(S, C, need):
        scores = sorted(
            ((adj[v] & S).bit_count() * 2 + min((adj[v] & C).bit_count(), need - 1) for v in iter_bits(C)),
            reverse=True,
        )
        return sum(scores[:need]) // 2

    def dfs(i, S, e, C, size):
        need = s - size
        if need == 0:
            if e > best[0]:
                best[0], best[1] = e, S
            return
        if C.bit_count() < need:
            return
        if e + bound(S, C, need) <= best[0]:
            return
        while i < len(order) and not C >> order[i] & 1:
            i += 1
        v = order[i]
        bit = 1 << v
        dfs(i + 1, S | bit, e + (adj[v] & S).bit_count(), C & ~bit, size + 1)
        dfs(i + 1, S, e, C & ~bit, size)

    dfs(0, 0, 0, g.full_mask, 0)
    return best[0], list(iter_bits(best[1]))


def _all_max_subsets(g: Graph, s: int, e: int) -> list[int]:
    from itertools import combinations

    return [
        mask_of(c) for c in combinations(range(g.n), s) if g.edges_within(mask_of(c)) == e
    ]


def is_strictly_2_balanced(g: Graph) -> bool:
    """True iff every proper subgraph on at least 3 vertices has smaller ``m_2``.

    Deleting edges lowers ``d_2``, so it is enough that every proper induced
    subgraph on 3 or more vertices has ``d_2`` strictly below ``d_2(G)``.
    """
    _need3(g)
    top = d2(g)
    for s in range(3, g.n):
        e, _ = max_edges_at_size(g, s)
        if Fraction(e - 1, s - 2) >= top:
            return False
    return True


def reduce_to_strictly_2_balanced(h: Graph) -> Graph:
    """A strictly 2-balanced subgraph with the same ``m_2``.

    Returns an induced ``d_2`` maximiser with as few vertices as possible
    (smallest canonical key among those), relabelled canonically. A
    vertex-minimal maximiser is automatically strictly 2-balanced; a
    vertex-maximal one need not be (two disjoint triangles, say).
    """
    _need3(h)
    target = m2(h)
    for s in range(3, h.n + 1):
        e, _ = max_edges_at_size(h, s)
        if Fraction(e - 1, s - 2) == target:
            cands = [canonical_graph(h.induced_mask(S)) for S in _all_max_subsets(h, s, e)]
            return min(cands, key=canonical_form)
    raise AssertionError("m_2 maximiser not found")  # unreachable


# -- forbidden families --------------------------------------------------------------
@dataclass(frozen=True)
class ForbiddenFamily:
    """Strictly 2-balanced graphs whose absence forces ``alpha_m >= r``.

    ``members`` is the reduced family (each strictly 2-balanced, none a
    subgraph of another); ``M`` is the smallest member density. Because the
    reduction shrinks graphs, containing a member does not by itself mean
    ``alpha_m < r``; ``minimal_graphs`` keeps the edge-minimal ``m``-vertex
    graphs with ``alpha <= r-1``, and containing one of those is exactly
    equivalent to ``alpha_m < r``.
    """

    m: int
    r: int
    members: tuple
    M: Fraction
    minimal_graphs: tuple = field(default=(), repr=False)

    @property
    def t(self) -> int:
        return len(self.members)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "r": self.r,
            "members": [canonical_form(h).decode() for h in self.members],
            "M": format_rational(self.M),
            "t": self.t,
        }


FAMILY_MAX_M = 10
_family_cache: dict = {}


def _edge_minimal(g: Graph, alpha_max: int) -> bool:
    from .invariants import independence_number

    for u, v in g.edges():
        rows = list(g.adj)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        if independence_number(Graph._trusted(g.n, rows)) <= alpha_max:
            return False
    return True


def forbidden_family(m: int, r: int) -> ForbiddenFamily:
    """Family for the local property ``alpha_m >= r`` (cached per ``(m, r)``)."""
    if not (r >= 2 and m >= 2 * r - 1 and m >= 3):
        raise ValueError(f"need m >= 2r - 1 >= 3, got m={m}, r={r}")
    if m > FAMILY_MAX_M:
        raise ValueError(f"forbidden family for m={m} is beyond the enumeration limit {FAMILY_MAX_M}")
    key = (m, r)
    if key in _family_cache:
        return _family_cache[key]
    from .enumeration import enumerate_alpha_bounded
    from .subgraph import contains_subgraph

    minimal = [g for g in enumerate_alpha_bounded(m, r - 1) if _edge_minimal(g, r - 1)]
    reduced = {}
    for g in minimal:
        h = reduce_to_strictly_2_balanced(g)
        reduced.setdefault(canonical_form(h), h)
    cands = [reduced[k] for k in sorted(reduced)]
    members = []
    for i, h in enumerate(cands):
        if any(j != i and (o.n, o.e) != (h.n, h.e) and contains_subgraph(h, o) for j, o in enumerate(cands)):
            continue
        members.append(h)
    fam = ForbiddenFamily(
        m=m,
        r=r,
        members=tuple(members),
        M=min(d2(h) for h in members),
        minimal_graphs=tuple(minimal),
    )
    _family_cache[key] = fam
    return fam

