"""Non-induced subgraph containment by backtracking with bitmask candidate sets."""

from __future__ import annotations

from .graph import Graph, iter_bits


def _search_order(h: Graph, first: int | None = None) -> list[int]:
    degs = h.degrees()
    remaining = set(range(h.n))
    order: list[int] = []
    placed = 0
    while remaining:
        if first is not None and not order:
            u = first
        else:
            # most already-placed neighbours first, then highest degree
            u = max(remaining, key=lambda x: ((h.adj[x] & placed).bit_count(), degs[x], -x))
        order.append(u)
        remaining.discard(u)
        placed |= 1 << u
    return order


def find_embedding(h: Graph, g: Graph, must_hit: int | None = None) -> dict[int, int] | None:
    """Injective map ``h -> g`` preserving every edge of ``h``, or ``None``.

    With ``must_hit`` set, only embeddings whose image contains that host
    vertex are considered.
    """
    if h.n > g.n or h.e > g.e:
        return None
    if h.n == 0:
        return {} if must_hit is None else None
    gdeg = g.degrees()
    hdeg = h.degrees()
    if max(hdeg) > max(gdeg):
        return None
    by_deg = [0] * (max(hdeg) + 1)
    for d in range(len(by_deg)):
        m = 0
        for x, dx in enumerate(gdeg):
            if dx >= d:
                m |= 1 << x
        by_deg[d] = m
    starts = [None] if must_hit is None else [u for u in range(h.n) if hdeg[u] <= gdeg[must_hit]]
    for first in starts:
        found = _embed(h, g, by_deg, hdeg, first, must_hit)
        if found is not None:
            return found
    return None


def _embed(h, g, by_deg, hdeg, first, pinned):
    order = _search_order(h, first)
    pos = {u: i for i, u in enumerate(order)}
    back = [[pos_w for pos_w in (pos[w] for w in iter_bits(h.adj[u])) if pos_w < i] for i, u in enumerate(order)]
    base = [by_deg[hdeg[u]] for u in order]
    if first is not None:
        base[0] &= 1 << pinned
    gadj = g.adj
    k = len(order)
    image = [0] * k

    def step(i, used):
        if i == k:
            return True
        cand = base[i] & ~used
        for j in back[i]:
            cand &= gadj[image[j]]
            if not cand:
                return False
        while cand:
            low = cand & -cand
            cand ^= low
            image[i] = low.bit_length() - 1
            if step(i + 1, used | low):
                return True
        return False

    if step(0, 0):
        return {order[i]: image[i] for i in range(k)}
    return None


def contains_subgraph(g: Graph, h: Graph) -> bool:
    """True iff ``g`` contains a (not necessarily induced) copy of ``h``."""
    return find_embedding(h, g) is not None


def is_free_of(g: Graph, family) -> bool:
    return not any(contains_subgraph(g, h) for h in family)
