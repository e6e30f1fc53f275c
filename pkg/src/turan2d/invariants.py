"""Exact clique, independence and local-independence numbers on bit rows."""

from __future__ import annotations

from .graph import Graph, GraphError, iter_bits


# -- maximum clique -----------------------------------------------------------
def _color_order(adj, P):
    """Greedy sequential colouring of ``P``; vertices listed by nondecreasing colour."""
    order = []
    bounds = []
    U = P
    color = 0
    while U:
        color += 1
        Q = U
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            Q &= ~adj[v] & ~low
            U &= ~low
            order.append(v)
            bounds.append(color)
    return order, bounds


def max_clique_mask(adj, P: int, lower: int = 0) -> tuple[int, int]:
    """Largest clique inside vertex set ``P`` as ``(size, mask)``.

    ``lower`` is a size already known to be achievable elsewhere; the search
    only reports cliques strictly larger than it (returning ``(lower, 0)``
    otherwise).
    """
    best = [lower, 0]

    def expand(size, R, P):
        order, bounds = _color_order(adj, P)
        for i in range(len(order) - 1, -1, -1):
            if size + bounds[i] <= best[0]:
                return
            v = order[i]
            bit = 1 << v
            NP = P & adj[v]
            if NP:
                expand(size + 1, R | bit, NP)
            elif size + 1 > best[0]:
                best[0] = size + 1
                best[1] = R | bit
            P &= ~bit

    if P:
        expand(0, 0, P)
    return best[0], best[1]


def clique_number(g: Graph) -> int:
    return max_clique_mask(g.adj, g.full_mask)[0]


def max_clique(g: Graph) -> list[int]:
    return list(iter_bits(max_clique_mask(g.adj, g.full_mask)[1]))


# -- maximum independent set -----------------------------------------------------
def _components(adj, P):
    comps = []
    while P:
        seed = P & -P
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= adj[v]
            nxt &= P & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        P &= ~comp
    return comps


def alpha_mask(adj, P: int) -> int:
    """Independence number of the subgraph induced on ``P``.

    Degree-0/1 vertices are taken greedily (always safe), the rest is split
    into components and each is solved as a maximum clique in the complement.
    """
    count = 0
    changed = True
    while changed and P:
        changed = False
        for v in iter_bits(P):
            if not P >> v & 1:
                continue
            nb = adj[v] & P
            if nb & (nb - 1) == 0:  # at most one neighbour
                count += 1
                P &= ~(nb | 1 << v)
                changed = True
    if not P:
        return count
    for comp in _components(adj, P):
        size = comp.bit_count()
        degs = [(adj[v] & comp).bit_count() for v in iter_bits(comp)]
        if max(degs) == 2:  # 2-regular component after reductions: a cycle
            count += size // 2
            continue
        cadj = {}
        for v in iter_bits(comp):
            cadj[v] = comp & ~adj[v] & ~(1 << v)
        count += max_clique_mask(cadj, comp)[0]
    return count


def independence_number(g: Graph) -> int:
    return alpha_mask(g.adj, g.full_mask)


def max_independent_set(g: Graph) -> list[int]:
    comp = g.complement()
    return list(iter_bits(max_clique_mask(comp.adj, comp.full_mask)[1]))


# -- clique counts, degeneracy ------------------------------------------------------
def clique_count(g: Graph, i: int) -> int:
    """Number of ``i``-vertex cliques (``t_i``)."""
    if i < 1:
        raise GraphError("clique size must be at least 1")
    if i > g.n:
        return 0
    adj = g.adj

    def count(P, depth):
        if depth == 1:
            return P.bit_count()
        total = 0
        for v in iter_bits(P):
            higher = P & adj[v] & ~((2 << v) - 1)
            if higher.bit_count() >= depth - 1:
                total += count(higher, depth - 1)
        return total

    return count(g.full_mask, i)


def degeneracy(g: Graph) -> int:
    """Smallest ``d`` such that every subgraph has a vertex of degree at most ``d``."""
    P = g.full_mask
    adj = g.adj
    d = 0
    while P:
        v = min(iter_bits(P), key=lambda u: (adj[u] & P).bit_count())
        d = max(d, (adj[v] & P).bit_count())
        P &= ~(1 << v)
    return d


# -- local independence ---------------------------------------------------------------
def low_alpha_subset(g: Graph, m: int, a: int) -> int | None:
    """Bitmask of some ``m``-subset ``S`` with ``alpha(G[S]) <= a``, or ``None``.

    Grows ``S`` in increasing vertex order; a partial set is abandoned as soon
    as its independence number exceeds ``a`` (the property is hereditary).
    """
    if not 1 <= m <= g.n:
        raise GraphError(f"local independence needs 1 <= m <= n, got m={m}, n={g.n}")
    if a < 1:
        return None
    adj = g.adj
    n = g.n

    def dfs(start, S, size):
        if size == m:
            return S
        need = m - size
        for v in range(start, n - need + 1):
            # alpha(S + v) <= a  iff  alpha(S minus N[v]) <= a - 1
            if alpha_mask(adj, S & ~adj[v]) <= a - 1:
                found = dfs(v + 1, S | 1 << v, size + 1)
                if found is not None:
                    return found
        return None

    return dfs(0, 0, 0)


def local_independence_number(g: Graph, m: int) -> int:
    """``alpha_m(G)``: minimum independence number over ``m``-vertex induced subgraphs."""
    if not 1 <= m <= g.n:
        raise GraphError(f"local independence needs 1 <= m <= n, got m={m}, n={g.n}")
    a = 1
    while low_alpha_subset(g, m, a) is None:
        a += 1
    return a


def has_local_independence(g: Graph, m: int, r: int) -> bool:
    """True iff every ``m``-subset of ``g`` contains an independent set of size ``r``."""
    return low_alpha_subset(g, m, r - 1) is None

