"""Canonical labelling by colour refinement and individualisation.

The search follows the usual partition-backtrack scheme: refine an ordered
partition to an equitable one, individualise each vertex of the first
non-singleton cell, recurse, and keep the leaf whose relabelled adjacency
rows are lexicographically largest. Automorphisms discovered at leaves prune
sibling branches (orbit pruning under the stabiliser of the current prefix)
and trigger a jump back to the common ancestor with the matching leaf.
"""

from __future__ import annotations

from .graph import Graph, iter_bits, to_graph6

CanonicalKey = bytes


def _refine(adj, cells):
    i = 0
    while i < len(cells):
        splitter = cells[i]
        if len(splitter) == len(adj):
            i += 1
            continue
        wmask = 0
        for v in splitter:
            wmask |= 1 << v
        out = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[int, list[int]] = {}
            for v in cell:
                c = (adj[v] & wmask).bit_count()
                g = groups.get(c)
                if g is None:
                    groups[c] = [v]
                else:
                    g.append(v)
            if len(groups) == 1:
                out.append(cell)
            else:
                changed = True
                for c in sorted(groups):
                    out.append(groups[c])
        if changed:
            cells = out
            i = 0
        else:
            i += 1
    return cells


class _Search:
    __slots__ = ("adj", "n", "first", "best", "gens")

    def __init__(self, adj):
        self.adj = adj
        self.n = len(adj)
        self.first = None  # (cert, order, prefix)
        self.best = None
        self.gens: list[list[int]] = []

    def certificate(self, order):
        pos = [0] * self.n
        for i, v in enumerate(order):
            pos[v] = i
        adj = self.adj
        cert = []
        for v in order:
            r = 0
            for w in iter_bits(adj[v]):
                r |= 1 << pos[w]
            cert.append(r)
        return tuple(cert)

    def _automorphism(self, src_order, dst_order):
        gamma = [0] * self.n
        for a, b in zip(src_order, dst_order):
            gamma[a] = b
        self.gens.append(gamma)

    def leaf(self, cells, prefix):
        order = [c[0] for c in cells]
        cert = self.certificate(order)
        if self.first is None:
            self.first = self.best = (cert, order, prefix)
            return None
        fcert, forder, fprefix = self.first
        if cert == fcert:
            self._automorphism(forder, order)
            return _common(prefix, fprefix)
        bcert, border, bprefix = self.best
        if cert == bcert:
            self._automorphism(border, order)
            return _common(prefix, bprefix)
        if cert > bcert:
            self.best = (cert, order, prefix)
        return None

    def orbit_rep(self, prefix, cell):
        """Union-find over ``cell`` under generators fixing ``prefix`` pointwise."""
        parent = {v: v for v in cell}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gamma in self.gens:
            if any(gamma[p] != p for p in prefix):
                continue
            for v in cell:
                w = gamma[v]
                if w in parent:
                    a, b = find(v), find(w)
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return find

    def run(self, cells, prefix):
        t = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if t is None:
            return self.leaf(cells, prefix)
        level = len(prefix)
        target = sorted(cells[t])
        tried: list[int] = []
        ngens = -1
        find = None
        for w in target:
            if tried:
                if ngens != len(self.gens):
                    find = self.orbit_rep(prefix, target)
                    ngens = len(self.gens)
                rw = find(w)
                if any(find(u) == rw for u in tried):
                    continue
            tried.append(w)
            rest = [v for v in cells[t] if v != w]
            child = cells[:t] + [[w], rest] + cells[t + 1:]
            jump = self.run(_refine(self.adj, child), prefix + (w,))
            if jump is not None and jump < level:
                return jump
        return None


def _common(a, b):
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


def _initial_cells(g: Graph):
    # degree partition is label-invariant and saves a refinement round
    by_deg: dict[int, list[int]] = {}
    for v, row in enumerate(g.adj):
        by_deg.setdefault(row.bit_count(), []).append(v)
    return [by_deg[d] for d in sorted(by_deg)]


def canonical_labeling(g: Graph) -> list[int]:
    """Return ``order`` such that ``order[i]`` is the vertex placed at position ``i``."""
    if g.n <= 1:
        return list(range(g.n))
    s = _Search(g.adj)
    s.run(_refine(g.adj, _initial_cells(g)), ())
    return s.best[1]


def automorphism_generators(g: Graph) -> list[list[int]]:
    """Automorphisms discovered while searching for the canonical labelling."""
    if g.n <= 1:
        return []
    s = _Search(g.adj)
    s.run(_refine(g.adj, _initial_cells(g)), ())
    return s.gens


def canonical_graph(g: Graph) -> Graph:
    order = canonical_labeling(g)
    perm = [0] * g.n
    for i, v in enumerate(order):
        perm[v] = i
    return g.relabel(perm)


def canonical_form(g: Graph) -> CanonicalKey:
    """graph6 bytes of the canonical representative of ``g``'s isomorphism class."""
    return to_graph6(canonical_graph(g))


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.e != h.e or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g) == canonical_form(h)
