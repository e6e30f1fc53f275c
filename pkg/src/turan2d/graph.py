"""Immutable simple graphs on bit-row adjacency, plus graph6 I/O.

Each vertex owns one Python ``int`` whose set bits are its neighbours, so
neighbourhood intersections and degree counts are single ``&`` and
``bit_count`` operations.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 512

_HEADER = b">>graph6<<"


class GraphError(ValueError):
    """Raised for malformed graph input (bad endpoints, loops, bad graph6)."""


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """A simple undirected graph on vertices ``0..n-1``.

    Instances are immutable and hashable; two graphs compare equal iff they
    have the same vertex count and identical labelled edge sets.
    """

    __slots__ = ("n", "adj", "_hash")

    def __init__(self, n: int, adj: Sequence[int]):
        if not 0 <= n <= MAX_VERTICES:
            raise GraphError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        if len(adj) != n:
            raise GraphError("need exactly one adjacency row per vertex")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & ~full or row >> v & 1:
                raise GraphError(f"row {v} has out-of-range or self-loop bits")
        for v, row in enumerate(adj):
            for w in iter_bits(row):
                if not adj[w] >> v & 1:
                    raise GraphError(f"adjacency not symmetric at ({v}, {w})")
        self.n = n
        self.adj = tuple(adj)
        self._hash = None

    @classmethod
    def _trusted(cls, n: int, adj: Sequence[int]) -> "Graph":
        # internal constructor: caller guarantees a valid symmetric loopless matrix
        g = object.__new__(cls)
        g.n = n
        g.adj = tuple(adj)
        g._hash = None
        return g

    # -- basic statistics ---------------------------------------------------
    @property
    def e(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def edges_within(self, mask: int) -> int:
        return sum((self.adj[v] & mask).bit_count() for v in iter_bits(mask)) // 2

    # -- derived graphs -----------------------------------------------------
    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, relabelled to ``0..k-1`` in the given order."""
        vs = list(vertices)
        pos = {v: i for i, v in enumerate(vs)}
        rows = []
        for v in vs:
            r = 0
            for w in iter_bits(self.adj[v]):
                i = pos.get(w)
                if i is not None:
                    r |= 1 << i
            rows.append(r)
        return Graph._trusted(len(vs), rows)

    def induced_mask(self, mask: int) -> "Graph":
        return self.induced(iter_bits(mask))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        rows = [0] * self.n
        for v in range(self.n):
            r = 0
            for w in iter_bits(self.adj[v]):
                r |= 1 << perm[w]
            rows[perm[v]] = r
        return Graph._trusted(self.n, rows)

    def complement(self) -> "Graph":
        full = self.full_mask
        return Graph._trusted(self.n, [full ^ row ^ (1 << v) for v, row in enumerate(self.adj)])

    def add_vertex(self, nbrs: int) -> "Graph":
        """New graph with an extra vertex ``n`` joined to the vertex set ``nbrs``."""
        n = self.n
        rows = [row | (1 << n) if nbrs >> v & 1 else row for v, row in enumerate(self.adj)]
        rows.append(nbrs)
        return Graph._trusted(n + 1, rows)

    def delete_vertex(self, v: int) -> "Graph":
        return self.induced(u for u in range(self.n) if u != v)

    # -- dunder -------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.adj))
        return self._hash

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, e={self.e}, g6={to_graph6(self).decode()!r})"


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if not 0 <= n <= MAX_VERTICES:
        raise GraphError(f"vertex count {n} outside 0..{MAX_VERTICES}")
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph._trusted(n, rows)


def disjoint_union(*graphs: Graph) -> Graph:
    rows: list[int] = []
    offset = 0
    for g in graphs:
        rows.extend(row << offset for row in g.adj)
        offset += g.n
    if offset > MAX_VERTICES:
        raise GraphError(f"union has {offset} vertices, cap is {MAX_VERTICES}")
    return Graph._trusted(offset, rows)


def complement(g: Graph) -> Graph:
    return g.complement()


# -- small named graphs ---------------------------------------------------------
def empty_graph(n: int) -> Graph:
    return from_edges(n, [])


def complete_graph(n: int) -> Graph:
    return from_edges(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edges(10, outer + spokes + inner)


def bowtie_graph() -> Graph:
    return from_edges(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])


# -- graph6 ---------------------------------------------------------------------
def _encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([63 + n])
    if n <= 258047:
        return bytes([126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)])
    raise GraphError("graph6 size field overflow")


def to_graph6(g: Graph) -> bytes:
    """Encode ``g`` as graph6 bytes (no header, no trailing newline)."""
    out = bytearray(_encode_n(g.n))
    acc = 0
    nbits = 0
    adj = g.adj
    for j in range(1, g.n):
        col = adj[j]
        for i in range(j):
            acc = acc << 1 | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(63 + acc)
                acc = 0
                nbits = 0
    if nbits:
        out.append(63 + (acc << (6 - nbits)))
    return bytes(out)


def parse_graph6(text: bytes | str) -> Graph:
    """Decode one graph6 record. A leading ``>>graph6<<`` header is tolerated."""
    if isinstance(text, str):
        text = text.encode("ascii")
    data = text.strip()
    if data.startswith(_HEADER):
        data = data[len(_HEADER):]
    if not data:
        raise GraphError("empty graph6 string")
    for b in data:
        if not 63 <= b <= 126:
            raise GraphError(f"byte {b} outside the graph6 range 63..126")
    if data[0] != 126:
        n = data[0] - 63
        body = data[1:]
    elif len(data) >= 4 and data[1] != 126:
        n = (data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63)
        if n <= 62:
            raise GraphError("long-form graph6 length prefix used for n <= 62")
        body = data[4:]
    else:
        raise GraphError("malformed or unsupported graph6 length prefix")
    if n > MAX_VERTICES:
        raise GraphError(f"graph6 declares {n} vertices, cap is {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6}")
    rows = [0] * n
    k = 0
    i, j = 0, 1
    for b in body:
        x = b - 63
        for shift in range(5, -1, -1):
            bit = x >> shift & 1
            if k < nbits:
                if bit:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                i += 1
                if i == j:
                    i = 0
                    j += 1
            elif bit:
                raise GraphError("nonzero padding bits in graph6")
            k += 1
    return Graph._trusted(n, rows)
