"""Builders for the explicit graph families, with closed-form expected statistics."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .graph import Graph, complete_graph, cycle_graph, disjoint_union, from_edges


class ConstructionError(ValueError):
    pass


VARIANTS = (
    "cycle",
    "clique",
    "disjoint-cliques",
    "cycle-power",
    "c5-blowup",
    "h2k-1",
    "odd-optimal",
    "turan-complement",
    "general-example",
)

# keyword parameters per variant, in canonical order; None means a bare size list
_KEYS = {
    "cycle": ("n",),
    "clique": ("k",),
    "disjoint-cliques": None,
    "cycle-power": ("n", "d"),
    "c5-blowup": None,
    "h2k-1": ("k",),
    "odd-optimal": ("k",),
    "turan-complement": ("m", "parts"),
    "general-example": ("m", "r"),
}


@dataclass(frozen=True)
class ConstructionSpec:
    """One graph family member, e.g. ``ConstructionSpec("odd-optimal", (5,))``.

    ``args`` holds the keyword values in the order of ``_KEYS`` or, for
    ``disjoint-cliques`` and ``c5-blowup``, the part sizes.
    """

    variant: str
    args: tuple

    def __post_init__(self):
        if self.variant not in _KEYS:
            raise ConstructionError(f"unknown construction {self.variant!r}; choose from {', '.join(VARIANTS)}")
        _validate(self)

    @classmethod
    def parse(cls, text: str) -> "ConstructionSpec":
        """Parse ``"odd-optimal:k=5"``, ``"disjoint-cliques:5,5,5,5"`` and friends."""
        name, _, rest = text.strip().partition(":")
        if name not in _KEYS:
            raise ConstructionError(f"unknown construction {name!r}; choose from {', '.join(VARIANTS)}")
        keys = _KEYS[name]
        items = [x.strip() for x in rest.split(",") if x.strip()]
        try:
            if keys is None:
                return cls(name, tuple(int(x) for x in items))
            vals = {}
            for item in items:
                k, eq, v = item.partition("=")
                if not eq or k not in keys:
                    raise ConstructionError(f"bad parameter {item!r} for {name}; expected {', '.join(keys)}")
                vals[k] = int(v)
            missing = [k for k in keys if k not in vals]
            if missing:
                raise ConstructionError(f"{name} needs {', '.join(missing)}")
            return cls(name, tuple(vals[k] for k in keys))
        except ValueError as exc:
            if isinstance(exc, ConstructionError):
                raise
            raise ConstructionError(f"non-integer parameter in {text!r}") from exc

    def __str__(self) -> str:
        keys = _KEYS[self.variant]
        if keys is None:
            body = ",".join(str(x) for x in self.args)
        else:
            body = ",".join(f"{k}={v}" for k, v in zip(keys, self.args))
        return f"{self.variant}:{body}"


def _ceil_div(a, b):
    return -(-a // b)


def general_example_params(m: int, r: int) -> tuple[int, int]:
    """``(k, l)`` with ``k = ceil(m/(r-1))`` and ``l = m - (k-1)(r-1)``."""
    k = _ceil_div(m, r - 1)
    return k, m - (k - 1) * (r - 1)


def _validate(spec: ConstructionSpec):
    v, a = spec.variant, spec.args
    if any(x < 1 for x in a):
        raise ConstructionError(f"{spec.variant}: all parameters must be positive")
    if v == "cycle" and a[0] < 3:
        raise ConstructionError("cycle needs n >= 3")
    if v == "cycle-power" and a[0] < 3:
        raise ConstructionError("cycle-power needs n >= 3")
    if v in ("disjoint-cliques", "c5-blowup") and not a:
        raise ConstructionError(f"{v} needs part sizes")
    if v == "c5-blowup" and len(a) != 5:
        raise ConstructionError("c5-blowup needs exactly 5 part sizes")
    if v == "h2k-1" and a[0] < 3:
        raise ConstructionError("h2k-1 needs k >= 3")
    if v == "odd-optimal" and a[0] < 4:
        raise ConstructionError("odd-optimal needs k >= 4")
    if v == "turan-complement" and a[1] > a[0]:
        raise ConstructionError("turan-complement needs parts <= m")
    if v == "general-example":
        m, r = a
        if r < 3:
            raise ConstructionError("general-example needs r >= 3")
        k, ell = general_example_params(m, r)
        if not 2 * ell <= r - 1:
            raise ConstructionError(f"general-example needs l <= (r-1)/2, got l={ell} for m={m}, r={r}")
        if ell and k < 4:
            raise ConstructionError(f"general-example with l > 0 needs k >= 4, got k={k}")


# -- kernels -----------------------------------------------------------------------
def clique_blowup(parts) -> Graph:
    """Cliques on consecutive vertex blocks, complete joins between cyclically adjacent blocks."""
    if len(parts) < 3:
        raise ConstructionError("a cycle blow-up needs at least 3 parts")
    starts = []
    n = 0
    for p in parts:
        starts.append(n)
        n += p
    blocks = [range(s, s + p) for s, p in zip(starts, parts)]
    edges = []
    for i, B in enumerate(blocks):
        edges.extend((u, v) for u in B for v in B if u < v)
        edges.extend((u, v) for u in B for v in blocks[(i + 1) % len(blocks)])
    return from_edges(n, edges)


def cycle_power(n: int, d: int) -> Graph:
    return from_edges(n, [(i, (i + j) % n) for i in range(n) for j in range(1, d + 1) if j <= n // 2])


def odd_bound_term(k: int, t: int) -> Fraction:
    """``min(t/(k-2), ((k+1)/2 - (t-1)^2)/(2k-3))``."""
    return min(Fraction(t, k - 2), (Fraction(k + 1, 2) - (t - 1) ** 2) / (2 * k - 3))


def odd_optimal_parameter(k: int) -> int:
    """Smallest ``t`` in ``1..k-2`` maximising ``odd_bound_term(k, t)``."""
    if k < 4:
        raise ConstructionError("odd_optimal_parameter needs k >= 4")
    best = max(odd_bound_term(k, t) for t in range(1, k - 1))
    a = next(t for t in range(1, k - 1) if odd_bound_term(k, t) == best)
    assert 2 * a <= k - 1 and 2 * (a - 1) ** 2 < k - 1
    return a


def odd_bound(k: int) -> Fraction:
    """The lower bound for ``M(2k-1, 3)``: ``(k+1)/2 - max_t odd_bound_term(k, t)``."""
    return Fraction(k + 1, 2) - odd_bound_term(k, odd_optimal_parameter(k))


def turan_part_sizes(m: int, parts: int) -> list[int]:
    q, s = divmod(m, parts)
    return [q + 1] * s + [q] * (parts - s)


def build(spec: ConstructionSpec) -> Graph:
    v, a = spec.variant, spec.args
    if v == "cycle":
        return cycle_graph(a[0])
    if v == "clique":
        return complete_graph(a[0])
    if v == "disjoint-cliques":
        return disjoint_union(*(complete_graph(s) for s in a))
    if v == "cycle-power":
        return cycle_power(*a)
    if v == "c5-blowup":
        return clique_blowup(a)
    if v == "h2k-1":
        k = a[0]
        return clique_blowup((1, k - 2, 1, 1, k - 2))
    if v == "odd-optimal":
        k = a[0]
        t = odd_optimal_parameter(k)
        return clique_blowup((1, k - 1 - t, t, t, k - 1 - t))
    if v == "turan-complement":
        return disjoint_union(*(complete_graph(s) for s in turan_part_sizes(*a)))
    if v == "general-example":
        m, r = a
        k, ell = general_example_params(m, r)
        pieces = [build(ConstructionSpec("odd-optimal", (k,))) for _ in range(ell)]
        pieces += [complete_graph(k - 1) for _ in range(r - 1 - 2 * ell)]
        return disjoint_union(*pieces)
    raise ConstructionError(v)  # unreachable


@dataclass(frozen=True)
class ExpectedStats:
    vertices: int
    edges: int
    alpha_max: int  # claimed upper bound on the independence number
    m2: Fraction | None  # None where no closed form is claimed


def _clique_m2(sizes) -> Fraction | None:
    big = max(sizes)
    return Fraction(big + 1, 2) if big >= 3 else None


def expected_stats(spec: ConstructionSpec) -> ExpectedStats:
    v, a = spec.variant, spec.args
    if v == "cycle":
        n = a[0]
        return ExpectedStats(n, n, n // 2, Fraction(n - 1, n - 2))
    if v == "clique":
        k = a[0]
        return ExpectedStats(k, comb(k, 2), 1, Fraction(k + 1, 2) if k >= 3 else None)
    if v in ("disjoint-cliques", "turan-complement"):
        sizes = list(a) if v == "disjoint-cliques" else turan_part_sizes(*a)
        return ExpectedStats(sum(sizes), sum(comb(s, 2) for s in sizes), len(sizes), _clique_m2(sizes))
    if v == "cycle-power":
        n, d = a
        d = min(d, n // 2)
        e = n * d - (n // 2 if 2 * d == n else 0)
        return ExpectedStats(n, e, n // (d + 1), None)
    if v in ("c5-blowup", "h2k-1"):
        parts = a if v == "c5-blowup" else (1, a[0] - 2, 1, 1, a[0] - 2)
        e = sum(comb(p, 2) for p in parts) + sum(parts[i] * parts[(i + 1) % 5] for i in range(5))
        return ExpectedStats(sum(parts), e, 2, None)
    if v == "odd-optimal":
        k = a[0]
        t = odd_optimal_parameter(k)
        return ExpectedStats(2 * k - 1, k * (k - 1) + (t - 1) ** 2 - 1, 2, odd_bound(k))
    if v == "general-example":
        m, r = a
        k, ell = general_example_params(m, r)
        e = ell * (k * (k - 1) + (odd_optimal_parameter(k) - 1) ** 2 - 1) if ell else 0
        e += (r - 1 - 2 * ell) * comb(k - 1, 2)
        dens = []
        if ell:
            dens.append(odd_bound(k))
        if r - 1 - 2 * ell and k - 1 >= 3:
            dens.append(Fraction(k, 2))
        return ExpectedStats(m, e, r - 1, max(dens) if dens else None)
    raise ConstructionError(v)  # unreachable
