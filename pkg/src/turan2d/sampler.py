"""Random graphs at the local-lemma density and checks of the local independence property."""

from __future__ import annotations

import csv
import io
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .canon import canonical_form
from .density import ForbiddenFamily, forbidden_family, format_rational
from .graph import MAX_VERTICES, Graph, GraphError, to_graph6
from .invariants import independence_number
from .subgraph import find_embedding

_TWO64 = 1 << 64


def _exact_root(n: int, M: Fraction):
    """``n ** (1/M)`` as an int when it is one, else a float."""
    p, q = M.numerator, M.denominator
    guess = round(n ** (q / p))
    for x in (guess - 1, guess, guess + 1):
        if x > 0 and x ** p == n ** q:
            return x
    return n ** (q / p)


@dataclass(frozen=True)
class SampleParams:
    n: int
    m: int
    r: int
    seed: int
    family: ForbiddenFamily

    def __post_init__(self):
        if not (self.r >= 2 and self.m >= 2 * self.r - 1 and self.m >= 3):
            raise ValueError(f"need m >= 2r - 1 >= 3, got m={self.m}, r={self.r}")
        if self.n < self.m:
            raise ValueError(f"need n >= m, got n={self.n}, m={self.m}")
        if not 0 <= self.seed < _TWO64:
            raise ValueError("seed must fit in 64 bits")
        if not 0 < self.p < 1:
            raise ValueError(f"edge probability {self.p} outside (0, 1)")

    @classmethod
    def for_local(cls, n: int, m: int, r: int, seed: int) -> "SampleParams":
        return cls(n, m, r, seed, forbidden_family(m, r))

    @property
    def t(self) -> int:
        return self.family.t

    @property
    def M(self) -> Fraction:
        return self.family.M

    @property
    def p(self):
        """``1/(48 t n^(1/M))``: a Fraction when the root is integral, else a float."""
        root = _exact_root(self.n, self.M)
        if isinstance(root, int):
            return Fraction(1, 48 * self.t * root)
        return 1.0 / (48 * self.t * root)

    @property
    def threshold(self) -> int:
        """``floor(p * 2^64)``; an edge is kept when its 64-bit draw is below this."""
        p = self.p
        if isinstance(p, Fraction):
            return p.numerator * _TWO64 // p.denominator
        return math.floor(p * _TWO64)

    def independence_threshold(self) -> float:
        """The ``8 log n / p + 2`` size from the existence argument (reported only)."""
        return 8 * math.log(self.n) / float(self.p) + 2


def edge_draws(seed: int, count: int) -> np.ndarray:
    """``count`` raw 64-bit words from a Philox stream keyed by ``seed``; word ``i`` belongs to edge ``i``."""
    bg = np.random.Philox(key=seed)
    return bg.random_raw(count)


def sample_lll(params: SampleParams) -> Graph:
    """G(n, p) with edges in graph6 order ``(0,1), (0,2), (1,2), (0,3), ...``."""
    n = params.n
    if n > MAX_VERTICES:
        raise GraphError(f"sampling is limited to {MAX_VERTICES} vertices, got {n}")
    draws = edge_draws(params.seed, n * (n - 1) // 2)
    keep = np.flatnonzero(draws < np.uint64(params.threshold)) if params.threshold < _TWO64 else np.arange(len(draws))
    rows = [0] * n
    for idx in keep.tolist():
        # invert idx = j(j-1)/2 + i with 0 <= i < j
        j = (1 + math.isqrt(1 + 8 * idx)) // 2
        i = idx - j * (j - 1) // 2
        rows[i] |= 1 << j
        rows[j] |= 1 << i
    return Graph._trusted(n, rows)


def verify_local(g: Graph, m: int, r: int, mode: str = "exact") -> tuple[bool, dict | None]:
    """Does every ``m``-subset of ``g`` contain an independent ``r``-set?

    ``mode="exact"`` searches for a copy of any edge-minimal ``m``-vertex
    graph with ``alpha <= r-1``; this is equivalent to ``alpha_m(g) < r``.
    ``mode="reduced"`` searches for the strictly 2-balanced family members;
    absence certifies the property, presence alone does not refute it.
    Returns ``(ok, witness)``; the witness names the embedded graph and the
    image of each of its vertices.
    """
    if g.n < m:
        raise ValueError(f"graph has {g.n} vertices, fewer than m={m}")
    fam = forbidden_family(m, r)
    if mode == "exact":
        pool = fam.minimal_graphs
    elif mode == "reduced":
        pool = fam.members
    else:
        raise ValueError(f"unknown mode {mode!r}; use exact or reduced")
    for h in pool:
        emb = find_embedding(h, g)
        if emb is not None:
            return False, {"graph6": canonical_form(h).decode(), "embedding": [emb[u] for u in range(h.n)]}
    return True, None


# -- experiments ----------------------------------------------------------------------------
def replicate_seed(seed: int, n: int, rep: int) -> int:
    return int(np.random.SeedSequence([seed, n, rep]).generate_state(1, np.uint64)[0])


def _one(args):
    n, m, r, seed, rep = args
    params = SampleParams.for_local(n, m, r, replicate_seed(seed, n, rep))
    g = sample_lll(params)
    ok, _ = verify_local(g, m, r)
    alpha = independence_number(g) if ok else None
    return {"n": n, "rep": rep, "accepted": ok, "alpha": alpha, "edges": g.e, "graph6": to_graph6(g).decode() if n <= 64 else None}


@dataclass
class ExperimentReport:
    m: int
    r: int
    seed: int
    reps: int
    grid: list
    M: Fraction
    t: int
    rows: list = field(default_factory=list)
    summary: list = field(default_factory=list)
    flags: list = field(default_factory=list)
    wall_time: float = 0.0

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "m": self.m,
            "r": self.r,
            "seed": self.seed,
            "reps": self.reps,
            "grid": self.grid,
            "M": format_rational(self.M),
            "t": self.t,
            "summary": self.summary,
            "rows": self.rows,
            "flags": self.flags,
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "rep", "accepted", "alpha", "predicted_scale"])
        scale = {s["n"]: s["predicted_scale"] for s in self.summary}
        for row in self.rows:
            w.writerow([row["n"], row["rep"], int(row["accepted"]), "" if row["alpha"] is None else row["alpha"], scale[row["n"]]])
        return buf.getvalue()


def experiment(m: int, r: int, n_grid, reps: int, seed: int, jobs: int = 1) -> ExperimentReport:
    """Sample ``reps`` graphs per ``n``; record acceptance and ``alpha`` of accepted samples."""
    t0 = time.perf_counter()
    fam = forbidden_family(m, r)
    grid = sorted(set(int(n) for n in n_grid))
    for n in grid:
        if not m <= n <= MAX_VERTICES:
            raise ValueError(f"grid point n={n} outside {m}..{MAX_VERTICES}")
    if reps < 0:
        raise ValueError("reps must be non-negative")
    tasks = [(n, m, r, seed, rep) for n in grid for rep in range(reps)]
    if jobs > 1 and tasks:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_one, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        rows = [_one(t) for t in tasks]
    rows.sort(key=lambda x: (x["n"], x["rep"]))
    rep = ExperimentReport(m, r, seed, reps, grid, fam.M, fam.t, rows=rows if reps else [])
    last_median = None
    for n in grid:
        mine = [x for x in rows if x["n"] == n]
        alphas = [x["alpha"] for x in mine if x["accepted"]]
        params = SampleParams(n, m, r, 0, fam)
        s = {
            "n": n,
            "replicates": len(mine),
            "accepted": len(alphas),
            "acceptance_rate": round(len(alphas) / len(mine), 6) if mine else None,
            "alpha_min": min(alphas) if alphas else None,
            "alpha_median": statistics.median(alphas) if alphas else None,
            "alpha_max": max(alphas) if alphas else None,
            "p": format_rational(params.p) if isinstance(params.p, Fraction) else repr(params.p),
            "predicted_scale": round(n ** (1 / float(fam.M)) * math.log(n), 6),
            "independence_threshold": round(params.independence_threshold(), 3),
        }
        rep.summary.append(s)
        med = s["alpha_median"]
        if med is not None and last_median is not None and med < last_median:
            rep.flags.append(f"median alpha drops from {last_median} to {med} at n={n}")
        if med is not None:
            last_median = med
    rep.wall_time = time.perf_counter() - t0
    return rep
