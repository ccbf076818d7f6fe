"""k-uniform hypergraphs, the pendant-attachment families, and eigen-systems."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class Hypergraph:
    """Vertices are 0..n-1; edges are sorted k-tuples, kept in sorted order."""

    k: int
    n: int
    edges: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"k must be >= 2, got {self.k}")
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        canon = []
        for e in self.edges:
            e = tuple(sorted(int(v) for v in e))
            if len(e) != self.k or len(set(e)) != self.k:
                raise ValueError(f"edge {e} does not have {self.k} distinct vertices")
            if e[0] < 0 or e[-1] >= self.n:
                raise ValueError(f"edge {e} has a vertex outside 0..{self.n - 1}")
            canon.append(e)
        if len(set(canon)) != len(canon):
            raise ValueError("duplicate edge")
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def incident(self, v: int) -> list[tuple[int, ...]]:
        return [e for e in self.edges if v in e]

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range 0..{self.n - 1}")

    def to_dict(self) -> dict:
        return {"k": self.k, "n": self.n, "edges": [list(e) for e in self.edges]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> Hypergraph:
        return cls(int(d["k"]), int(d["n"]), tuple(tuple(e) for e in d["edges"]))

    @classmethod
    def from_json(cls, s: str) -> Hypergraph:
        return cls.from_dict(json.loads(s))


def edgeless(n: int, k: int) -> Hypergraph:
    return Hypergraph(k, n, ())


def build_hyperpath(m: int, k: int) -> Hypergraph:
    """Path of m edges; consecutive edges share one vertex, n = m(k-1)+1."""
    if m < 1 or k < 2:
        raise ValueError(f"hyperpath needs m >= 1 and k >= 2, got m={m}, k={k}")
    edges = [tuple(range(i * (k - 1), i * (k - 1) + k)) for i in range(m)]
    return Hypergraph(k, m * (k - 1) + 1, tuple(edges))


def add_pendant_edge(h: Hypergraph, v: int) -> Hypergraph:
    """Append k-1 fresh vertices and the edge joining them to v."""
    h._check_vertex(v)
    fresh = tuple(range(h.n, h.n + h.k - 1))
    return Hypergraph(h.k, h.n + h.k - 1, h.edges + ((v,) + fresh,))


def build_hyperstar(s: int, k: int) -> Hypergraph:
    """s edges sharing only the center vertex 0."""
    if s < 1:
        raise ValueError("hyperstar needs s >= 1")
    h = edgeless(1, k)
    for _ in range(s):
        h = add_pendant_edge(h, 0)
    return h


def build_broom(m: int, s: int, k: int) -> Hypergraph:
    """Hyperpath P_m with s extra pendant edges at its last vertex."""
    h = build_hyperpath(m, k)
    v = pendant_vertex(h)
    for _ in range(s):
        h = add_pendant_edge(h, v)
    return h


def pendant_vertex(h: Hypergraph) -> int:
    """The last vertex of a hyperpath, where new edges extend it."""
    return h.n - 1


def remove_vertex(h: Hypergraph, v: int) -> Hypergraph:
    """Delete v with its incident edges and relabel the rest contiguously."""
    h._check_vertex(v)
    relabel = {u: (u if u < v else u - 1) for u in range(h.n) if u != v}
    edges = tuple(tuple(relabel[u] for u in e) for e in h.edges if v not in e)
    return Hypergraph(h.k, h.n - 1, edges)


def disjoint_union(a: Hypergraph, b: Hypergraph) -> Hypergraph:
    if a.k != b.k:
        raise ValueError("cannot join hypergraphs of different uniformity")
    shifted = tuple(tuple(u + a.n for u in e) for e in b.edges)
    return Hypergraph(a.k, a.n + b.n, a.edges + shifted)


def canonical_form(h: Hypergraph) -> tuple:
    """Brute-force canonical label: lexicographically least sorted edge list.

    Exponential in n; only meant for the small round-trip checks.
    """
    from itertools import permutations

    best = None
    for perm in permutations(range(h.n)):
        edges = tuple(sorted(tuple(sorted(perm[u] for u in e)) for e in h.edges))
        if best is None or edges < best:
            best = edges
    return (h.k, h.n, best)


# -- eigenvalue equations -----------------------------------------------------


@dataclass(frozen=True)
class Monomial:
    coeff: int
    exps: tuple[int, ...]
    lam: int  # 0 or 1: power of lambda multiplying this monomial


@dataclass(frozen=True)
class PolySystem:
    """F_i = lambda x_i^(k-1) - sum over edges e containing i of x^(e minus i).

    ``polys[i]`` is the monomial list of F_i.  Systems built by hand (for the
    resultant property checks) may carry any integer coefficients.
    """

    k: int
    n: int
    polys: tuple[tuple[Monomial, ...], ...]

    def degrees(self) -> list[int]:
        return [sum(p[0].exps) if p else 0 for p in self.polys]

    def scaled(self, i: int, c: int) -> PolySystem:
        polys = list(self.polys)
        polys[i] = tuple(Monomial(c * mo.coeff, mo.exps, mo.lam) for mo in polys[i])
        return PolySystem(self.k, self.n, tuple(polys))


def eigen_system(h: Hypergraph) -> PolySystem:
    d = h.k - 1
    polys = []
    for i in range(h.n):
        lam_exp = tuple(d if j == i else 0 for j in range(h.n))
        monos = [Monomial(1, lam_exp, 1)]
        for e in h.incident(i):
            exps = tuple(1 if (j in e and j != i) else 0 for j in range(h.n))
            monos.append(Monomial(-1, exps, 0))
        polys.append(tuple(monos))
    return PolySystem(h.k, h.n, tuple(polys))


def adjacency_matrix(h: Hypergraph) -> list[list[int]]:
    """Adjacency matrix of a graph (k = 2)."""
    if h.k != 2:
        raise ValueError("adjacency matrix is only defined here for k = 2")
    a = [[0] * h.n for _ in range(h.n)]
    for u, v in h.edges:
        a[u][v] = a[v][u] = 1
    return a


def random_graph(n: int, rng, p: float = 0.5) -> Hypergraph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Hypergraph(2, n, tuple(edges))


def hypergraph_from_edges(k: int, n: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    return Hypergraph(k, n, tuple(tuple(e) for e in edges))
