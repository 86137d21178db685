"""Width measures on edge subsets: border, graphic rank, matroid connectivity.

All functions take a host graph (anything with ``vertices`` and ``ends``) and
an iterable of edge ids.  Hypergraph borders live in
:mod:`branchdual.hypergraph`; :func:`incidence_border` is the shared core.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .decomposition import WidthMeasure
from .graph import DisjointSet


@dataclass(frozen=True)
class EdgeSubset:
    """A set of edge ids of a host graph."""

    graph: object
    members: frozenset

    def __post_init__(self):
        extra = set(self.members) - set(self.graph.ends)
        if extra:
            raise ValueError(f"edges {sorted(extra)} are not in the host graph")

    @property
    def complement(self) -> "EdgeSubset":
        return EdgeSubset(self.graph, frozenset(self.graph.ends) - self.members)


def incidence_border(touches: Mapping, F: Iterable) -> frozenset:
    """Vertices touched both by an element of ``F`` and by one outside ``F``.

    ``touches[x]`` is the collection of vertices incident to element ``x``.
    """
    F = set(F)
    inside, outside = set(), set()
    for x, vs in touches.items():
        (inside if x in F else outside).update(vs)
    return frozenset(inside & outside)


def border(G, F: Iterable) -> frozenset:
    return incidence_border(G.ends, F)


def delta(G, F: Iterable) -> int:
    return len(border(G, F))


def rank(G, F: Iterable) -> int:
    """Size of a spanning forest of the edges in ``F``."""
    ds = DisjointSet()
    r = 0
    for e in F:
        u, v = G.ends[e]
        ds.add(u)
        ds.add(v)
        if ds.union(u, v):
            r += 1
    return r


def mu(G, F: Iterable) -> int:
    F = set(F)
    rest = [e for e in G.ends if e not in F]
    return rank(G, F) + rank(G, rest) - rank(G, G.ends) + 1


def circuit_rank(G, F: Iterable) -> int:
    """|F| - |V(G[F])| + cc(G[F]), which equals |F| - rank(F)."""
    F = list(F)
    verts = set()
    for e in F:
        verts.update(G.ends[e])
    ds = DisjointSet(verts)
    comps = len(verts)
    for e in F:
        if ds.union(*G.ends[e]):
            comps -= 1
    return len(F) - len(verts) + comps


@dataclass(frozen=True)
class CycleBasis:
    cycles: tuple  # frozensets of edge ids

    def __len__(self):
        return len(self.cycles)

    def edges(self) -> frozenset:
        return frozenset().union(*self.cycles) if self.cycles else frozenset()


def cycle_basis(G, F: Iterable) -> CycleBasis:
    """Fundamental cycle basis of G[F] from a BFS spanning forest.

    Edges are scanned in id order; every non-forest edge closes one cycle
    with the forest path between its endpoints (a loop is its own cycle).
    """
    F = sorted(set(F))
    adj = {}
    for e in F:
        u, v = G.ends[e]
        adj.setdefault(u, []).append((e, v))
        if u != v:
            adj.setdefault(v, []).append((e, u))
    parent = {}  # vertex -> (parent vertex, edge) in the forest
    depth = {}
    tree = set()
    for root in sorted(adj):
        if root in depth:
            continue
        depth[root] = 0
        parent[root] = None
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for e, y in adj[x]:
                if y not in depth:
                    depth[y] = depth[x] + 1
                    parent[y] = (x, e)
                    tree.add(e)
                    queue.append(y)
    cycles = []
    for e in F:
        if e in tree:
            continue
        u, v = G.ends[e]
        path = {e}
        while u != v:
            if depth[u] < depth[v]:
                u, v = v, u
            pu, pe = parent[u]
            path.add(pe)
            u = pu
        cycles.append(frozenset(path))
    return CycleBasis(tuple(cycles))


# -- table builders for the exact solver ----------------------------------


def _masks(m):
    return np.arange(1 << m, dtype=np.int64)


def incidence_delta_table(touches: Mapping, elements) -> np.ndarray:
    """delta over every subset of ``elements`` (bit i <-> elements[i])."""
    m = len(elements)
    masks = _masks(m)
    vmask = {}
    for i, x in enumerate(elements):
        for v in set(touches[x]):
            vmask[v] = vmask.get(v, 0) | (1 << i)
    out = np.zeros(1 << m, dtype=np.int64)
    full = (1 << m) - 1
    for vm in vmask.values():
        out += ((masks & vm) != 0) & (((full ^ masks) & vm) != 0)
    return out


def rank_table(G, elements) -> np.ndarray:
    from ._kernels import rank_table as kernel

    us, vs = _endpoint_arrays(G, elements)
    return kernel(us, vs, int(max(us.max(initial=-1), vs.max(initial=-1)) + 1))


def mu_table(G, elements) -> np.ndarray:
    r = rank_table(G, elements)
    full = len(r) - 1
    return r + r[full ^ _masks(len(elements))] - r[full] + 1


def connectivity_table(G, elements) -> np.ndarray:
    """Boolean table: the edge-induced subgraph on the subset is connected."""
    from ._kernels import connected_table as kernel

    us, vs = _endpoint_arrays(G, elements)
    return kernel(us, vs, int(max(us.max(initial=-1), vs.max(initial=-1)) + 1))


def _endpoint_arrays(G, elements):
    index = {}
    us = np.empty(len(elements), dtype=np.int64)
    vs = np.empty(len(elements), dtype=np.int64)
    for i, e in enumerate(elements):
        u, v = G.ends[e]
        us[i] = index.setdefault(u, len(index))
        vs[i] = index.setdefault(v, len(index))
    return us, vs


def delta_measure(G) -> WidthMeasure:
    ends = dict(G.ends)
    return WidthMeasure(
        "delta",
        lambda F: len(incidence_border(ends, F)),
        table=lambda elements: incidence_delta_table(ends, elements),
    )


def mu_measure(G) -> WidthMeasure:
    return WidthMeasure("mu", lambda F: mu(G, F), table=lambda elements: mu_table(G, elements))
