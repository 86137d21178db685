"""Plain multigraphs and a small disjoint-set helper.

The width measures only look at which vertices each edge touches, so they
operate on anything exposing ``vertices`` and ``ends``.  :class:`Multigraph`
is the minimal such object; :class:`~branchdual.embedding.EmbeddedGraph`
provides the same two attributes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

from .errors import PreconditionError


class DisjointSet:
    """Union-find with path halving and union by size."""

    def __init__(self, items: Iterable[Hashable] = ()):
        self.parent = {}
        self.size = {}
        for x in items:
            self.add(x)

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.size[x] = 1

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b) -> bool:
        """Merge the sets of ``a`` and ``b``; return False if already merged."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True

    def groups(self) -> dict:
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


@dataclass(frozen=True)
class Multigraph:
    """Unembedded multigraph with stable vertex and edge ids.

    ``ends[e]`` is the pair of endpoints of edge ``e``; a loop has equal
    endpoints.  Instances are immutable; ``contract`` and ``delete`` return new
    graphs and never renumber surviving edges.
    """

    vertices: tuple = ()
    ends: Mapping[int, tuple] = field(default_factory=dict)

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise PreconditionError("duplicate vertex id")
        for e, (u, v) in self.ends.items():
            if u not in vs or v not in vs:
                raise PreconditionError(f"edge {e} has an endpoint outside the vertex set")

    @classmethod
    def from_edges(cls, edges: Mapping[int, tuple], vertices: Iterable = ()):
        vs = set(vertices)
        for u, v in edges.values():
            vs.add(u)
            vs.add(v)
        return cls(tuple(sorted(vs)), dict(edges))

    @property
    def edge_ids(self) -> tuple:
        return tuple(sorted(self.ends))

    def is_loop(self, e) -> bool:
        u, v = self.ends[e]
        return u == v

    def contract(self, e) -> "Multigraph":
        """Contract ``e``; the merged vertex keeps the smaller id.

        Contracting a loop is the same as deleting it (graph-minor convention).
        """
        if e not in self.ends:
            raise PreconditionError(f"unknown edge {e}")
        u, v = self.ends[e]
        if u == v:
            return self.delete(e)
        keep, gone = min(u, v), max(u, v)
        ends = {}
        for f, (a, b) in self.ends.items():
            if f == e:
                continue
            ends[f] = (keep if a == gone else a, keep if b == gone else b)
        return Multigraph(tuple(x for x in self.vertices if x != gone), ends)

    def delete(self, e) -> "Multigraph":
        if e not in self.ends:
            raise PreconditionError(f"unknown edge {e}")
        ends = {f: uv for f, uv in self.ends.items() if f != e}
        return Multigraph(self.vertices, ends)

    def skeleton(self) -> "Multigraph":
        return self


def component_count(vertices: Iterable, ends: Mapping, edges: Iterable | None = None) -> int:
    """Number of connected components of (vertices, edges)."""
    ds = DisjointSet(vertices)
    merged = 0
    for e in ends if edges is None else edges:
        u, v = ends[e]
        if ds.union(u, v):
            merged += 1
    return len(ds.parent) - merged


def edge_set_connected(ends: Mapping, edges: Iterable) -> bool:
    """True iff the edge-induced subgraph on ``edges`` is connected.

    The empty edge set counts as connected.
    """
    edges = list(edges)
    if not edges:
        return True
    ds = DisjointSet()
    for e in edges:
        u, v = ends[e]
        ds.add(u)
        ds.add(v)
        ds.union(u, v)
    root = ds.find(ends[edges[0]][0])
    return all(ds.find(x) == root for x in ds.parent)


def is_bridge(ends: Mapping, e, edges: Iterable | None = None) -> bool:
    """True iff ``e`` is a bridge of the subgraph formed by ``edges``.

    ``edges`` defaults to every edge; it must contain ``e``.
    """
    u, v = ends[e]
    if u == v:
        return False
    ds = DisjointSet()
    for f in ends if edges is None else edges:
        if f == e:
            continue
        a, b = ends[f]
        ds.add(a)
        ds.add(b)
        ds.union(a, b)
    if u not in ds.parent or v not in ds.parent:
        return True
    return ds.find(u) != ds.find(v)
