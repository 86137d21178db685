"""Seeded instance generation: a curated deck followed by random instances.

Randomness comes from numpy's PCG64 bit generator, seeded with the pair
``(campaign seed, instance index)`` so any single instance can be rebuilt in
isolation.  Random embeddings are grown one edge at a time: each new edge is
placed at random corners with a random sign, and placements that would push
the Euler genus past a per-instance target are skipped.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .embedding import EmbeddedGraph, euler_genus
from .errors import GeneratorExhausted
from .graph import component_count, is_bridge

MAX_RETRIES = 200

GRAPH_KINDS = ("bridgeless", "connected")


def make_rng(seed: int, index: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64([int(seed) & (2**64 - 1), int(index)]))


# -- embedding growth -------------------------------------------------------


def _connected_order(ends: dict) -> list:
    """Edge ids ordered so that every edge touches an earlier edge's vertex."""
    remaining = sorted(ends)
    if not remaining:
        return []
    seen = set(ends[remaining[0]])
    order = [remaining.pop(0)]
    while remaining:
        for i, e in enumerate(remaining):
            if seen & set(ends[e]):
                order.append(remaining.pop(i))
                seen.update(ends[e])
                break
        else:
            raise ValueError("edge set is not connected")
    return order


def _placements(rotation, u, v, a, b):
    """Every way to insert dart a at u and dart b at v (u may equal v)."""
    ru = rotation.get(u, ())
    for i in range(max(len(ru), 1)):
        with_a = ru[: i + 1] + (a,) + ru[i + 1:] if ru else (a,)
        if u == v:
            for j in range(len(with_a)):
                yield {u: with_a[: j + 1] + (b,) + with_a[j + 1:]}
        else:
            rv = rotation.get(v, ())
            for j in range(max(len(rv), 1)):
                yield {u: with_a, v: rv[: j + 1] + (b,) + rv[j + 1:] if rv else (b,)}


def embed(ends: dict, rng: np.random.Generator, max_genus: int, p_negative: float = 0.25) -> EmbeddedGraph:
    """Random cellular embedding of a connected multigraph with genus <= max_genus.

    Edge ``e`` gets darts ``2e`` and ``2e + 1``.  Raises GeneratorExhausted
    if some edge cannot be placed (only possible when the graph needs more
    genus than allowed).
    """
    rotation = {}
    edges = {}
    target = int(rng.integers(0, max_genus + 1))
    for e in _connected_order(ends):
        u, v = ends[e]
        a, b = 2 * e, 2 * e + 1
        options = list(_placements(rotation, u, v, a, b))
        chosen = best = None
        for k in rng.permutation(len(options)):
            sign = -1 if rng.random() < p_negative else 1
            for s in (sign, -sign):
                rot = dict(rotation)
                rot.update(options[k])
                edg = dict(edges)
                edg[e] = (a, b, s)
                g = euler_genus(EmbeddedGraph(rot, edg))
                if g <= target:
                    chosen = (rot, edg)
                    break
                if best is None or g < best[0]:
                    best = (g, rot, edg)
            if chosen:
                break
        if chosen is None:
            if best is None or best[0] > max_genus:
                raise GeneratorExhausted(f"edge {e} cannot be placed within genus {max_genus}")
            chosen = best[1:]
        rotation, edges = chosen
    return EmbeddedGraph(rotation, edges)


# -- abstract graphs --------------------------------------------------------


def ear_graph(rng: np.random.Generator, n_edges: int) -> dict:
    """Connected, loopless, bridgeless multigraph with exactly ``n_edges`` edges.

    Built from an ear decomposition: a starting cycle (length >= 2) and then
    open or closed ears of length >= 1 between existing vertices (length >= 2
    when closed, so no loops appear).
    """
    n_edges = max(n_edges, 2)
    first = int(rng.integers(2, min(n_edges, 6) + 1))
    ends = {i: (i, (i + 1) % first) for i in range(first)}
    n_vertices = first
    while len(ends) < n_edges:
        budget = n_edges - len(ends)
        length = int(rng.integers(1, min(budget, 4) + 1))
        x = int(rng.integers(0, n_vertices))
        y = int(rng.integers(0, n_vertices))
        if x == y and length < 2:
            continue
        path = [x] + list(range(n_vertices, n_vertices + length - 1)) + [y]
        n_vertices += length - 1
        for p, q in zip(path, path[1:]):
            ends[len(ends)] = (p, q)
    return ends


def connected_graph(rng: np.random.Generator, n_edges: int, loops: bool = True) -> dict:
    """Connected multigraph that may contain loops, bridges and parallel edges."""
    n_vertices = int(rng.integers(1, n_edges + 2))
    if n_vertices == 1 and not loops:
        n_vertices = 2
    ends = {}
    for v in range(1, n_vertices):
        ends[len(ends)] = (int(rng.integers(0, v)), v)
    while len(ends) < n_edges:
        u, v = int(rng.integers(0, n_vertices)), int(rng.integers(0, n_vertices))
        if u == v and not loops:
            continue
        ends[len(ends)] = (u, v)
    return ends


def random_graph(rng, max_edges: int, max_genus: int, kind: str = "bridgeless", min_edges: int = 2) -> EmbeddedGraph:
    for _ in range(MAX_RETRIES):
        m = int(rng.integers(min_edges, max_edges + 1))
        ends = ear_graph(rng, m) if kind == "bridgeless" else connected_graph(rng, m)
        try:
            return embed(ends, rng, max_genus)
        except GeneratorExhausted:
            continue
    raise GeneratorExhausted(f"no {kind} graph with <= {max_edges} edges and genus <= {max_genus}")


# -- the curated deck -------------------------------------------------------


def _from_ends(ends: dict, genus: int, seed: int) -> EmbeddedGraph:
    """Deterministic embedding of exactly the given genus."""
    rng = make_rng(seed)
    for _ in range(MAX_RETRIES):
        try:
            G = embed(ends, rng, genus, p_negative=0.5 if genus % 2 else 0.0)
        except GeneratorExhausted:
            continue
        if euler_genus(G) == genus:
            return G
    raise GeneratorExhausted(f"no embedding of genus {genus} found")


def cycle(n: int) -> EmbeddedGraph:
    rotation = {v: (2 * ((v - 1) % n) + 1, 2 * v) for v in range(n)}
    edges = {e: (2 * e, 2 * e + 1, 1) for e in range(n)}
    return EmbeddedGraph(rotation, edges)


def dipole(k: int) -> EmbeddedGraph:
    """Two vertices joined by k parallel edges, on the sphere."""
    rotation = {0: tuple(2 * e for e in range(k)), 1: tuple(2 * e + 1 for e in reversed(range(k)))}
    edges = {e: (2 * e, 2 * e + 1, 1) for e in range(k)}
    return EmbeddedGraph(rotation, edges)


def complete(n: int, genus: int) -> EmbeddedGraph:
    ends = dict(enumerate(combinations(range(n), 2)))
    return _from_ends(ends, genus, seed=n)


def wheel(n: int) -> EmbeddedGraph:
    """Hub 0 with an n-cycle rim; spokes are edges 0..n-1, rim edges n..2n-1."""
    ends = {i: (0, i + 1) for i in range(n)}
    ends.update({n + i: (i + 1, (i + 1) % n + 1) for i in range(n)})
    return _from_ends(ends, 0, seed=100 + n)


def torus_grid(p: int = 3, q: int = 3) -> EmbeddedGraph:
    """C_p x C_q on the torus with the standard (E, N, W, S) rotation."""
    def vid(i, j):
        return (i % p) * q + (j % q)

    rotation = {}
    edges = {}
    slots = {}
    for i in range(p):
        for j in range(q):
            for d, (di, dj), back in (("E", (0, 1), "W"), ("N", (1, 0), "S")):
                e = len(edges)
                edges[e] = (2 * e, 2 * e + 1, 1)
                slots[(vid(i, j), d)] = 2 * e
                slots[(vid(i + di, j + dj), back)] = 2 * e + 1
    for v in range(p * q):
        rotation[v] = tuple(slots[(v, d)] for d in "ENWS")
    return EmbeddedGraph(rotation, edges)


def curated_deck() -> list:
    """Named instances, C3 first; all connected, loopless and bridgeless."""
    return [
        ("C3", cycle(3)),
        ("C4", cycle(4)),
        ("C5", cycle(5)),
        ("K4", complete(4, 0)),
        ("K5-projective", complete(5, 1)),
        ("D2", dipole(2)),
        ("D3", dipole(3)),
        ("D4", dipole(4)),
        ("W4", wheel(4)),
        ("W5", wheel(5)),
        ("C3xC3-torus", torus_grid(3, 3)),
    ]


# -- campaigns --------------------------------------------------------------


def is_bridgeless_loopless(G) -> bool:
    return (
        component_count(G.vertices, G.ends) == 1
        and not any(u == v for u, v in G.ends.values())
        and not any(is_bridge(G.ends, e) for e in G.ends)
    )


@dataclass(frozen=True)
class Campaign:
    seed: int = 1
    count: int = 10
    max_edges: int = 12
    max_genus: int = 2
    targets: tuple = ()
    kind: str = "bridgeless"
    curated: bool = True

    def describe(self) -> dict:
        return {
            "seed": self.seed,
            "count": self.count,
            "max_edges": self.max_edges,
            "max_genus": self.max_genus,
            "targets": list(self.targets),
            "kind": self.kind,
        }


@dataclass(frozen=True)
class Instance:
    index: int
    name: str
    graph: object


def graphs(c: Campaign) -> list:
    """The campaign's graph instances: curated deck entries that fit, then random."""
    out = []
    if c.curated and c.kind in GRAPH_KINDS:
        for name, G in curated_deck():
            if len(out) >= c.count:
                break
            if len(G.edges) <= c.max_edges and euler_genus(G) <= c.max_genus:
                out.append(Instance(len(out), name, G))
    while len(out) < c.count:
        i = len(out)
        rng = make_rng(c.seed, i)
        G = random_graph(rng, c.max_edges, c.max_genus, c.kind)
        out.append(Instance(i, f"random-{i}", G))
    return out


def hypergraphs(c: Campaign) -> list:
    from .hypergraph import random_hypergraph

    out = []
    while len(out) < c.count:
        i = len(out)
        rng = make_rng(c.seed, i)
        out.append(Instance(i, f"hyper-{i}", random_hypergraph(rng, c.max_edges, c.max_genus)))
    return out


def instances(c: Campaign) -> list:
    return hypergraphs(c) if c.kind == "hypergraph" else graphs(c)
