"""Branch decompositions over arbitrary ground sets.

A :class:`BranchTree` is an unrooted tree whose internal nodes have degree 3,
with a bijection from the ground set to its leaves.  Every tree edge splits
the ground set in two; the width under a symmetric set function is the
maximum of that function over these splits.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping

import numpy as np

from .errors import PreconditionError


@dataclass(frozen=True)
class WidthMeasure:
    """A symmetric set function on subsets of a ground set.

    ``table`` optionally evaluates the function on every subset at once
    (bit ``i`` of the index selects ``elements[i]``); the exact solver uses it
    when present.
    """

    name: str
    func: Callable[[frozenset], int]
    table: Callable | None = field(default=None, compare=False)

    def __call__(self, F) -> int:
        return self.func(frozenset(F))

    def evaluate_all(self, elements) -> np.ndarray:
        if self.table is not None:
            return np.asarray(self.table(list(elements)), dtype=np.int64)
        m = len(elements)
        out = np.empty(1 << m, dtype=np.int64)
        for mask in range(1 << m):
            out[mask] = self.func(frozenset(x for i, x in enumerate(elements) if mask >> i & 1))
        return out

    def spot_check_symmetry(self, elements, samples: Iterable[Iterable]) -> bool:
        ground = frozenset(elements)
        return all(self(S) == self(ground - frozenset(S)) for S in samples)


def _tree_edge(u, v):
    return (u, v) if u <= v else (v, u)


class BranchTree:
    """Unrooted cubic tree with leaves labelled by a ground set.

    ``adjacency`` maps integer node ids to neighbour tuples and ``leaf_map``
    maps each ground element to its leaf.  Equality is labelled-tree
    isomorphism, so node ids do not matter.
    """

    def __init__(self, adjacency: Mapping[int, Iterable[int]], leaf_map: Mapping[Hashable, int]):
        self.adjacency = {n: tuple(nb) for n, nb in adjacency.items()}
        self.leaf_map = dict(leaf_map)
        self._validate()
        self.label_of = {leaf: x for x, leaf in self.leaf_map.items()}

    def _validate(self):
        adj = self.adjacency
        for n, nbs in adj.items():
            for x in nbs:
                if x not in adj or n not in adj[x]:
                    raise PreconditionError(f"tree adjacency is not symmetric at {n}-{x}")
        leaves = set(self.leaf_map.values())
        if len(leaves) != len(self.leaf_map):
            raise PreconditionError("two ground elements share a leaf")
        if not set(leaves) <= set(adj):
            raise PreconditionError("leaf_map names a node outside the tree")
        n_edges = sum(len(nb) for nb in adj.values()) // 2
        if adj and n_edges != len(adj) - 1:
            raise PreconditionError("branch tree must be a tree")
        if adj and len(self._reach(next(iter(adj)))) != len(adj):
            raise PreconditionError("branch tree must be connected")
        if len(self.leaf_map) >= 2:
            for n, nbs in adj.items():
                if n in leaves:
                    if len(nbs) != 1:
                        raise PreconditionError(f"leaf {n} has degree {len(nbs)}")
                elif len(nbs) != 3:
                    raise PreconditionError(f"internal node {n} has degree {len(nbs)}")
        elif len(adj) != len(self.leaf_map):
            raise PreconditionError("a branch tree on <= 1 element is a single leaf (or empty)")

    def _reach(self, start, blocked=None):
        seen = {start}
        stack = [start]
        while stack:
            n = stack.pop()
            for x in self.adjacency[n]:
                if x not in seen and x != blocked:
                    seen.add(x)
                    stack.append(x)
        return seen

    @property
    def ground(self) -> frozenset:
        return frozenset(self.leaf_map)

    @property
    def edges(self) -> tuple:
        out = set()
        for n, nbs in self.adjacency.items():
            for x in nbs:
                out.add(_tree_edge(n, x))
        return tuple(sorted(out))

    def __len__(self):
        return len(self.leaf_map)

    def __eq__(self, other):
        if not isinstance(other, BranchTree):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        return f"BranchTree({to_text(self)})"

    def canonical(self) -> str:
        return to_text(self)

    def relabel(self, mapping: Mapping) -> "BranchTree":
        if set(mapping) != set(self.leaf_map):
            raise PreconditionError("relabelling must cover exactly the ground set")
        return BranchTree(self.adjacency, {mapping[x]: n for x, n in self.leaf_map.items()})


# -- constructors ---------------------------------------------------------


def caterpillar(elements: Iterable) -> BranchTree:
    """Caterpillar with leaves in the given order (the first two form a cherry)."""
    elements = list(elements)
    k = len(elements)
    if k == 0:
        return BranchTree({}, {})
    if k == 1:
        return BranchTree({0: ()}, {elements[0]: 0})
    if k == 2:
        return BranchTree({0: (1,), 1: (0,)}, {elements[0]: 0, elements[1]: 1})
    adj = {}

    def link(a, b):
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)

    leaves = {x: i for i, x in enumerate(elements)}
    spine = [k + i for i in range(k - 2)]
    link(0, spine[0])
    link(1, spine[0])
    for i in range(2, k - 1):
        link(spine[i - 2], spine[i - 1])
        link(i, spine[i - 1])
    link(k - 1, spine[-1])
    return BranchTree(adj, leaves)


def from_nested(nested) -> BranchTree:
    """Build from nested tuples, e.g. ``((1, 2), (3, 4))``.

    Leaves are non-tuple objects.  A top-level node with two children is
    suppressed (it only marks a root edge), so ``(a, b)`` is the two-leaf tree.
    """
    adj = {}
    leaf_map = {}
    counter = [0]

    def new():
        n = counter[0]
        counter[0] += 1
        adj[n] = []
        return n

    def build(x):
        n = new()
        if isinstance(x, tuple):
            for child in x:
                c = build(child)
                adj[n].append(c)
                adj[c].append(n)
        else:
            if x in leaf_map:
                raise PreconditionError(f"label {x!r} appears twice")
            leaf_map[x] = n
        return n

    if not isinstance(nested, tuple):
        return BranchTree({0: ()}, {nested: 0})
    if len(nested) == 1 and not isinstance(nested[0], tuple):
        return BranchTree({0: ()}, {nested[0]: 0})
    root = build(nested)
    if len(adj[root]) == 2:
        a, b = adj[root]
        adj[a].remove(root)
        adj[b].remove(root)
        adj[a].append(b)
        adj[b].append(a)
        del adj[root]
    return BranchTree(adj, leaf_map)


# -- operations -----------------------------------------------------------


def bipartition(T: BranchTree, t) -> tuple[frozenset, frozenset]:
    """Ground-set split induced by tree edge ``t = (u, v)``: (u's side, v's side)."""
    u, v = t
    if u not in T.adjacency or v not in T.adjacency[u]:
        raise PreconditionError(f"{t} is not an edge of the branch tree")
    side = T._reach(u, blocked=v)
    left = frozenset(T.label_of[n] for n in side if n in T.label_of)
    return left, T.ground - left


def splits(T: BranchTree):
    """Yield ``(tree_edge, side_u, side_v)`` for every tree edge."""
    for t in T.edges:
        a, b = bipartition(T, t)
        yield t, a, b


def width(T: BranchTree, f) -> int:
    """Maximum of ``f`` over the splits of ``T``; 0 for ground sets of size <= 1."""
    if len(T) <= 1:
        return 0
    return max(f(a) for _, a, _ in splits(T))


def is_connected_decomposition(G, T: BranchTree) -> bool:
    from .graph import edge_set_connected

    if set(T.ground) != set(G.ends):
        raise PreconditionError("branch tree ground set differs from E(G)")
    return all(
        edge_set_connected(G.ends, a) and edge_set_connected(G.ends, b) for _, a, b in splits(T)
    )


def dual_decomposition(T: BranchTree, corr) -> BranchTree:
    """Same tree, leaves relabelled by the dual edge bijection ``e -> e*``."""
    bij = corr.edge_bijection if hasattr(corr, "edge_bijection") else corr
    if set(bij) != set(T.ground):
        raise PreconditionError("correspondence domain differs from the tree's ground set")
    return T.relabel(dict(bij))


def inc_lift(T: BranchTree, H, half_edge_trees: Mapping | None = None) -> BranchTree:
    """Lift a decomposition of hypergraph ``H`` to one of its incidence graph.

    Each leaf of ``T`` (a hyperedge ``h``) is replaced by a half-edge tree over
    the incidence edges at ``h``: the tree's attach edge is subdivided by a
    new node that takes the leaf's place.  ``half_edge_trees[h]`` is a pair
    ``(BranchTree over E_I(h), attach_edge)``; missing entries default to a
    caterpillar in rotation order attached at its first leaf's pendant edge.
    Arity-1 hyperedges keep their leaf and just relabel it.
    """
    half_edge_trees = dict(half_edge_trees or {})
    if set(T.ground) != set(H.hyperedges):
        raise PreconditionError("tree ground set differs from the hyperedges of H")

    adj = {n: list(nb) for n, nb in T.adjacency.items()}
    leaf_map = {}
    next_id = max(adj, default=-1) + 1

    for h in sorted(T.ground):
        half_edges = H.half_edges(h)
        if h in half_edge_trees:
            Th, attach = half_edge_trees[h]
        else:
            Th = caterpillar(half_edges)
            attach = None
        if set(Th.ground) != set(half_edges):
            raise PreconditionError(f"half-edge tree of {h} does not cover E_I({h})")
        t = T.leaf_map[h]
        if len(half_edges) == 1:
            leaf_map[half_edges[0]] = t
            continue
        if attach is None:
            leaf = Th.leaf_map[half_edges[0]]
            attach = (leaf, Th.adjacency[leaf][0])
        offset = {n: next_id + i for i, n in enumerate(sorted(Th.adjacency))}
        next_id += len(offset)
        for n, nbs in Th.adjacency.items():
            adj[offset[n]] = [offset[x] for x in nbs]
        for x, n in Th.leaf_map.items():
            leaf_map[x] = offset[n]
        if len(T) == 1:
            # nothing to hang from: the half-edge tree is the whole lift
            del adj[t]
            break
        a, b = offset[attach[0]], offset[attach[1]]
        if b not in adj[a]:
            raise PreconditionError(f"attach edge {attach} is not an edge of the half-edge tree")
        adj[a][adj[a].index(b)] = t
        adj[b][adj[b].index(a)] = t
        adj[t].extend([a, b])
    return BranchTree(adj, leaf_map)


# -- serialisation --------------------------------------------------------


def _label_key(x):
    return (0, x, "") if isinstance(x, int) else (1, 0, str(x))


def to_text(T: BranchTree) -> str:
    """Nested-parentheses form rooted at the smallest label; children sorted."""
    if len(T) == 0:
        return "()"
    first = min(T.leaf_map, key=_label_key)
    if len(T) == 1:
        return f"({first})"
    leaf = T.leaf_map[first]

    def rec(n, parent):
        if n in T.label_of:
            return str(T.label_of[n])
        parts = sorted((rec(x, n) for x in T.adjacency[n] if x != parent), key=_text_key)
        return "(" + ",".join(parts) + ")"

    return f"({first},{rec(T.adjacency[leaf][0], leaf)})"


def _text_key(s):
    return (len(s), s)


def _parse_label(tok: str):
    tok = tok.strip()
    if not tok:
        raise PreconditionError("empty label in branch tree text")
    try:
        return int(tok)
    except ValueError:
        return tok


def from_text(text: str) -> BranchTree:
    text = "".join(text.split())
    if text == "()":
        return BranchTree({}, {})
    pos = 0

    def parse():
        nonlocal pos
        if text[pos] == "(":
            pos += 1
            items = [parse()]
            while text[pos] == ",":
                pos += 1
                items.append(parse())
            if text[pos] != ")":
                raise PreconditionError(f"expected ')' at {pos} in {text!r}")
            pos += 1
            return tuple(items)
        start = pos
        while pos < len(text) and text[pos] not in "(),":
            pos += 1
        return _parse_label(text[start:pos])

    nested = parse()
    if pos != len(text):
        raise PreconditionError(f"trailing characters in branch tree text {text!r}")
    return from_nested(nested)


def to_json(T: BranchTree) -> dict:
    return {
        "nodes": sorted(T.adjacency),
        "edges": [list(t) for t in T.edges],
        "leaves": [[x, n] for x, n in sorted(T.leaf_map.items(), key=lambda kv: _label_key(kv[0]))],
    }


def from_json(data) -> BranchTree:
    if isinstance(data, str):
        data = json.loads(data)
    adj = {n: [] for n in data["nodes"]}
    for u, v in data["edges"]:
        adj[u].append(v)
        adj[v].append(u)
    return BranchTree(adj, {x: n for x, n in data["leaves"]})
