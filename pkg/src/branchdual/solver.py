"""Exact and heuristic branchwidth under symmetric measures."""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import measures
from ._kernels import UNREACHABLE, branchwidth_dp
from .decomposition import BranchTree, WidthMeasure, width
from .errors import PreconditionError, SolverCapError
from .graph import component_count, is_bridge

DEFAULT_CAP = 14


def exact_cap() -> int:
    return int(os.environ.get("BRANCHDUAL_EXACT_CAP", DEFAULT_CAP))


@dataclass(frozen=True)
class SolveResult:
    value: int
    tree: BranchTree
    explored: int = 0


def _resolve_measure(G, f) -> WidthMeasure:
    if f is None or f == "delta":
        return measures.delta_measure(G)
    if f == "mu":
        return measures.mu_measure(G)
    if isinstance(f, WidthMeasure):
        return f
    if callable(f):
        return WidthMeasure(getattr(f, "__name__", "custom"), f)
    raise ValueError(f"unknown measure {f!r}")


def _ground(G_or_elements) -> list:
    if hasattr(G_or_elements, "ends"):
        return sorted(G_or_elements.ends)
    return sorted(G_or_elements)


def _tree_from_choices(elements, root_choice, choice) -> BranchTree:
    m = len(elements)
    adj = {}
    leaf_map = {}
    counter = [0]

    def node():
        n = counter[0]
        counter[0] += 1
        adj[n] = []
        return n

    def link(a, b):
        adj[a].append(b)
        adj[b].append(a)

    def build(F):
        n = node()
        if F & (F - 1) == 0:
            leaf_map[elements[F.bit_length() - 1]] = n
            return n
        F1 = int(choice[F])
        link(n, build(F1))
        link(n, build(F ^ F1))
        return n

    if m == 0:
        return BranchTree({}, {})
    if m == 1:
        return BranchTree({0: ()}, {elements[0]: 0})
    full = (1 << m) - 1
    a = build(int(root_choice))
    b = build(full ^ int(root_choice))
    link(a, b)
    return BranchTree(adj, leaf_map)


def solve_table(elements: list, table: np.ndarray, valid: np.ndarray | None = None, cap=None) -> SolveResult:
    """Exact branchwidth for a precomputed measure table over ``elements``."""
    m = len(elements)
    cap = exact_cap() if cap is None else cap
    if m > cap:
        raise SolverCapError(m, cap)
    if m <= 1:
        return SolveResult(0, _tree_from_choices(elements, 0, None), m)
    if valid is None:
        valid = np.ones(1 << m, dtype=np.bool_)
    value, root_choice, _opt, choice, explored = branchwidth_dp(
        np.ascontiguousarray(table, dtype=np.int64), valid, m
    )
    if value >= UNREACHABLE:
        raise PreconditionError("no decomposition satisfies the state restriction")
    return SolveResult(int(value), _tree_from_choices(elements, root_choice, choice), int(explored))


def exact_bw(G, f="delta", *, cap=None) -> SolveResult:
    """Branchwidth of measure ``f`` on E(G) by subset dynamic programming.

    ``f`` is ``"delta"``, ``"mu"``, a :class:`WidthMeasure` or a plain
    symmetric function on frozensets of edge ids.
    """
    elements = _ground(G)
    cap = exact_cap() if cap is None else cap
    if len(elements) > cap:
        raise SolverCapError(len(elements), cap)
    measure = _resolve_measure(G, f)
    return solve_table(elements, measure.evaluate_all(elements), cap=cap)


def exact_mu_bw(G, *, cap=None) -> SolveResult:
    return exact_bw(G, "mu", cap=cap)


def exact_connected_bw(G, *, cap=None) -> SolveResult:
    """Minimum delta-width over connected branch decompositions.

    Both sides of every tree edge must induce connected subgraphs.
    """
    if component_count(G.vertices, G.ends) != 1:
        raise PreconditionError("connected decompositions need a connected graph")
    if any(is_bridge(G.ends, e) for e in G.ends):
        raise PreconditionError("connected decompositions are only guaranteed for bridgeless graphs")
    elements = _ground(G)
    cap = exact_cap() if cap is None else cap
    if len(elements) > cap:
        raise SolverCapError(len(elements), cap)
    conn = measures.connectivity_table(G, elements)
    full = (1 << len(elements)) - 1
    valid = conn & conn[full ^ np.arange(full + 1)]
    table = measures.delta_measure(G).evaluate_all(elements)
    return solve_table(elements, table, valid, cap=cap)


# -- heuristic ------------------------------------------------------------


def _best_split(items: list, f, exhaustive_limit: int = 12):
    """Split ``items`` in two, minimising max(f(A), f(B)) with a balance tiebreak."""
    n = len(items)
    ground = frozenset(items)
    if n <= exhaustive_limit:
        best = None
        lo, hi = max(1, n // 3), max(1, n - n // 3)
        for mask in range(0, 1 << (n - 1)):
            part = frozenset(items[i + 1] for i in range(n - 1) if mask >> i & 1) | {items[0]}
            if len(part) == n:
                continue
            size = len(part)
            key = (max(f(part), f(ground - part)), 0 if lo <= size <= hi else 1, abs(n - 2 * size), sorted(part))
            if best is None or key < best[0]:
                best = (key, part)
        return best[1], ground - best[1]
    # local search from the first half in id order
    A = set(items[: n // 2])
    B = set(items[n // 2:])

    def score(A, B):
        return max(f(frozenset(A)), f(frozenset(B)))

    current = score(A, B)
    improved = True
    while improved:
        improved = False
        for x in sorted(A | B):
            src, dst = (A, B) if x in A else (B, A)
            if len(src) <= max(1, n // 3):
                continue
            src.remove(x)
            dst.add(x)
            s = score(A, B)
            if s < current:
                current = s
                improved = True
            else:
                dst.remove(x)
                src.add(x)
    return frozenset(A), frozenset(B)


def heuristic_bw(G, f="delta") -> SolveResult:
    """Greedy recursive bisection; the value is the witness tree's true width."""
    elements = _ground(G)
    measure = _resolve_measure(G, f) if hasattr(G, "ends") else f
    m = len(elements)
    if m <= 1:
        tree = _tree_from_choices(elements, 0, None)
        return SolveResult(0, tree, 0)
    adj = {}
    leaf_map = {}
    counter = [0]
    calls = [0]

    def node():
        n = counter[0]
        counter[0] += 1
        adj[n] = []
        return n

    def build(items):
        n = node()
        if len(items) == 1:
            leaf_map[items[0]] = n
            return n
        calls[0] += 1
        A, B = _best_split(items, measure)
        for part in (A, B):
            c = build(sorted(part))
            adj[n].append(c)
            adj[c].append(n)
        return n

    A, B = _best_split(elements, measure)
    a, b = build(sorted(A)), build(sorted(B))
    adj[a].append(b)
    adj[b].append(a)
    tree = BranchTree(adj, leaf_map)
    return SolveResult(width(tree, measure), tree, calls[0])


def solve(G, f="delta", *, exact: bool = True, connected: bool = False, cap=None) -> SolveResult:
    """Front door used by the CLI: exact when possible, heuristic otherwise."""
    if connected:
        return exact_connected_bw(G, cap=cap)
    if exact:
        return exact_bw(G, f, cap=cap)
    return heuristic_bw(G, f)


def bw(G, f="delta") -> int:
    return exact_bw(G, f).value

