"""Embedded hypergraphs stored as embedded incidence graphs.

A hypergraph is an :class:`EmbeddedGraph` ``incidence`` that is bipartite
between *points* (vertices of the hypergraph) and *centers* (one per
hyperedge).  The hyperedge id is its center's vertex id; its half-edges are
the incidence edges at the center, in rotation order.

The dual is built from the radial graph of the incidence embedding: one new
vertex per face, and one edge per corner joining the corner's vertex to the
corner's face.  Dropping the points leaves the incidence graph of the dual
hypergraph, whose star at ``h`` has one half-edge per corner around ``h``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from . import formats
from .decomposition import BranchTree, WidthMeasure, inc_lift, splits, width
from .embedding import EmbeddedGraph, connected_components, dual, euler_genus, trace_faces
from .errors import EmbeddingError, PreconditionError, SolverCapError
from .graph import DisjointSet
from .measures import delta_measure, incidence_border, incidence_delta_table
from .report import VerificationReport
from .solver import SolveResult, exact_cap, solve_table

LOOP = "loop"
BRIDGE = "bridge"
ORDINARY = "ordinary"

POINT = "vertex"
HYPEREDGE = "hyperedge"


@dataclass(frozen=True)
class EmbeddedHypergraph:
    incidence: EmbeddedGraph
    centers: frozenset

    def __post_init__(self):
        object.__setattr__(self, "centers", frozenset(self.centers))
        verts = set(self.incidence.vertices)
        if not self.centers <= verts:
            raise EmbeddingError(f"centers {sorted(self.centers - verts)} are not vertices")
        for e, (u, v) in self.incidence.ends.items():
            if (u in self.centers) == (v in self.centers):
                raise EmbeddingError(f"incidence edge {e} does not join a point to a center")

    @property
    def side(self) -> dict:
        return {v: HYPEREDGE if v in self.centers else POINT for v in self.incidence.vertices}

    @property
    def hyperedges(self) -> tuple:
        return tuple(sorted(self.centers))

    @property
    def points(self) -> tuple:
        return tuple(v for v in self.incidence.vertices if v not in self.centers)

    def half_edges(self, h) -> list:
        """E_I(h): incidence edges at center ``h`` in rotation order."""
        I = self.incidence
        return [I.edge_of[d] for d in I.rotation[h]]

    def endpoints(self, h) -> list:
        """Point at the far end of each half-edge of ``h`` (repeats allowed)."""
        I = self.incidence
        return [I.vertex_of[I.theta[d]] for d in I.rotation[h]]

    def arity(self, h) -> int:
        return len(self.incidence.rotation[h])

    @cached_property
    def touches(self) -> dict:
        return {h: frozenset(self.endpoints(h)) for h in self.hyperedges}

    @property
    def ends(self) -> dict:
        """Graph view: only meaningful when every hyperedge has arity 2."""
        out = {}
        for h in self.hyperedges:
            pts = self.endpoints(h)
            if len(pts) != 2:
                raise PreconditionError(f"hyperedge {h} has arity {len(pts)}, not 2")
            out[h] = tuple(pts)
        return out


@dataclass(frozen=True)
class HyperDualCorrespondence:
    dual: EmbeddedHypergraph
    star_bijection: Mapping[int, int]  # h -> h*
    half_edge_bijection: Mapping[int, int]  # z -> z*
    face_vertex: Mapping[int, int]  # face id of I(H) -> vertex id in I(H*)


def incidence_graph(H: EmbeddedHypergraph) -> EmbeddedGraph:
    return H.incidence


def euler_genus_h(H: EmbeddedHypergraph) -> int:
    return euler_genus(H.incidence)


def is_connected(H: EmbeddedHypergraph) -> bool:
    return connected_components(H.incidence)[0] == 1


# -- dual ------------------------------------------------------------------


def _corner_walks(I: EmbeddedGraph):
    """Per face: the corners met along its walk as (dart x, o).

    A walk flag (y, +1) sits in the corner after pred(y); (y, -1) sits in
    the corner after y.  Corners are named by the dart they follow.
    """
    fs = trace_faces(I)
    out = []
    for face in fs.faces:
        walk = []
        for y, o in face.boundary:
            x = I._pred[y] if o == 1 else y
            walk.append((x, o))
        out.append(walk)
    return fs, out


def radial_graph(I: EmbeddedGraph) -> tuple[EmbeddedGraph, dict, dict]:
    """Vertex-face incidence graph of ``I`` embedded on the same surface.

    Returns ``(R, face_vertex, corner_edge)``: ``face_vertex[f]`` is the new
    vertex of face ``f`` and ``corner_edge[x]`` the edge for the corner after
    dart ``x``.  That edge keeps dart id ``x`` at the original vertex; its
    face-side dart is ``top + x`` where ``top`` exceeds every dart id.  The
    edge is twisted exactly when the walk meets the corner with o = +1.
    """
    fs, walks = _corner_walks(I)
    top = max(I.darts, default=-1) + 1
    vbase = max(I.vertices, default=-1) + 1
    ebase = max(I.edges, default=-1) + 1
    face_vertex = {f.id: vbase + f.id for f in fs.faces}

    corner_edge = {}
    for v, darts in I.rotation.items():
        for x in darts:
            corner_edge[x] = ebase + x

    rotation = {v: tuple(darts) for v, darts in I.rotation.items()}
    edges = {}
    for f, walk in zip(fs.faces, walks):
        rotation[face_vertex[f.id]] = tuple(top + x for x, _ in walk)
        for x, o in walk:
            edges[corner_edge[x]] = (x, top + x, -o)
    R = EmbeddedGraph(rotation, edges)
    return R, face_vertex, corner_edge


def hyper_dual(H: EmbeddedHypergraph) -> HyperDualCorrespondence:
    """Dual hypergraph: star h* has one half-edge per corner around center h.

    Half-edge z at h (dart x at h) maps to z*, the half-edge through the
    corner after x; z* keeps z's edge id.  Center ids are kept, so the star
    bijection is the identity.
    """
    I = H.incidence
    if not is_connected(H):
        raise PreconditionError("the dual is only defined for connected hypergraphs")
    R, face_vertex, corner_edge = radial_graph(I)
    g = euler_genus(I)
    if euler_genus(R) != g:
        raise EmbeddingError("radial graph changed the Euler genus")

    keep = {}
    rotation = {}
    edges = {}
    for h in H.hyperedges:
        rotation[h] = R.rotation[h]
        for x in I.rotation[h]:
            a, b, s = R.edges[corner_edge[x]]
            z = I.edge_of[x]
            edges[z] = (a, b, s)
            keep[a] = keep[b] = True
    for f, fv in face_vertex.items():
        rotation[fv] = tuple(d for d in R.rotation[fv] if d in keep)
    Istar = EmbeddedGraph(rotation, edges)
    if euler_genus(Istar) != g:
        raise EmbeddingError("dual hypergraph changed the Euler genus")
    Hs = EmbeddedHypergraph(Istar, H.centers)
    return HyperDualCorrespondence(
        Hs,
        {h: h for h in H.hyperedges},
        {z: z for z in I.edges},
        dict(face_vertex),
    )


# -- borders and classification ---------------------------------------------


def hyper_border(H: EmbeddedHypergraph, F: Iterable) -> frozenset:
    F = set(F)
    extra = F - set(H.centers)
    if extra:
        raise PreconditionError(f"{sorted(extra)} are not hyperedges")
    return incidence_border(H.touches, F)


def hyper_delta(H: EmbeddedHypergraph, F: Iterable) -> int:
    return len(hyper_border(H, F))


def hyper_delta_measure(H: EmbeddedHypergraph) -> WidthMeasure:
    touches = dict(H.touches)
    return WidthMeasure(
        "hyper-delta",
        lambda F: len(incidence_border(touches, F)),
        table=lambda elements: incidence_delta_table(touches, elements),
    )


def _point_components(H: EmbeddedHypergraph, skip=None) -> int:
    ds = DisjointSet(H.points)
    for h in H.hyperedges:
        if h == skip:
            continue
        pts = H.touches[h]
        first = next(iter(pts), None)
        for p in pts:
            ds.union(first, p)
    return len(ds.groups())


def hyper_classify(H: EmbeddedHypergraph, h) -> str:
    """``loop`` with one distinct endpoint, ``bridge`` if removing ``h``
    splits the points further, ``ordinary`` otherwise."""
    if h not in H.centers:
        raise PreconditionError(f"{h} is not a hyperedge")
    if len(H.touches[h]) <= 1:
        return LOOP
    if _point_components(H, skip=h) > _point_components(H):
        return BRIDGE
    return ORDINARY


def has_coinciding_endpoints(H: EmbeddedHypergraph, h) -> bool:
    """Some but not all endpoints of ``h`` coincide (reported, not classified)."""
    pts = H.endpoints(h)
    return 1 < len(set(pts)) < len(pts)


# -- graphs as hypergraphs ----------------------------------------------------


def from_graph(G: EmbeddedGraph) -> EmbeddedHypergraph:
    """Subdivide every edge: edge ``e = (a, b, s)`` becomes center ``c_e`` with
    half-edges ``2e`` (towards a's vertex) and ``2e + 1`` (towards b's).

    Center ids are ``base + e`` with ``base`` above every vertex id.
    """
    base = max(G.vertices, default=-1) + 1
    top = max(G.darts, default=-1) + 1
    rotation = {v: tuple(darts) for v, darts in G.rotation.items()}
    edges = {}
    for e, (a, b, s) in G.edges.items():
        p, q = top + 2 * e, top + 2 * e + 1
        rotation[base + e] = (p, q)
        edges[2 * e] = (a, p, 1)
        edges[2 * e + 1] = (q, b, s)
    return EmbeddedHypergraph(EmbeddedGraph(rotation, edges), frozenset(base + e for e in G.edges))


def to_graph(H: EmbeddedHypergraph) -> tuple[EmbeddedGraph, dict]:
    """Inverse of :func:`from_graph` for hypergraphs whose stars all have arity 2.

    Returns the graph and the map center -> edge id; edges are numbered by
    center order.
    """
    I = H.incidence
    rotation = {v: list(I.rotation[v]) for v in H.points}
    edges = {}
    edge_of_center = {}
    for k, h in enumerate(H.hyperedges):
        if H.arity(h) != 2:
            raise PreconditionError(f"hyperedge {h} has arity {H.arity(h)}")
        p, q = I.rotation[h]
        s1 = I.edges[I.edge_of[p]][2]
        s2 = I.edges[I.edge_of[q]][2]
        a, b = I.theta[p], I.theta[q]
        edges[k] = (a, b, s1 * s2)
        edge_of_center[h] = k
    G = EmbeddedGraph({v: tuple(ds) for v, ds in rotation.items()}, edges)
    return G, edge_of_center


# -- widths --------------------------------------------------------------------


def hyper_bw(H: EmbeddedHypergraph, cap=None) -> SolveResult:
    """Exact branchwidth of H under the hypergraph border."""
    elements = list(H.hyperedges)
    cap = exact_cap() if cap is None else cap
    if len(elements) > cap:
        raise SolverCapError(len(elements), cap)
    m = hyper_delta_measure(H)
    return solve_table(elements, m.evaluate_all(elements), cap=cap)


def incidence_width(T: BranchTree, G) -> int:
    """delta-width of a tree over incidence edges, evaluated in graph ``G``."""
    return width(T, delta_measure(G))


def check_lift(H: EmbeddedHypergraph, T: BranchTree, half_edge_trees=None) -> VerificationReport:
    """The lifted decomposition has the same delta-width as T."""
    lifted = inc_lift(T, H, half_edge_trees)
    w = width(T, hyper_delta_measure(H))
    wl = incidence_width(lifted, H.incidence)
    return VerificationReport(
        "inc-lift-width", w == wl, {"width": w, "lifted_width": wl}, formats.digest(H)
    )


def check_lift_dual(H: EmbeddedHypergraph, T: BranchTree, corr=None) -> VerificationReport:
    """Inc(T) has equal width on the graph dual of I(H) and on I(H*).

    Also measures the weaker statement restricted to the splits of T itself
    (unions of whole stars), reported as ``tree_splits_equal``.
    """
    corr = corr if corr is not None else hyper_dual(H)
    lifted = inc_lift(T, H)
    Dg = dual(H.incidence)
    graph_dual = Dg.dual_graph
    hyper_inc = corr.dual.incidence
    on_graph_dual = incidence_width(lifted.relabel(dict(Dg.edge_bijection)), graph_dual)
    on_hyper_dual = incidence_width(lifted.relabel(dict(corr.half_edge_bijection)), hyper_inc)
    f_graph, f_hyper = delta_measure(graph_dual), delta_measure(hyper_inc)
    tree_equal = True
    for _, A, _B in splits(T):
        F = [z for h in A for z in H.half_edges(h)]
        a = f_graph([Dg.edge_bijection[z] for z in F])
        b = f_hyper([corr.half_edge_bijection[z] for z in F])
        tree_equal &= a == b
    return VerificationReport(
        "inc-lift-dual-width",
        on_graph_dual == on_hyper_dual,
        {
            "graph_dual_width": on_graph_dual,
            "hyper_dual_width": on_hyper_dual,
            "tree_splits_equal": tree_equal,
        },
        formats.digest(H),
    )


def dual_stars_are_cycles(H: EmbeddedHypergraph) -> bool:
    """In the graph dual of I(H), E_I(h)* is a closed walk with arity(h) edges."""
    Dg = dual(H.incidence).dual_graph
    for h in H.hyperedges:
        zs = H.half_edges(h)
        # consecutive half-edges around h share the face of the corner between them
        deg = {}
        for z in zs:
            for v in Dg.ends[z]:
                deg[v] = deg.get(v, 0) + 1
        if any(d % 2 for d in deg.values()):
            return False
        if not _edge_walk_connected(Dg.ends, zs):
            return False
    return True


def _edge_walk_connected(ends, zs) -> bool:
    ds = DisjointSet()
    for z in zs:
        u, v = ends[z]
        ds.add(u)
        ds.add(v)
        ds.union(u, v)
    return len(ds.groups()) == 1


# -- the hypergraph theorem ------------------------------------------------------


def theorem2_check(H: EmbeddedHypergraph, *, cap=None) -> VerificationReport:
    """bw(H*) <= bw(H) + g under the hypergraph border, plus the lifting steps."""
    from .lemmas import theorem1_check

    if not is_connected(H):
        raise PreconditionError("H must be connected")
    kinds = {h: hyper_classify(H, h) for h in H.hyperedges}
    if any(k != ORDINARY for k in kinds.values()):
        raise PreconditionError("H must have no loop or bridge hyperedges")
    cap = exact_cap() if cap is None else cap
    if len(H.incidence.edges) > cap:
        raise SolverCapError(len(H.incidence.edges), cap)

    g = euler_genus_h(H)
    corr = hyper_dual(H)
    Hs = corr.dual
    sol = hyper_bw(H, cap)
    sol_d = hyper_bw(Hs, cap)
    T = sol.tree

    lift = check_lift(H, T)
    lift_dual = check_lift_dual(H, T, corr)
    arity_kept = all(Hs.arity(corr.star_bijection[h]) == H.arity(h) for h in H.hyperedges)

    measured = {
        "genus": g,
        "hyperedges": len(H.hyperedges),
        "incidence_edges": len(H.incidence.edges),
        "bw": sol.value,
        "bw_dual": sol_d.value,
        "lift_width": lift.measured["lifted_width"],
        "lift_dual_graph_width": lift_dual.measured["graph_dual_width"],
        "lift_dual_hyper_width": lift_dual.measured["hyper_dual_width"],
        "lift_dual_equal": lift_dual.passed,
        "lift_dual_tree_splits_equal": lift_dual.measured["tree_splits_equal"],
        "arity_preserved": arity_kept,
        "dual_coinciding_endpoints": sorted(h for h in Hs.hyperedges if has_coinciding_endpoints(Hs, h)),
    }
    checks = {
        "bound": sol_d.value <= sol.value + g,
        "lift": lift.passed,
        "lift_dual_tree_splits": lift_dual.measured["tree_splits_equal"],
        "arity": arity_kept,
    }
    I = H.incidence
    from .graph import is_bridge

    if not any(is_bridge(I.ends, e) for e in I.ends):
        t1 = theorem1_check(I, cap=cap)
        measured["incidence_theorem1"] = t1.passed
        checks["incidence_theorem1"] = t1.passed
    else:
        measured["incidence_theorem1"] = None
    failed = [k for k, ok in checks.items() if not ok]
    return VerificationReport(
        "theorem2",
        not failed,
        measured,
        formats.digest(H),
        note="failed: " + ", ".join(failed) if failed else "",
    )


# -- random instances ------------------------------------------------------------


def random_abstract(rng: np.random.Generator, max_incidences: int, tries: int = 200):
    """Hyperedge point-lists with distinct endpoints, every point in >= 2
    hyperedges, connected, and with no loop or bridge hyperedges."""
    from .errors import GeneratorExhausted

    for _ in range(tries):
        m = int(rng.integers(4, max_incidences + 1))
        k = int(rng.integers(2, m // 2 + 1))
        arities = [2] * k
        for _ in range(m - 2 * k):
            arities[int(rng.integers(k))] += 1
        n = int(rng.integers(2, max(2, m // 2) + 1))
        if max(arities) > n:
            continue
        stars = [sorted(rng.choice(n, size=a, replace=False).tolist()) for a in arities]
        count = [0] * n
        for s in stars:
            for p in s:
                count[p] += 1
        if min(count) < 2:
            continue
        ds = DisjointSet(range(n))
        for s in stars:
            for p in s[1:]:
                ds.union(s[0], p)
        if len(ds.groups()) != 1:
            continue
        ok = True
        for i in range(k):
            ds = DisjointSet(range(n))
            for j, s in enumerate(stars):
                if j != i:
                    for p in s[1:]:
                        ds.union(s[0], p)
            if len(ds.groups()) != 1:
                ok = False
                break
        if ok:
            return n, stars
    raise GeneratorExhausted(f"no bridgeless hypergraph with <= {max_incidences} incidences")


def random_hypergraph(rng: np.random.Generator, max_incidences: int, max_genus: int) -> EmbeddedHypergraph:
    from .errors import GeneratorExhausted
    from .generate import MAX_RETRIES, embed

    for _ in range(MAX_RETRIES):
        n, stars = random_abstract(rng, max_incidences)
        ends = {}
        for j, s in enumerate(stars):
            for p in s:
                ends[len(ends)] = (n + j, p)
        try:
            I = embed(ends, rng, max_genus)
        except GeneratorExhausted:
            continue
        return EmbeddedHypergraph(I, frozenset(range(n, n + len(stars))))
    raise GeneratorExhausted("could not embed a random hypergraph")
