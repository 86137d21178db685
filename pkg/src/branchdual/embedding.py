"""Multigraphs cellularly embedded on surfaces, encoded as signed rotation systems.

Each edge owns two darts.  ``rotation[v]`` lists the darts at ``v`` in cyclic
order and ``edges[e] = (a, b, sign)`` names the two darts of ``e`` and its
sign (``-1`` marks an edge that reverses local orientation).  Loops are edges
whose two darts sit at the same vertex.

Internally everything is computed on *flags* ``(dart, o)`` with ``o`` in
``{+1, -1}``; the three fixed-point-free involutions

* ``tau0(d, o) = (theta(d), -o * sign(e))``   other end of the edge, same side
* ``tau1(d, o) = (rot^{-o}(d), -o)``          neighbouring dart, same corner
* ``tau2(d, o) = (d, -o)``                    same dart, other side

encode the embedding.  Vertices are orbits of <tau1, tau2>, faces orbits of
<tau0, tau1> and edges orbits of <tau0, tau2>.  The dual swaps tau0 and tau2.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from .errors import EmbeddingError, PreconditionError
from .graph import DisjointSet, Multigraph, is_bridge

LOOP = "loop"
BRIDGE = "bridge"
ORDINARY = "ordinary"


@dataclass(frozen=True)
class EmbeddedGraph:
    rotation: Mapping[int, tuple] = field(default_factory=dict)
    edges: Mapping[int, tuple] = field(default_factory=dict)

    def __post_init__(self):
        seen = {}
        for v, darts in self.rotation.items():
            for d in darts:
                if d in seen:
                    raise EmbeddingError(f"dart {d} appears at vertices {seen[d]} and {v}")
                seen[d] = v
        owned = set()
        for e, spec in self.edges.items():
            if len(spec) != 3:
                raise EmbeddingError(f"edge {e} must be (dart, dart, sign)")
            a, b, s = spec
            if a == b:
                raise EmbeddingError(f"edge {e} pairs dart {a} with itself")
            if s not in (1, -1):
                raise EmbeddingError(f"edge {e} has sign {s!r}")
            for d in (a, b):
                if d in owned:
                    raise EmbeddingError(f"dart {d} belongs to two edges")
                if d not in seen:
                    raise EmbeddingError(f"dart {d} of edge {e} is not placed at any vertex")
                owned.add(d)
        if owned != set(seen):
            stray = sorted(set(seen) - owned)
            raise EmbeddingError(f"darts {stray} are not attached to an edge")

    # -- basic structure -------------------------------------------------

    @property
    def vertices(self) -> tuple:
        return tuple(sorted(self.rotation))

    @property
    def edge_ids(self) -> tuple:
        return tuple(sorted(self.edges))

    @cached_property
    def vertex_of(self) -> dict:
        return {d: v for v, darts in self.rotation.items() for d in darts}

    @cached_property
    def edge_of(self) -> dict:
        out = {}
        for e, (a, b, _) in self.edges.items():
            out[a] = e
            out[b] = e
        return out

    @cached_property
    def theta(self) -> dict:
        out = {}
        for a, b, _ in self.edges.values():
            out[a] = b
            out[b] = a
        return out

    @cached_property
    def _succ(self) -> dict:
        out = {}
        for darts in self.rotation.values():
            n = len(darts)
            for i, d in enumerate(darts):
                out[d] = darts[(i + 1) % n]
        return out

    @cached_property
    def _pred(self) -> dict:
        return {b: a for a, b in self._succ.items()}

    @cached_property
    def ends(self) -> dict:
        vof = self.vertex_of
        return {e: (vof[a], vof[b]) for e, (a, b, _) in self.edges.items()}

    @property
    def darts(self) -> tuple:
        return tuple(sorted(self.vertex_of))

    def sign(self, e) -> int:
        return self.edges[e][2]

    def skeleton(self) -> Multigraph:
        return Multigraph(self.vertices, dict(self.ends))

    def degree(self, v) -> int:
        return len(self.rotation[v])

    # -- flag involutions ------------------------------------------------

    def tau0(self, flag):
        d, o = flag
        return self.theta[d], -o * self.edges[self.edge_of[d]][2]

    def tau1(self, flag):
        d, o = flag
        return (self._pred[d] if o == 1 else self._succ[d]), -o

    @staticmethod
    def tau2(flag):
        d, o = flag
        return d, -o

    def face_step(self, flag):
        """Advance a face walk: leave along the flag's dart, turn at the far end."""
        return self.tau1(self.tau0(flag))

    # -- convenience wrappers around the module-level operations ---------

    def contract(self, e) -> "EmbeddedGraph":
        return contract(self, e)

    def delete(self, e) -> "EmbeddedGraph":
        return delete(self, e)

    def __repr__(self):
        return f"EmbeddedGraph(|V|={len(self.rotation)}, |E|={len(self.edges)})"


@dataclass(frozen=True)
class Face:
    id: int
    boundary: tuple  # flags (dart, o) in walk order; empty for an isolated vertex
    vertex: int | None = None  # set only for the face of an isolated vertex


@dataclass(frozen=True)
class FaceSet:
    faces: tuple
    face_of: Mapping[tuple, int]  # every flag -> face id

    def __len__(self):
        return len(self.faces)

    def __iter__(self):
        return iter(self.faces)

    def edge_faces(self, G: EmbeddedGraph, e) -> tuple:
        """The faces on the two sides of ``e`` (equal when both sides coincide)."""
        a = G.edges[e][0]
        return self.face_of[(a, 1)], self.face_of[(a, -1)]


@dataclass(frozen=True)
class DualCorrespondence:
    dual_graph: EmbeddedGraph
    edge_bijection: Mapping[int, int]
    vertex_of_face: Mapping[int, int]


def trace_faces(G: EmbeddedGraph) -> FaceSet:
    """Trace all face boundaries of ``G``.

    Face ids follow the smallest dart on the boundary; faces of isolated
    vertices (one each, with empty boundary) come last, ordered by vertex.
    """
    face_of = {}
    faces = []
    for d in G.darts:
        for o in (1, -1):
            start = (d, o)
            if start in face_of:
                continue
            fid = len(faces)
            walk = []
            flag = start
            while True:
                walk.append(flag)
                face_of[flag] = fid
                flag = G.face_step(flag)
                if flag == start:
                    break
            for flag in walk:
                rev = G.tau0(flag)
                if rev in face_of and face_of[rev] != fid:
                    raise EmbeddingError("face walk and its reverse disagree")
                face_of[rev] = fid
            faces.append(Face(fid, tuple(walk)))
    for v in G.vertices:
        if not G.rotation[v]:
            faces.append(Face(len(faces), (), vertex=v))
    return FaceSet(tuple(faces), face_of)


def connected_components(G) -> tuple[int, dict]:
    """Component count and labels ``vertex -> index``, indexed by smallest vertex."""
    ds = DisjointSet(G.vertices)
    for u, v in G.ends.values():
        ds.union(u, v)
    labels = {}
    order = {}
    for v in sorted(G.vertices):
        r = ds.find(v)
        if r not in order:
            order[r] = len(order)
        labels[v] = order[r]
    return len(order), labels


def euler_genus(G: EmbeddedGraph) -> int:
    cc, _ = connected_components(G)
    faces = len(trace_faces(G))
    g = 2 * cc - len(G.rotation) + len(G.edges) - faces
    if g < 0:
        raise EmbeddingError(f"negative Euler genus {g}; rotation system is inconsistent")
    return g


def is_orientable(G: EmbeddedGraph) -> bool:
    """True iff some vertex flipping makes every edge sign positive."""
    colour = {}
    for start in G.vertices:
        if start in colour:
            continue
        colour[start] = 1
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for d in G.rotation[v]:
                e = G.edge_of[d]
                w = G.vertex_of[G.theta[d]]
                want = colour[v] * G.edges[e][2]
                if w not in colour:
                    colour[w] = want
                    queue.append(w)
                elif colour[w] != want:
                    return False
    return True


def _scheme_from_flags(vertex_orbits, dart_of_flag, edge_darts, edge_involution):
    """Rebuild a signed rotation system from flag orbits.

    ``vertex_orbits`` maps a new vertex id to its *positive* flags in rotation
    order.  ``dart_of_flag`` names the dart carrying a flag, ``edge_darts`` the
    (first, second) darts of every edge, and ``edge_involution`` moves a flag
    to the other end of its edge, staying on the same side.
    """
    rotation = {}
    positive = {}
    for v, flags in vertex_orbits.items():
        rotation[v] = tuple(dart_of_flag[f] for f in flags)
        for f in flags:
            positive[dart_of_flag[f]] = f
    edges = {}
    for e, (a, b) in edge_darts.items():
        pa, pb = positive[a], positive[b]
        # + iff the edge involution takes a's positive flag to b's negative one
        other = edge_involution(pa)
        sign = 1 if other != pb else -1
        edges[e] = (a, b, sign)
    return rotation, edges


def dual(G: EmbeddedGraph) -> DualCorrespondence:
    """Dual embedded graph; edge ``e`` of ``G`` keeps its id as ``e*``.

    The dual darts of ``e = (a, b, s)`` are named ``a`` (the side of flag
    ``(a, +1)``) and ``b`` (the other side); dual vertex ``i`` is face ``i``.
    """
    cc, _ = connected_components(G)
    if cc != 1:
        raise PreconditionError("dual is only defined for connected embedded graphs")
    fs = trace_faces(G)
    if len(G.edges) == 0:
        return DualCorrespondence(EmbeddedGraph({0: ()}, {}), {}, {0: 0})

    # dual dart of each flag: the tau0-orbit {flag, tau0(flag)}
    dart_of_flag = {}
    for e, (a, b, s) in G.edges.items():
        for o in (1, -1):
            name = a if o == 1 else b
            f = (a, o)
            dart_of_flag[f] = name
            dart_of_flag[G.tau0(f)] = name

    vertex_orbits = {face.id: face.boundary for face in fs.faces}
    edge_darts = {e: (a, b) for e, (a, b, _) in G.edges.items()}
    # in the dual, the edge involution is tau2 and the dart involution is tau0
    rotation, edges = _scheme_from_flags(vertex_orbits, dart_of_flag, edge_darts, G.tau2)
    D = EmbeddedGraph(rotation, edges)
    return DualCorrespondence(
        D, {e: e for e in G.edges}, {face.id: face.id for face in fs.faces}
    )


def contract(G: EmbeddedGraph, e) -> EmbeddedGraph:
    """Contract the non-loop edge ``e``; the merged vertex keeps the smaller id."""
    if e not in G.edges:
        raise PreconditionError(f"unknown edge {e}")
    a, b, s = G.edges[e]
    u, v = G.vertex_of[a], G.vertex_of[b]
    if u == v:
        raise PreconditionError(f"edge {e} is a loop and cannot be contracted")
    rotation = dict(G.rotation)
    edges = dict(G.edges)
    if s == -1:
        # flip the local orientation at v so that e becomes untwisted
        rotation[v] = tuple(reversed(rotation[v]))
        for f, (x, y, t) in G.edges.items():
            at_v = (G.vertex_of[x] == v) + (G.vertex_of[y] == v)
            if at_v == 1:
                edges[f] = (x, y, -t)
    ru, rv = rotation[u], rotation[v]
    i, j = ru.index(a), rv.index(b)
    merged = ru[i + 1:] + ru[:i] + rv[j + 1:] + rv[:j]
    keep = min(u, v)
    del rotation[u], rotation[v]
    rotation[keep] = merged
    del edges[e]
    return EmbeddedGraph(rotation, edges)


def delete(G: EmbeddedGraph, e) -> EmbeddedGraph:
    """Delete ``e``; the induced rotation system is read as a new cellular embedding."""
    if e not in G.edges:
        raise PreconditionError(f"unknown edge {e}")
    a, b, _ = G.edges[e]
    rotation = {v: tuple(d for d in darts if d != a and d != b) for v, darts in G.rotation.items()}
    edges = {f: spec for f, spec in G.edges.items() if f != e}
    return EmbeddedGraph(rotation, edges)


def classify_edge(G, e) -> str:
    if e not in G.ends:
        raise PreconditionError(f"unknown edge {e}")
    u, v = G.ends[e]
    if u == v:
        return LOOP
    if is_bridge(G.ends, e):
        return BRIDGE
    return ORDINARY


def _flag_components(G: EmbeddedGraph):
    seen = set()
    comps = []
    for d in G.darts:
        start = (d, 1)
        if start in seen:
            continue
        comp = []
        queue = deque([start])
        seen.add(start)
        while queue:
            f = queue.popleft()
            comp.append(f)
            for g in (G.tau0(f), G.tau1(f), G.tau2(f)):
                if g not in seen:
                    seen.add(g)
                    queue.append(g)
        comps.append(comp)
    return comps


def is_isomorphic(G: EmbeddedGraph, H: EmbeddedGraph, edge_map: Mapping | None = None) -> bool:
    """Embedded isomorphism up to local-orientation switches.

    With ``edge_map`` given, only isomorphisms sending edge ``e`` of ``G`` to
    ``edge_map[e]`` of ``H`` are considered.  Without it, any edge bijection is
    allowed (tried from the first edge of each component).
    """
    if len(G.edges) != len(H.edges) or len(G.rotation) != len(H.rotation):
        return False
    isolated_g = sum(1 for v in G.rotation.values() if not v)
    isolated_h = sum(1 for v in H.rotation.values() if not v)
    if isolated_g != isolated_h:
        return False
    if edge_map is not None and sorted(edge_map.values()) != sorted(H.edges):
        return False

    used = set()
    for comp in _flag_components(G):
        f0 = min(comp)
        e0 = G.edge_of[f0[0]]
        if edge_map is not None:
            targets = [edge_map[e0]]
        else:
            targets = [e for e in H.edge_ids if e not in {H.edge_of[x[0]] for x in used}]
        found = None
        for te in targets:
            ta, tb, _ = H.edges[te]
            for cand in ((ta, 1), (ta, -1), (tb, 1), (tb, -1)):
                if cand in used:
                    continue
                phi = _extend_flag_map(G, H, f0, cand, edge_map, used)
                if phi is not None:
                    found = phi
                    break
            if found is not None:
                break
        if found is None:
            return False
        used.update(found.values())
    return True


def _extend_flag_map(G, H, f0, g0, edge_map, used):
    phi = {f0: g0}
    image = {g0}
    queue = deque([f0])
    edge_img = {}
    while queue:
        f = queue.popleft()
        g = phi[f]
        ef, eg = G.edge_of[f[0]], H.edge_of[g[0]]
        if edge_map is not None and edge_map[ef] != eg:
            return None
        if edge_img.setdefault(ef, eg) != eg:
            return None
        for tg, th in ((G.tau0, H.tau0), (G.tau1, H.tau1), (G.tau2, H.tau2)):
            nf, ng = tg(f), th(g)
            if nf in phi:
                if phi[nf] != ng:
                    return None
            else:
                if ng in image or ng in used:
                    return None
                phi[nf] = ng
                image.add(ng)
                queue.append(nf)
    return phi


def relabel(G: EmbeddedGraph, vertex_map=None, edge_map=None, dart_map=None) -> EmbeddedGraph:
    """Rename vertices, edges and darts without changing the embedding."""
    vm = vertex_map or {}
    em = edge_map or {}
    dm = dart_map or {}
    rotation = {vm.get(v, v): tuple(dm.get(d, d) for d in ds) for v, ds in G.rotation.items()}
    edges = {em.get(e, e): (dm.get(a, a), dm.get(b, b), s) for e, (a, b, s) in G.edges.items()}
    return EmbeddedGraph(rotation, edges)


def from_rotation(rotation: Mapping, edges: Mapping) -> EmbeddedGraph:
    """Build from plain dicts, normalising containers to tuples."""
    return EmbeddedGraph(
        {v: tuple(ds) for v, ds in rotation.items()},
        {e: (a, b, int(s)) for e, (a, b, s) in edges.items()},
    )
