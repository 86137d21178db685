"""Text and JSON formats for embedded graphs, hypergraphs and branch trees.

``.emb`` (one record per line, ``#`` starts a comment)::

    v 0: 0 2 5        vertex 0, darts in rotation order
    e 0: 0 1 +        edge 0 with darts 0 and 1, sign + or -

``.hemb`` is an ``.emb`` file of the incidence graph plus ``h <vid>`` lines
marking hyperedge centres.  Emission is canonical: vertices and edges in id
order, so ``emit`` output can be hashed.
"""

from __future__ import annotations

import hashlib
import json

from .embedding import EmbeddedGraph
from .errors import EmbeddingError, FormatError


def emit_emb(G: EmbeddedGraph, header: str | None = None) -> str:
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    for v in sorted(G.rotation):
        darts = " ".join(str(d) for d in G.rotation[v])
        lines.append(f"v {v}:" + (f" {darts}" if darts else ""))
    for e in sorted(G.edges):
        a, b, s = G.edges[e]
        lines.append(f"e {e}: {a} {b} {'+' if s == 1 else '-'}")
    return "\n".join(lines) + "\n"


def _parse_records(text: str):
    rotation, edges, centers = {}, {}, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kind, _, rest = line.partition(" ")
        try:
            if kind == "v":
                head, _, darts = rest.partition(":")
                v = int(head)
                if v in rotation:
                    raise FormatError(f"line {lineno}: vertex {v} listed twice")
                rotation[v] = tuple(int(x) for x in darts.split())
            elif kind == "e":
                head, _, body = rest.partition(":")
                e = int(head)
                a, b, s = body.split()
                if s not in "+-" or len(s) != 1:
                    raise FormatError(f"line {lineno}: sign must be + or -")
                if e in edges:
                    raise FormatError(f"line {lineno}: edge {e} listed twice")
                edges[e] = (int(a), int(b), 1 if s == "+" else -1)
            elif kind == "h":
                centers.append(int(rest))
            else:
                raise FormatError(f"line {lineno}: unknown record {kind!r}")
        except ValueError as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"line {lineno}: {exc}") from exc
    return rotation, edges, centers


def _build(rotation, edges) -> EmbeddedGraph:
    try:
        return EmbeddedGraph(rotation, edges)
    except EmbeddingError as exc:
        raise FormatError(str(exc)) from exc


def parse_emb(text: str) -> EmbeddedGraph:
    rotation, edges, centers = _parse_records(text)
    if centers:
        raise FormatError("'h' records belong in .hemb files")
    return _build(rotation, edges)


def emit_hemb(H, header: str | None = None) -> str:
    body = emit_emb(H.incidence, header)
    return body + "".join(f"h {c}\n" for c in sorted(H.centers))


def parse_hemb(text: str):
    from .hypergraph import EmbeddedHypergraph

    rotation, edges, centers = _parse_records(text)
    return EmbeddedHypergraph(_build(rotation, edges), frozenset(centers))


# -- JSON ------------------------------------------------------------------


def graph_to_json(G: EmbeddedGraph) -> dict:
    return {
        "rotation": {str(v): list(G.rotation[v]) for v in sorted(G.rotation)},
        "edges": {str(e): list(G.edges[e]) for e in sorted(G.edges)},
    }


def graph_from_json(data: dict) -> EmbeddedGraph:
    try:
        rotation = {int(v): tuple(int(d) for d in ds) for v, ds in data["rotation"].items()}
        edges = {int(e): (int(a), int(b), int(s)) for e, (a, b, s) in data["edges"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed graph JSON: {exc}") from exc
    return _build(rotation, edges)


def hypergraph_to_json(H) -> dict:
    out = graph_to_json(H.incidence)
    out["centers"] = sorted(H.centers)
    return out


def hypergraph_from_json(data: dict):
    from .hypergraph import EmbeddedHypergraph

    if "centers" not in data:
        raise FormatError("hypergraph JSON needs a 'centers' list")
    return EmbeddedHypergraph(graph_from_json(data), frozenset(int(c) for c in data["centers"]))


def to_json(obj) -> dict:
    if hasattr(obj, "centers"):
        return hypergraph_to_json(obj)
    return graph_to_json(obj)


def from_json(data: dict):
    return hypergraph_from_json(data) if "centers" in data else graph_from_json(data)


def dumps(obj) -> str:
    return json.dumps(to_json(obj), sort_keys=True)


def digest(obj) -> str:
    """Short stable hash of an instance's canonical JSON."""
    return hashlib.sha256(dumps(obj).encode()).hexdigest()[:16]


def read_instance(path):
    """Load ``.emb``, ``.hemb`` or ``.json`` by extension."""
    path = str(path)
    with open(path) as fh:
        text = fh.read()
    if path.endswith(".hemb"):
        return parse_hemb(text)
    if path.endswith(".json"):
        try:
            return from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc}") from exc
    return parse_emb(text)


def emit(obj, fmt: str = "emb", header: str | None = None) -> str:
    if fmt == "json":
        return json.dumps(to_json(obj), indent=1, sort_keys=True) + "\n"
    if hasattr(obj, "centers"):
        return emit_hemb(obj, header)
    return emit_emb(obj, header)
