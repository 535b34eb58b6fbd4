"""JSON graph files.

Layout::

    {"vertices": [{"id": "x1", "mu": 3.0, "h": 1.5}, ...],
     "edges":    [{"u": "x1", "v": "x3", "w": 1.0}, ...]}

``h`` is optional but must then appear on every vertex.  Each edge is listed
once; the loader symmetrizes.
"""

import json
from pathlib import Path

from . import errors
from .graph import build_graph


def _field(obj, key, where, kind):
    if not isinstance(obj, dict) or key not in obj:
        raise errors.GraphFileError(f"{where}: missing field {key!r}")
    val = obj[key]
    if kind is float:
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            raise errors.GraphFileError(f"{where}.{key}: expected a number, got {val!r}")
        return float(val)
    if not isinstance(val, str):
        raise errors.GraphFileError(f"{where}.{key}: expected a string, got {val!r}")
    return val


def graph_from_dict(doc):
    """Build a graph from an already-parsed document."""
    if not isinstance(doc, dict):
        raise errors.GraphFileError("top level must be an object")
    verts = doc.get("vertices")
    if not isinstance(verts, list) or not verts:
        raise errors.GraphFileError("vertices: must be a non-empty list")
    edges_doc = doc.get("edges", [])
    if not isinstance(edges_doc, list):
        raise errors.GraphFileError("edges: must be a list")

    vertices, hs = [], []
    for k, item in enumerate(verts):
        where = f"vertices[{k}]"
        vertices.append((_field(item, "id", where, str), _field(item, "mu", where, float)))
        hs.append(_field(item, "h", where, float) if "h" in item else None)
    if any(h is not None for h in hs) and any(h is None for h in hs):
        raise errors.GraphFileError(f"vertices[{hs.index(None)}]: missing field 'h' "
                                    "(given on other vertices)")
    potential = None if hs[0] is None else hs

    edges = []
    for k, item in enumerate(edges_doc):
        where = f"edges[{k}]"
        edges.append((_field(item, "u", where, str), _field(item, "v", where, str),
                      _field(item, "w", where, float)))

    try:
        build_graph(vertices, (), potential)
    except errors.ValidationError as exc:
        for k in range(len(vertices)):
            try:
                build_graph(vertices[: k + 1])
            except errors.ValidationError:
                raise type(exc)(f"vertices[{k}]: {exc}") from None
        raise type(exc)(f"vertices: {exc}") from None
    try:
        return build_graph(vertices, edges, potential)
    except errors.ValidationError as exc:
        for k in range(len(edges)):
            try:
                build_graph(vertices, edges[: k + 1])
            except errors.ValidationError:
                raise type(exc)(f"edges[{k}]: {exc}") from None
        raise


def graph_to_dict(g):
    verts = []
    for k, vid in enumerate(g.vertices):
        item = {"id": vid, "mu": float(g.mu[k])}
        if g.potential is not None:
            item["h"] = float(g.potential[k])
        verts.append(item)
    edges = [{"u": g.vertices[i], "v": g.vertices[j], "w": w} for i, j, w in g.edges]
    return {"vertices": verts, "edges": edges}


def load_graph(path):
    """Read a graph file; errors name the line (syntax) or field (content)."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise errors.FileIO(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise errors.GraphFileError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return graph_from_dict(doc)


def save_graph(g, path):
    path = Path(path)
    try:
        path.write_text(json.dumps(graph_to_dict(g), indent=1) + "\n")
    except OSError as exc:
        raise errors.FileIO(f"cannot write {path}: {exc}") from exc
