"""The GKM graph data model: labeled multigraphs with sign-class weights,
validation of the k-independence conditions, and two-dimensional face
extraction.

A GKM graph has one vertex per torus fixed point and one edge per invariant
two-sphere, labeled by the isotropy weight of the sphere (a sign class).
Non-orientable strata (real projective planes in the one-skeleton) are
recorded as star edges attached to a single vertex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Iterable, Sequence

from .lattice import WeightClass, canonicalize, in_span2, is_k_independent


class GraphStructureError(ValueError):
    """Malformed graph data: loops, bad ranks, duplicate edges, ..."""


class FaceError(ValueError):
    """Face extraction requested on a graph without 3-independence."""


@dataclass(frozen=True, order=True)
class Edge:
    """An edge of the multigraph; ``index`` distinguishes parallel edges."""

    u: str
    v: str
    weight: WeightClass | None
    index: int = 0

    def endpoints(self) -> frozenset[str]:
        return frozenset((self.u, self.v))

    def other(self, vertex: str) -> str:
        return self.v if vertex == self.u else self.u

    def key(self) -> tuple[str, str, int]:
        return (self.u, self.v, self.index)


@dataclass(frozen=True, order=True)
class StarEdge:
    """Marker for a real-projective-plane stratum at a vertex."""

    v: str
    weight: WeightClass


@dataclass(frozen=True)
class GKMGraph:
    rank: int
    half_dim: int
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    orientable: bool = True
    star_edges: tuple[StarEdge, ...] = ()
    scale: int = 1

    def __post_init__(self):
        if self.rank < 1:
            raise GraphStructureError(f"rank must be >= 1, got {self.rank}")
        if self.half_dim < 0:
            raise GraphStructureError(f"half_dim must be >= 0, got {self.half_dim}")
        if self.scale < 1:
            raise GraphStructureError(f"scale must be >= 1, got {self.scale}")
        if not self.vertices:
            raise GraphStructureError("graph needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphStructureError("duplicate vertex ids")
        vset = set(self.vertices)
        labels = {e.weight is None for e in self.edges}
        if labels == {True, False}:
            raise GraphStructureError("either all edges carry weights or none do")
        seen = set()
        for e in self.edges:
            if e.u not in vset or e.v not in vset:
                raise GraphStructureError(f"edge {e.key()} references unknown vertex")
            if e.u == e.v:
                raise GraphStructureError(f"loop edge at vertex {e.u!r}")
            if e.weight is not None and len(e.weight.rep) != self.rank:
                raise GraphStructureError(
                    f"edge {e.key()} weight {e.weight} does not have rank {self.rank}"
                )
            k = (frozenset((e.u, e.v)), e.index)
            if k in seen:
                raise GraphStructureError(f"duplicate edge {e.key()}")
            seen.add(k)
        for s in self.star_edges:
            if s.v not in vset:
                raise GraphStructureError(f"star edge at unknown vertex {s.v!r}")
            if len(s.weight.rep) != self.rank:
                raise GraphStructureError(
                    f"star edge at {s.v!r} weight does not have rank {self.rank}"
                )
        if self.star_edges and self.orientable:
            raise GraphStructureError("graphs with star edges must be non-orientable")
        # Canonical edge order: by endpoint positions, then multiplicity index.
        pos = {v: i for i, v in enumerate(self.vertices)}
        normalized = []
        for e in self.edges:
            if pos[e.u] > pos[e.v]:
                e = Edge(e.v, e.u, e.weight, e.index)
            normalized.append(e)
        normalized.sort(key=lambda e: (pos[e.u], pos[e.v], e.index))
        object.__setattr__(self, "edges", tuple(normalized))
        stars = sorted(self.star_edges, key=lambda s: (pos[s.v], s.weight))
        object.__setattr__(self, "star_edges", tuple(stars))

    # -- basic queries -------------------------------------------------

    @property
    def labeled(self) -> bool:
        return all(e.weight is not None for e in self.edges)

    def vertex_index(self, v: str) -> int:
        return self.vertices.index(v)

    def incident_edges(self, v: str) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if v in (e.u, e.v))

    def incident_star_edges(self, v: str) -> tuple[StarEdge, ...]:
        return tuple(s for s in self.star_edges if s.v == v)

    def degree(self, v: str, count_star_edges: bool = True) -> int:
        d = len(self.incident_edges(v))
        if count_star_edges:
            d += len(self.incident_star_edges(v))
        return d

    def weights_at(self, v: str, count_star_edges: bool = True) -> tuple[WeightClass, ...]:
        ws = [e.weight for e in self.incident_edges(v)]
        if any(w is None for w in ws):
            raise GraphStructureError("graph is unlabeled")
        if count_star_edges:
            ws += [s.weight for s in self.incident_star_edges(v)]
        return tuple(ws)

    def bundle(self, u: str, v: str) -> tuple[Edge, ...]:
        """All parallel edges between two vertices."""
        pair = frozenset((u, v))
        return tuple(e for e in self.edges if e.endpoints() == pair)

    def bundles(self) -> dict[frozenset[str], tuple[Edge, ...]]:
        out: dict[frozenset[str], list[Edge]] = {}
        for e in self.edges:
            out.setdefault(e.endpoints(), []).append(e)
        return {k: tuple(v) for k, v in out.items()}

    def relabel(self, mapping: dict[str, str], order: Sequence[str] | None = None) -> "GKMGraph":
        """Rename vertices; ``order`` gives the new vertex order (new names)."""
        verts = tuple(order) if order else tuple(mapping[v] for v in self.vertices)
        return replace(
            self,
            vertices=verts,
            edges=tuple(
                Edge(mapping[e.u], mapping[e.v], e.weight, e.index) for e in self.edges
            ),
            star_edges=tuple(
                StarEdge(mapping[s.v], s.weight) for s in self.star_edges
            ),
        )


def euler_characteristic(g: GKMGraph) -> int:
    """Number of fixed points = total Betti number of a formal action."""
    return len(g.vertices)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    k: int
    per_vertex: dict[str, bool] = field(default_factory=dict)
    problems: tuple[str, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok,
            "k": self.k,
            "per_vertex": dict(self.per_vertex),
            "problems": list(self.problems),
        }


def validate(g: GKMGraph, k: int = 2, count_star_edges: bool = True) -> ValidationReport:
    """Check degree regularity and k-independence of the weights per vertex."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    problems: list[str] = []
    if not g.labeled:
        return ValidationReport(False, k, {}, ("graph is unlabeled",))
    per_vertex: dict[str, bool] = {}
    for v in g.vertices:
        d = g.degree(v, count_star_edges)
        if d != g.half_dim:
            problems.append(
                f"vertex {v!r} has degree {d}, expected half_dim {g.half_dim}"
            )
        ws = g.weights_at(v, count_star_edges)
        per_vertex[v] = is_k_independent(ws, k)
    ok = not problems and all(per_vertex.values())
    return ValidationReport(ok, k, per_vertex, tuple(problems))


@lru_cache(maxsize=None)
def _is_gkm3(g: GKMGraph) -> bool:
    return validate(g, 3).ok


def require_gkm3(g: GKMGraph) -> None:
    if not _is_gkm3(g):
        raise FaceError("faces require 3-independence")


@dataclass(frozen=True)
class Face:
    """A two-dimensional face: the maximal connected subgraph whose edge
    weights lie in a fixed 2-plane."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    plane: tuple[WeightClass, WeightClass]

    def num_vertices(self) -> int:
        return len(self.vertices)

    def is_biangle(self) -> bool:
        return len(self.vertices) == 2

    def is_triangle(self) -> bool:
        return len(self.vertices) == 3


def _face_plane(g: GKMGraph, edges: Iterable[Edge]) -> tuple[WeightClass, WeightClass]:
    ws = sorted({e.weight for e in edges})
    first = ws[0]
    for w in ws[1:]:
        if is_k_independent([first, w], 2):
            return (first, w)
    raise FaceError("face edges do not span a 2-plane")


def face_of(g: GKMGraph, v: str, e1: Edge, e2: Edge) -> Face:
    """The unique face containing two distinct edges at a common vertex.

    Computed as the span closure: keep adding edges at reached vertices
    whose weights lie in the plane of (e1, e2).  Under 3-independence at
    most two edges per vertex qualify, which makes the closure the face.
    """
    require_gkm3(g)
    if e1 == e2:
        raise ValueError("need two distinct edges")
    for e in (e1, e2):
        if v not in (e.u, e.v):
            raise ValueError(f"edge {e.key()} is not incident to {v!r}")
    a, b = e1.weight, e2.weight
    edges = {e1, e2}
    verts = {e1.u, e1.v, e2.u, e2.v}
    changed = True
    while changed:
        changed = False
        for u in list(verts):
            for f in g.incident_edges(u):
                if f in edges:
                    continue
                if in_span2(f.weight, a, b):
                    edges.add(f)
                    verts.add(f.u)
                    verts.add(f.v)
                    changed = True
    vorder = tuple(w for w in g.vertices if w in verts)
    pos = {w: i for i, w in enumerate(g.vertices)}
    eorder = tuple(sorted(edges, key=lambda e: (pos[e.u], pos[e.v], e.index)))
    return Face(vorder, eorder, _face_plane(g, eorder))


def all_faces(g: GKMGraph) -> list[Face]:
    """All distinct two-dimensional faces, each incident edge pair covered
    exactly once."""
    require_gkm3(g)
    faces: dict[frozenset, Face] = {}
    for v in g.vertices:
        inc = g.incident_edges(v)
        for e1, e2 in itertools.combinations(inc, 2):
            f = face_of(g, v, e1, e2)
            faces.setdefault(frozenset(f.edges), f)
    pos = {w: i for i, w in enumerate(g.vertices)}
    return sorted(
        faces.values(),
        key=lambda f: ([pos[v] for v in f.vertices], [e.key() for e in f.edges]),
    )


# -- JSON interchange ----------------------------------------------------


def to_json_dict(g: GKMGraph) -> dict:
    edges = []
    for e in g.edges:
        d: dict = {"u": e.u, "v": e.v, "index": e.index}
        if e.weight is not None:
            d["weight"] = list(e.weight.rep)
        edges.append(d)
    return {
        "rank": g.rank,
        "half_dim": g.half_dim,
        "orientable": g.orientable,
        "scale": g.scale,
        "vertices": list(g.vertices),
        "edges": edges,
        "star_edges": [
            {"v": s.v, "weight": list(s.weight.rep)} for s in g.star_edges
        ],
    }


def from_json_dict(data: dict) -> GKMGraph:
    def fail(path: str, msg: str):
        raise GraphStructureError(f"{path}: {msg}")

    if not isinstance(data, dict):
        fail("$", "expected a JSON object")
    for key in ("rank", "half_dim", "vertices", "edges"):
        if key not in data:
            fail("$", f"missing required key {key!r}")
    rank = data["rank"]
    if not isinstance(rank, int):
        fail("rank", "expected an integer")
    verts = data["vertices"]
    if not isinstance(verts, list) or not all(isinstance(v, str) for v in verts):
        fail("vertices", "expected a list of strings")
    edges = []
    for i, ed in enumerate(data["edges"]):
        if not isinstance(ed, dict):
            fail(f"edges[{i}]", "expected an object")
        for key in ("u", "v"):
            if key not in ed:
                fail(f"edges[{i}]", f"missing key {key!r}")
        weight = None
        if "weight" in ed and ed["weight"] is not None:
            w = ed["weight"]
            if not isinstance(w, list) or not all(isinstance(x, int) for x in w):
                fail(f"edges[{i}].weight", "expected a list of integers")
            if len(w) != rank:
                fail(
                    f"edges[{i}].weight",
                    f"expected {rank} entries, got {len(w)}",
                )
            if not any(w):
                fail(f"edges[{i}].weight", "weight must be nonzero")
            weight = canonicalize(w)
        edges.append(Edge(ed["u"], ed["v"], weight, ed.get("index", 0)))
    stars = []
    for i, sd in enumerate(data.get("star_edges", [])):
        w = sd.get("weight")
        if not isinstance(w, list) or not all(isinstance(x, int) for x in w):
            fail(f"star_edges[{i}].weight", "expected a list of integers")
        if len(w) != rank:
            fail(
                f"star_edges[{i}].weight",
                f"expected {rank} entries, got {len(w)}",
            )
        stars.append(StarEdge(sd["v"], canonicalize(w)))
    return GKMGraph(
        rank=rank,
        half_dim=data["half_dim"],
        vertices=tuple(verts),
        edges=tuple(edges),
        orientable=data.get("orientable", True),
        star_edges=tuple(stars),
        scale=data.get("scale", 1),
    )


def to_dot(g: GKMGraph) -> str:
    """Deterministic DOT rendering; parallel edges drawn separately."""
    lines = ["graph gkm {"]
    bipart = _bipartition(g)
    if bipart and all(len(side) >= 2 for side in bipart):
        for side in bipart:
            lines.append("  { rank=same; " + "; ".join(f'"{v}"' for v in side) + "; }")
    for v in g.vertices:
        lines.append(f'  "{v}";')
    for e in g.edges:
        label = "" if e.weight is None else f' [label="{list(e.weight.rep)}"]'
        lines.append(f'  "{e.u}" -- "{e.v}"{label};')
    for s in g.star_edges:
        lines.append(
            f'  "{s.v}" -- "{s.v}__star" [label="{list(s.weight.rep)}", style=dashed];'
        )
        lines.append(f'  "{s.v}__star" [shape=star, label=""];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _bipartition(g: GKMGraph) -> tuple[list[str], list[str]] | None:
    color: dict[str, int] = {}
    for start in g.vertices:
        if start in color:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            u = queue.pop()
            for e in g.incident_edges(u):
                w = e.other(u)
                if w not in color:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    side0 = [v for v in g.vertices if color.get(v) == 0]
    side1 = [v for v in g.vertices if color.get(v) == 1]
    return side0, side1
