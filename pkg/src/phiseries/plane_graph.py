"""Plane graphs encoded by their face cycles.

A plane graph is given by its vertex list, the cyclic vertex sequence of
every bounded face, the cyclic boundary walk of the unbounded face and a
root vertex on that walk.  Edges are implied: consecutive vertices of each
cycle (cyclically) are adjacent, and every edge is traversed exactly twice
over all cycles.  Orientation of the cycles is not semantically relevant.

The graph ``P_2`` (a single edge) is represented with the outer walk
``[v1, v2]``, which traverses its edge in both directions.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from typing import Iterable, Mapping, Sequence

import networkx as nx

__all__ = [
    "GraphError",
    "EulerViolation",
    "EdgeIncidenceError",
    "RootNotOnOuterFace",
    "NonSimple",
    "Disconnected",
    "BadArity",
    "EdgeNotOnOuterFace",
    "UnknownGraph",
    "ParityError",
    "PlaneGraph",
    "GraphStats",
    "validate",
    "polygon",
    "edge_connect",
    "reduce",
    "split_bridges",
    "blocks",
    "stats",
    "theorem1_prefix",
    "canonical_code",
    "catalog",
    "catalog_names",
]


class GraphError(ValueError):
    """Base class for malformed or unsupported graph descriptions."""


class EulerViolation(GraphError):
    pass


class EdgeIncidenceError(GraphError):
    pass


class RootNotOnOuterFace(GraphError):
    pass


class NonSimple(GraphError):
    pass


class Disconnected(GraphError):
    pass


class BadArity(GraphError):
    pass


class EdgeNotOnOuterFace(GraphError):
    pass


class UnknownGraph(KeyError):
    pass


class ParityError(ArithmeticError):
    pass


def _edge(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u <= v else (v, u)


def _cycle_pairs(cycle: Sequence[str]) -> Iterable[tuple[str, str]]:
    n = len(cycle)
    if n < 2:
        return
    for i in range(n):
        yield cycle[i], cycle[(i + 1) % n]


@dataclass(frozen=True)
class PlaneGraph:
    """A validated plane graph.  Build instances through :func:`validate`."""

    name: str
    vertices: tuple[str, ...]
    root: str
    outer_face: tuple[str, ...]
    bounded_faces: tuple[tuple[str, ...], ...]

    @cached_property
    def edges(self) -> tuple[tuple[str, str], ...]:
        seen = {_edge(u, v) for cyc in self.cycles for u, v in _cycle_pairs(cyc)}
        return tuple(sorted(seen))

    @property
    def cycles(self) -> tuple[tuple[str, ...], ...]:
        return self.bounded_faces + (self.outer_face,)

    @cached_property
    def outer_vertices(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(self.outer_face))

    @cached_property
    def outer_edges(self) -> tuple[tuple[str, str], ...]:
        """Edges traversed by the outer walk, each listed once per traversal."""
        return tuple(_edge(u, v) for u, v in _cycle_pairs(self.outer_face))

    @cached_property
    def nx_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "vertices": list(self.vertices),
            "root": self.root,
            "outer_face": list(self.outer_face),
            "bounded_faces": [list(f) for f in self.bounded_faces],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def with_root(self, root: str) -> "PlaneGraph":
        return validate({**self.to_dict(), "root": root})

    def renamed(self, name: str) -> "PlaneGraph":
        return PlaneGraph(name, self.vertices, self.root, self.outer_face, self.bounded_faces)


@dataclass(frozen=True)
class GraphStats:
    c1: int  # vertices
    c2: int  # edges
    c3: int  # 3-cycles of the abstract graph (not triangular faces)


# -- validation -------------------------------------------------------------


def _as_raw(raw) -> dict:
    if isinstance(raw, PlaneGraph):
        return raw.to_dict()
    if isinstance(raw, str):
        return json.loads(raw)
    return dict(raw)


def _parse(raw) -> tuple[str, list[str], str, list[str], list[list[str]]]:
    d = _as_raw(raw)
    try:
        name = str(d.get("name", ""))
        vertices = [str(v) for v in d["vertices"]]
        outer = [str(v) for v in d["outer_face"]]
        faces = [[str(v) for v in f] for f in d["bounded_faces"]]
        root = str(d["root"]) if d.get("root") is not None else (outer[0] if outer else "")
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed graph description: {exc}") from exc
    return name, vertices, root, outer, faces


def validate(raw) -> PlaneGraph:
    """Check a graph description and return a :class:`PlaneGraph`.

    ``raw`` is a mapping in the JSON graph format, a JSON string, or an
    existing :class:`PlaneGraph`.
    """
    name, vertices, root, outer, faces = _parse(raw)
    if len(set(vertices)) != len(vertices):
        raise GraphError("duplicate vertex ids")
    vset = set(vertices)
    if not outer:
        raise GraphError("outer face is empty")
    for cyc in faces + [outer]:
        unknown = set(cyc) - vset
        if unknown:
            raise GraphError(f"face mentions unknown vertices {sorted(unknown)}")
    if root not in outer:
        raise RootNotOnOuterFace(f"root {root!r} is not on the outer face")

    for f in faces:
        if len(f) < 3 or len(set(f)) != len(f):
            raise NonSimple(f"bounded face {f} is not a simple cycle of length >= 3")
    for cyc in faces + [outer]:
        for u, v in _cycle_pairs(cyc):
            if u == v:
                raise NonSimple(f"loop at {u!r}")

    counts: Counter = Counter()
    for cyc in faces + [outer]:
        if len(cyc) == 1:
            continue
        for u, v in _cycle_pairs(cyc):
            counts[_edge(u, v)] += 1
    for e, k in counts.items():
        if k == 2:
            continue
        if k % 2 == 0:
            raise NonSimple(f"edge {e} has multiplicity {k // 2}")
        raise EdgeIncidenceError(f"edge {e} is traversed {k} times (expected 2)")

    n_edges = len(counts)
    if len(vertices) - n_edges + len(faces) + 1 != 2:
        raise EulerViolation(
            f"V - E + F = {len(vertices)} - {n_edges} + {len(faces) + 1} != 2"
        )

    g = nx.Graph()
    g.add_nodes_from(vertices)
    g.add_edges_from(counts)
    if not nx.is_connected(g):
        raise Disconnected("graph is not connected")

    return PlaneGraph(name, tuple(vertices), root, tuple(outer), tuple(tuple(f) for f in faces))


# -- constructors -----------------------------------------------------------


def polygon(r: int) -> PlaneGraph:
    """The polygon P_r; for r = 2 the single-edge graph."""
    if r < 2:
        raise BadArity(f"polygon needs r >= 2, got {r}")
    vs = [f"v{i}" for i in range(1, r + 1)]
    if r == 2:
        return validate({"name": "P2", "vertices": vs, "root": "v1",
                         "outer_face": vs, "bounded_faces": []})
    return validate({"name": f"P{r}", "vertices": vs, "root": "v1",
                     "outer_face": vs[::-1], "bounded_faces": [vs]})


def _outer_walk_from(outer: Sequence[str], start: str, end: str) -> list[str]:
    """Rotate/reflect the outer walk so it runs start -> ... -> end and closes
    with the edge end -> start."""
    n = len(outer)
    for seq in (list(outer), list(reversed(outer))):
        for i in range(n):
            if seq[i] == end and seq[(i + 1) % n] == start:
                j = (i + 1) % n
                return seq[j:] + seq[:j]
    raise EdgeNotOnOuterFace(f"edge ({start}, {end}) is not on the outer face")


def edge_connect(g1: PlaneGraph, e1: Sequence[str], g2: PlaneGraph, e2: Sequence[str],
                 name: str | None = None) -> PlaneGraph:
    """Edge connected sum G1 . G2, identifying e1 = (x1, y1) with e2 = (x2, y2).

    Endpoints are identified pairwise (x1 ~ x2, y1 ~ y2); the other vertices
    of ``g2`` are renamed if they clash with ids of ``g1``.
    """
    x1, y1 = e1
    x2, y2 = e2
    seq1 = _outer_walk_from(g1.outer_face, y1, x1)
    seq2 = _outer_walk_from(g2.outer_face, x2, y2)

    used = set(g1.vertices)
    rename = {x2: x1, y2: y1}
    for v in g2.vertices:
        if v in rename:
            continue
        new = v
        while new in used:
            new = new + "'"
        used.add(new)
        rename[v] = new

    outer = seq1 + [rename[v] for v in seq2[1:-1]]
    vertices = list(g1.vertices) + [rename[v] for v in g2.vertices if v not in (x2, y2)]
    faces = [list(f) for f in g1.bounded_faces] + [[rename[v] for v in f] for f in g2.bounded_faces]
    return validate({
        "name": name or f"{g1.name}.{g2.name}",
        "vertices": vertices,
        "root": g1.root,
        "outer_face": outer,
        "bounded_faces": faces,
    })


# -- reductions -------------------------------------------------------------


def _collapse_cyclic(seq: list[str]) -> list[str]:
    out: list[str] = []
    for v in seq:
        if not out or out[-1] != v:
            out.append(v)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def reduce(raw) -> PlaneGraph:
    """Remove loops and collapse parallel edges (Phi is unchanged).

    Supported non-simple features are the ones that bound faces of their
    own: empty loop faces ``[v]``, loop traversals ``v, v`` inside a cycle,
    and bigon faces ``[u, v]`` between parallel copies of an edge.
    """
    name, vertices, root, outer, faces = _parse(raw)
    kept = []
    for f in faces:
        f = _collapse_cyclic(f)
        if len(f) <= 2:
            continue  # empty loop face, or bigon between parallel edges
        kept.append(f)
    outer = _collapse_cyclic(outer)
    g = validate({"name": name, "vertices": vertices, "root": root,
                  "outer_face": outer or [root], "bounded_faces": kept})
    return g


def _restrict_walk(outer: Sequence[str], keep: set) -> list[str]:
    return _collapse_cyclic([v for v in outer if v in keep])


def _subgraph(g: PlaneGraph, vset: set, name: str) -> PlaneGraph:
    faces = [list(f) for f in g.bounded_faces if set(f) <= vset]
    outer = _restrict_walk(g.outer_face, vset)
    root = g.root if g.root in vset else outer[0]
    vertices = [v for v in g.vertices if v in vset]
    return validate({"name": name, "vertices": vertices, "root": root,
                     "outer_face": outer, "bounded_faces": faces})


def split_bridges(g: PlaneGraph) -> list[PlaneGraph]:
    """Cut every bridge and return the 2-edge-connected pieces.

    A tree has no such pieces; it is returned as one ``P_2`` per edge.
    """
    G = g.nx_graph
    bridges = list(nx.bridges(G))
    if not bridges:
        return [g]
    H = G.copy()
    H.remove_edges_from(bridges)
    pieces = []
    for comp in sorted(nx.connected_components(H), key=lambda c: min(g.vertices.index(v) for v in c)):
        if len(comp) < 2:
            continue
        pieces.append(_subgraph(g, set(comp), f"{g.name}#{len(pieces)}"))
    if not pieces:
        pieces = [_subgraph(g, set(e), f"{g.name}#{i}") for i, e in enumerate(bridges)]
    return pieces


def blocks(g: PlaneGraph) -> list[PlaneGraph]:
    """Biconnected components (bridges come out as ``P_2`` pieces)."""
    G = g.nx_graph
    if G.number_of_edges() == 0:
        return [g]
    comps = list(nx.biconnected_components(G))
    if len(comps) == 1:
        return [g]
    comps.sort(key=lambda c: min(g.vertices.index(v) for v in c))
    return [_subgraph(g, set(c), f"{g.name}#{i}") for i, c in enumerate(comps)]


# -- statistics -------------------------------------------------------------


def stats(g: PlaneGraph) -> GraphStats:
    adj = {v: set() for v in g.vertices}
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    c3 = sum(
        1
        for a, b, c in itertools.combinations(g.vertices, 3)
        if b in adj[a] and c in adj[a] and c in adj[b]
    )
    return GraphStats(len(g.vertices), len(g.edges), c3)


def theorem1_prefix(g: PlaneGraph) -> tuple[int, int, int]:
    """Closed-form coefficients of q^0, q^1, q^2 of Phi_G for a simple graph."""
    s = stats(g)
    d = s.c1 - s.c2
    twice = d * d - 2 * s.c3 - s.c1 + s.c2
    if twice % 2:
        raise ParityError(f"non-integral q^2 coefficient for {g.name}: {twice}/2")
    return 1, d - 1, twice // 2


# -- canonical form ---------------------------------------------------------


def _oriented_cycles(g: PlaneGraph) -> list[list[str]]:
    """Flip face cycles so every edge is traversed once in each direction."""
    cycles = [list(c) for c in g.cycles]
    where = defaultdict(list)  # undirected edge -> [(cycle index, directed)]
    for i, cyc in enumerate(cycles):
        for u, v in _cycle_pairs(cyc):
            where[_edge(u, v)].append(i)
    flipped = [None] * len(cycles)
    for start in range(len(cycles)):
        if flipped[start] is not None:
            continue
        flipped[start] = False
        todo = deque([start])
        while todo:
            i = todo.popleft()
            cyc = cycles[i][::-1] if flipped[i] else cycles[i]
            for u, v in _cycle_pairs(cyc):
                for j in where[_edge(u, v)]:
                    if j == i or flipped[j] is not None:
                        continue
                    # j must traverse (v, u)
                    pairs = set(_cycle_pairs(cycles[j]))
                    flipped[j] = (v, u) not in pairs
                    todo.append(j)
    return [c[::-1] if f else c for c, f in zip(cycles, flipped)]


def canonical_code(g: PlaneGraph) -> str:
    """Presentation-independent code of the plane map (root ignored).

    Minimum over all starting darts and both orientations of a
    breadth-first relabeling driven by the rotation system.
    """
    cycles = _oriented_cycles(g)
    n_outer = len(cycles) - 1
    if len(g.vertices) == 1:
        return "V1"
    best = None
    for orient in (False, True):
        cyc = [c[::-1] for c in cycles] if orient else cycles
        # face successor of each dart, and which cycle holds each dart
        nxt: dict = {}
        owner: dict = {}
        for i, c in enumerate(cyc):
            pairs = list(_cycle_pairs(c))
            for k, d in enumerate(pairs):
                nxt[d] = pairs[(k + 1) % len(pairs)]
                owner[d] = i
        darts = list(nxt)

        def rot(d):
            return nxt[(d[1], d[0])]

        for d0 in darts:
            label = {d0[0]: 0}
            first = {d0[0]: d0}
            order = [d0[0]]
            k = 0
            while k < len(order):
                v = order[k]
                d = first[v]
                while True:
                    w = d[1]
                    if w not in label:
                        label[w] = len(label)
                        first[w] = (w, v)
                        order.append(w)
                    d = rot(d)
                    if d == first[v]:
                        break
                k += 1
            faces = []
            for i, c in enumerate(cyc):
                lab = [label[v] for v in c]
                rots = [tuple(lab[j:] + lab[:j]) for j in range(len(lab))]
                faces.append((i == n_outer, min(rots)))
            outer_code = [f for o, f in faces if o][0]
            code = (outer_code, tuple(sorted(f for o, f in faces if not o)))
            if best is None or code < best:
                best = code
    return json.dumps(best, separators=(",", ":"))


# -- catalog ----------------------------------------------------------------


@dataclass
class _Catalog:
    graphs: dict = field(default_factory=dict)
    loaded: bool = False


_CATALOG = _Catalog()


def _load_catalog() -> dict:
    if not _CATALOG.loaded:
        text = resources.files("phiseries").joinpath("data/catalog.json").read_text("utf-8")
        for entry in json.loads(text)["graphs"]:
            _CATALOG.graphs[entry["name"]] = entry
        _CATALOG.loaded = True
    return _CATALOG.graphs


def catalog_names(max_edges: int | None = None, include_optional: bool = True) -> list[str]:
    """Names of shipped fixtures (polygons P2..P9 included)."""
    names = [f"P{r}" for r in range(2, 10)] + list(_load_catalog())
    out = []
    for n in names:
        if not include_optional and n.startswith("G9_"):
            continue
        if max_edges is not None and len(catalog(n).edges) > max_edges:
            continue
        out.append(n)
    return out


def catalog(name: str) -> PlaneGraph:
    """Fixture graph by name: ``P2``..``P9``, ``G{E}_{k}``, ``L8a7``,
    ``G1_triple``..``G3_triple`` and the 9-edge graphs ``G9_*``."""
    if len(name) >= 2 and name[0] == "P" and name[1:].isdigit():
        return polygon(int(name[1:]))
    graphs = _load_catalog()
    if name not in graphs:
        raise UnknownGraph(name)
    return validate(graphs[name])
