"""Regenerate src/phiseries/data/catalog.json.

Irreducible graphs (2-connected, simple, planar, not a cycle, no adjacent
separating pair) are enumerated from the networkx graph atlas, embedded, and
named by matching Phi against the frozen golden rows in data/golden.json.
The L8a7 face list and the three P4.P3.P3 graphs are built explicitly.

    python scripts/build_catalog.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import networkx as nx

from phiseries.nahm import compute_phi
from phiseries.plane_graph import canonical_code, edge_connect, polygon, validate

DATA = Path(__file__).resolve().parents[1] / "src" / "phiseries" / "data"


def irreducible(G: nx.Graph) -> bool:
    if G.number_of_nodes() < 3 or not nx.is_biconnected(G):
        return False
    if all(d == 2 for _, d in G.degree()):
        return False
    if not nx.check_planarity(G)[0]:
        return False
    for u, v in G.edges():
        H = G.copy()
        H.remove_nodes_from([u, v])
        if not nx.is_connected(H):
            return False
    return True


def embed(G: nx.Graph, name: str) -> dict:
    ok, emb = nx.check_planarity(G)
    assert ok
    label = {v: f"v{i + 1}" for i, v in enumerate(sorted(G.nodes()))}
    seen = set()
    faces = []
    for u, v in sorted(emb.edges()):
        if (u, v) in seen:
            continue
        face = emb.traverse_face(u, v, mark_half_edges=seen)
        faces.append([label[x] for x in face])
    # the longest face (first among equals) becomes the unbounded one
    k = max(range(len(faces)), key=lambda i: (len(faces[i]), -i))
    outer = faces.pop(k)
    return {
        "name": name,
        "vertices": [label[v] for v in sorted(G.nodes())],
        "root": outer[0],
        "outer_face": outer,
        "bounded_faces": faces,
    }


def candidates(edges: int, vertices: int | None = None):
    for G in nx.graph_atlas_g():
        if G.number_of_edges() != edges:
            continue
        if vertices is not None and G.number_of_nodes() != vertices:
            continue
        if irreducible(G):
            yield G


def triple_graphs() -> list[dict]:
    p3, p4 = polygon(3), polygon(4)
    sq = [("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v1")]
    g1 = edge_connect(edge_connect(p4, sq[0], p3, ("v1", "v2")), sq[2], p3, ("v1", "v2"))
    g2 = edge_connect(edge_connect(p4, sq[0], p3, ("v1", "v2")), sq[1], p3, ("v1", "v2"))
    tt = edge_connect(p3, ("v1", "v2"), p3, ("v1", "v2"))
    outer = tt.outer_face
    e = (outer[0], outer[1])
    g3 = edge_connect(tt, e, p4, ("v1", "v2"))
    out = []
    for name, g in (("G1_triple", g1), ("G2_triple", g2), ("G3_triple", g3)):
        d = g.renamed(name).to_dict()
        out.append(d)
    return out


def main() -> int:
    golden = json.loads((DATA / "golden.json").read_text())
    rows = {k: [int(c) for c in v] for k, v in golden["series"].items()}
    prefixes = {k: [int(c) for c in v] for k, v in golden["prefix5"].items()}
    graphs = []
    for r in range(3, 9):
        graphs.append(polygon(r).renamed(f"G{r}_0").to_dict())

    for e in range(6, 9):
        found = {}
        for i, G in enumerate(candidates(e)):
            g = validate(embed(G, f"cand{e}_{i}"))
            s = list(compute_phi(g, 20).coeffs)
            names = [k for k, v in rows.items() if v == s and k.startswith(f"G{e}_")]
            if len(names) != 1:
                print(f"edges={e}: candidate {i} matches {names}", file=sys.stderr)
                return 1
            if names[0] in found:
                print(f"edges={e}: {names[0]} matched twice", file=sys.stderr)
                return 1
            found[names[0]] = g
        expected = sorted(k for k in rows if k.startswith(f"G{e}_"))
        if sorted(found) != expected:
            print(f"edges={e}: matched {sorted(found)}, expected {expected}", file=sys.stderr)
            return 1
        for k in expected:
            graphs.append(found[k].renamed(k).to_dict())
            print(f"{k}: {found[k].nx_graph.number_of_nodes()} vertices", file=sys.stderr)

    l8a7 = validate({
        "name": "L8a7",
        "vertices": ["b1", "b2", "b3", "b4", "b5", "b6"],
        "root": "b1",
        "outer_face": ["b1", "b2", "b3", "b4"],
        "bounded_faces": [["b1", "b6", "b5", "b4"], ["b3", "b4", "b5", "b6"], ["b1", "b2", "b3", "b6"]],
    })
    g82 = next(validate(d) for d in graphs if d["name"] == "G8_2")
    if not nx.is_isomorphic(l8a7.nx_graph, g82.nx_graph):
        print("L8a7 is not isomorphic to G8_2", file=sys.stderr)
        return 1
    graphs.append(l8a7.to_dict())
    graphs.extend(triple_graphs())

    # 9-edge tier: 7 vertices, 9 edges, two square and two pentagonal faces
    found9 = {}
    for i, G in enumerate(candidates(9, 7)):
        g = validate(embed(G, f"cand9_{i}"))
        prof = sorted(len(f) for f in g.bounded_faces + (g.outer_face,))
        if prof != [4, 4, 5, 5]:
            continue
        s = list(compute_phi(g, 5).coeffs)
        for k, v in prefixes.items():
            if v == s:
                found9.setdefault(k, []).append(g)
    for k in sorted(prefixes):
        matches = found9.get(k, [])
        if len({canonical_code(g) for g in matches}) != 1:
            print(f"{k}: {len(matches)} candidate embeddings match", file=sys.stderr)
            return 1
        graphs.append(matches[0].renamed(k).to_dict())

    (DATA / "catalog.json").write_text(json.dumps({"graphs": graphs}, indent=1) + "\n")
    print(f"wrote {len(graphs)} graphs", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
