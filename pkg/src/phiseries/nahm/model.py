"""Index-based view of a plane graph used by the evaluators."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from ..plane_graph import PlaneGraph

__all__ = ["FaceModel", "BDecomposition"]


@dataclass(frozen=True)
class BDecomposition:
    """Nonnegative split of B as sum lam[p,v] (a_p + b_v) + sum mu[v] b_v.

    ``lam`` maps incidences (face index, vertex index) to nonnegative
    integers and ``mu`` maps outer vertices to nonnegative integers.
    """

    lam: dict
    mu: dict


class FaceModel:
    def __init__(self, g: PlaneGraph):
        self.graph = g
        self.names = list(g.vertices)
        self.index = {v: i for i, v in enumerate(self.names)}
        self.n = len(self.names)
        self.root = self.index[g.root]
        self.faces = [tuple(self.index[v] for v in f) for f in g.bounded_faces]
        self.lengths = [len(f) for f in self.faces]
        self.edges = [(self.index[u], self.index[v]) for u, v in g.edges]
        walk = [self.index[v] for v in g.outer_face]
        m = len(walk)
        self.outer_pairs = [(walk[i], walk[(i + 1) % m]) for i in range(m)] if m > 1 else []
        self.outer_walk = walk
        self.outer = sorted(set(walk))
        self.outer_set = set(self.outer)
        self.incidences = [(p, v) for p, f in enumerate(self.faces) for v in f]
        self.faces_of = [[p for p, f in enumerate(self.faces) if v in f] for v in range(self.n)]
        self.c2 = len(self.edges)

    @cached_property
    def b_decomposition(self) -> BDecomposition:
        dec = self.decompose_B()
        if dec is None:
            raise ValueError(f"B admits no nonnegative decomposition for {self.graph.name}")
        return dec

    def decompose_B(self, forced: tuple[int, int] | None = None) -> BDecomposition | None:
        """Integral nonnegative decomposition of B via a transportation flow.

        Each bounded face p ships ``l(p) - 2`` units to its vertices; every
        interior vertex must receive exactly 2 and every outer vertex at most
        2 (the deficit becomes ``mu``).  ``forced = (p, v)`` requires at least
        one unit on that incidence.  Returns None when infeasible.
        """
        G = nx.DiGraph()
        supply = {p: l - 2 for p, l in enumerate(self.lengths)}
        need = {v: 2 for v in range(self.n)}
        if forced is not None:
            p0, v0 = forced
            supply[p0] -= 1
            need[v0] -= 1
            if supply[p0] < 0 or need[v0] < 0:
                return None
        total = sum(supply.values())
        interior = [v for v in range(self.n) if v not in self.outer_set]
        sink_demand = total - sum(need[v] for v in interior)
        if sink_demand < 0:
            return None
        for p in supply:
            G.add_node(("f", p), demand=-supply[p])
        for v in range(self.n):
            G.add_node(("v", v), demand=need[v] if v not in self.outer_set else 0)
        G.add_node("T", demand=sink_demand)
        for p, f in enumerate(self.faces):
            for v in f:
                G.add_edge(("f", p), ("v", v), capacity=2, weight=0)
        for v in self.outer:
            G.add_edge(("v", v), "T", capacity=need[v], weight=0)
        try:
            flow = nx.min_cost_flow(G)
        except nx.NetworkXUnfeasible:
            return None
        lam = {}
        for p, f in enumerate(self.faces):
            for v in f:
                lam[(p, v)] = flow[("f", p)][("v", v)]
        if forced is not None:
            lam[forced] += 1
        mu = {}
        for v in self.outer:
            got = sum(lam[(p, v)] for p in self.faces_of[v])
            mu[v] = 2 - got
            assert mu[v] >= 0
        return BDecomposition(lam, mu)

    def enumeration_order(self) -> list[int]:
        """Root, then the rest of the outer walk, then BFS depth over the
        vertex/face incidence graph; ties broken by vertex order."""
        order = [self.root]
        seen = {self.root}
        walk = [self.index[v] for v in self.graph.outer_face]
        k = walk.index(self.root)
        for v in walk[k:] + walk[:k]:
            if v not in seen:
                seen.add(v)
                order.append(v)
        depth = {v: 0 for v in order}
        todo = deque(order)
        while todo:
            v = todo.popleft()
            for p in self.faces_of[v]:
                for w in self.faces[p]:
                    if w not in depth:
                        depth[w] = depth[v] + 1
                        todo.append(w)
        rest = sorted((v for v in range(self.n) if v not in seen), key=lambda v: (depth.get(v, 1 << 30), v))
        return order + rest
