"""Brute-force reference evaluator.

Every integer point of the bounds box is visited; admissibility and the
weight cap are filters, A and B come straight from their defining formulas,
and nothing is factorized or pruned.  States sharing (weight, sign,
denominator multiset) are grouped before the series expansion, which only
changes the order of exact additions.
"""

from __future__ import annotations

from collections import Counter

import numpy as np

from ..plane_graph import PlaneGraph, reduce
from ..qseries import TruncatedSeries, euler_infinity
from .bounds import propagate_bounds
from .kernel import inv_poch_product
from .model import FaceModel
from .states import ParityViolation

__all__ = ["BoxTooLarge", "DEFAULT_BUDGET", "compute_phi_oracle", "oracle_state_sum", "disjoint_union_phi_oracle"]

DEFAULT_BUDGET = 5 * 10**8
_CHUNK = 1 << 20


class BoxTooLarge(RuntimeError):
    pass


def _box_sum(g: PlaneGraph, order: int, mode: str, budget: int, tighten: bool = True) -> tuple[Counter, int]:
    """Counter mapping (weight, denominator tuple) -> signed multiplicity."""
    m = FaceModel(g)
    box = propagate_bounds(g, order, mode=mode, tighten=tighten)
    nb, nf = m.n, len(m.faces)
    lo = [box.b[v][0] for v in m.names] + [box.a[p][0] for p in range(nf)]
    hi = [box.b[v][1] for v in m.names] + [box.a[p][1] for p in range(nf)]
    span = [h - l + 1 for l, h in zip(lo, hi)]
    volume = 1
    for s in span:
        volume *= max(s, 0)
    if volume > budget:
        raise BoxTooLarge(f"box for {g.name} at order {order} has {volume} points (budget {budget})")
    groups: Counter = Counter()
    if volume == 0:
        return groups, volume
    inc_p = np.array([p for p, _ in m.incidences], dtype=np.int64)
    inc_v = np.array([v for _, v in m.incidences], dtype=np.int64)
    outer = np.array(m.outer, dtype=np.int64)
    # a vertex met k times by the outer walk has k corners there, hence k
    # factors 1/(q)_{b_v}; this only matters at cut vertices
    walk = np.array(m.outer_walk, dtype=np.int64)
    eu = np.array([u for u, _ in m.edges], dtype=np.int64)
    ev = np.array([v for _, v in m.edges], dtype=np.int64)
    lengths = np.array(m.lengths, dtype=np.int64)
    two_n = 2 * order
    for start in range(0, volume, _CHUNK):
        idx = np.arange(start, min(volume, start + _CHUNK), dtype=np.int64)
        cols = []
        for l, s in zip(lo, span):
            idx, r = np.divmod(idx, s)
            cols.append(r + l)
        X = np.stack(cols, axis=1)
        b = X[:, :nb]
        a = X[:, nb:]
        # admissibility: a_p + b_v >= 0 on bounded faces, b_v >= 0 on the outer face
        den_faces = a[:, inc_p] + b[:, inc_v]
        ok = (den_faces >= 0).all(axis=1) & (b[:, outer] >= 0).all(axis=1)
        if mode == "reduced":
            ok &= b[:, m.root] == 0
        if not ok.any():
            continue
        b, a, den_faces = b[ok], a[ok], den_faces[ok]
        # A = sum_p [l a^2 + 2 a sum_{v in p} b_v] + 2 sum_edges b b'
        face_bsum = np.zeros_like(a)
        if nf:
            np.add.at(face_bsum, (slice(None), inc_p), b[:, inc_v])
        A = (lengths * a * a + 2 * a * face_bsum).sum(axis=1) + 2 * (b[:, eu] * b[:, ev]).sum(axis=1)
        B = 2 * b.sum(axis=1) + ((lengths - 2) * a).sum(axis=1)
        twice = A + B
        keep = twice <= two_n
        if not keep.any():
            continue
        twice, B = twice[keep], B[keep]
        if (twice % 2).any():
            raise ParityViolation(f"odd A + B among states of {g.name}")
        dens = np.concatenate([den_faces[keep], b[keep][:, walk]], axis=1)
        dens = np.sort(np.minimum(dens, order + 1), axis=1)
        sign = 1 - 2 * (B % 2)
        rows = np.concatenate([(twice // 2)[:, None], dens], axis=1)
        uniq, inv = np.unique(rows, axis=0, return_inverse=True)
        tot = np.zeros(len(uniq), dtype=np.int64)
        np.add.at(tot, inv.ravel(), sign)
        for row, c in zip(uniq.tolist(), tot.tolist()):
            if c:
                groups[(row[0], tuple(row[1:]))] += c
    return groups, volume


def oracle_state_sum(g: PlaneGraph, order: int, mode: str = "reduced", budget: int = DEFAULT_BUDGET,
                     tighten: bool = True) -> TruncatedSeries:
    """sum over states of (-1)^B q^{(A+B)/2} / prod (q)_{a_p + b_v}, without the (q)_inf^{c2} factor.

    ``tighten=False`` enumerates the plain propagation box instead of the
    LP-tightened one (reduced mode only; far larger, for small orders).
    """
    groups, _ = _box_sum(g, order, mode, budget, tighten)
    acc = [0] * (order + 1)
    for (w, dens), c in sorted(groups.items()):
        if not c:
            continue
        den = inv_poch_product(dens, order)
        for k in range(order + 1 - w):
            acc[w + k] += c * int(den[k])
    return TruncatedSeries(acc, order)


def compute_phi_oracle(g: PlaneGraph, order: int, mode: str = "reduced", budget: int = DEFAULT_BUDGET,
                       tighten: bool = True) -> TruncatedSeries:
    """Phi_G (``mode="reduced"``) or Phi^TQFT_G (``mode="tqft"``) by exhaustive enumeration.

    No block or bridge splitting is done here, so the oracle stays independent
    of the engine's factorization.
    """
    g = reduce(g)
    if mode not in ("reduced", "tqft"):
        raise ValueError(f"unknown mode {mode!r}")
    s = oracle_state_sum(g, order, "reduced" if mode == "reduced" else "unreduced", budget, tighten)
    return s * euler_infinity(order) ** len(g.edges)


def disjoint_union_phi_oracle(g1: PlaneGraph, g2: PlaneGraph, order: int,
                              budget: int = DEFAULT_BUDGET) -> TruncatedSeries:
    """Reduced series of the disjoint union G1 + G2 rooted in G1.

    The state space is the product of the rooted states of G1 and the
    unrooted states of G2 (nothing pins a vertex of the second component),
    and A, B and the denominators are additive over components.
    """
    s1 = oracle_state_sum(reduce(g1), order, "reduced", budget)
    s2 = oracle_state_sum(reduce(g2), order, "unreduced", budget)
    c2 = len(reduce(g1).edges) + len(reduce(g2).edges)
    return s1 * s2 * euler_infinity(order) ** c2
