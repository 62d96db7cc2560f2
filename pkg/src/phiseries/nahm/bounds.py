"""Finite boxes containing every admissible state of weight at most N."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from ..plane_graph import Disconnected, PlaneGraph
from .model import FaceModel

__all__ = ["StateBounds", "propagate_bounds", "face_square_cap"]

_INF = math.inf


@dataclass(frozen=True)
class StateBounds:
    """Closed integer intervals for every b_v (by vertex id) and a_p (by face index)."""

    b: dict
    a: dict
    cap: int

    def volume(self) -> int:
        v = 1
        for lo, hi in list(self.b.values()) + list(self.a.values()):
            v *= max(0, hi - lo + 1)
        return v


def face_square_cap(length: int, cap: int) -> int:
    """Largest x >= 0 with length * x^2 <= 2 cap: the face term of A bounds a_p + b_p."""
    return math.isqrt((2 * cap) // length)


def propagate_bounds(g: PlaneGraph, cap: int, mode: str = "reduced", tighten: bool = False) -> StateBounds:
    """Sound box for states with (A + B)/2 <= cap on a 2-connected graph.

    Reduced mode pins the root to 0 and propagates ``0 <= a_p + b_v <= 2 cap``
    over the vertex/face incidences to a fixpoint, then caps each a_p using
    ``l(p) (a_p + b_p)^2 <= 2 cap``.  With ``tighten`` (always on in
    unreduced mode, where there is no anchor to propagate from) each interval
    is further intersected with the LP relaxation of admissibility plus
    ``B <= 2 cap``.
    """
    if mode not in ("reduced", "unreduced"):
        raise ValueError(f"unknown mode {mode!r}")
    m = FaceModel(g)
    two_n = 2 * cap
    blo = [-_INF] * m.n
    bhi = [_INF] * m.n
    alo = [-_INF] * len(m.faces)
    ahi = [_INF] * len(m.faces)

    if mode == "reduced":
        blo[m.root] = bhi[m.root] = 0
    else:
        for v in m.outer:
            blo[v] = 0
        lo, hi = _lp_box(m, cap, reduced=False, start=(blo, bhi, alo, ahi))
        for v in m.outer:
            bhi[v] = hi[v]

    _refine(m, cap, blo, bhi, alo, ahi)

    if tighten or mode == "unreduced":
        lo, hi = _lp_box(m, cap, reduced=(mode == "reduced"), start=(blo, bhi, alo, ahi))
        k = m.n
        for v in range(m.n):
            blo[v] = max(blo[v], lo[v])
            bhi[v] = min(bhi[v], hi[v])
        for p in range(len(m.faces)):
            alo[p] = max(alo[p], lo[k + p])
            ahi[p] = min(ahi[p], hi[k + p])
        for v in m.outer:
            blo[v] = max(blo[v], 0)
        _refine(m, cap, blo, bhi, alo, ahi)

    unreached = [m.names[v] for v in range(m.n) if not (math.isfinite(blo[v]) and math.isfinite(bhi[v]))]
    unreached += [f"face {p}" for p in range(len(m.faces)) if not (math.isfinite(alo[p]) and math.isfinite(ahi[p]))]
    if unreached:
        raise Disconnected(f"propagation did not bound {unreached}")

    return StateBounds(
        b={m.names[v]: (int(blo[v]), int(bhi[v])) for v in range(m.n)},
        a={p: (int(alo[p]), int(ahi[p])) for p in range(len(m.faces))},
        cap=cap,
    )


def _refine(m: FaceModel, cap: int, blo, bhi, alo, ahi) -> None:
    """Fixpoint of incidence propagation and the per-face quadratic cap (in place)."""
    two_n = 2 * cap
    changed = True
    while changed:
        changed = False
        for p, f in enumerate(m.faces):
            s = face_square_cap(m.lengths[p], cap)
            lo = max(max(-bhi[v] for v in f), -min(bhi[v] for v in f))
            hi = min(min(two_n - blo[v] for v in f), s - min(blo[v] for v in f))
            if lo > alo[p]:
                alo[p], changed = lo, True
            if hi < ahi[p]:
                ahi[p], changed = hi, True
            for v in f:
                lo = -ahi[p]
                hi = two_n - alo[p]
                if lo > blo[v]:
                    blo[v], changed = lo, True
                if hi < bhi[v]:
                    bhi[v], changed = hi, True


def _lp_box(m: FaceModel, cap: int, reduced: bool, start) -> tuple[list, list]:
    """Per-variable min/max of the LP: a_p + b_v >= 0, outer b_v >= 0,
    (root = 0), B <= 2 cap, intersected with the starting intervals."""
    nf = len(m.faces)
    nv = m.n + nf
    blo, bhi, alo, ahi = start
    rows, rhs = [], []
    for p, v in m.incidences:
        r = np.zeros(nv)
        r[v] = -1.0
        r[m.n + p] = -1.0
        rows.append(r)
        rhs.append(0.0)
    r = np.zeros(nv)
    r[: m.n] = 2.0
    for p, l in enumerate(m.lengths):
        r[m.n + p] = l - 2
    rows.append(r)
    rhs.append(2.0 * cap)
    A_ub = np.array(rows)
    b_ub = np.array(rhs)
    bounds = []
    for v in range(m.n):
        lo = blo[v] if math.isfinite(blo[v]) else None
        hi = bhi[v] if math.isfinite(bhi[v]) else None
        if v in m.outer_set:
            lo = 0 if lo is None else max(lo, 0)
        if reduced and v == m.root:
            lo = hi = 0
        bounds.append((lo, hi))
    for p in range(nf):
        lo = alo[p] if math.isfinite(alo[p]) else None
        hi = ahi[p] if math.isfinite(ahi[p]) else None
        bounds.append((lo, hi))
    lo_out, hi_out = [], []
    for i in range(nv):
        c = np.zeros(nv)
        c[i] = 1.0
        res_lo = linprog(c, A_ub=A_ub, b_ub=b_ub, bounds=bounds, method="highs")
        res_hi = linprog(-c, A_ub=A_ub, b_ub=b_ub, bounds=bounds, method="highs")
        if res_lo.status != 0 or res_hi.status != 0:
            raise Disconnected(f"LP relaxation is not bounded for variable {i} ({res_lo.message})")
        lo_out.append(math.ceil(res_lo.fun - 1e-7))
        hi_out.append(math.floor(-res_hi.fun + 1e-7))
    return lo_out, hi_out
