"""Pruned, factorized evaluation of Phi_G(q).

For a fixed vertex labelling b, substitute x_p = a_p + b_p >= 0 where b_p is
the minimum of b over the face p.  The weight (A + B)/2 becomes

    W(b) + sum_p [ l x_p^2 / 2 + x_p (D_p + (l - 2)/2) ],   D_p = sum_{v in p} (b_v - b_p),

so the a-sums factor over faces and W(b) is the exact minimum over a.  W(b)
is itself a sum of nonnegative terms (a flow split of B plus the completed
square of A), which gives a sound lower bound on partially assigned b.
"""

from __future__ import annotations

import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..plane_graph import PlaneGraph, blocks, reduce
from ..qseries import TruncatedSeries, euler_infinity, invert_unit, one_minus_q
from .bounds import propagate_bounds
from .kernel import compact, inv_poch_bounded, inv_poch_product, tmul
from .model import FaceModel
from .states import AdmissibleState, ParityViolation, eval_A_decomposed, eval_B, weight

__all__ = ["compute_phi", "compute_phi_tqft", "EngineStats", "SAMPLE_EVERY"]

# every SAMPLE_EVERY-th contributing b-vector is re-evaluated with the plain
# formulas (B >= a_p + b_v, completed-square decomposition, parity)
SAMPLE_EVERY = 97


@dataclass
class EngineStats:
    states: dict = field(default_factory=dict)
    pruned: dict = field(default_factory=dict)
    leaves: int = 0
    sampled: int = 0

    def merge(self, other: "EngineStats") -> None:
        for d, n in other.states.items():
            self.states[d] = self.states.get(d, 0) + n
        for d, n in other.pruned.items():
            self.pruned[d] = self.pruned.get(d, 0) + n
        self.leaves += other.leaves
        self.sampled += other.sampled

    def lines(self) -> list[str]:
        depths = sorted(set(self.states) | set(self.pruned))
        return [f"depth={d} states={self.states.get(d, 0)} pruned={self.pruned.get(d, 0)}" for d in depths]


class _Block:
    """Search data for one 2-connected block at a fixed order."""

    def __init__(self, g: PlaneGraph, order: int, scan: str = "convex"):
        if scan not in ("convex", "linear"):
            raise ValueError(f"unknown scan {scan!r}")
        self.scan = scan
        self.g = g
        self.N = order
        m = self.m = FaceModel(g)
        box = propagate_bounds(g, order, tighten=True)
        self.lo = [box.b[v][0] for v in m.names]
        self.hi = [box.b[v][1] for v in m.names]
        dec = m.b_decomposition
        self.order = m.enumeration_order()
        pos = {v: k for k, v in enumerate(self.order)}
        # faces with their per-vertex flow weights
        self.faces = []
        for p, f in enumerate(m.faces):
            l = len(f)
            self.faces.append((l, f, tuple(dec.lam[(p, v)] for v in f)))
        self.mu = [dec.mu.get(v, 0) for v in range(m.n)]
        self.outer_pairs = m.outer_pairs
        self.outer = [v for v in m.outer if v != m.root]
        self.pos = pos
        self._fcache: dict = {}

    # -- bounds --------------------------------------------------------------

    def lower2(self, b: list, k: int) -> int:
        """Twice a lower bound of W over completions of b[order[:k+1]]."""
        pos = self.pos
        lo = self.lo
        hi = self.hi
        total = 0
        for l, f, lam in self.faces:
            bp = None
            for v in f:
                x = b[v] if pos[v] <= k else hi[v]
                if bp is None or x < bp:
                    bp = x
            ds = [(b[v] - bp) if pos[v] <= k else max(0, lo[v] - bp) for v in f]
            for i in range(l):
                total += lam[i] * ds[i] + ds[i] * ds[i - 1]
        for v, w in self.outer_pairs:
            bv = b[v] if pos[v] <= k else lo[v]
            bw = b[w] if pos[w] <= k else lo[w]
            total += bv * bw
        for v in self.outer:
            total += self.mu[v] * (b[v] if pos[v] <= k else lo[v])
        return total

    # -- face series -----------------------------------------------------------

    def face_series(self, l: int, ds: tuple, D: int) -> tuple[np.ndarray, int]:
        """sum_{x>=0} (-1)^{lx} q^{(l x^2 + (2D + l - 2) x)/2} / prod_v (q)_{x + d_v}."""
        key = (l, ds, D)
        s = self._fcache.get(key)
        if s is not None:
            return s
        N = self.N
        acc = np.zeros(N + 1, dtype=object)
        x = 0
        while True:
            twice = l * x * x + (2 * D + l - 2) * x
            assert twice % 2 == 0
            e = twice // 2
            if e > N:
                break
            sign = -1 if (l * x) % 2 else 1
            den = inv_poch_product(tuple(sorted(min(x + d, N + 1) for d in ds)), N)
            acc[e:] += sign * den[: N + 1 - e].astype(object)
            x += 1
        s = compact(acc)
        self._fcache[key] = s
        return s

    def leaf(self, b: list, w2: int, acc: np.ndarray) -> None:
        if w2 % 2:
            raise ParityViolation(f"odd doubled weight {w2} at b={b}")
        W = w2 // 2
        N = self.N
        r = N - W
        sign = 1
        series, bound = inv_poch_bounded(tuple(sorted(min(b[v], N + 1) for v in self.outer)), N)
        series = series[: r + 1]
        for l, f, _ in self.faces:
            bp = min(b[v] for v in f)
            if (l * bp) % 2:
                sign = -sign
            ds = [b[v] - bp for v in f]
            # entries beyond N+1 act alike in every denominator, and D > N
            # kills every x >= 1 term, so both can be capped for the cache key
            key = tuple(sorted(min(d, N + 1) for d in ds))
            fs, fb = self.face_series(l, key, min(sum(ds), N + 1))
            series, bound = tmul(series, fs, r, bound, fb)
        if sign > 0:
            acc[W:] += series.astype(object)
        else:
            acc[W:] -= series.astype(object)

    def check_state(self, b: list, w2: int) -> None:
        """Recompute the contributing state at x_p = 0 and x_p = 1 with the
        plain formulas and check the invariants the pruning relies on."""
        g, m = self.g, self.m
        bmap = {m.names[v]: b[v] for v in range(m.n)}
        for shift in (0, 1):
            a = {p: shift - min(b[v] for v in f) for p, (_, f, _) in enumerate(self.faces)}
            s = AdmissibleState(a=a, b=bmap)
            B = eval_B(g, s)
            for p, f in enumerate(g.bounded_faces):
                for v in f:
                    if B < a[p] + bmap[v]:
                        raise AssertionError(f"B = {B} < a_p + b_v at face {p}, vertex {v}")
            terms = eval_A_decomposed(g, s)
            if min(terms) < 0:
                raise AssertionError(f"negative completed-square term in {terms}")
            wt = weight(g, s)
            if shift == 0 and 2 * wt != w2:
                raise AssertionError(f"flow split gives {w2}/2, direct weight {wt}")

    # -- search ------------------------------------------------------------------

    def search(self, first_values=None, stats: EngineStats | None = None) -> np.ndarray:
        """Sum over all b with W(b) <= N of sign q^W / outer (q)_b * prod F_p."""
        N = self.N
        acc = np.zeros(N + 1, dtype=object)
        order = self.order
        n = len(order)
        b = [0] * self.m.n
        two_n = 2 * N
        stats = stats if stats is not None else EngineStats()
        st, pr = stats.states, stats.pruned

        def rec(k: int) -> None:
            v = order[k]
            lo, hi = self.lo[v], self.hi[v]
            hits = self._feasible(b, k, v, lo, hi)
            if k == 1 and first_values is not None:
                keep = set(first_values)
                hits = [(x, w2) for x, w2 in hits if x in keep]
                span = len(keep)
            else:
                span = hi - lo + 1
            pr[k] = pr.get(k, 0) + span - len(hits)
            st[k] = st.get(k, 0) + len(hits)
            for x, w2 in hits:
                b[v] = x
                if k + 1 < n:
                    rec(k + 1)
                else:
                    stats.leaves += 1
                    if (stats.leaves - 1) % SAMPLE_EVERY == 0:
                        stats.sampled += 1
                        self.check_state(b, w2)
                    self.leaf(b, w2, acc)
            b[v] = 0

        b[order[0]] = 0
        st[0] = st.get(0, 0) + 1
        if n == 1:
            acc[0] += 1
        else:
            rec(1)
        return acc

    def _feasible(self, b: list, k: int, v: int, lo: int, hi: int) -> list:
        """Values x in [lo, hi] for b[v] whose bound stays within 2N, with the bound."""
        two_n = 2 * self.N

        def f(x: int) -> int:
            b[v] = x
            return self.lower2(b, k)

        if self.scan == "linear":
            out = [(x, w) for x in range(lo, hi + 1) if (w := f(x)) <= two_n]
            return out
        # lower2 is convex in b[v] (every term is a product of nonnegative
        # monotone convex pieces of min/max expressions, or linear), so the
        # feasible values form an interval around a minimizer
        a, c = lo, hi
        while c - a > 2:
            mid = (a + c) // 2
            if f(mid) <= f(mid + 1):
                c = mid + 1
            else:
                a = mid + 1
        best = min(range(a, c + 1), key=lambda x: (f(x), x))
        wb = f(best)
        if wb > two_n:
            return []
        left = []
        x = best - 1
        while x >= lo and (w := f(x)) <= two_n:
            left.append((x, w))
            x -= 1
        right = [(best, wb)]
        x = best + 1
        while x <= hi and (w := f(x)) <= two_n:
            right.append((x, w))
            x += 1
        return left[::-1] + right

    def first_range(self) -> list:
        v = self.order[1]
        return list(range(self.lo[v], self.hi[v] + 1))


def _run_part(g: PlaneGraph, order: int, values: list, scan: str):
    blk = _Block(g, order, scan)
    stats = EngineStats()
    acc = blk.search(first_values=values, stats=stats)
    return [int(x) for x in acc], stats


def _block_sum(g: PlaneGraph, order: int, jobs: int, stats: EngineStats, scan: str) -> list[int]:
    # a block without bounded faces is a single edge: sum_b q^b/(q)_b = 1/(q)_inf
    blk = _Block(g, order, scan)
    if jobs <= 1 or len(blk.order) < 2 or not blk.m.faces:
        return [int(x) for x in blk.search(stats=stats)]
    values = blk.first_range()
    parts = [values[i::jobs] for i in range(jobs)]
    parts = [p for p in parts if p]
    total = [0] * (order + 1)
    with ProcessPoolExecutor(max_workers=len(parts)) as ex:
        for coeffs, st in ex.map(_run_part, [g] * len(parts), [order] * len(parts), parts, [scan] * len(parts)):
            for i, c in enumerate(coeffs):
                total[i] += c
            stats.merge(st)
    # every worker visits the pinned root once; count it once
    stats.states[0] -= len(parts) - 1
    return total


def compute_phi(g: PlaneGraph, order: int, jobs: int = 1, progress: bool = False,
                stats: EngineStats | None = None, scan: str = "convex") -> TruncatedSeries:
    """Phi_G(q) modulo q^(order+1).

    The graph is reduced and split into 2-connected blocks; Phi is
    multiplicative over blocks sharing a cut vertex (bridges included).
    ``jobs`` splits the first free loop across processes; ``scan="linear"``
    tests every value of each loop variable against the bound instead of
    bracketing the feasible interval (same result, slower).
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    g = reduce(g)
    stats = stats if stats is not None else EngineStats()
    result = TruncatedSeries.one(order)
    for blk in blocks(g):
        if len(blk.vertices) < 2:
            continue
        s = TruncatedSeries(_block_sum(blk, order, jobs, stats, scan), order)
        c2 = len(blk.edges)
        result = result * s * euler_infinity(order) ** c2
    if progress:
        for line in stats.lines():
            print(line, file=sys.stderr)
    return result


def compute_phi_tqft(g: PlaneGraph, order: int, jobs: int = 1, progress: bool = False) -> TruncatedSeries:
    """Unreduced series Phi_G(q) / (1 - q)."""
    return compute_phi(g, order, jobs=jobs, progress=progress) * invert_unit(one_minus_q(order))
