"""Hand-derived iterated summation for the L8a7 graph.

Vertices b1..b6, bounded faces (square each) p1 = {b1,b6,b5,b4},
p2 = {b3,b4,b5,b6}, p3 = {b1,b2,b3,b6}, outer face {b1,b2,b3,b4}.  With
x_j = a_j + bbar_j and bbar_j the minimum of b over p_j,

    (A + B)/2 = sum_j [2 x_j^2 + x_j btilde_j] + D(b) + a1 + a2 + a3 + b1 + ... + b6,

where btilde_j = sum_{v in p_j} (b_v - bbar_j) and D(b) is half the sum of
the edge products (b_v - bbar)(b_w - bbar) over each face plus the outer
products.  The b-loops use the windows from B/2 <= N and the a-loops the
windows from the quadratic part.
"""

from __future__ import annotations

import math
from collections import Counter

from ..qseries import TruncatedSeries, euler_infinity
from .kernel import inv_poch_product

__all__ = ["NegativeDiscriminant", "u_bound", "u_exact", "compute_phi_l8a7", "L8A7_FACES", "L8A7_OUTER"]

L8A7_FACES = (("b1", "b6", "b5", "b4"), ("b3", "b4", "b5", "b6"), ("b1", "b2", "b3", "b6"))
L8A7_OUTER = ("b1", "b2", "b3", "b4")


class NegativeDiscriminant(ValueError):
    pass


def u_bound(c: int, d: int) -> int:
    """floor((-c + sqrt(c^2 + 2d)) / 2), exactly.

    With s = isqrt(c^2 + 2d) the real value lies in [(s-c)/2, (s-c+1)/2),
    and no integer sits strictly inside that half-open interval, so the
    floor is (s - c) // 2.
    """
    disc = c * c + 2 * d
    if disc < 0:
        raise NegativeDiscriminant(f"c^2 + 2d = {disc} < 0")
    return (math.isqrt(disc) - c) // 2


def u_exact(c: int, d: int) -> int:
    """Largest integer x with 2x^2 + cx <= d, i.e. floor of the root (-c + sqrt(c^2 + 8d))/4."""
    disc = c * c + 8 * d
    if disc < 0:
        raise NegativeDiscriminant(f"c^2 + 8d = {disc} < 0")
    x = (math.isqrt(disc) - c) // 4
    while 2 * (x + 1) ** 2 + c * (x + 1) <= d:
        x += 1
    while 2 * x * x + c * x > d:
        x -= 1
    return x


def _pairs(cycle):
    return [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]


def compute_phi_l8a7(order: int, window: str = "exact") -> TruncatedSeries:
    """Phi_{L8a7} modulo q^(order+1) by the explicit five-plus-three-fold loop.

    ``window="exact"`` bounds each a_j by the largest x_j with
    ``2 x_j^2 + btilde_j x_j`` within the remaining budget, using face j's
    own btilde_j.  ``window="printed"`` reproduces the printed loop
    literally: :func:`u_bound` with btilde_1 in all three a-windows.  The
    printed window is narrower than the constraint it encodes whenever
    btilde > 0, so it can drop contributing states.
    """
    if window == "exact":
        u = u_exact
    elif window == "printed":
        u = u_bound
    else:
        raise ValueError(f"unknown window {window!r}")
    N = order
    faces = [_pairs(f) for f in L8A7_FACES]
    outer = _pairs(L8A7_OUTER)
    groups: Counter = Counter()
    b = {"b1": 0}
    for b2 in range(0, N + 1):
        b["b2"] = b2
        for b3 in range(0, N - b2 + 1):
            b["b3"] = b3
            for b4 in range(0, N - b2 - b3 + 1):
                b["b4"] = b4
                M = N - b2 - b3 - b4
                for b5 in range(-2 * M, 2 * M + 1):
                    b["b5"] = b5
                    for b6 in range(-4 * M, 4 * M + 1):
                        b["b6"] = b6
                        _inner(b, N, faces, outer, u, window, groups)
    acc = [0] * (N + 1)
    for (w, dens), c in sorted(groups.items()):
        den = inv_poch_product(dens, N)
        for k in range(N + 1 - w):
            acc[w + k] += c * int(den[k])
    return TruncatedSeries(acc, N) * euler_infinity(N) ** 8


def _inner(b: dict, N: int, faces, outer, u, window: str, groups: Counter) -> None:
    bbar = [min(b[v] for v in f) for f in L8A7_FACES]
    btil = [sum(b[v] for v in f) - 4 * m for f, m in zip(L8A7_FACES, bbar)]
    twiceD = sum((b[v] - m) * (b[w] - m) for pairs, m in zip(faces, bbar) for v, w in pairs)
    twiceD += sum(b[v] * b[w] for v, w in outer)
    # D is half an even number here only together with the linear terms; keep doubled
    twice_Dt = twiceD + 2 * (b["b2"] + b["b3"] + b["b4"])
    budget2 = 2 * N - twice_Dt
    if budget2 < 0:
        return
    cs = [btil[0], btil[0], btil[0]] if window == "printed" else btil

    def window_hi(c: int, rem2: int) -> int:
        # rem2 is twice the remaining budget; u takes the budget itself
        d = rem2 // 2 if rem2 >= 0 else -((-rem2 + 1) // 2)
        try:
            return u(c, d)
        except ValueError:
            return -1

    sum_b = sum(b.values())
    for x1 in range(0, window_hi(cs[0], budget2) + 1):
        r1 = budget2 - 2 * (2 * x1 * x1 + x1 * btil[0])
        for x2 in range(0, window_hi(cs[1], r1) + 1):
            r2 = r1 - 2 * (2 * x2 * x2 + x2 * btil[1])
            for x3 in range(0, window_hi(cs[2], r2) + 1):
                xs = (x1, x2, x3)
                a = [x - m for x, m in zip(xs, bbar)]
                twice_w = sum(2 * (2 * x * x + x * c) for x, c in zip(xs, btil)) + twiceD
                twice_w += 2 * (sum(a) + sum_b)
                assert twice_w % 2 == 0
                w = twice_w // 2
                if w > N:
                    continue
                dens = [a[j] + b[v] for j, f in enumerate(L8A7_FACES) for v in f]
                dens += [b[v] for v in L8A7_OUTER]
                groups[(w, tuple(sorted(min(d, N + 1) for d in dens)))] += 1
