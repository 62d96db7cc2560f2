"""The polygon-gluing sum S(b_{r-1}, 0) and its closed form (q)_inf^{1-r} h_r."""

from __future__ import annotations

from ..qseries import TruncatedSeries, euler_infinity, invert_unit, theta_h
from .kernel import inv_poch_product

__all__ = ["sbb_sum", "verify_sbb"]


def sbb_sum(r: int, b_last: int, order: int) -> TruncatedSeries:
    """S(b_{r-1}, b_r = 0) modulo q^(order+1), by direct enumeration.

    Summation variables are a >= 0 (forced by (q)_{b_r + a} with b_r = 0)
    and b_1..b_{r-2} >= 0.  Every term of the exponent

        r/2 a^2 + (r-2)/2 a + a (b_1 + ... + b_{r-1}) + sum_{i<=r-2} (b_i b_{i+1} + b_i)

    is nonnegative and nondecreasing in each variable, so the partial exponent
    prunes the nested loops.
    """
    if r < 3:
        raise ValueError(f"r must be at least 3, got {r}")
    if b_last < 0:
        raise ValueError("b_last must be nonnegative")
    N = order
    acc = [0] * (N + 1)

    def add(a: int, bs: list) -> None:
        full = bs + [b_last]
        twice = r * a * a + (r - 2) * a + 2 * a * sum(full)
        twice += 2 * sum(full[i] * full[i + 1] for i in range(r - 2)) + 2 * sum(bs)
        assert twice % 2 == 0
        e = twice // 2
        if e > N:
            return
        sign = -1 if (r * a) % 2 else 1
        dens = bs + [x + a for x in full] + [a]
        den = inv_poch_product(tuple(sorted(min(d, N + 1) for d in dens)), N)
        for k in range(N + 1 - e):
            acc[e + k] += sign * int(den[k])

    def partial(a: int, bs: list) -> int:
        # lower bound of the doubled exponent for any completion of bs
        twice = r * a * a + (r - 2) * a + 2 * a * (sum(bs) + b_last)
        twice += 2 * sum(bs[i] * bs[i + 1] for i in range(len(bs) - 1)) + 2 * sum(bs)
        if len(bs) == r - 2 and bs:
            twice += 2 * bs[-1] * b_last
        return twice

    def rec(a: int, bs: list) -> None:
        if len(bs) == r - 2:
            add(a, bs)
            return
        x = 0
        while partial(a, bs + [x]) <= 2 * N:
            rec(a, bs + [x])
            x += 1

    a = 0
    while partial(a, []) <= 2 * N:
        rec(a, [])
        a += 1
    return TruncatedSeries(acc, N)


def verify_sbb(r: int, b_last: int, order: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """(lhs, rhs) with lhs the enumerated S(b_last, 0) and rhs = (q)_inf^{1-r} h_r."""
    lhs = sbb_sum(r, b_last, order)
    rhs = invert_unit(euler_infinity(order)) ** (r - 1) * theta_h(r, order)
    return lhs, rhs
