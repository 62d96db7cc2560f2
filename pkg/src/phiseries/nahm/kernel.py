"""Small numpy helpers for the hot loop: truncated products of coefficient arrays.

Arrays are int64 while a product is provably below 2**62 and object arrays of
Python ints otherwise, so results are always exact.  Each array travels with
an upper bound on its absolute coefficients so the overflow guard costs
nothing in the common case.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..qseries import invert_unit, pochhammer

_LIMIT = 1 << 62


def absmax(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(max(abs(int(a.max())), abs(int(a.min()))))


def compact(coeffs) -> tuple[np.ndarray, int]:
    """Array of exact coefficients (int64 when it fits) and its absolute maximum."""
    c = [int(x) for x in coeffs]
    m = max((abs(x) for x in c), default=0)
    if m >= _LIMIT:
        return np.array(c, dtype=object), m
    return np.array(c, dtype=np.int64), m


def tmul(a: np.ndarray, b: np.ndarray, r: int, ma: int | None = None, mb: int | None = None) -> tuple[np.ndarray, int]:
    """Product truncated to degree ``r`` and a bound on its coefficients.

    ``ma``/``mb`` are known bounds on the inputs (computed when omitted).
    """
    a = a[: r + 1]
    b = b[: r + 1]
    if ma is None:
        ma = absmax(a)
    if mb is None:
        mb = absmax(b)
    est = ma * mb * min(len(a), len(b))
    if est < _LIMIT and a.dtype != object and b.dtype != object:
        return np.convolve(a, b)[: r + 1], est
    out = np.convolve(a.astype(object), b.astype(object))[: r + 1]
    return compact(out)


@lru_cache(maxsize=None)
def inv_poch(n: int, order: int) -> tuple[np.ndarray, int]:
    """1/(q)_n modulo q^(order+1), with its coefficient bound."""
    return compact(invert_unit(pochhammer(min(n, order + 1), order)).coeffs)


@lru_cache(maxsize=None)
def inv_poch_bounded(ns: tuple, order: int) -> tuple[np.ndarray, int]:
    """prod_i 1/(q)_{n_i} for a sorted tuple of indices (zeros contribute 1)."""
    ns = tuple(n for n in ns if n)
    if not ns:
        one = np.zeros(order + 1, dtype=np.int64)
        one[0] = 1
        return one, 1
    if len(ns) == 1:
        return inv_poch(ns[0], order)
    head, mh = inv_poch_bounded(ns[:-1], order)
    last, ml = inv_poch(ns[-1], order)
    arr, _ = tmul(head, last, order, mh, ml)
    # all coefficients are positive, so the maximum is exact and cheap here
    return compact(arr) if arr.dtype == object else (arr, absmax(arr))


def inv_poch_product(ns: tuple, order: int) -> np.ndarray:
    return inv_poch_bounded(ns, order)[0]
