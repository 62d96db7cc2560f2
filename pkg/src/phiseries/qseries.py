"""Truncated power series in Z[[q]]/(q^{N+1}) with exact integer coefficients.

A :class:`TruncatedSeries` is immutable.  Binary operations between series
of different orders truncate to the smaller order, so callers can compose
freely toward a single target order.
"""

from __future__ import annotations

import json
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "NotAUnit",
    "TruncatedSeries",
    "add",
    "mul",
    "invert_unit",
    "euler_infinity",
    "pochhammer",
    "theta_h",
    "one_minus_q",
]


class NotAUnit(ArithmeticError):
    """Raised when inverting a series whose constant term is not +1 or -1."""


class TruncatedSeries:
    """Element of Z[[q]] known modulo q^(order+1).

    Parameters
    ----------
    coeffs : sequence of int
        ``coeffs[k]`` is the coefficient of ``q**k``.  Entries beyond
        ``order`` are dropped; missing entries are zero.
    order : int, optional
        Truncation order ``N``.  Defaults to ``len(coeffs) - 1``.
    """

    __slots__ = ("_coeffs", "_order")

    def __init__(self, coeffs: Iterable[int], order: int | None = None):
        c = [int(x) for x in coeffs]
        if order is None:
            if not c:
                raise ValueError("order is required for an empty coefficient list")
            order = len(c) - 1
        if order < 0:
            raise ValueError(f"order must be nonnegative, got {order}")
        if len(c) > order + 1:
            del c[order + 1:]
        else:
            c.extend([0] * (order + 1 - len(c)))
        self._coeffs = tuple(c)
        self._order = order

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls((), order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls((1,), order)

    @classmethod
    def monomial(cls, k: int, order: int, coeff: int = 1) -> "TruncatedSeries":
        """``coeff * q**k``; vanishes if ``k > order``."""
        if k < 0:
            raise ValueError("negative exponent")
        if k > order:
            return cls.zero(order)
        return cls([0] * k + [coeff], order)

    # -- accessors --------------------------------------------------------

    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._coeffs

    def __getitem__(self, k: int) -> int:
        return self._coeffs[k]

    def __len__(self) -> int:
        return self._order + 1

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._order == other._order and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self._order, self._coeffs))

    def __repr__(self) -> str:
        return f"TruncatedSeries({list(self._coeffs)!r}, order={self._order})"

    def __str__(self) -> str:
        return self.to_text()

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self._order:
            raise ValueError(f"cannot extend order {self._order} to {order}")
        if order == self._order:
            return self
        return TruncatedSeries(self._coeffs[: order + 1], order)

    def is_one(self) -> bool:
        return self._coeffs[0] == 1 and not any(self._coeffs[1:])

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self._order, other._order)
        return TruncatedSeries(
            [a + b for a, b in zip(self._coeffs[: n + 1], other._coeffs[: n + 1])], n
        )

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-a for a in self._coeffs], self._order)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, int):
            return TruncatedSeries([other * a for a in self._coeffs], self._order)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self._order, other._order)
        return TruncatedSeries(_convolve(self._coeffs, other._coeffs, n), n)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "TruncatedSeries":
        if e < 0:
            return invert_unit(self) ** (-e)
        result = TruncatedSeries.one(self._order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by ``q**k`` (``k >= 0``), keeping the order."""
        if k < 0:
            raise ValueError("negative shift")
        if k > self._order:
            return TruncatedSeries.zero(self._order)
        return TruncatedSeries([0] * k + list(self._coeffs[: self._order + 1 - k]), self._order)

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {"order": self._order, "coeffs": [str(c) for c in self._coeffs]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "TruncatedSeries":
        order = int(data["order"])
        coeffs = [int(c) for c in data["coeffs"]]
        if len(coeffs) != order + 1:
            raise ValueError(
                f"series with order {order} needs {order + 1} coefficients, got {len(coeffs)}"
            )
        return cls(coeffs, order)

    @classmethod
    def from_json(cls, text: str) -> "TruncatedSeries":
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        return "".join(f"{k},{c}\n" for k, c in enumerate(self._coeffs))

    def to_text(self) -> str:
        """Render as ``1 - 3q + 3q^2 + ...`` (zero terms omitted)."""
        parts: list[str] = []
        for k, c in enumerate(self._coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "q" if k == 1 else f"q^{k}"
                body = mono if mag == 1 else f"{mag}{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts) if parts else "0"


def _convolve(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    # Skip zero coefficients of the sparser operand; theta and Euler series
    # are mostly zeros.
    out = [0] * (n + 1)
    nza = [(i, x) for i, x in enumerate(a[: n + 1]) if x]
    nzb = [(j, y) for j, y in enumerate(b[: n + 1]) if y]
    if len(nza) > len(nzb):
        nza, nzb = nzb, nza
    for i, x in nza:
        lim = n - i
        for j, y in nzb:
            if j > lim:
                break
            out[i + j] += x * y
    return out


def add(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    return s + t


def mul(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    return s * t


def invert_unit(s: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse of a series with constant term +1 or -1."""
    c0 = s[0]
    if c0 not in (1, -1):
        raise NotAUnit(f"constant term {c0} is not a unit in Z")
    n = s.order
    a = s.coeffs
    inv = [0] * (n + 1)
    inv[0] = c0  # 1/c0 == c0 for c0 = +-1
    for k in range(1, n + 1):
        acc = 0
        for j in range(1, k + 1):
            if a[j]:
                acc += a[j] * inv[k - j]
        inv[k] = -acc * c0
    return TruncatedSeries(inv, n)


def one_minus_q(order: int) -> TruncatedSeries:
    return TruncatedSeries([1, -1], order)


@lru_cache(maxsize=None)
def euler_infinity(order: int) -> TruncatedSeries:
    """(q)_inf = prod_{n>=1} (1 - q^n), via Euler's pentagonal number theorem."""
    c = [0] * (order + 1)
    k = 0
    while True:
        e1 = k * (3 * k - 1) // 2
        if e1 > order:
            break
        sign = -1 if k % 2 else 1
        c[e1] += sign
        e2 = k * (3 * k + 1) // 2
        if k and e2 <= order:
            c[e2] += sign
        k += 1
    return TruncatedSeries(c, order)


@lru_cache(maxsize=None)
def pochhammer(n: int, order: int) -> TruncatedSeries:
    """(q)_n = prod_{k=1}^{n} (1 - q^k) modulo q^(order+1)."""
    if n < 0:
        raise ValueError(f"pochhammer index must be nonnegative, got {n}")
    if n > order:
        return euler_infinity(order)
    c = [0] * (order + 1)
    c[0] = 1
    for k in range(1, n + 1):
        # multiply in place by (1 - q^k), high degrees first
        for i in range(order, k - 1, -1):
            c[i] -= c[i - k]
    return TruncatedSeries(c, order)


def _theta_exponent(b: int, n: int) -> int:
    twice = b * n * (n + 1) - 2 * n
    assert twice % 2 == 0, (b, n)
    return twice // 2


@lru_cache(maxsize=None)
def theta_h(b: int, order: int) -> TruncatedSeries:
    """Unary theta (odd ``b``) or false theta (even ``b``) series h_b(q).

    h_b(q) = sum_{n in Z} eps_b(n) q^{(b/2) n (n+1) - n}, where
    eps_b(n) = (-1)^n for odd b, and sign(n >= 0) for even b.
    """
    if b < 1:
        raise ValueError(f"h_b needs b >= 1, got {b}")
    c = [0] * (order + 1)

    def eps(n: int) -> int:
        if b % 2:
            return -1 if n % 2 else 1
        return 1 if n >= 0 else -1

    # The exponent is nondecreasing in |n| on both sides of n = 0 for b >= 1,
    # so each scan stops at the first exponent beyond the order.
    n = 0
    while (e := _theta_exponent(b, n)) <= order:
        c[e] += eps(n)
        n += 1
    n = -1
    while (e := _theta_exponent(b, n)) <= order:
        c[e] += eps(n)
        n -= 1
    return TruncatedSeries(c, order)
