"""Search for a truncated series as a finite product of theta series h_b, b >= 3."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .qseries import TruncatedSeries, invert_unit, one_minus_q, theta_h

__all__ = ["BadConstantTerm", "IdentifyResult", "identify_theta_product", "verify_product",
           "DEFAULT_MAX_FACTORS", "DEFAULT_B_MAX"]

DEFAULT_MAX_FACTORS = 6
DEFAULT_B_MAX = 14


class BadConstantTerm(ValueError):
    pass


@dataclass(frozen=True)
class IdentifyResult:
    status: str
    factors: tuple = ()
    verified_order: int = 0
    max_factors: int = DEFAULT_MAX_FACTORS
    b_max: int = DEFAULT_B_MAX
    nodes: int = field(default=0, compare=False)

    @property
    def found(self) -> bool:
        return self.status == "found"

    def to_dict(self) -> dict:
        return {"status": self.status, "factors": list(self.factors), "verified_order": self.verified_order}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _first_nonzero(s: TruncatedSeries) -> int | None:
    for k in range(1, s.order + 1):
        if s[k]:
            return k
    return None


def identify_theta_product(s: TruncatedSeries, max_factors: int = DEFAULT_MAX_FACTORS,
                           b_max: int = DEFAULT_B_MAX) -> IdentifyResult:
    """Depth-first search over nondecreasing multisets of b in [3, b_max].

    Every h_b with b >= 3 starts 1 - q, so the q^1 coefficient of the
    remainder fixes how many factors are still needed, and the first
    coefficient where the remainder departs from (1 - q)^k rules out every
    candidate but the smallest remaining b.  Candidates are tried in
    increasing b, so the first hit is the lexicographically least multiset.
    """
    if s[0] != 1:
        raise BadConstantTerm(f"constant term is {s[0]}, expected 1")
    N = s.order
    inv = {b: invert_unit(theta_h(b, N)) for b in range(3, b_max + 1)}
    nodes = 0

    def rec(rem: TruncatedSeries, lo: int, left: int, chosen: list) -> tuple | None:
        nonlocal nodes
        nodes += 1
        if rem.is_one():
            return tuple(chosen)
        # every factor contributes exactly -1 to the q^1 coefficient
        need = -rem[1]
        if need < 1 or need > left:
            return None
        # h_b = (1 - q) + eps q^(b-1) + ..., eps = +1 (b even) or -1 (b odd), so
        # rem / (1-q)^need first differs from 1 at degree b_min - 1
        t = rem * invert_unit(one_minus_q(N)) ** need
        d = _first_nonzero(t)
        for b in range(lo, b_max + 1):
            if d is None:
                if b - 1 <= N:
                    continue
            elif b - 1 != d or (1 if b % 2 == 0 else -1) * t[d] <= 0:
                continue
            got = rec(rem * inv[b], b, left - 1, chosen + [b])
            if got is not None:
                return got
        return None

    hit = rec(s, 3, max_factors, [])
    if hit is None:
        return IdentifyResult("not_found", (), N, max_factors, b_max, nodes)
    return IdentifyResult("found", hit, N, max_factors, b_max, nodes)


def verify_product(s: TruncatedSeries, factors) -> bool:
    """True iff s equals prod_b theta_h(b) at s's order."""
    prod = TruncatedSeries.one(s.order)
    for b in factors:
        prod = prod * theta_h(int(b), s.order)
    return prod == s
