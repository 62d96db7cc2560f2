"""Admissible states and the forms A(a, b), B(a, b) of a plane graph."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..plane_graph import PlaneGraph

__all__ = [
    "AdmissibleState",
    "NotAdmissible",
    "DecompositionMismatch",
    "ParityViolation",
    "is_admissible",
    "eval_A",
    "eval_B",
    "eval_A_decomposed",
    "weight",
]


class NotAdmissible(ValueError):
    pass


class DecompositionMismatch(AssertionError):
    """The completed-square decomposition of A disagrees with A itself."""


class ParityViolation(ArithmeticError):
    """A contributing state has A + B odd (half-integral q-exponent)."""


@dataclass(frozen=True)
class AdmissibleState:
    """Labels ``a`` on bounded faces (by index) and ``b`` on vertices (by id).

    Missing labels are zero; the unbounded face has ``a = 0`` implicitly.
    """

    a: Mapping[int, int] = field(default_factory=dict)
    b: Mapping[str, int] = field(default_factory=dict)

    def a_of(self, p: int) -> int:
        return self.a.get(p, 0)

    def b_of(self, v: str) -> int:
        return self.b.get(v, 0)


def is_admissible(g: PlaneGraph, s: AdmissibleState, reduced: bool = True) -> bool:
    for p, face in enumerate(g.bounded_faces):
        ap = s.a_of(p)
        if any(ap + s.b_of(v) < 0 for v in face):
            return False
    if any(s.b_of(v) < 0 for v in g.outer_vertices):
        return False
    if reduced and s.b_of(g.root) != 0:
        return False
    return True


def _check(g: PlaneGraph, s: AdmissibleState) -> None:
    if not is_admissible(g, s, reduced=False):
        raise NotAdmissible(f"state {s} is not admissible for {g.name}")


def eval_A(g: PlaneGraph, s: AdmissibleState) -> int:
    """sum_p [l(p) a_p^2 + 2 a_p sum_{v in p} b_v] + 2 sum_{edges vw} b_v b_w.

    The edge sum runs over all edges of the graph, each once.
    """
    _check(g, s)
    total = 0
    for p, face in enumerate(g.bounded_faces):
        ap = s.a_of(p)
        total += len(face) * ap * ap + 2 * ap * sum(s.b_of(v) for v in face)
    total += 2 * sum(s.b_of(u) * s.b_of(v) for u, v in g.edges)
    return total


def eval_B(g: PlaneGraph, s: AdmissibleState) -> int:
    """2 sum_v b_v + sum_p (l(p) - 2) a_p."""
    _check(g, s)
    return 2 * sum(s.b_of(v) for v in g.vertices) + sum(
        (len(face) - 2) * s.a_of(p) for p, face in enumerate(g.bounded_faces)
    )


def eval_A_decomposed(g: PlaneGraph, s: AdmissibleState) -> list[int]:
    """Terms of the nonnegative decomposition of A.

    For each bounded face p (with b_p the minimum of b over p) the three
    terms ``l(p)(a_p+b_p)^2``, ``2(a_p+b_p) sum_v (b_v-b_p)`` and
    ``sum_{vw in p} (b_v-b_p)(b_w-b_p)``, followed by the outer-walk term
    ``sum_{vw in p_inf} b_v b_w``.  Raises :class:`DecompositionMismatch`
    if the terms do not add up to :func:`eval_A`.
    """
    _check(g, s)
    terms: list[int] = []
    for p, face in enumerate(g.bounded_faces):
        ap = s.a_of(p)
        bs = [s.b_of(v) for v in face]
        bp = min(bs)
        x = ap + bp
        n = len(face)
        terms.append(n * x * x)
        terms.append(2 * x * sum(b - bp for b in bs))
        terms.append(sum((bs[i] - bp) * (bs[(i + 1) % n] - bp) for i in range(n)))
    walk = g.outer_face
    m = len(walk)
    terms.append(sum(s.b_of(walk[i]) * s.b_of(walk[(i + 1) % m]) for i in range(m)) if m > 1 else 0)
    a = eval_A(g, s)
    if sum(terms) != a:
        raise DecompositionMismatch(f"decomposition sums to {sum(terms)}, A = {a}")
    return terms


def weight(g: PlaneGraph, s: AdmissibleState) -> int:
    """The q-exponent (A + B) / 2 of a state's leading monomial."""
    twice = eval_A(g, s) + eval_B(g, s)
    if twice % 2:
        raise ParityViolation(f"A + B = {twice} is odd")
    return twice // 2
