"""Named verification suites shared by ``phiseries verify``.

Each suite yields ``Check`` records; nothing here raises on a failed check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Callable, Iterator

from .identify import identify_theta_product
from .nahm import compute_phi
from .nahm.identities import verify_sbb
from .nahm.oracle import compute_phi_oracle
from .plane_graph import catalog, catalog_names, edge_connect, polygon, theorem1_prefix
from .qseries import TruncatedSeries, theta_h

__all__ = ["Check", "SUITES", "golden_rows", "golden_prefixes", "run_suite", "PRODUCT_CASES", "oracle_graphs"]

PRODUCT_CASES = [(g, r) for g in (3, 4) for r in (3, 4, 5)]


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        tail = f"  {self.detail}" if self.detail else ""
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}{tail}"


@lru_cache(maxsize=None)
def _golden() -> dict:
    return json.loads(resources.files("phiseries").joinpath("data/golden.json").read_text("utf-8"))


def golden_rows() -> dict[str, TruncatedSeries]:
    """The 21-term reference series of the irreducible graphs with 6 to 8 edges."""
    d = _golden()
    return {k: TruncatedSeries([int(c) for c in v], d["order"]) for k, v in d["series"].items()}


def golden_prefixes() -> dict[str, TruncatedSeries]:
    """Reference prefixes through q^5 for the three 9-edge graphs."""
    return {k: TruncatedSeries([int(c) for c in v], 5) for k, v in _golden()["prefix5"].items()}


def oracle_graphs() -> list[str]:
    """Every catalog graph with at most 8 edges (this includes P2..P8)."""
    return catalog_names(max_edges=8, include_optional=False)


def _diff(got: TruncatedSeries, want: TruncatedSeries) -> str:
    for k in range(min(got.order, want.order) + 1):
        if got[k] != want[k]:
            return f"first difference at q^{k}: got {got[k]}, expected {want[k]}"
    return ""


def suite_theorem1(order: int | None) -> Iterator[Check]:
    N = max(2, order or 2)
    for name in catalog_names():
        g = catalog(name)
        got = compute_phi(g, N).coeffs[:3]
        want = theorem1_prefix(g)
        yield Check(f"theorem1 {name}", tuple(got) == tuple(want), f"{list(got)} vs {list(want)}")


def suite_golden(order: int | None) -> Iterator[Check]:
    N = min(order if order is not None else 20, 20)
    for name, want in golden_rows().items():
        got = compute_phi(catalog(name), N)
        want = want.truncate(N)
        yield Check(f"golden-table {name}", got == want, _diff(got, want))


def suite_products(order: int | None) -> Iterator[Check]:
    N = order if order is not None else 15
    for gr, r in PRODUCT_CASES:
        G = polygon(gr)
        glued = edge_connect(G, G.outer_face[:2], polygon(r), ("v1", "v2"))
        got = compute_phi(glued, N)
        want = compute_phi(G, N) * theta_h(r, N)
        yield Check(f"products P{gr}.P{r}", got == want, _diff(got, want))
    target = theta_h(4, N) * theta_h(3, N) ** 2
    for name in ("G1_triple", "G2_triple", "G3_triple"):
        got = compute_phi(catalog(name), N)
        yield Check(f"products {name} = h4 h3^2", got == target, _diff(got, target))
    hit = identify_theta_product(target)
    yield Check("products identify h4 h3^2", hit.found and list(hit.factors) == [3, 3, 4], str(hit.factors))


def suite_oracle(order: int | None) -> Iterator[Check]:
    N = order if order is not None else 6
    for name in oracle_graphs():
        g = catalog(name)
        got = compute_phi(g, N)
        want = compute_phi_oracle(g, N)
        yield Check(f"oracle {name}", got == want, _diff(got, want))


def suite_sbb(order: int | None) -> Iterator[Check]:
    N = order if order is not None else 10
    for r in (3, 4, 5):
        for b_last in (0, 1, 2):
            lhs, rhs = verify_sbb(r, b_last, N)
            yield Check(f"sbb r={r} b_last={b_last}", lhs == rhs, _diff(lhs, rhs))


SUITES: dict[str, Callable[[int | None], Iterator[Check]]] = {
    "theorem1": suite_theorem1,
    "golden-table": suite_golden,
    "products": suite_products,
    "oracle": suite_oracle,
    "sbb": suite_sbb,
}


def run_suite(name: str, order: int | None = None) -> Iterator[Check]:
    if name == "all":
        for key in SUITES:
            yield from SUITES[key](order)
        return
    yield from SUITES[name](order)
