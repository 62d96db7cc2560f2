"""Time Phi of G8_7 to a high order (default 50) and print the series.

Usage: python scripts/bench_g87.py [ORDER] [JOBS]
"""

import sys
import time

from phiseries.nahm import EngineStats, compute_phi
from phiseries.plane_graph import catalog, theorem1_prefix


def main() -> None:
    order = int(sys.argv[1]) if len(sys.argv) > 1 else 50
    jobs = int(sys.argv[2]) if len(sys.argv) > 2 else 1
    g = catalog("G8_7")
    stats = EngineStats()
    t0 = time.perf_counter()
    s = compute_phi(g, order, jobs=jobs, stats=stats)
    elapsed = time.perf_counter() - t0
    # internal invariants only: no reference values exist at this order
    assert tuple(s.coeffs[:3]) == theorem1_prefix(g)
    print(s.to_text())
    print(f"order={order} jobs={jobs} seconds={elapsed:.1f} leaves={stats.leaves}")


if __name__ == "__main__":
    main()
