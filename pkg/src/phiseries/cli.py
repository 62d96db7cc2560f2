"""Command-line front end: ``phiseries compute|verify|identify|oracle|catalog``.

Exit codes: 0 success, 1 verification failure, 2 invalid graph or input,
3 engine assertion, 4 identification found nothing.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
import time
from pathlib import Path

from . import __version__
from .identify import DEFAULT_B_MAX, DEFAULT_MAX_FACTORS, BadConstantTerm, identify_theta_product
from .nahm import EngineStats, compute_phi, compute_phi_tqft
from .nahm.oracle import BoxTooLarge, compute_phi_oracle
from .nahm.states import DecompositionMismatch, ParityViolation
from .plane_graph import GraphError, PlaneGraph, UnknownGraph, canonical_code, catalog, catalog_names, validate
from .qseries import NotAUnit, TruncatedSeries, invert_unit, one_minus_q
from .suites import SUITES, run_suite

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_ENGINE, EXIT_NOT_FOUND = 0, 1, 2, 3, 4
DEFAULT_ORDER = 20


class InputError(Exception):
    pass


# -- inputs -----------------------------------------------------------------


def load_graph(ref: str) -> PlaneGraph:
    """``catalog:NAME`` or ``file:PATH`` (a bare path is read as a file)."""
    if ref.startswith("catalog:"):
        try:
            return catalog(ref[len("catalog:"):])
        except UnknownGraph as exc:
            raise InputError(f"unknown catalog graph {exc}") from exc
    path = ref[len("file:"):] if ref.startswith("file:") else ref
    try:
        text = Path(path).read_text("utf-8")
    except OSError as exc:
        raise InputError(f"cannot read graph file {path}: {exc.strerror}") from exc
    try:
        return validate(json.loads(text))
    except json.JSONDecodeError as exc:
        raise InputError(f"graph file {path} is not valid JSON: {exc}") from exc


def load_series(ref: str) -> TruncatedSeries:
    path = ref[len("file:"):] if ref.startswith("file:") else ref
    try:
        return TruncatedSeries.from_json(Path(path).read_text("utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read series file {path}: {exc.strerror}") from exc
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"malformed series file {path}: {exc}") from exc


def render(s: TruncatedSeries, fmt: str) -> str:
    if fmt == "json":
        return s.to_json() + "\n"
    if fmt == "csv":
        return s.to_csv()
    return s.to_text() + "\n"


# -- cache ------------------------------------------------------------------


def cache_dir() -> Path:
    return Path(os.environ.get("PHI_CACHE_DIR", "./.phi-cache"))


def cache_key(g: PlaneGraph, order: int, mode: str) -> str:
    payload = json.dumps({"graph": canonical_code(g), "order": order, "mode": mode, "engine": __version__})
    return hashlib.sha256(payload.encode()).hexdigest()


def cache_get(key: str) -> TruncatedSeries | None:
    path = cache_dir() / f"{key}.json"
    try:
        entry = json.loads(path.read_text("utf-8"))
    except (OSError, json.JSONDecodeError):
        return None
    if entry.get("key") != key or entry.get("meta", {}).get("engine_version") != __version__:
        return None
    try:
        return TruncatedSeries.from_dict(entry["value"])
    except (KeyError, ValueError):
        return None


def cache_put(key: str, s: TruncatedSeries) -> None:
    d = cache_dir()
    d.mkdir(parents=True, exist_ok=True)
    entry = {"key": key, "value": s.to_dict(), "meta": {"engine_version": __version__, "timestamp": time.time()}}
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(entry, fh)
        os.replace(tmp, d / f"{key}.json")
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- commands ---------------------------------------------------------------


def _series_for(g: PlaneGraph, order: int, mode: str, jobs: int, use_cache: bool) -> TruncatedSeries:
    key = cache_key(g, order, mode)
    if use_cache:
        hit = cache_get(key)
        if hit is not None:
            return hit
    stats = EngineStats()
    s = compute_phi(g, order, jobs=jobs, stats=stats)
    if mode == "tqft":
        s = s * invert_unit(one_minus_q(order))
    for line in stats.lines():
        print(line, file=sys.stderr)
    if use_cache:
        cache_put(key, s)
    return s


def cmd_compute(args) -> int:
    g = load_graph(args.graph)
    s = _series_for(g, args.order, args.mode, args.jobs, not args.no_cache)
    sys.stdout.write(render(s, args.format))
    return EXIT_OK


def cmd_verify(args) -> int:
    failed = 0
    for check in run_suite(args.suite, args.order):
        print(check.line(), flush=True)
        failed += not check.ok
    print(f"{'FAIL' if failed else 'PASS'} suite {args.suite}: {failed} failed", flush=True)
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_identify(args) -> int:
    if (args.graph is None) == (args.series is None):
        raise InputError("give exactly one of --graph or --series")
    if args.series is not None:
        s = load_series(args.series)
        if args.order is not None:
            if args.order > s.order:
                raise InputError(f"series is known only to order {s.order}")
            s = s.truncate(args.order)
    else:
        order = args.order if args.order is not None else DEFAULT_ORDER
        s = _series_for(load_graph(args.graph), order, "reduced", 1, True)
    try:
        res = identify_theta_product(s, args.max_factors, args.b_max)
    except BadConstantTerm as exc:
        raise InputError(str(exc)) from exc
    print(res.to_json())
    return EXIT_OK if res.found else EXIT_NOT_FOUND


def cmd_oracle(args) -> int:
    g = load_graph(args.graph)
    try:
        s = compute_phi_oracle(g, args.order, mode=args.mode)
    except BoxTooLarge as exc:
        raise InputError(str(exc)) from exc
    sys.stdout.write(render(s, args.format))
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.name:
        try:
            g = catalog(args.name)
        except UnknownGraph as exc:
            raise InputError(f"unknown catalog graph {exc}") from exc
        print(g.to_json())
        return EXIT_OK
    for name in catalog_names(max_edges=args.max_edges):
        g = catalog(name)
        print(f"{name}\tvertices={len(g.vertices)}\tedges={len(g.edges)}\tfaces={len(g.bounded_faces)}")
    return EXIT_OK


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="phiseries", description="Stable q-series of plane graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="compute Phi_G to a given order")
    c.add_argument("--graph", required=True, help="catalog:NAME or file:PATH")
    c.add_argument("--order", type=int, default=DEFAULT_ORDER)
    c.add_argument("--format", choices=("json", "csv", "text"), default="text")
    c.add_argument("--mode", choices=("reduced", "tqft"), default="reduced")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--no-cache", action="store_true")
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=tuple(SUITES) + ("all",), default="all")
    v.add_argument("--order", type=int, default=None)
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("identify", help="search for a product of theta series")
    i.add_argument("--graph", default=None)
    i.add_argument("--series", default=None, help="file:PATH with a JSON series")
    i.add_argument("--order", type=int, default=None)
    i.add_argument("--max-factors", type=int, default=DEFAULT_MAX_FACTORS)
    i.add_argument("--b-max", type=int, default=DEFAULT_B_MAX)
    i.set_defaults(func=cmd_identify)

    o = sub.add_parser("oracle", help="brute-force evaluation (small orders)")
    o.add_argument("--graph", required=True)
    o.add_argument("--order", type=int, default=6)
    o.add_argument("--format", choices=("json", "csv", "text"), default="text")
    o.add_argument("--mode", choices=("reduced", "tqft"), default="reduced")
    o.set_defaults(func=cmd_oracle)

    k = sub.add_parser("catalog", help="list fixture graphs or print one as JSON")
    k.add_argument("name", nargs="?")
    k.add_argument("--max-edges", type=int, default=None)
    k.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for attr in ("order", "jobs"):
        val = getattr(args, attr, None)
        if val is not None and val < (1 if attr == "jobs" else 0):
            print(f"error: --{attr} must be {'positive' if attr == 'jobs' else 'nonnegative'}", file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, GraphError, NotAUnit) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ParityViolation, DecompositionMismatch, AssertionError) as exc:
        print(f"engine assertion: {exc}", file=sys.stderr)
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
