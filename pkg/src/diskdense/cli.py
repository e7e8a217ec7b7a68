"""Command-line surface: generation, all solvers, sampler audits, benchmarks.

Every solver subcommand emits one JSON run record (schema "disk-dense/1");
re-running with the same seed and inputs reproduces the result payload
byte-for-byte (wall-clock times live in a separate `timings` object).
Exit codes: 0 success, 2 usage or input errors, 1 unexpected runtime errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from .approx1 import densest_disks_1eps
from .approx2 import densest_disks_2eps
from .density import DensityResult, ExplicitGraph, charikar_peel, exact_densest
from .geom import Disk, Instance, generate, read_instance, write_instance
from .pairs import all_pairs
from .rngutil import substream
from .sampletree import SampleTree

SCHEMA_VERSION = "disk-dense/1"
SCHEMA_PATH = Path(__file__).parent / "schema" / "run_record.schema.json"


def _parse_query(text: str, fallback_id: int) -> Disk:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"query must be 'cx,cy,r', got {text!r}")
    cx, cy, r = (float(p) for p in parts)
    return Disk(fallback_id, cx, cy, r)


def _check_eps(eps: float, hi: float = 1.0) -> float:
    if hi >= 1.0:
        if not (0.0 < eps < hi):
            raise ValueError(f"eps must lie in (0, {hi:g}), got {eps}")
    elif not (0.0 < eps <= hi):
        raise ValueError(f"eps must lie in (0, {hi:g}], got {eps}")
    return eps


def _result_payload(res: DensityResult) -> dict:
    info = {k: v for k, v in res.info.items()}
    return {
        "subset": [int(x) for x in res.subset],
        "density": str(res.density),
        "density_float": res.density_float,
        "algorithm": res.algorithm,
        "info": info,
    }


def _record(command: str, inst: Instance, params: dict, res: DensityResult,
            total: float, diagnostics: dict | None = None) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "command": command,
        "instance": inst.name,
        "n": inst.n,
        "params": params,
        "result": _result_payload(res),
        "timings": {"total": total, "solver": res.wall_time},
        "diagnostics": diagnostics or {},
    }


def _emit(payload, out: str | None) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def audit_sampler(inst: Instance, eps: float, draws: int, seed: int = 0,
                  c: float = 2.0, query_id: int = 0) -> dict:
    """Empirical audit of the sampling hierarchy on one member query disk:
    neighbor-sample frequencies against uniform (total-variation distance)
    and count-estimate errors, with machine-checkable pass flags."""
    _check_eps(eps, 0.5)
    if draws < 1000:
        raise ValueError(f"audit needs at least 1000 draws, got {draws}")
    if not (0 <= query_id < inst.n):
        raise ValueError(f"query id {query_id} outside instance")
    tree = SampleTree(inst.disks, c=c,
                      seed=int(substream(seed, "tree-build").integers(2 ** 63)))
    q = inst.disks[query_id]
    rng = substream(seed, "neighbor-draws")

    support = tree.root.report(q).ids
    support = support[support != q.id]
    counts: dict[int, int] = {}
    if len(support):
        for _ in range(draws):
            got = tree.sample_excluding(q, q.id, eps, rng)
            counts[got] = counts.get(got, 0) + 1
        uniform = 1.0 / len(support)
        tv = 0.5 * sum(abs(counts.get(int(i), 0) / draws - uniform) for i in support)
    else:
        tv = 0.0
    tv_threshold = eps + 3.0 * math.sqrt(math.log(max(inst.n, 2)) / draws)

    beta = int(tree.root.count(q, None)[1])
    est_rng = substream(seed, "queries")
    fails = 0
    errors = []
    for _ in range(draws):
        est, _ = tree.approx_count(q, eps, est_rng)
        if beta > 0:
            err = est / beta - 1.0
            errors.append(err)
            if not (-eps < err < eps):
                fails += 1
        elif est != 0:
            fails += 1
    fail_fraction = fails / draws
    hist, edges = np.histogram(errors if errors else [0.0], bins=20)

    return {
        "schema": SCHEMA_VERSION,
        "command": "audit-sampler",
        "instance": inst.name,
        "n": inst.n,
        "params": {"eps": eps, "draws": draws, "seed": seed, "c": c,
                   "query_id": query_id},
        "support": int(len(support)),
        "beta": beta,
        "tv": tv,
        "tv_threshold": tv_threshold,
        "tv_pass": bool(tv <= tv_threshold),
        "estimate_fail_fraction": fail_fraction,
        "estimate_pass": bool(fail_fraction <= 0.05),
        "frequencies": {str(int(k)): v for k, v in sorted(counts.items())}
        if len(counts) <= 1024 else {},
        "error_histogram": {"counts": hist.tolist(),
                            "edges": [float(e) for e in edges]},
    }


def _cmd_gen(args) -> int:
    inst = generate(args.kind, args.n, seed=args.seed, side=args.side,
                    rmin=args.rmin, rmax=args.rmax, r=args.r,
                    clusters=args.clusters, spread=args.spread)
    write_instance(inst, args.out)
    print(json.dumps({"schema": SCHEMA_VERSION, "command": "gen",
                      "instance": inst.name, "n": inst.n, "out": args.out,
                      "params": {"kind": args.kind, "n": args.n, "seed": args.seed}}))
    return 0


def _cmd_pairs(args) -> int:
    inst = read_instance(args.instance)
    pl = all_pairs(inst)
    if args.format == "json":
        _emit(json.dumps([[int(u), int(v)] for u, v in pl]), args.out)
    else:
        _emit("\n".join(f"{u} {v}" for u, v in pl), args.out)
    return 0


def _cmd_exact(args) -> int:
    t0 = time.perf_counter()
    inst = read_instance(args.instance)
    if inst.n > args.cap:
        raise ValueError(f"instance has {inst.n} disks, above the exact cap {args.cap} "
                         "(raise --cap if you mean it)")
    g = ExplicitGraph.from_pairs(inst.n, all_pairs(inst))
    res = exact_densest(g)
    _emit(_record("exact", inst, {"cap": args.cap}, res,
                  time.perf_counter() - t0, {"m": g.m}), args.out)
    return 0


def _cmd_peel(args) -> int:
    t0 = time.perf_counter()
    inst = read_instance(args.instance)
    g = ExplicitGraph.from_pairs(inst.n, all_pairs(inst))
    res = charikar_peel(g)
    _emit(_record("peel", inst, {}, res, time.perf_counter() - t0, {"m": g.m}),
          args.out)
    return 0


def _cmd_approx2(args) -> int:
    t0 = time.perf_counter()
    inst = read_instance(args.instance)
    _check_eps(args.eps)
    res = densest_disks_2eps(inst, args.eps, c=args.c, seed=args.seed,
                             report_exact=args.exact_density)
    _emit(_record("approx2", inst,
                  {"eps": args.eps, "c": args.c, "seed": args.seed,
                   "exact_density": args.exact_density},
                  res, time.perf_counter() - t0), args.out)
    return 0


def _cmd_approx1(args) -> int:
    t0 = time.perf_counter()
    inst = read_instance(args.instance)
    _check_eps(args.eps)
    res = densest_disks_1eps(inst, args.eps, c=args.c, c_prime=args.c_prime,
                             seed=args.seed, sparse_factor=args.sparse_threshold)
    diag = {k: res.info.get(k) for k in ("path", "m_bar", "r") if k in res.info}
    _emit(_record("approx1", inst,
                  {"eps": args.eps, "c": args.c, "c_prime": args.c_prime,
                   "seed": args.seed, "sparse_threshold": args.sparse_threshold},
                  res, time.perf_counter() - t0, diag), args.out)
    return 0


def _cmd_estimate(args) -> int:
    inst = read_instance(args.instance)
    _check_eps(args.eps, 0.5)
    q = _parse_query(args.query, inst.n)
    tree = SampleTree(inst.disks, c=args.c,
                      seed=int(substream(args.seed, "tree-build").integers(2 ** 63)))
    res = tree.query(q, args.eps, substream(args.seed, "queries"))
    _emit({"schema": SCHEMA_VERSION, "command": "estimate", "instance": inst.name,
           "n": inst.n,
           "params": {"eps": args.eps, "c": args.c, "seed": args.seed,
                      "query": args.query},
           "estimate": res.estimate, "exact": res.exact, "j": res.j,
           "sample_id": res.sample}, args.out)
    return 0


def _cmd_probe(args) -> int:
    inst = read_instance(args.instance)
    from .report import ReportIndex
    idx = ReportIndex(inst.disks)
    q = _parse_query(args.query, inst.n)
    out = idx.report(q, limit=args.limit)
    _emit({"schema": SCHEMA_VERSION, "command": "probe", "instance": inst.name,
           "n": inst.n, "params": {"query": args.query, "limit": args.limit},
           "overflowed": out.overflowed,
           "ids": None if out.overflowed else [int(i) for i in out.ids],
           "count_seen": out.count_seen}, args.out)
    return 0


def _cmd_audit(args) -> int:
    inst = read_instance(args.instance)
    rep = audit_sampler(inst, args.eps, args.draws, seed=args.seed, c=args.c,
                        query_id=args.query_id)
    _emit(rep, args.out)
    return 0


def _cmd_bench(args) -> int:
    sizes = [int(float(tok)) for tok in args.n.split(",")]
    _check_eps(args.eps)
    runs = []
    for n in sizes:
        side = 0.95 * math.sqrt(n)   # keeps the expected degree constant
        inst = generate("uniform", n, seed=args.seed, side=side, rmin=0.5, rmax=1.0)
        t0 = time.perf_counter()
        res = densest_disks_1eps(inst, args.eps, seed=args.seed)
        dt = time.perf_counter() - t0
        runs.append({"n": n, "seconds": dt, "path": res.info.get("path"),
                     "density": str(res.density)})
    factors = [runs[i + 1]["seconds"] / max(runs[i]["seconds"], 1e-9)
               for i in range(len(runs) - 1)]
    _emit({"schema": SCHEMA_VERSION, "command": "bench",
           "params": {"kind": args.kind, "n": args.n, "eps": args.eps,
                      "seed": args.seed},
           "runs": runs, "growth_factors": factors,
           "max_growth_factor": max(factors) if factors else None}, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="diskdense",
                                description="Densest subsets of disk intersection graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, eps=True, seed=True, out=True):
        if eps:
            sp.add_argument("--eps", type=float, default=0.5)
        if seed:
            sp.add_argument("--seed", type=int, default=0)
        if out:
            sp.add_argument("--out", default=None, help="write output here instead of stdout")

    sp = sub.add_parser("gen", help="generate an instance file")
    sp.add_argument("--kind", choices=["uniform", "clustered", "clique"], required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--side", type=float, default=10.0)
    sp.add_argument("--rmin", type=float, default=0.5)
    sp.add_argument("--rmax", type=float, default=1.0)
    sp.add_argument("--r", type=float, default=1.0)
    sp.add_argument("--clusters", type=int, default=5)
    sp.add_argument("--spread", type=float, default=1.0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", required=True, help="instance file destination")
    sp.set_defaults(func=_cmd_gen)

    sp = sub.add_parser("pairs", help="enumerate all intersecting pairs")
    sp.add_argument("instance")
    sp.add_argument("--format", choices=["lines", "json"], default="lines")
    common(sp, eps=False, seed=False)
    sp.set_defaults(func=_cmd_pairs)

    sp = sub.add_parser("exact", help="exact densest subset via min-cut")
    sp.add_argument("instance")
    sp.add_argument("--cap", type=int, default=2000)
    common(sp, eps=False, seed=False)
    sp.set_defaults(func=_cmd_exact)

    sp = sub.add_parser("peel", help="greedy peeling 2-approximation")
    sp.add_argument("instance")
    common(sp, eps=False, seed=False)
    sp.set_defaults(func=_cmd_peel)

    sp = sub.add_parser("approx2", help="(2+eps)-approximation without edges")
    sp.add_argument("instance")
    sp.add_argument("--c", type=float, default=2.0)
    sp.add_argument("--exact-density", action="store_true", default=True)
    sp.add_argument("--no-exact-density", dest="exact_density", action="store_false")
    common(sp)
    sp.set_defaults(func=_cmd_approx2)

    sp = sub.add_parser("approx1", help="(1+eps)-approximation via edge sampling")
    sp.add_argument("instance")
    sp.add_argument("--c", type=float, default=2.0)
    sp.add_argument("--c-prime", type=float, default=32.0)
    sp.add_argument("--sparse-threshold", type=float, default=4.0,
                    help="sparse-path dispatch factor multiplying n*log(n)/eps^2")
    common(sp)
    sp.set_defaults(func=_cmd_approx1)

    sp = sub.add_parser("estimate", help="approximate count + sample for one query disk")
    sp.add_argument("instance")
    sp.add_argument("--query", required=True, help="cx,cy,r")
    sp.add_argument("--c", type=float, default=2.0)
    sp.add_argument("--eps", type=float, default=0.25)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=_cmd_estimate)

    sp = sub.add_parser("probe", help="raw reporting query (debugging)")
    sp.add_argument("instance")
    sp.add_argument("--query", required=True, help="cx,cy,r")
    sp.add_argument("--limit", type=int, default=None)
    common(sp, eps=False, seed=False)
    sp.set_defaults(func=_cmd_probe)

    sp = sub.add_parser("audit-sampler", help="empirical uniformity/accuracy audit")
    sp.add_argument("instance")
    sp.add_argument("--draws", type=int, default=10000)
    sp.add_argument("--query-id", type=int, default=0)
    sp.add_argument("--c", type=float, default=2.0)
    sp.add_argument("--eps", type=float, default=0.25)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=_cmd_audit)

    sp = sub.add_parser("bench", help="timing sweep for approx1")
    sp.add_argument("--kind", choices=["uniform"], default="uniform")
    sp.add_argument("--n", default="10000,20000,40000",
                    help="comma-separated sizes, scientific notation ok")
    common(sp)
    sp.set_defaults(func=_cmd_bench)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:   # pragma: no cover - defensive
        print(f"runtime error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
