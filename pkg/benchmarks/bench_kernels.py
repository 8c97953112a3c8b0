"""Compare the compiled and pure-Python search kernels on identical instances.

Usage:
    python3 benchmarks/bench_kernels.py [--graphs 10] [--n-graph 40] [--formulas 5] [--n-sat 35]
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time

from qcsp.classical import BACKEND, dsatur, sat_backtrack
from qcsp.instances import clause_count, gen_gnp, gen_ksat


def _time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench(label: str, cases, run, repeats: int) -> dict:
    """Time ``run(case, backend)`` for both backends and check they agree."""
    out = {}
    for backend in ("python", "cython"):
        secs, nodes = [], 0
        for case in cases:
            nodes += run(case, backend).nodes
            secs.append(_time(lambda: run(case, backend), repeats))
        out[backend] = (sum(secs), nodes)
    py, cy = out["python"], out["cython"]
    if py[1] != cy[1]:
        raise SystemExit(f"{label}: node counts differ ({py[1]} vs {cy[1]})")
    speedup = py[0] / cy[0]
    print(
        f"{label:<28} nodes {py[1]:>10}  python {py[0]:8.3f}s  cython {cy[0]:8.3f}s  "
        f"speedup x{speedup:6.1f}  ({cy[1] / cy[0]:.3g} nodes/s compiled)"
    )
    return {"python_s": py[0], "cython_s": cy[0], "nodes": py[1], "speedup": speedup}


def main(argv: list[str] | None = None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--graphs", type=int, default=10)
    p.add_argument("--n-graph", type=int, default=40)
    p.add_argument("--formulas", type=int, default=5)
    p.add_argument("--n-sat", type=int, default=35)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--repeats", type=int, default=1)
    args = p.parse_args(argv)

    if BACKEND != "cython":
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1

    graphs = [gen_gnp(args.n_graph, 0.5, seed=s, index=args.n_graph) for s in range(args.graphs)]
    m = clause_count(args.n_sat, args.k, "round")
    formulas = [gen_ksat(args.n_sat, args.k, m, seed=s, index=args.n_sat) for s in range(args.formulas)]

    results = [
        bench(f"dsatur chromatic n={args.n_graph}", graphs, lambda g, b: dsatur(g, backend=b).stats, args.repeats),
        bench(f"sat_backtrack k={args.k} n={args.n_sat}", formulas, lambda f, b: sat_backtrack(f, backend=b)[1], args.repeats),
    ]
    print(f"median speedup x{statistics.median(r['speedup'] for r in results):.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
