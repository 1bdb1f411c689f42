"""Compare the compiled and interpreted kernels on identical inputs.

    python benchmarks/bench_kernels.py --repeat 3 --json
"""
from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from girthlab import _kernels_py, kernels
from girthlab.graph import circulant, random_mfree, random_outregular


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _equal(a, b) -> bool:
    if isinstance(a, tuple):
        return len(a) == len(b) and all(_equal(x, y) for x, y in zip(a, b))
    return bool(np.array_equal(a, b)) if isinstance(a, np.ndarray) else a == b


def cases():
    # the graph is built outside the timed call; cached CSR/word rows are warmed first
    g_girth = random_mfree(300, 5, 0.3, seed=1)
    g_dense = random_outregular(200, 60, seed=2)
    g_circ = circulant(400, range(1, 60))
    g_fas = random_mfree(18, 3, 0.6, seed=3)
    for g in (g_girth, g_dense, g_circ, g_fas):
        g.csr_out, g.csr_in, g.word_rows
    yield "shortest_cycle mfree(300)", lambda k: k.shortest_cycle(g_girth, 0, g_girth.n, g_girth.n + 1)
    yield "shortest_cycle circulant(400)", lambda k: k.shortest_cycle(g_circ, 0, g_circ.n, g_circ.n + 1)
    yield "edge_counts outregular(200,60)", lambda k: k.edge_counts(g_dense)
    yield "vertex_triangles outregular(200,60)", lambda k: k.vertex_triangles(g_dense)
    yield "fas_dp n=18", lambda k: k.fas_dp(g_fas.n, list(g_fas.out_rows))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    compiled = kernels.compiled()
    if compiled is None:
        print("compiled kernels are not built; only the interpreted timings are shown", file=sys.stderr)
    rows = []
    for name, call in cases():
        py = _time(lambda: call(_kernels_py), args.repeat)
        cy = _time(lambda: call(compiled), args.repeat) if compiled else None
        if compiled is not None:
            a, b = call(_kernels_py), call(compiled)
            if not _equal(a, b):
                raise SystemExit(f"backends disagree on {name}")
        rows.append({"case": name, "python_s": py, "cython_s": cy, "speedup": (py / cy) if cy else None})
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'case':40s} {'python [s]':>12s} {'cython [s]':>12s} {'speedup':>9s}")
        for r in rows:
            cy = f"{r['cython_s']:12.4f}" if r["cython_s"] is not None else f"{'-':>12s}"
            sp = f"{r['speedup']:9.1f}" if r["speedup"] is not None else f"{'-':>9s}"
            print(f"{r['case']:40s} {r['python_s']:12.4f} {cy} {sp}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
