"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--threads 1] [--json out.json]

Each workload is run on both backends and the outputs are compared before
any timing is reported.
"""
import argparse
import json
import random
import time

import numpy as np

from khpotts import fixtures, kernels
from khpotts.graphs import random_planar_graph


def workloads():
    knot = fixtures.braid_closure([1, -2, 1, -2] * 3 + [1, 2], 3)  # 14 crossings
    rng = random.Random(0)
    graph = random_planar_graph(rng, max_edges=16, min_edges=16)
    grid_u = [0, 1, 3, 4, 6, 7, 0, 1, 2, 3, 4, 5]
    grid_v = [1, 2, 4, 5, 7, 8, 3, 4, 5, 6, 7, 8]  # 3 x 3 grid
    return [
        (f"loop_counts ({knot.n_crossings} crossings)",
         lambda b, t: kernels.loop_counts(knot.indexed_tuples(), knot.arc_count, knot.n_crossings,
                                          threads=t, backend=b)),
        (f"subgraph_histogram ({graph.n_edges} edges)",
         lambda b, t: kernels.subgraph_histogram(graph.n_nodes, [u for u, _ in graph.edges],
                                                 [v for _, v in graph.edges], threads=t, backend=b)),
        ("energy_histogram (Q=5, 3x3 grid)",
         lambda b, t: kernels.energy_histogram(5, 9, grid_u, grid_v, threads=t, backend=b)),
    ]


def best_of(fn, repeat):
    times = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--json", default=None, help="write results to this file")
    args = parser.parse_args(argv)
    if kernels._ckernels is None:
        parser.error("compiled kernels are not built; run `pip install -e . --no-build-isolation`")

    rows = []
    print(f"{'workload':42s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, fn in workloads():
        t_py, out_py = best_of(lambda: fn("python", args.threads), args.repeat)
        t_c, out_c = best_of(lambda: fn("cython", args.threads), args.repeat)
        if not np.array_equal(out_py, out_c):
            raise SystemExit(f"backends disagree on {name}")
        rows.append({"workload": name, "python_s": t_py, "cython_s": t_c, "speedup": t_py / t_c})
        print(f"{name:42s} {t_py:10.4f} {t_c:10.4f} {t_py / t_c:7.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"threads": args.threads, "repeat": args.repeat, "results": rows}, fh, indent=2)


if __name__ == "__main__":
    main()
