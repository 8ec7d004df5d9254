"""Time the numba kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py --repeat 5

Both paths are run on identical inputs and their outputs compared before
any timing is reported.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from fanocert import _kernels as K
from fanocert.resgraph.corpus import random_graph


def _boxes(n: int, rng):
    nu_lo = rng.uniform(-4, 4, n)
    th_lo = rng.uniform(0.5, 4, n)
    w = rng.uniform(1e-3, 0.5, n)
    A = np.array([1.0, -1.0, 0.0])
    C = np.array([0.0, 2.0, -1.0])
    B = np.array([3.0, 0.0, -1.0])
    return nu_lo, nu_lo + w, th_lo, th_lo + w, 8.0, A, C, B


def _graphs(n: int, rng, max_K: int = 12):
    adjs = np.zeros((n, max_K + 1, max_K + 1), dtype=np.int64)
    srcs = np.zeros(n, dtype=np.int64)
    for k in range(n):
        g = random_graph(rng, int(rng.integers(3, max_K + 1)))
        for i, j in g.arrows:
            adjs[k, i, j] = 1
        srcs[k] = g.K
    return adjs, srcs


def _best(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--boxes", type=int, default=200_000)
    ap.add_argument("--graphs", type=int, default=20_000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)
    if not K.HAVE_NUMBA:
        print(f"numba unavailable (or {K.NO_NUMBA_ENV} set); timing numpy only")
    rng = np.random.default_rng(args.seed)
    box = _boxes(args.boxes, rng)
    adjs, srcs = _graphs(args.graphs, rng)

    rows = []
    lb_np, ok_np = K.box_bounds(*box, use_numba=False)
    pc_np = K.path_counts_batch(adjs, srcs, use_numba=False)
    t_box_np = _best(lambda: K.box_bounds(*box, use_numba=False), args.repeat)
    t_pc_np = _best(lambda: K.path_counts_batch(adjs, srcs, use_numba=False), args.repeat)
    if K.HAVE_NUMBA:
        t0 = time.perf_counter()
        lb_nb, ok_nb = K.box_bounds(*box, use_numba=True)
        pc_nb = K.path_counts_batch(adjs, srcs, use_numba=True)
        compile_s = time.perf_counter() - t0
        assert np.array_equal(lb_np, lb_nb) and np.array_equal(ok_np, ok_nb), "box bounds differ"
        assert np.array_equal(pc_np, pc_nb), "path counts differ"
        t_box_nb = _best(lambda: K.box_bounds(*box, use_numba=True), args.repeat)
        t_pc_nb = _best(lambda: K.path_counts_batch(adjs, srcs, use_numba=True), args.repeat)
        rows.append(("box_bounds", args.boxes, t_box_np, t_box_nb))
        rows.append(("path_counts_batch", args.graphs, t_pc_np, t_pc_nb))
        print(f"first numba call incl. compilation: {compile_s:.2f} s (outputs identical)")
    else:
        rows.append(("box_bounds", args.boxes, t_box_np, float("nan")))
        rows.append(("path_counts_batch", args.graphs, t_pc_np, float("nan")))

    print(f"{'kernel':<20}{'n':>9}{'numpy ms':>12}{'numba ms':>12}{'speedup':>9}")
    for name, n, a, b in rows:
        print(f"{name:<20}{n:>9}{a * 1e3:>12.2f}{b * 1e3:>12.2f}{a / b:>8.1f}x")


if __name__ == "__main__":
    main()
