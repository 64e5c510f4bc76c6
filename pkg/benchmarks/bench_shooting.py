"""Time the batched RK4 shooting kernel with numba and with plain numpy.

    python benchmarks/bench_shooting.py [--batch 32] [--repeat 5]
"""
import argparse
import time

import numpy as np

from levyleblond._accel import HAVE_NUMBA
from levyleblond.oracle import RadialGrid, node_counts, shoot_eigenvalue
from levyleblond.params import PhysParams, QuantumNumbers


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--batch", type=int, default=32)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    params = PhysParams()
    grid = RadialGrid.for_state(2, params)
    q = QuantumNumbers(1, 1)
    energies = -np.geomspace(1e-4, 1e-6, args.batch)
    backends = ["numpy"] + (["numba"] if HAVE_NUMBA else [])
    results = {}
    for b in backends:
        node_counts(energies[:2], q, params, grid, backend=b)  # warm-up / JIT
        t, nodes = best_of(lambda: node_counts(energies, q, params, grid, backend=b), args.repeat)
        ts, res = best_of(lambda: shoot_eigenvalue(1, 1, params, grid, backend=b), 1)
        results[b] = (t, nodes, ts, res.E)
        print(f"{b:6s} batch of {args.batch} shoots: {t * 1e3:8.2f} ms   "
              f"full eigenvalue: {ts * 1e3:8.1f} ms   E = {res.E:.17g}")
    if len(results) == 2:
        same = np.array_equal(results["numpy"][1], results["numba"][1])
        print(f"speed-up {results['numpy'][0] / results['numba'][0]:.1f}x, node counts identical: {same}, "
              f"|dE| = {abs(results['numpy'][3] - results['numba'][3]):.1e}")


if __name__ == "__main__":
    main()
