"""Time the numba and numpy backends on the two float kernels.

    python3 benchmarks/bench_kernels.py [--repeat N] [--json]

Each numba kernel is called once before timing so that compilation is excluded.
"""

import argparse
import json
import statistics
import time

import numpy as np

from borcherds_lab import _kernels
from borcherds_lab.hilbert import borcherds_expand
from borcherds_lab.plus_space import builtin_f1
from borcherds_lab.quadfield import gundlach_chamber, gundlach_rho


def _time(fn, repeat):
    fn()
    samples = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t)
    return statistics.median(samples)


def lattice_case(backend, R):
    return lambda: _kernels.enumerate_lattice_arrays(5, 1, 1 + 2j, 0.7 + 1.5j, R, backend=backend)


def hilbert_case(backend, nu1, nu2, coeff, compensated):
    return lambda: _kernels.hilbert_terms_sum(nu1, nu2, coeff, 0.3 + 2j, 0.1 + 1.4j, compensated, backend=backend)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    # the D=5 lift at trace bound 3, tiled to a size where timing is meaningful
    E = borcherds_expand(builtin_f1(), gundlach_chamber(), gundlach_rho(), 3)
    items = E.sorted_items()
    sq = 5 ** 0.5
    reps = 2000
    nu1 = np.tile([(v + u / sq) / 2 for (u, v), _ in items], reps)
    nu2 = np.tile([(v - u / sq) / 2 for (u, v), _ in items], reps)
    coeff = np.tile([float(c) for _, c in items], reps)

    cases = {}
    for R in (200.0, 2000.0, 20000.0):
        n = len(_kernels.enumerate_lattice_arrays(5, 1, 1 + 2j, 0.7 + 1.5j, R, backend="numpy")[0])
        cases[f"lattice R={R:g} ({n} points)"] = {b: lattice_case(b, R) for b in backends}
    for comp in (False, True):
        cases[f"hilbert sum, {len(coeff)} terms, compensated={comp}"] = {
            b: hilbert_case(b, nu1, nu2, coeff, comp) for b in backends}

    rows = []
    for name, fns in cases.items():
        t = {b: _time(fn, args.repeat) for b, fn in fns.items()}
        row = {"case": name, **{f"{b}_s": round(v, 6) for b, v in t.items()}}
        if "numba" in t:
            row["speedup"] = round(t["numpy"] / t["numba"], 2)
        rows.append(row)

    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'case':52s} {'numpy [s]':>10s} {'numba [s]':>10s} {'speedup':>8s}")
    for r in rows:
        print(f"{r['case']:52s} {r['numpy_s']:10.4f} {r.get('numba_s', float('nan')):10.4f} "
              f"{r.get('speedup', float('nan')):8.2f}")


if __name__ == "__main__":
    main()
