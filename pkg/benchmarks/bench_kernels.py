"""Compare the compiled kernels with the pure-Python fallback.

Workload: the oracle's inner loop, i.e. F(x M) mod p^t for every lattice M
of a weight type, until the first vanishing one (none here, so the whole
batch is scanned).

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from hypmin import kernels
from hypmin.forms import Form, exponents
from hypmin.oracle import _threshold, coset_lattices

CASES = [
    # (n_vars, degree, weight, p)
    (2, 4, (0, 1), 5),
    (3, 4, (0, 1, 2), 3),
    (4, 3, (0, 1, 2, 2), 2),
    (4, 3, (0, 1, 1, 1), 5),
]


def _random_form(n: int, d: int, rng: random.Random) -> Form:
    return Form(n, d, {e: rng.randint(-50, 50) for e in exponents(n, d)})


def run(repeat: int = 3) -> list[dict]:
    rng = random.Random(7)
    impls = kernels.implementations()
    rows = []
    for n, d, w, p in CASES:
        F = _random_form(n, d, rng)
        mats = np.asarray(coset_lattices(w, p), dtype=np.int64)
        modulus = p ** _threshold(n, d, w)
        plan = kernels.plan_for(n, d)
        coeffs = plan.dense(F.terms, modulus)
        row = {"case": f"n={n} d={d} w={list(w)} p={p}", "lattices": len(mats)}
        hits = set()
        for name, impl in impls.items():
            best = float("inf")
            for _ in range(repeat):
                t0 = time.perf_counter()
                hits.add(kernels.first_vanishing(coeffs, mats, modulus, plan, impl=impl))
                best = min(best, time.perf_counter() - t0)
            row[name] = best
        if len(hits) != 1:
            raise AssertionError(f"implementations disagree on {row['case']}")
        rows.append(row)
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rows = run(args.repeat)
    print(f"{'case':34s} {'lattices':>8s} {'python s':>10s} {'compiled s':>11s} {'speedup':>8s}")
    for r in rows:
        comp = r.get("compiled")
        speed = f"{r['python'] / comp:8.1f}" if comp else "     n/a"
        comp_s = f"{comp:11.4f}" if comp else "        n/a"
        print(f"{r['case']:34s} {r['lattices']:8d} {r['python']:10.4f} {comp_s} {speed}")


if __name__ == "__main__":
    main()
