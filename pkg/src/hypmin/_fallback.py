"""Pure-Python implementations of the modular substitution kernels.

Same interface as the compiled ``_kernels`` module; selected at import time
when the extension is unavailable or disabled.
"""

from __future__ import annotations

import numpy as np


def _subst(coeffs, T, m, plan):
    nv = plan.n_vars
    d = plan.degree
    mul1 = plan.mul1_list
    top = plan.offsets_list[d]
    ntop = plan.offsets_list[d + 1] - top
    exps = plan.top_exps
    cols = [[(k, T[k][j] % m) for k in range(nv) if T[k][j] % m] for j in range(nv)]
    out = [0] * ntop
    for t in range(ntop):
        c = int(coeffs[t]) % m
        if not c:
            continue
        cur = {0: c}
        for j, a in enumerate(exps[t]):
            col = cols[j]
            for _ in range(a):
                nxt: dict = {}
                for idx, v in cur.items():
                    row = mul1[idx]
                    for k, tk in col:
                        tgt = row[k]
                        nxt[tgt] = (nxt.get(tgt, 0) + v * tk) % m
                cur = nxt
        for idx, v in cur.items():
            out[idx - top] = (out[idx - top] + v) % m
    return out


def subst_mod(coeffs, T, m, plan):
    T = [[int(x) for x in row] for row in np.asarray(T).tolist()]
    return np.asarray(_subst(coeffs, T, int(m), plan), dtype=np.int64)


def first_vanishing(coeffs, mats, m, plan):
    m = int(m)
    coeffs = [int(c) % m for c in coeffs]
    for r, M in enumerate(mats):
        M = [[int(x) for x in row] for row in (M.tolist() if hasattr(M, "tolist") else M)]
        if not any(_subst(coeffs, M, m, plan)):
            return r
    return -1
