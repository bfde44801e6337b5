# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular substitution kernels.

Forms are dense int64 coefficient vectors over all monomials of degree
<= d (see ``kernels.SubstitutionPlan``). Arithmetic is mod m with m < 2**31.
"""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free
from libc.string cimport memset

ctypedef long long i64

cnp.import_array()


cdef void _subst(const i64[::1] coeffs, const i64[:, ::1] T, i64 m,
                 const i64[:, ::1] mul1, const i64[:, ::1] exps,
                 const i64[::1] offsets, int nv, int d,
                 i64* out, i64* bufa, i64* bufb) noexcept nogil:
    # out has size offsets[d+1]-offsets[d]; buffers sized for the full table.
    cdef int ntop = <int>(offsets[d + 1] - offsets[d])
    cdef int t, j, k, a, step, idx, deg, lo, hi, tgt
    cdef i64 c, v, tk
    cdef i64* cur
    cdef i64* nxt
    cdef i64* tmp
    memset(out, 0, ntop * sizeof(i64))
    for t in range(ntop):
        c = coeffs[t] % m
        if c < 0:
            c += m
        if c == 0:
            continue
        cur = bufa
        nxt = bufb
        cur[0] = c  # degree-0 product lives at global index 0
        deg = 0
        for j in range(nv):
            a = <int>exps[offsets[d] + t, j]
            for step in range(a):
                lo = <int>offsets[deg]
                hi = <int>offsets[deg + 1]
                memset(nxt + offsets[deg + 1], 0,
                       (offsets[deg + 2] - offsets[deg + 1]) * sizeof(i64))
                for idx in range(lo, hi):
                    v = cur[idx]
                    if v == 0:
                        continue
                    for k in range(nv):
                        tk = T[k, j]
                        if tk == 0:
                            continue
                        tgt = <int>mul1[idx, k]
                        nxt[tgt] = (nxt[tgt] + v * tk) % m
                deg += 1
                tmp = cur
                cur = nxt
                nxt = tmp
        lo = <int>offsets[d]
        for idx in range(ntop):
            out[idx] = (out[idx] + cur[lo + idx]) % m


def subst_mod(coeffs, T, long long m, plan):
    """Dense F(x*T) mod m for the top-degree coefficient vector ``coeffs``."""
    cdef i64[::1] cv = np.ascontiguousarray(coeffs, dtype=np.int64)
    cdef i64[:, ::1] tv = np.ascontiguousarray(np.asarray(T, dtype=np.int64) % m)
    cdef i64[:, ::1] mul1 = plan.mul1
    cdef i64[:, ::1] exps = plan.exps
    cdef i64[::1] offsets = plan.offsets
    cdef int nv = plan.n_vars
    cdef int d = plan.degree
    cdef int total = <int>offsets[d + 1]
    cdef int ntop = <int>(offsets[d + 1] - offsets[d])
    out = np.zeros(ntop, dtype=np.int64)
    cdef i64[::1] ov = out
    cdef i64* bufa = <i64*>malloc(total * sizeof(i64))
    cdef i64* bufb = <i64*>malloc(total * sizeof(i64))
    try:
        memset(bufa, 0, total * sizeof(i64))
        memset(bufb, 0, total * sizeof(i64))
        _subst(cv, tv, m, mul1, exps, offsets, nv, d, &ov[0], bufa, bufb)
    finally:
        free(bufa)
        free(bufb)
    return out


def first_vanishing(coeffs, mats, long long m, plan):
    """Index of the first matrix M in ``mats`` with F(x*M) == 0 mod m, or -1."""
    cdef i64[::1] cv = np.ascontiguousarray(coeffs, dtype=np.int64)
    cdef i64[:, :, ::1] mv = np.ascontiguousarray(np.asarray(mats, dtype=np.int64) % m)
    cdef i64[:, ::1] mul1 = plan.mul1
    cdef i64[:, ::1] exps = plan.exps
    cdef i64[::1] offsets = plan.offsets
    cdef int nv = plan.n_vars
    cdef int d = plan.degree
    cdef int total = <int>offsets[d + 1]
    cdef int ntop = <int>(offsets[d + 1] - offsets[d])
    cdef Py_ssize_t r, nm = mv.shape[0]
    cdef int idx
    cdef bint ok
    cdef long long found = -1
    cdef i64* out = <i64*>malloc(ntop * sizeof(i64))
    cdef i64* bufa = <i64*>malloc(total * sizeof(i64))
    cdef i64* bufb = <i64*>malloc(total * sizeof(i64))
    try:
        memset(bufa, 0, total * sizeof(i64))
        memset(bufb, 0, total * sizeof(i64))
        with nogil:
            for r in range(nm):
                _subst(cv, mv[r], m, mul1, exps, offsets, nv, d, out, bufa, bufb)
                ok = True
                for idx in range(ntop):
                    if out[idx] != 0:
                        ok = False
                        break
                if ok:
                    found = r
                    break
    finally:
        free(out)
        free(bufa)
        free(bufb)
    return found
