"""Small exact integer matrix helpers.

Matrices are tuples of row tuples of Python ints. All helpers are pure.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence

Matrix = tuple  # tuple[tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    m = tuple(tuple(int(x) for x in r) for r in rows)
    if any(len(r) != len(m) for r in m):
        raise ValueError("matrix must be square")
    return m


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def diagonal(entries: Sequence[int]) -> Matrix:
    n = len(entries)
    return tuple(tuple(int(entries[i]) if i == j else 0 for j in range(n)) for i in range(n))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, m, k = len(a), len(b), len(b[0])
    if len(a[0]) != m:
        raise ValueError("dimension mismatch")
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(m)) for j in range(k)) for i in range(n)
    )


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def det(a: Matrix) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(a)
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def adjugate(a: Matrix) -> Matrix:
    n = len(a)
    if n == 1:
        return ((1,),)
    cof = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = tuple(
                tuple(a[r][c] for c in range(n) if c != j) for r in range(n) if r != i
            )
            cof[i][j] = (-1) ** (i + j) * det(minor)
    return transpose(tuple(tuple(r) for r in cof))


def inverse_unimodular(a: Matrix) -> Matrix:
    d = det(a)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    adj = adjugate(a)
    return tuple(tuple(x * d for x in r) for r in adj)


def is_unimodular(a: Matrix) -> bool:
    return det(a) in (1, -1)


def mat_mod(a: Matrix, p: int) -> Matrix:
    return tuple(tuple(x % p for x in r) for r in a)


def is_zero_mod(a: Matrix, p: int) -> bool:
    return all(x % p == 0 for r in a for x in r)


def elementary(n: int, i: int, j: int, k: int) -> Matrix:
    """Identity plus k at position (i, j)."""
    rows = [list(r) for r in identity(n)]
    rows[i][j] += k
    return tuple(tuple(r) for r in rows)


def vp_int(x: int, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def local_elementary_divisors(a: Matrix, p: int) -> list[int]:
    """Exponents of p in the Smith normal form of a (nonsingular), ascending.

    Works over the localization at p: pivot on an entry of minimal valuation.
    """
    n = len(a)
    m = [list(r) for r in a]
    out = []
    for k in range(n):
        best = None
        for i in range(k, n):
            for j in range(k, n):
                if m[i][j] != 0:
                    v = vp_int(m[i][j], p)
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            raise ValueError("singular matrix")
        v, i, j = best
        m[k], m[i] = m[i], m[k]
        for r in m:
            r[k], r[j] = r[j], r[k]
        piv = m[k][k]
        for i in range(k + 1, n):
            f = m[i][k]
            # row_i <- piv*row_i - f*row_k for every row (also when f = 0);
            # piv is a unit times p^v, divided back out below.
            for j in range(k, n):
                m[i][j] = m[i][j] * piv - f * m[k][j]
        for j in range(k + 1, n):
            m[k][j] = 0
        out.append(v)
        # Remove the spurious factor p^v introduced into the lower rows.
        if v:
            pv = p**v
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] //= pv
    return sorted(out)


def content_of(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
