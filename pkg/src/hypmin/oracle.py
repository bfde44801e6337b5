"""Brute-force minimizer over all lattices of a given elementary-divisor type.

A weight system (T, w) acts through the matrix diag(p^w) T, and the
valuation of F(x M) only depends on the row lattice Z^n M. So each class of
weight systems is represented by the Hermite normal form of a lattice
p^max(w) Z^n <= L <= Z^n whose Smith form is diag(p^w). Slow and p-dependent,
meant as ground truth for small p.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from itertools import permutations, product

import numpy as np

from . import intmat, kernels
from .binary import StepResult
from .errors import ContractError, ResourceLimitError, UnstableInputError
from .forms import Form, TransformRecord, divide_by_prime_power, substitute, valuation
from .weights import minimal_complete_set, normalize_weight

DEFAULT_MAX_LATTICES = 10**6
DEFAULT_CAP = 64
KERNEL_MODULUS_LIMIT = 2**31


def _check_w(w, p: int) -> tuple:
    w = tuple(int(a) for a in w)
    if any(a < 0 for a in w):
        raise ContractError("weights must be non-negative")
    if p < 2:
        raise ContractError("prime expected")
    return w


def coset_lattices(w, p: int, max_lattices: int = DEFAULT_MAX_LATTICES) -> list[tuple]:
    """Cached wrapper of enumerate_lattices."""
    return list(_lattices_cached(_check_w(w, p), p, max_lattices))


@lru_cache(maxsize=128)
def _lattices_cached(w: tuple, p: int, max_lattices: int) -> tuple:
    return tuple(enumerate_lattices(w, p, max_lattices))


def enumerate_lattices(w, p: int, max_lattices: int = DEFAULT_MAX_LATTICES) -> list[tuple]:
    """Upper-triangular HNF matrices M (row lattice) with Smith form diag(p^w), sorted.

    Rows are built from the bottom up; the lattice cut out by each trailing
    block must have a type contained in that of w, which prunes most
    candidates.
    """
    w = _check_w(w, p)
    n = len(w)
    m = max(w)
    target = sorted(w)
    total = sum(w)
    out: list = []
    visited = 0
    desc = sorted(w, reverse=True)

    def block_ok(rows, k):
        # V/(L cap V) embeds in Z^n/L, so its type fits inside the type of w
        sub = [r[k:] for r in rows]
        got = sorted(intmat.local_elementary_divisors(sub, p), reverse=True)
        return all(a <= b for a, b in zip(got, desc))

    def extend(rows, k, left):
        # rows: list of full-length rows for indices k..n-1
        nonlocal visited
        if k == 0:
            if left == 0 and intmat.local_elementary_divisors(rows, p) == target:
                out.append(tuple(tuple(r) for r in rows))
                if len(out) > max_lattices:
                    raise ResourceLimitError(f"more than {max_lattices} lattices for weight {w}")
            return
        i = k - 1
        for a in range(min(m, left) + 1):
            if i == 0 and a != left:
                continue
            ranges = [range(rows[j - k][j]) for j in range(k, n)]
            for offs in product(*ranges):
                visited += 1
                if visited > 50 * max_lattices:
                    raise ResourceLimitError(f"lattice search for weight {w} exceeded its budget")
                row = [0] * i + [p**a] + list(offs)
                new = [row] + rows
                if block_ok(new, i):
                    extend(new, i, left - a)

    if n == 0:
        raise ContractError("empty weight vector")
    extend([], n, total)
    out.sort()
    return out


def coset_representatives(w, p: int) -> list[tuple]:
    """Matrices diag(p^w) U S with U upper unitriangular mod p^max(w) and S a permutation.

    Over the p-adic integers every invertible T factors as L U S with L lower
    triangular, and lower triangular matrices stabilize the coset of the
    sorted weight, so these cover all cosets (with repetitions).
    """
    w = _check_w(w, p)
    if list(w) != sorted(w):
        raise ContractError("weight must be sorted ascending")
    n = len(w)
    q = p ** max(w) if max(w) else 1
    D = intmat.diagonal([p**a for a in w])
    upper = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out = []
    for perm in permutations(range(n)):
        S = tuple(tuple(1 if j == perm[i] else 0 for j in range(n)) for i in range(n))
        for vals in product(range(q), repeat=len(upper)):
            U = [list(r) for r in intmat.identity(n)]
            for (i, j), v in zip(upper, vals):
                U[i][j] = v
            out.append(intmat.matmul(D, intmat.matmul(U, S)))
    return out


def row_hnf(M) -> tuple:
    """Upper-triangular row Hermite normal form of a nonsingular integer matrix."""
    A = [list(r) for r in M]
    n = len(A)
    for c in range(n):
        # Euclid on column c among rows c..n-1
        while True:
            nz = [r for r in range(c, n) if A[r][c]]
            piv = min(nz, key=lambda r: abs(A[r][c]))
            A[c], A[piv] = A[piv], A[c]
            done = True
            for r in range(c + 1, n):
                if A[r][c]:
                    f = A[r][c] // A[c][c]
                    A[r] = [x - f * y for x, y in zip(A[r], A[c])]
                    if A[r][c]:
                        done = False
            if done:
                break
        if A[c][c] < 0:
            A[c] = [-x for x in A[c]]
        for r in range(c):
            f = A[r][c] // A[c][c]
            A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return tuple(tuple(r) for r in A)


def _threshold(n_vars: int, d: int, w) -> int:
    """Smallest e with n_vars * e > d * sum(w)."""
    return d * sum(w) // n_vars + 1


def _first_hit(F: Form, mats: list, modulus: int, threads: int) -> int:
    """Index of the first matrix with F(x M) == 0 mod modulus, or -1."""
    if not mats:
        return -1
    if modulus >= KERNEL_MODULUS_LIMIT:
        for r, M in enumerate(mats):
            G = substitute(F, M, check=False)
            if all(c % modulus == 0 for _, c in G.items()):
                return r
        return -1
    plan = kernels.plan_for(F.n_vars, F.degree)
    coeffs = plan.dense(F.terms, modulus)
    arr = np.asarray(mats, dtype=np.int64)
    if threads <= 1 or len(mats) < 2 * threads:
        return kernels.first_vanishing(coeffs, arr, modulus, plan)
    chunks = np.array_split(np.arange(len(mats)), threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        hits = list(pool.map(lambda idx: kernels.first_vanishing(coeffs, arr[idx], modulus, plan), chunks))
    # ordered reduction: the smallest global index wins
    found = [int(c[h]) for c, h in zip(chunks, hits) if h >= 0]
    return min(found) if found else -1


def default_weights(n_vars: int, d: int) -> list[tuple]:
    ws = [w for w in minimal_complete_set(n_vars - 1, d).vectors if sum(w)]
    return sorted(ws, key=lambda w: (sum(w), w))


def oracle_one_step(
    F: Form,
    p: int,
    weight_set=None,
    max_lattices: int = DEFAULT_MAX_LATTICES,
    threads: int = 1,
) -> StepResult:
    """First (w, lattice) in the fixed order with n_vars * e > d * sum(w)."""
    if F.is_zero():
        raise ContractError("zero form")
    n, d = F.n_vars, F.degree
    ws = default_weights(n, d) if weight_set is None else sorted(
        {normalize_weight(w) for w in weight_set if sum(w)}, key=lambda w: (sum(w), w)
    )
    for w in ws:
        if len(w) != n:
            raise ContractError("weight length does not match the form")
        t = _threshold(n, d, w)
        mats = coset_lattices(w, p, max_lattices)
        r = _first_hit(F, mats, p**t, threads)
        if r >= 0:
            M = mats[r]
            G = substitute(F, M, check=False)
            e = valuation(G, p)
            return StepResult(True, divide_by_prime_power(G, p, e), M, e)
    return StepResult(False, F, intmat.identity(n), 0)


def oracle_minimize(
    F: Form,
    p: int,
    weight_set=None,
    max_lattices: int = DEFAULT_MAX_LATTICES,
    cap: int = DEFAULT_CAP,
    threads: int = 1,
) -> tuple[Form, TransformRecord]:
    """Loop oracle_one_step; p^e * G = F(x * T) for the returned record."""
    if F.is_zero():
        raise ContractError("zero form")
    e = valuation(F, p)
    G = divide_by_prime_power(F, p, e)
    rec = TransformRecord(intmat.identity(F.n_vars), e, p)
    for _ in range(cap):
        res = oracle_one_step(G, p, weight_set, max_lattices, threads)
        if not res.success:
            return G, rec
        G = res.form
        rec = rec.then(TransformRecord(res.matrix, res.e, p))
    raise UnstableInputError(f"no minimal model within {cap} oracle steps")
