"""Reduction: unimodular changes of variables that shrink the coefficients.

Two stages. The balancing stage minimizes the Frobenius norm of the
symmetric coefficient tensor over SL(n, R) (this norm is orthogonally
invariant and geodesically convex, so the minimizer is essentially unique
for stable forms), then LLL-reduces Z^n for the quadratic form it
determines. The greedy stage walks downhill on the integer coefficient norm
over small elementary moves until no move helps.
"""

from __future__ import annotations

import itertools
from math import factorial

import numpy as np
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMError

from . import intmat
from .errors import ContractError
from .forms import Form, substitute

BALANCE_ITERATIONS = 500
BALANCE_TOL = 1e-9
LLL_BITS = 48
BALANCE_ROUNDS = 20


def norm2(F: Form) -> int:
    """Sum of squared coefficients."""
    return sum(c * c for _, c in F.items())


# ---------------------------------------------------------------------------
# balancing + LLL


def coefficient_tensor(F: Form) -> np.ndarray:
    """Symmetric tensor t with F = sum t[i1..id] x_i1 ... x_id."""
    n, d = F.n_vars, F.degree
    scale = max((abs(c) for _, c in F.items()), default=1)
    T = np.zeros((n,) * d)
    for idx in itertools.product(range(n), repeat=d):
        e = [0] * n
        for i in idx:
            e[i] += 1
        c = F.coefficient(tuple(e))
        if c:
            mult = factorial(d)
            for a in e:
                mult //= factorial(a)
            T[idx] = (c / scale) / mult
    return T


def _act(T: np.ndarray, P: np.ndarray) -> np.ndarray:
    """Tensor of F(x P) from the tensor of F."""
    for k in range(T.ndim):
        T = np.moveaxis(np.tensordot(P, T, axes=([1], [k])), 0, k)
    return T


def _sym_exp(X: np.ndarray) -> np.ndarray:
    w, V = np.linalg.eigh(X)
    return (V * np.exp(w)) @ V.T


def balancing_matrix(F: Form) -> np.ndarray:
    """Real P with det 1 making F(x P) (approximately) of minimal tensor norm.

    Geodesic gradient descent with backtracking: the gradient at the
    current point is the traceless part of the contraction of the tensor
    with itself over all but one index.
    """
    T0 = coefficient_tensor(F)
    T0 /= np.linalg.norm(T0)
    n = F.n_vars
    P = np.eye(n)
    T, f, eta = T0, 1.0, 0.5
    for _ in range(BALANCE_ITERATIONS):
        Tm = T.reshape(n, -1)
        M = Tm @ Tm.T
        tr = float(np.trace(M))
        if not np.isfinite(tr) or tr < 1e-200:
            # unstable over R: the orbit closure reaches zero, nothing to balance
            break
        grad = M * (n / tr) - np.eye(n)
        g2 = float(np.sum(grad * grad))
        if g2 < BALANCE_TOL**2:
            break
        while True:
            Pn = _sym_exp(-eta * grad) @ P
            Tn = _act(T0, Pn)
            fn = float(np.sum(Tn * Tn))
            if fn < f * (1 - 1e-4 * eta * g2 / n) or eta < 1e-12:
                break
            eta /= 2
        if eta < 1e-12:
            break
        P, T, f, eta = Pn, Tn, fn, min(2 * eta, 4.0)
    return P


def _lll_rows(B: np.ndarray) -> tuple:
    """Unimodular U such that the rows of U * B are LLL-reduced."""
    n = B.shape[0]
    Bs = B / np.abs(B).max()
    rows = [[ZZ(int(round(x * 2**LLL_BITS))) for x in r] for r in Bs]
    _, U = DomainMatrix(rows, (n, n), ZZ).lll_transform()
    return tuple(tuple(int(x) for x in r) for r in U.to_Matrix().tolist())


def _det_one(U: tuple) -> tuple:
    if intmat.det(U) == 1:
        return U
    return (tuple(-x for x in U[0]),) + tuple(U[1:])


def balance_reduce(F: Form) -> tuple[Form, tuple]:
    """Repeat (balance, LLL, exact substitution) while the norm drops.

    Each round restarts from the exact integer form, so floating point only
    has to resolve the remaining distortion, not the accumulated one.
    """
    n = F.n_vars
    M = intmat.identity(n)
    G, best = F, norm2(F)
    for _ in range(BALANCE_ROUNDS):
        try:
            P = balancing_matrix(G)
            U = _det_one(_lll_rows(np.linalg.inv(P)))
        except (np.linalg.LinAlgError, ValueError, OverflowError, ZeroDivisionError, DMError):
            break
        H = substitute(G, U, check=False)
        v = norm2(H)
        if v >= best:
            break
        G, best, M = H, v, intmat.matmul(U, M)
    return G, M


# ---------------------------------------------------------------------------
# greedy descent


def _signed_permutations(n: int) -> list:
    """Signed permutation matrices of determinant 1, identity excluded."""
    out = []
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            M = tuple(tuple(signs[i] if j == perm[i] else 0 for j in range(n)) for i in range(n))
            if M != intmat.identity(n) and intmat.det(M) == 1:
                out.append(M)
    return out


def move_set(n: int) -> list:
    """(matrix, shear) pairs in the fixed order used to break ties.

    Shears I + s*E_ij come first (i, j row-major, s = +1 before -1), then
    the signed permutations.
    """
    out = []
    for i in range(n):
        for j in range(n):
            if i != j:
                for s in (1, -1):
                    out.append((intmat.elementary(n, i, j, s), (i, j, s)))
    out.extend((M, None) for M in _signed_permutations(n))
    return out


def greedy_reduce(F: Form, max_rounds: int = 100000) -> tuple[Form, tuple]:
    """Steepest descent on norm2 over move_set; a chosen shear is doubled while it keeps helping."""
    n = F.n_vars
    moves = move_set(n)
    M = intmat.identity(n)
    G, best = F, norm2(F)
    for _ in range(max_rounds):
        pick = None
        for A, shear in moves:
            H = substitute(G, A, check=False)
            v = norm2(H)
            if v < best and (pick is None or v < pick[0]):
                pick = (v, A, H, shear)
        if pick is None:
            break
        v, A, H, shear = pick
        if shear is not None:
            i, j, s = shear
            k = 2
            while True:
                B = intmat.elementary(n, i, j, s * k)
                H2 = substitute(G, B, check=False)
                v2 = norm2(H2)
                if v2 >= v:
                    break
                v, A, H, k = v2, B, H2, 2 * k
        G, best, M = H, v, intmat.matmul(A, M)
    return G, M


def adhoc_reduce(F: Form, balance: bool = True) -> tuple[Form, tuple]:
    """Reduce F; returns (G, M) with G = F(x * M), det M = 1 and norm2(G) <= norm2(F)."""
    if F.is_zero():
        raise ContractError("zero form")
    if F.n_vars < 2:
        raise ContractError("at least two variables expected")
    G, M = F, intmat.identity(F.n_vars)
    if balance and F.degree >= 2:
        G, M = balance_reduce(G)
    G, M2 = greedy_reduce(G)
    return G, intmat.matmul(M2, M)
