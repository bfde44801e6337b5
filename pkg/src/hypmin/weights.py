"""Weight vectors: instability profiles, dominance and minimal complete sets.

For a normalized weight vector w (w_0 = 0, weakly increasing) and an
exponent vector i of degree d in n+1 variables, the profile value is
``f_w(i) = max(0, floor(<v_i, w> / (n+1)) + 1)`` with ``v_i = d*1 - (n+1)*i``.
A form is unstable for (identity, w) iff ``v_p(a_i) >= f_w(i)`` for all i, so
w dominates w' exactly when f_w <= f_w' pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Sequence

import numpy as np

from .errors import ContractError, ResourceLimitError
from .forms import exponents

MAX_CANDIDATES = 5_000_000


def normalize_weight(w: Sequence[int]) -> tuple:
    """Shift so the smallest entry is 0 and sort ascending (drops the matrix part)."""
    w = [int(a) for a in w]
    m = min(w)
    return tuple(sorted(a - m for a in w))


def is_normalized(w: Sequence[int]) -> bool:
    return len(w) > 0 and w[0] == 0 and all(a <= b for a, b in zip(w, w[1:]))


def _check(w, n):
    w = tuple(int(a) for a in w)
    if len(w) != n + 1:
        raise ContractError("weight length must be n + 1")
    if not is_normalized(w):
        raise ContractError("weight vector must be normalized (w_0 = 0, ascending)")
    return w


@lru_cache(maxsize=128)
def index_set(n: int, d: int) -> tuple:
    """Exponent vectors i in n+1 variables with |i| = d."""
    return tuple(exponents(n + 1, d))


@lru_cache(maxsize=128)
def _v_matrix(n: int, d: int) -> np.ndarray:
    J = np.array(index_set(n, d), dtype=np.int64)
    return d - (n + 1) * J


def fw_profile(w: Sequence[int], n: int, d: int) -> dict:
    """Map i -> f_w(i) over the index set."""
    w = _check(w, n)
    out = {}
    for i in index_set(n, d):
        s = sum((d - (n + 1) * a) * b for a, b in zip(i, w))
        out[i] = max(0, s // (n + 1) + 1)
    return out


def _profile_vector(w, n, d) -> np.ndarray:
    x = _v_matrix(n, d) @ np.asarray(w, dtype=np.int64)
    return np.maximum(0, np.floor_divide(x, n + 1) + 1)


def dominates(w: Sequence[int], w2: Sequence[int], n: int, d: int) -> bool:
    """True iff instability for w2 implies instability for w (same matrix)."""
    w = _check(w, n)
    w2 = _check(w2, n)
    if quick_dominates(w, w2, n, d):
        return True
    return bool(np.all(_profile_vector(w, n, d) <= _profile_vector(w2, n, d)))


def quick_dominates(w: Sequence[int], w2: Sequence[int], n: int, d: int) -> bool:
    """Sufficient inner-product criterion: <v_i,w2> >= <v_i,w> wherever <v_i,w> >= 0."""
    V = _v_matrix(n, d)
    a = V @ np.asarray(w, dtype=np.int64)
    b = V @ np.asarray(w2, dtype=np.int64)
    mask = a >= 0
    return bool(np.all(b[mask] >= a[mask]))


def general_bound(n: int, d: int) -> int:
    """Upper bound on the last entry of a minimal complete set."""
    if n == 1:
        return 1
    if n == 2:
        return d
    return 2 * n * (d // gcd(d, n + 1)) * d ** (n - 2)


@dataclass(frozen=True)
class MinimalWeightSet:
    n: int
    d: int
    vectors: tuple
    bound: int
    ties: bool

    def __iter__(self):
        return iter(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def as_set(self) -> set:
        return set(self.vectors)


def _candidates(n: int, bound: int) -> np.ndarray:
    """Primitive normalized weight vectors (excluding zero) with last entry <= bound."""
    count = comb(bound + n, n)
    if count > MAX_CANDIDATES:
        raise ResourceLimitError(f"{count} candidate weight vectors exceed the cap {MAX_CANDIDATES}")
    # nondecreasing tuples 0 <= w_1 <= ... <= w_n <= bound, built column by column
    cols = np.arange(bound + 1, dtype=np.int64).reshape(-1, 1)
    for _ in range(n - 1):
        last = cols[:, -1]
        reps = bound + 1 - last
        base = np.repeat(cols, reps, axis=0)
        starts = np.repeat(last, reps)
        offs = np.arange(len(base)) - np.repeat(np.cumsum(reps) - reps, reps)
        cols = np.hstack([base, (starts + offs).reshape(-1, 1)])
    W = np.hstack([np.zeros((len(cols), 1), dtype=np.int64), cols])
    g = np.gcd.reduce(W, axis=1)
    return W[g == 1]


def minimal_complete_set(n: int, d: int, tie_break: str = "lex") -> MinimalWeightSet:
    """Minimal complete set of primitive normalized weight vectors for degree d in P^n.

    Candidates are swept in order of ascending sum then lexicographic; each kept
    vector removes everything it dominates. Vectors sharing a profile (possible
    only when d <= n) are represented by the lexicographically smallest one.
    For n = 1 the result is {[0,0],[0,1]}; for n >= 2 the zero vector, which
    only detects non-primitive forms, is left out.
    """
    if n < 1 or d < 1:
        raise ContractError("need n >= 1 and d >= 1")
    if n == 1:
        return MinimalWeightSet(1, d, ((0, 0), (0, 1)), 1, False)
    return _minimal_set_cached(n, d, tie_break)


@lru_cache(maxsize=256)
def _minimal_set_cached(n: int, d: int, tie_break: str) -> MinimalWeightSet:
    bound = general_bound(n, d)
    W = _candidates(n, bound)
    order = np.lexsort(tuple(W[:, k] for k in range(n, -1, -1)) + (W.sum(axis=1),))
    W = W[order]
    X = W @ _v_matrix(n, d).T
    P = np.maximum(0, np.floor_divide(X, n + 1) + 1).astype(np.int32)
    uniq, first, inverse = np.unique(P, axis=0, return_index=True, return_inverse=True)
    inverse = np.asarray(inverse).reshape(-1)
    class_size = np.bincount(inverse, minlength=len(uniq))
    # sweep in candidate order over distinct profiles
    rep_order = np.sort(first)
    prof = P[rep_order]
    alive = np.ones(len(rep_order), dtype=bool)
    kept = []
    for k in range(len(rep_order)):
        if not alive[k]:
            continue
        kept.append(k)
        dominated = np.all(prof >= prof[k], axis=1)
        alive &= ~dominated
    # final pass: drop kept profiles strictly dominated by another kept one
    kp = prof[kept]
    final = []
    for a in range(len(kept)):
        le = np.all(kp <= kp[a], axis=1)
        le[a] = False
        if not le.any():
            final.append(kept[a])
    vectors = []
    ties = False
    for k in final:
        idx = rep_order[k]
        cls = inverse[idx]
        members = W[inverse == cls] if class_size[cls] > 1 else W[idx:idx + 1]
        if len(members) > 1:
            ties = True
        if tie_break == "lex":
            choice = min(tuple(int(x) for x in m) for m in members)
        else:
            choice = tuple(int(x) for x in W[idx])
        vectors.append(choice)
    vectors.sort(key=lambda v: (sum(v), v))
    return MinimalWeightSet(n, d, tuple(vectors), bound, ties)


def n2_complete_set(d: int) -> list[tuple]:
    """Complete set for plane curves from basic intervals of the Stern-Brocot tree.

    Every fraction a/b (a = z_2, b = z_1) in lowest terms with a + b <= d is an
    endpoint of a covering basic interval; it gives w = [0, b, a + b].
    """
    if d < 1:
        raise ContractError("degree must be positive")
    fracs = [(0, 1), (1, 0)]
    stack = [((0, 1), (1, 0))]
    while stack:
        (a1, b1), (a2, b2) = stack.pop()
        a, b = a1 + a2, b1 + b2
        if a + b > d:
            continue
        fracs.append((a, b))
        stack.append(((a1, b1), (a, b)))
        stack.append(((a, b), (a2, b2)))
    out = sorted({(0, b, a + b) for a, b in fracs}, key=lambda v: (sum(v), v))
    return out


def flag_multiplicities(w: Sequence[int], n: int, d: int) -> tuple:
    """Lower bounds m_k (k = 0..n-1) for the multiplicity of the flag subspaces L_k."""
    w = _check(w, n)
    if w[-1] == 0:
        raise ContractError("weight vector must be nonzero")
    s = sum(w)
    out = []
    for k in range(n):
        if (n + 1) * w[k] > s:
            out.append(0)
        else:
            q = Fraction(d, n + 1) * Fraction(s - (n + 1) * w[k], w[n] - w[k])
            out.append(int(q // 1) + 1)
    return tuple(out)


def largest_entry(n: int, d: int) -> int:
    return max(v[-1] for v in minimal_complete_set(n, d))


@lru_cache(maxsize=64)
def delta_bound(d: int) -> int:
    """Search depth for plane curves: max(w_1 + w_2) over the minimal set, or 2d - 1."""
    if d < 2:
        raise ContractError("degree must be at least 2")
    if d <= 40:
        return max(v[1] + v[2] for v in minimal_complete_set(2, d))
    return 2 * d - 1
