"""Global minimization: candidate bad primes, per-prime loops and ad-hoc reduction."""

from __future__ import annotations

import random
from math import comb, gcd

from .binary import coefficients, is_nullform, minimize_binary, sylvester_resultant
from .cubic_surface import minimize_cubic_surface
from .errors import ContractError, UnstableInputError
from .factor import DEFAULT_SEED as FACTOR_SEED
from .factor import prime_divisors
from .forms import Form, TransformRecord, content, substitute
from .invariants import invariant_gcd
from .plane import minimize_plane_curve
from .reduction import adhoc_reduce

DEFAULT_SEED = 20240229
RESULTANT_COMBINATIONS = 3

# ---------------------------------------------------------------------------
# candidate primes


def _x1_hasse_derivatives(c: list[int], k: int) -> list[int]:
    """Coefficients (x0^(d-k-i) x1^i) of (1/k!) d^k F / dx1^k, highest x0 power first."""
    d = len(c) - 1
    return [comb(i + k, k) * c[i + k] for i in range(d - k + 1)]


def candidate_primes_binary(F: Form, seed: int = DEFAULT_SEED) -> set[int]:
    """Superset of the primes at which a binary form is not minimal.

    At such a prime the reduction has a root of multiplicity > d/2, so the
    root is shared by F and its x1-derivatives of order up to floor(d/2).
    The gcd of several resultants of F against these derivatives (and random
    combinations of them) is therefore divisible by every bad prime.
    """
    if F.n_vars != 2:
        raise ContractError("binary form expected")
    if F.is_zero():
        raise ContractError("zero form")
    if is_nullform(F):
        raise UnstableInputError("binary form is a nullform")
    d = F.degree
    half = d // 2
    primes = set(prime_divisors(content(F))) if abs(content(F)) > 1 else set()
    c = coefficients(F)
    low = 0
    for a in c[: half + 1]:
        low = gcd(low, a)
    if low > 1:
        primes |= set(prime_divisors(low))
    # shift x0 -> x0 + s x1 until the x1^d coefficient is nonzero, so that
    # no root of F over Q sits at [0:1] where x1-derivatives see nothing
    s = 0
    while F.coefficient((0, d)) == 0:
        s += 1
        F = substitute(F, ((1, 0), (s, 1)))
    c = coefficients(F)
    derivs = [_x1_hasse_derivatives(c, k) for k in range(1, half + 1)]
    g = 0
    for D in derivs:
        g = gcd(g, sylvester_resultant(c, D))
    rng = random.Random(seed)
    for _ in range(RESULTANT_COMBINATIONS if half > 1 else 0):
        if abs(g) == 1:
            break
        # x0^(k-1) * D_k all have degree d - 1
        mix = [0] * d
        for D in derivs:
            ck = rng.randint(1, 1000)
            for i, a in enumerate(D):
                mix[i] += ck * a
        g = gcd(g, sylvester_resultant(c, mix))
    if g == 0:
        raise UnstableInputError("resultant gcd vanishes; the form is not semistable")
    if abs(g) > 1:
        primes |= set(prime_divisors(g))
    return primes


def candidate_primes_ternary(F: Form, seed: int = FACTOR_SEED) -> set[int]:
    """Prime divisors of the gcd of the invariant pair of a plane curve."""
    if F.n_vars != 3:
        raise ContractError("ternary form expected")
    g = invariant_gcd(F)
    return set(prime_divisors(g, seed)) if g > 1 else set()


def candidate_primes(F: Form, seed: int = DEFAULT_SEED) -> set[int]:
    if F.n_vars == 2:
        return candidate_primes_binary(F, seed)
    if F.n_vars == 3:
        return candidate_primes_ternary(F)
    raise ContractError("automatic prime detection covers binary and ternary forms only")


# ---------------------------------------------------------------------------
# the driver


def _local(F: Form, p: int, strategy: str, seed: int):
    n, d = F.n_vars, F.degree
    if n == 2:
        return minimize_binary(F, p)
    if n == 3:
        return minimize_plane_curve(F, p, strategy=strategy, seed=seed)
    if n == 4 and d == 3:
        return minimize_cubic_surface(F, p, seed=seed)
    raise ContractError("local minimization covers binary forms, plane curves and cubic surfaces")


def minimize_global(
    F: Form,
    primes=None,
    strategy: str = "dfs",
    seed: int = DEFAULT_SEED,
    reduce: bool = True,
) -> tuple[Form, TransformRecord]:
    """Minimize at every candidate prime in ascending order, reducing in between.

    Returns (G, record) with G * prod p^scale[p] = F(x * record.matrix).
    Quaternary cubics need an explicit prime list.
    """
    if F.is_zero():
        raise ContractError("zero form")
    if primes is None:
        if F.n_vars == 4:
            raise ContractError("cubic surfaces need an explicit prime list")
        primes = candidate_primes(F, seed)
    primes = sorted(set(int(q) for q in primes))
    if any(q < 2 for q in primes):
        raise ContractError("primes must be at least 2")
    rec = TransformRecord.identity(F.n_vars)
    G = F
    if reduce and F.n_vars >= 3:
        G, M = adhoc_reduce(G)
        rec = rec.then(TransformRecord(M))
    for p in primes:
        G, local = _local(G, p, strategy, seed)
        rec = rec.then(TransformRecord(local.matrix, local.scale))
        if reduce and F.n_vars >= 3:
            G, M = adhoc_reduce(G)
            rec = rec.then(TransformRecord(M))
    return G, rec


def primes_touched(rec: TransformRecord) -> list[int]:
    return sorted(rec.scale)


def result_json(G: Form, rec: TransformRecord) -> dict:
    return {
        "form": str(G),
        "matrix": [list(r) for r in rec.matrix],
        "scale_exp": {str(q): e for q, e in sorted(rec.scale.items())},
        "primes_touched": primes_touched(rec),
    }
