"""Integer factorization at desk scale.

Trial division up to 10^6, then Pollard rho with Brent's cycle detection.
Primality: deterministic Miller-Rabin below 3.3e24, BPSW (strong base-2
Miller-Rabin plus strong Lucas) above; factors above that range are labelled
probable primes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd, isqrt

TRIAL_LIMIT = 10**6
DEFAULT_SEED = 20240601

# First primes as bases: deterministic for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981


def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i in range(limit + 1) if sieve[i]]


_PRIMES: list[int] = []


def _primes() -> list[int]:
    if not _PRIMES:
        _PRIMES.extend(_small_primes(TRIAL_LIMIT))
    return _PRIMES


def _strong_probable_prime(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas(n: int) -> bool:
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
        if D == 13 and isqrt(n) ** 2 == n:
            return False
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # binary Lucas chain for U_d, V_d
    U, V, Qk = 0, 2, 1
    inv2 = pow(2, -1, n)
    for bit in bin(d)[2:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    if n < _MR_DETERMINISTIC_LIMIT:
        return all(_strong_probable_prime(n, a) for a in _MR_BASES)
    return _strong_probable_prime(n, 2) and _strong_lucas(n)


def is_certain_prime(n: int) -> bool:
    """True when the primality verdict is proven (range of the deterministic test)."""
    return n < _MR_DETERMINISTIC_LIMIT and is_probable_prime(n)


def _brent(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def _perfect_power(n: int):
    for k in range(2, n.bit_length() + 1):
        r = _iroot(n, k)
        if r**k == n:
            return r, k
    return None


def _iroot(n: int, k: int) -> int:
    lo, hi = 0, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


@dataclass(frozen=True)
class Factorization:
    factors: dict  # prime -> exponent
    probable: frozenset  # factors whose primality is not proven

    @property
    def primes(self) -> list[int]:
        return sorted(self.factors)


def factor_integer(N: int, seed: int = DEFAULT_SEED) -> Factorization:
    """Prime factorization of |N| (N != 0)."""
    if N == 0:
        raise ValueError("cannot factor zero")
    n = abs(N)
    out: dict = {}
    for q in _primes():
        if q * q > n:
            break
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    rng = random.Random(seed)
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        pp = _perfect_power(m)
        if pp:
            r, k = pp
            stack.extend([r] * k)
            continue
        f = _brent(m, rng)
        stack.extend([f, m // f])
    probable = frozenset(q for q in out if not is_certain_prime(q))
    return Factorization(dict(sorted(out.items())), probable)


def prime_divisors(N: int, seed: int = DEFAULT_SEED) -> list[int]:
    return factor_integer(N, seed).primes
