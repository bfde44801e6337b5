"""Polynomial algebra over prime fields.

Univariate polynomials are lists of residues, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``). Multivariate polynomials are
``FpPoly`` objects wrapping a sparse map from exponent tuples to residues.
Gröbner bases use Buchberger's algorithm with the normal selection strategy
and both Buchberger criteria.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .errors import ContractError
from .forms import Form

DEFAULT_SEED = 20240229
SCAN_LIMIT = 257

# ---------------------------------------------------------------------------
# univariate


def up_trim(f: list) -> list:
    while f and f[-1] == 0:
        f.pop()
    return f


def up_from(coeffs: Iterable[int], p: int) -> list:
    return up_trim([c % p for c in coeffs])


def up_add(f: list, g: list, p: int) -> list:
    n = max(len(f), len(g))
    return up_trim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p for i in range(n)])


def up_sub(f: list, g: list, p: int) -> list:
    n = max(len(f), len(g))
    return up_trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)])


def up_scale(f: list, c: int, p: int) -> list:
    c %= p
    return up_trim([a * c % p for a in f]) if c else []


def up_mul(f: list, g: list, p: int) -> list:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return up_trim([c % p for c in out])


def up_divmod(f: list, g: list, p: int) -> tuple[list, list]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    inv = pow(g[-1], -1, p)
    q = [0] * max(len(f) - dg, 0)
    while len(r) - 1 >= dg and r:
        k = len(r) - 1 - dg
        c = r[-1] * inv % p
        q[k] = c
        for i, b in enumerate(g):
            r[i + k] = (r[i + k] - c * b) % p
        up_trim(r)
    return up_trim(q), r


def up_rem(f: list, g: list, p: int) -> list:
    return up_divmod(f, g, p)[1]


def up_monic(f: list, p: int) -> list:
    if not f:
        return []
    inv = pow(f[-1], -1, p)
    return [a * inv % p for a in f]


def up_gcd(f: list, g: list, p: int) -> list:
    a, b = list(f), list(g)
    while b:
        a, b = b, up_rem(a, b, p)
    return up_monic(a, p)


def up_powmod(base: list, e: int, mod: list, p: int) -> list:
    result = [1]
    b = up_rem(base, mod, p)
    while e:
        if e & 1:
            result = up_rem(up_mul(result, b, p), mod, p)
        e >>= 1
        if e:
            b = up_rem(up_mul(b, b, p), mod, p)
    return result


def up_deriv(f: list, p: int) -> list:
    return up_trim([(i * f[i]) % p for i in range(1, len(f))])


def up_eval(f: list, x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def _split_roots(g: list, p: int, rng: random.Random) -> list[int]:
    """Roots of a monic squarefree g splitting into distinct linear factors."""
    deg = len(g) - 1
    if deg == 0:
        return []
    if deg == 1:
        return [(-g[0]) % p]
    while True:
        a = rng.randrange(p)
        h = up_powmod([a, 1], (p - 1) // 2, g, p)
        h = up_sub(h, [1], p)
        d = up_gcd(h, g, p)
        if 0 < len(d) - 1 < deg:
            q, _ = up_divmod(g, d, p)
            return _split_roots(d, p, rng) + _split_roots(up_monic(q, p), p, rng)


def univariate_roots(f: Sequence[int], p: int, seed: int = DEFAULT_SEED) -> list[tuple[int, int]]:
    """All roots in F_p with multiplicities, ascending by residue."""
    f = up_from(f, p)
    if not f:
        raise ContractError("roots of the zero polynomial")
    if p <= SCAN_LIMIT:
        roots = [x for x in range(p) if up_eval(f, x, p) == 0]
    else:
        g = up_gcd(f, up_sub(up_powmod([0, 1], p, f, p), [0, 1], p), p)
        roots = sorted(_split_roots(g, p, random.Random(seed)))
    out = []
    for r in roots:
        m = 0
        h = f
        while True:
            q, rem = up_divmod(h, [(-r) % p, 1], p)
            if rem:
                break
            m += 1
            h = q
        out.append((r, m))
    return out


def univariate_resultant(f: Sequence[int], g: Sequence[int], p: int) -> int:
    """Res(f, g) over F_p via the Euclidean algorithm (Sylvester convention)."""
    f = up_from(f, p)
    g = up_from(g, p)
    if not f or not g:
        return 0
    res = 1
    while True:
        df, dg = len(f) - 1, len(g) - 1
        if dg == 0:
            return res * pow(g[0], df, p) % p
        r = up_rem(f, g, p)
        if not r:
            return 0
        dr = len(r) - 1
        # Res(f,g) = (-1)^{df dg} lc(g)^{df-dr} Res(g, r)
        sgn = -1 if (df * dg) % 2 else 1
        res = res * sgn * pow(g[-1], df - dr, p) % p
        f, g = g, r


# ---------------------------------------------------------------------------
# multivariate


def lex_key(e):
    return e


def grevlex_key(e):
    return (sum(e), tuple(-a for a in reversed(e)))


ORDERS: dict[str, Callable] = {"lex": lex_key, "grevlex": grevlex_key}


class FpPoly:
    """Sparse polynomial over F_p in ``nvars`` variables."""

    __slots__ = ("p", "nvars", "terms")

    def __init__(self, p: int, nvars: int, terms: Mapping | None = None, _clean: bool = False):
        self.p = p
        self.nvars = nvars
        if _clean:
            self.terms = terms
        else:
            t = {}
            for e, c in (terms or {}).items():
                c %= p
                if c:
                    e = tuple(e)
                    if len(e) != nvars:
                        raise ContractError("exponent length mismatch")
                    t[e] = (t.get(e, 0) + c) % p
                    if not t[e]:
                        del t[e]
            self.terms = t

    # construction helpers
    @classmethod
    def constant(cls, p, nvars, c):
        return cls(p, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, p, nvars, i):
        return cls(p, nvars, {tuple(1 if j == i else 0 for j in range(nvars)): 1})

    @classmethod
    def from_form(cls, F: Form, p: int) -> "FpPoly":
        return cls(p, F.n_vars, dict(F.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def copy(self):
        return FpPoly(self.p, self.nvars, dict(self.terms), _clean=True)

    def __eq__(self, other):
        return isinstance(other, FpPoly) and self.p == other.p and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        t = dict(self.terms)
        p = self.p
        for e, c in other.terms.items():
            v = (t.get(e, 0) + c) % p
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return FpPoly(p, self.nvars, t, _clean=True)

    def __neg__(self):
        p = self.p
        return FpPoly(p, self.nvars, {e: (-c) % p for e, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "FpPoly":
        c %= self.p
        if not c:
            return FpPoly(self.p, self.nvars, {}, _clean=True)
        p = self.p
        return FpPoly(p, self.nvars, {e: v * c % p for e, v in self.terms.items()}, _clean=True)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return FpPoly(self.p, self.nvars, _mul(self.terms, other.terms, self.p), _clean=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = FpPoly.constant(self.p, self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def evaluate(self, point: Sequence[int]) -> int:
        p = self.p
        acc = 0
        for e, c in self.terms.items():
            m = c
            for x, a in zip(point, e):
                if a:
                    m = m * pow(x, a, p) % p
            acc += m
        return acc % p

    def substitute_linear(self, cols: Sequence["FpPoly"]) -> "FpPoly":
        """Replace variable j by the polynomial cols[j] (any shape)."""
        nv = cols[0].nvars
        out = FpPoly(self.p, nv, {}, _clean=True)
        cache: dict = {}
        for e, c in self.terms.items():
            term = FpPoly.constant(self.p, nv, c)
            for j, a in enumerate(e):
                if a:
                    key = (j, a)
                    if key not in cache:
                        cache[key] = cols[j] ** a
                    term = term * cache[key]
            out = out + term
        return out

    def hasse_derivative(self, k: Sequence[int]) -> "FpPoly":
        """Divided derivative: coefficient-wise multiplication by prod binom(e_j, k_j)."""
        from math import comb

        p = self.p
        out = {}
        for e, c in self.terms.items():
            if all(a >= b for a, b in zip(e, k)):
                m = c
                for a, b in zip(e, k):
                    m = m * comb(a, b) % p
                if m:
                    out[tuple(a - b for a, b in zip(e, k))] = m
        return FpPoly(p, self.nvars, out, _clean=True)

    def leading(self, key) -> tuple:
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def monic(self, key) -> "FpPoly":
        _, c = self.leading(key)
        return self.scale(pow(c, -1, self.p))

    def drop_variable(self, i: int) -> "FpPoly":
        """Remove variable i, which must not occur."""
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                raise ContractError("variable still occurs")
            out[e[:i] + e[i + 1:]] = c
        return FpPoly(self.p, self.nvars - 1, out, _clean=True)

    def specialize(self, i: int, value: int) -> "FpPoly":
        """Set variable i to value and drop it."""
        p = self.p
        out: dict = {}
        for e, c in self.terms.items():
            ne = e[:i] + e[i + 1:]
            v = (out.get(ne, 0) + c * pow(value, e[i], p)) % p
            if v:
                out[ne] = v
            else:
                out.pop(ne, None)
        return FpPoly(p, self.nvars - 1, out, _clean=True)

    def univariate(self, i: int) -> list:
        """Coefficient list in variable i (other variables must not occur)."""
        deg = max((e[i] for e in self.terms), default=-1)
        out = [0] * (deg + 1)
        for e, c in self.terms.items():
            if any(a for j, a in enumerate(e) if j != i):
                raise ContractError("polynomial is not univariate")
            out[e[i]] = c
        return up_trim(out)

    def variables(self) -> set:
        return {j for e in self.terms for j, a in enumerate(e) if a}

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mon = "*".join(f"x{i}" if a == 1 else f"x{i}^{a}" for i, a in enumerate(e) if a)
            c = self.terms[e]
            parts.append(mon if (c == 1 and mon) else (f"{c}*{mon}" if mon else str(c)))
        return " + ".join(parts)

    def __repr__(self):
        return f"FpPoly(p={self.p}, {self.to_text()})"


def _mul(a: Mapping, b: Mapping, p: int) -> dict:
    out: dict = {}
    for e, c in a.items():
        for f, d in b.items():
            g = tuple(x + y for x, y in zip(e, f))
            out[g] = (out.get(g, 0) + c * d) % p
    return {k: v for k, v in out.items() if v}


def reduce_mod_p(F: Form, p: int) -> FpPoly:
    """Coefficient-wise reduction of an integral form."""
    return FpPoly.from_form(F, p)


# ---------------------------------------------------------------------------
# binary forms


def binary_form_linear_factors(f: FpPoly) -> list[tuple[tuple[int, int], int]]:
    """Linear factors (a, b) ~ a*x0 + b*x1 of a binary form with multiplicities.

    Each factor is normalized with first nonzero coefficient 1. Output order:
    factors x0 + b*x1 by ascending b, then x1.
    """
    if f.nvars != 2:
        raise ContractError("binary form expected")
    if f.is_zero():
        raise ContractError("linear factors of the zero form")
    p = f.p
    d = f.total_degree()
    # dehomogenize at x1 = 1: g(t) = f(t, 1); roots t = r give x0 - r x1
    g = [0] * (d + 1)
    for e, c in f.terms.items():
        g[e[0]] = c
    g = up_trim(g)
    out = []
    for r, m in univariate_roots(g, p):
        out.append(((1, (-r) % p), m))
    out.sort(key=lambda t: t[0][1])
    mult_x1 = d - (len(g) - 1)
    if mult_x1:
        out.append(((0, 1), mult_x1))
    return out


def binary_cofactor(f: FpPoly, factors) -> FpPoly:
    """Divide f by the product of the given linear factors (exactly)."""
    g = f
    for (a, b), m in factors:
        for _ in range(m):
            g = divide_linear(g, (a, b))
    return g


def divide_linear(f: FpPoly, lin: Sequence[int]) -> FpPoly:
    """Exact division of a homogeneous f by the linear form sum lin[i] x_i."""
    q = exact_divide(f, linear_poly(f.p, lin))
    if q is None:
        raise ContractError("linear form does not divide the polynomial")
    return q


def linear_poly(p: int, lin: Sequence[int]) -> FpPoly:
    n = len(lin)
    return FpPoly(p, n, {tuple(1 if j == i else 0 for j in range(n)): c for i, c in enumerate(lin)})


def exact_divide(f: FpPoly, g: FpPoly) -> FpPoly | None:
    """f / g if g divides f exactly, else None (lex division)."""
    if g.is_zero():
        raise ZeroDivisionError
    p = f.p
    lg, cg = g.leading(lex_key)
    inv = pow(cg, -1, p)
    r = dict(f.terms)
    q: dict = {}
    while r:
        lr = max(r)
        if any(a < b for a, b in zip(lr, lg)):
            return None
        c = r[lr] * inv % p
        sh = tuple(a - b for a, b in zip(lr, lg))
        q[sh] = c
        for e, d in g.terms.items():
            k = tuple(a + b for a, b in zip(e, sh))
            v = (r.get(k, 0) - c * d) % p
            if v:
                r[k] = v
            else:
                r.pop(k, None)
    return FpPoly(p, f.nvars, q, _clean=True)


# ---------------------------------------------------------------------------
# Gröbner bases


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


class _GBPoly:
    __slots__ = ("terms", "lm", "key")

    def __init__(self, terms, key):
        self.terms = terms
        self.lm = max(terms, key=key)
        self.key = key


def _normal_form(terms: dict, basis: list, key, p: int) -> dict:
    """Full reduction of terms modulo basis (each basis element monic)."""
    r = dict(terms)
    out: dict = {}
    while r:
        lm = max(r, key=key)
        c = r.pop(lm)
        for g in basis:
            if _divides(g.lm, lm):
                sh = tuple(a - b for a, b in zip(lm, g.lm))
                for e, d in g.terms.items():
                    if e == g.lm:
                        continue
                    k = tuple(a + b for a, b in zip(e, sh))
                    v = (r.get(k, 0) - c * d) % p
                    if v:
                        r[k] = v
                    else:
                        r.pop(k, None)
                break
        else:
            out[lm] = c
    return out


def _make_monic(terms: dict, key, p: int) -> dict:
    lm = max(terms, key=key)
    inv = pow(terms[lm], -1, p)
    return {e: c * inv % p for e, c in terms.items()}


def _spoly(f: _GBPoly, g: _GBPoly, p: int) -> dict:
    L = _lcm(f.lm, g.lm)
    sf = tuple(a - b for a, b in zip(L, f.lm))
    sg = tuple(a - b for a, b in zip(L, g.lm))
    out: dict = {}
    for e, c in f.terms.items():
        k = tuple(a + b for a, b in zip(e, sf))
        out[k] = (out.get(k, 0) + c) % p
    for e, c in g.terms.items():
        k = tuple(a + b for a, b in zip(e, sg))
        out[k] = (out.get(k, 0) - c) % p
    return {k: v for k, v in out.items() if v}


def groebner_terms(polys: Sequence[Mapping], nvars: int, p: int, order: str = "grevlex") -> list[dict]:
    """Reduced Gröbner basis (list of monic term maps, sorted by leading monomial)."""
    key = ORDERS[order]
    basis: list[_GBPoly] = []
    for f in polys:
        t = {tuple(e): c % p for e, c in f.items() if c % p}
        if t:
            basis.append(_GBPoly(_make_monic(t, key, p), key))
    if not basis:
        return []
    if any(sum(g.lm) == 0 for g in basis):
        return [{(0,) * nvars: 1}]
    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}
    while pairs:
        # normal strategy: smallest lcm first
        i, j = min(pairs, key=lambda ij: (key(_lcm(basis[ij[0]].lm, basis[ij[1]].lm)), ij))
        pairs.discard((i, j))
        fi, fj = basis[i], basis[j]
        L = _lcm(fi.lm, fj.lm)
        # criterion 1: coprime leading monomials
        if all(a == 0 or b == 0 for a, b in zip(fi.lm, fj.lm)):
            continue
        # criterion 2: chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if _divides(basis[k].lm, L):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in pairs and b not in pairs:
                    skip = True
                    break
        if skip:
            continue
        s = _spoly(fi, fj, p)
        if not s:
            continue
        r = _normal_form(s, basis, key, p)
        if not r:
            continue
        r = _make_monic(r, key, p)
        new = _GBPoly(r, key)
        if sum(new.lm) == 0:
            return [{(0,) * nvars: 1}]
        idx = len(basis)
        basis.append(new)
        for k in range(idx):
            pairs.add((k, idx))
    basis = _interreduce(basis, key, p)
    return [g.terms for g in sorted(basis, key=lambda g: key(g.lm))]


def _interreduce(basis: list, key, p: int) -> list:
    # minimalize: drop elements whose lm is divisible by another's lm
    basis = sorted(basis, key=lambda g: key(g.lm))
    minimal: list[_GBPoly] = []
    for g in basis:
        if not any(_divides(h.lm, g.lm) for h in minimal):
            minimal.append(g)
    out = []
    for idx, g in enumerate(minimal):
        others = [h for k, h in enumerate(minimal) if k != idx]
        t = _normal_form_tail(g.terms, g.lm, others, key, p)
        out.append(_GBPoly(t, key))
    return out


def _normal_form_tail(terms, lm, basis, key, p):
    tail = {e: c for e, c in terms.items() if e != lm}
    red = _normal_form(tail, basis, key, p) if tail else {}
    red[lm] = terms[lm]
    return red


@dataclass
class FpIdeal:
    """Ideal of F_p[x_0..x_{nvars-1}] with a write-once Gröbner cache per order."""

    p: int
    nvars: int
    generators: list
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def of(cls, polys: Sequence[FpPoly]) -> "FpIdeal":
        if not polys:
            raise ContractError("ideal needs at least one generator")
        p, n = polys[0].p, polys[0].nvars
        return cls(p, n, [g for g in polys])

    def groebner(self, order: str = "grevlex") -> list[FpPoly]:
        if order not in self._cache:
            gb = groebner_terms([g.terms for g in self.generators], self.nvars, self.p, order)
            self._cache[order] = [FpPoly(self.p, self.nvars, t, _clean=True) for t in gb]
        return list(self._cache[order])

    def normal_form(self, f: FpPoly, order: str = "grevlex") -> FpPoly:
        key = ORDERS[order]
        basis = [_GBPoly(g.terms, key) for g in self.groebner(order)]
        return FpPoly(self.p, self.nvars, _normal_form(f.terms, basis, key, self.p), _clean=True)

    def contains(self, f: FpPoly) -> bool:
        return self.normal_form(f).is_zero()

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and all(sum(e) == 0 for e in gb[0].terms)

    def is_zero_dimensional(self) -> bool:
        if self.is_unit():
            return True
        lms = [g.leading(grevlex_key)[0] for g in self.groebner()]
        for i in range(self.nvars):
            if not any(lm[i] > 0 and sum(lm) == lm[i] for lm in lms):
                return False
        return True

    def dimension(self) -> int:
        """Krull dimension via maximal independent sets of leading monomials."""
        gb = self.groebner()
        if self.is_unit():
            return -1
        lms = [g.leading(grevlex_key)[0] for g in gb]
        best = 0
        n = self.nvars
        for mask in range(1 << n):
            size = bin(mask).count("1")
            if size <= best:
                continue
            # independent iff no leading monomial lives only in variables of mask
            ok = True
            for lm in lms:
                if all((mask >> j) & 1 for j, a in enumerate(lm) if a):
                    ok = False
                    break
            if ok:
                best = size
        return best


def groebner(ideal: FpIdeal, order: str = "grevlex") -> list[FpPoly]:
    return ideal.groebner(order)


@dataclass
class ZeroDimResult:
    """Result of ``solve_zero_dim``: points, or a positive-dimension flag plus basis."""

    positive_dimensional: bool
    points: list
    basis: list


def solve_zero_dim(ideal: FpIdeal, seed: int = DEFAULT_SEED) -> ZeroDimResult:
    """All F_p-rational solutions of a zero-dimensional system.

    Positive-dimensional ideals return a flag and the Gröbner basis.
    """
    gb = ideal.groebner()
    if ideal.is_unit():
        return ZeroDimResult(False, [], gb)
    if not ideal.is_zero_dimensional():
        return ZeroDimResult(True, [], gb)
    pts = _solve_lex(ideal.generators, ideal.p, ideal.nvars, seed)
    return ZeroDimResult(False, sorted(set(pts)), gb)


def _solve_lex(gens: Sequence[FpPoly], p: int, nvars: int, seed: int) -> list[tuple]:
    """Back-substitution on a lex basis; input must define a finite set."""
    if nvars == 0:
        if any(not g.is_zero() for g in gens):
            return []
        return [()]
    gb = groebner_terms([g.terms for g in gens], nvars, p, "lex")
    if not gb:
        raise ContractError("zero ideal is not zero-dimensional")
    if len(gb) == 1 and all(sum(e) == 0 for e in gb[0]):
        return []
    last = nvars - 1
    uni = [t for t in gb if all(all(a == 0 for a in e[:last]) for e in t)]
    if not uni:
        raise ContractError("ideal is not zero-dimensional")
    f = FpPoly(p, nvars, uni[0], _clean=True).univariate(last)
    out = []
    for r, _ in univariate_roots(f, p, seed):
        sub = [FpPoly(p, nvars, t, _clean=True).specialize(last, r) for t in gb]
        sub = [g for g in sub if not g.is_zero()]
        for pt in _solve_lex(sub, p, nvars - 1, seed):
            out.append(pt + (r,))
    return out


def resultant(f: FpPoly, g: FpPoly, var: int) -> FpPoly:
    """Sylvester resultant with respect to variable ``var``, as a polynomial in the others.

    The result keeps ``nvars`` variables (``var`` no longer occurs).
    """
    p, nv = f.p, f.nvars

    def coeffs(h: FpPoly) -> list:
        deg = max((e[var] for e in h.terms), default=-1)
        cs = [FpPoly(p, nv, {}, _clean=True) for _ in range(deg + 1)]
        for e, c in h.terms.items():
            k = e[var]
            ne = e[:var] + (0,) + e[var + 1:]
            cs[k] = cs[k] + FpPoly(p, nv, {ne: c}, _clean=True)
        return cs

    a = coeffs(f)
    b = coeffs(g)
    m, n = len(a) - 1, len(b) - 1
    if m < 0 or n < 0:
        raise ContractError("resultant needs nonzero inputs")
    size = m + n
    if size == 0:
        return FpPoly.constant(p, nv, 1)
    zero = FpPoly(p, nv, {}, _clean=True)
    rows = []
    for i in range(n):
        row = [zero] * size
        for j in range(m + 1):
            row[i + j] = a[m - j]
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j in range(n + 1):
            row[i + j] = b[n - j]
        rows.append(row)
    return _poly_det(rows, p, nv)


def _poly_det(rows, p, nv):
    # Laplace expansion with memoization on the column subset; fine for tiny sizes.
    size = len(rows)
    memo: dict = {}

    def det(r, cols):
        if r == size:
            return FpPoly.constant(p, nv, 1)
        keyc = cols
        if keyc in memo:
            return memo[keyc]
        acc = FpPoly(p, nv, {}, _clean=True)
        sign = 1
        for idx, c in enumerate(cols):
            entry = rows[r][c]
            if not entry.is_zero():
                sub = det(r + 1, cols[:idx] + cols[idx + 1:])
                term = entry * sub
                acc = acc + (term if sign > 0 else -term)
            sign = -sign
        memo[keyc] = acc
        return acc

    return det(0, tuple(range(size)))
