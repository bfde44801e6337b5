"""Integral homogeneous forms and the basic operations on them.

A form is stored sparsely as a map from exponent tuples to nonzero ints.
Substitution follows the row-vector convention: ``substitute(F, T)`` is
``F(x * T)`` where ``x = [x0, ..., xn]``, so that
``substitute(substitute(F, M), T) == substitute(F, M * T)``.
"""

from __future__ import annotations

import re
from functools import total_ordering
from math import comb, gcd
from typing import Iterable, Mapping, Sequence

from . import intmat
from .errors import ContractError

__all__ = [
    "INFINITY",
    "Form",
    "TransformRecord",
    "substitute",
    "valuation",
    "apply_weight",
    "is_unstable",
    "content",
    "normalize",
    "scale_variables",
    "parse_form",
    "exponents",
]


@total_ordering
class _Infinity:
    """Valuation of the zero form. Compares above every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("hypmin-infinity")

    def __repr__(self):
        return "INFINITY"


INFINITY = _Infinity()


def exponents(n_vars: int, d: int) -> list[tuple[int, ...]]:
    """All exponent vectors of length n_vars summing to d, in lex-descending order."""
    out = []

    def rec(prefix, left, k):
        if k == 1:
            out.append(prefix + (left,))
            return
        for a in range(left, -1, -1):
            rec(prefix + (a,), left - a, k - 1)

    rec((), d, n_vars)
    return out


class Form:
    """Homogeneous polynomial with integer coefficients."""

    __slots__ = ("n_vars", "degree", "_terms", "_hash")

    def __init__(self, n_vars: int, degree: int, terms: Mapping[Sequence[int], int]):
        if n_vars < 2:
            raise ContractError("a form needs at least two variables")
        if degree < 0:
            raise ContractError("degree must be non-negative")
        clean = {}
        for e, c in terms.items():
            e = tuple(int(a) for a in e)
            if len(e) != n_vars or any(a < 0 for a in e) or sum(e) != degree:
                raise ContractError(f"exponent {e} incompatible with n_vars={n_vars}, degree={degree}")
            c = int(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if clean[e] == 0:
                    del clean[e]
        self.n_vars = n_vars
        self.degree = degree
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n_vars, degree, terms):
        # Trusted constructor: terms already valid and zero-free.
        obj = cls.__new__(cls)
        obj.n_vars = n_vars
        obj.degree = degree
        obj._terms = terms
        obj._hash = None
        return obj

    @property
    def n(self) -> int:
        return self.n_vars - 1

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, e: Sequence[int]) -> int:
        return self._terms.get(tuple(e), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return (
            self.n_vars == other.n_vars
            and (self.degree == other.degree or (self.is_zero() and other.is_zero()))
            and self._terms == other._terms
        )

    def __hash__(self):
        if self._hash is None:
            deg = self.degree if self._terms else -1
            self._hash = hash((self.n_vars, deg, frozenset(self._terms.items())))
        return self._hash

    def __neg__(self):
        return Form._raw(self.n_vars, self.degree, {e: -c for e, c in self._terms.items()})

    def __add__(self, other):
        _check_same_shape(self, other)
        t = dict(self._terms)
        for e, c in other._terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Form._raw(self.n_vars, self.degree, t)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return Form._raw(self.n_vars, self.degree, {})
            return Form._raw(self.n_vars, self.degree, {e: c * other for e, c in self._terms.items()})
        if isinstance(other, Form):
            if other.n_vars != self.n_vars:
                raise ContractError("variable count mismatch")
            return Form._raw(self.n_vars, self.degree + other.degree, _mul_terms(self._terms, other._terms))
        return NotImplemented

    __rmul__ = __mul__

    def exact_div(self, k: int) -> "Form":
        out = {}
        for e, c in self._terms.items():
            q, r = divmod(c, k)
            if r:
                raise ContractError("form not divisible by the given integer")
            out[e] = q
        return Form._raw(self.n_vars, self.degree, out)

    def max_abs_coefficient(self) -> int:
        return max((abs(c) for c in self._terms.values()), default=0)

    def norm2(self) -> int:
        return sum(c * c for c in self._terms.values())

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            mon = "*".join(
                f"x{i}" if a == 1 else f"x{i}^{a}" for i, a in enumerate(e) if a
            )
            mag = abs(c)
            if mon:
                body = mon if mag == 1 else f"{mag}*{mon}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for s, b in parts[1:]:
            text += f" {s} {b}"
        return text

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Form(n_vars={self.n_vars}, degree={self.degree}, {self.to_text()!r})"

    @classmethod
    def from_text(cls, text: str, n_vars: int | None = None) -> "Form":
        return parse_form(text, n_vars)

    @classmethod
    def monomial(cls, e: Sequence[int], c: int = 1) -> "Form":
        e = tuple(e)
        return cls(len(e), sum(e), {e: c})

    @classmethod
    def linear(cls, coeffs: Sequence[int]) -> "Form":
        n = len(coeffs)
        return cls(n, 1, {tuple(1 if j == i else 0 for j in range(n)): c for i, c in enumerate(coeffs)})


def _check_same_shape(a: Form, b: Form):
    if a.n_vars != b.n_vars:
        raise ContractError("variable count mismatch")
    if a.degree != b.degree and not (a.is_zero() or b.is_zero()):
        raise ContractError("degree mismatch")


def _mul_terms(a: Mapping, b: Mapping) -> dict:
    out: dict = {}
    for e, c in a.items():
        for f, d in b.items():
            g = tuple(x + y for x, y in zip(e, f))
            v = out.get(g, 0) + c * d
            if v:
                out[g] = v
            else:
                out.pop(g, None)
    return out


# --------------------------------------------------------------------------
# substitution


def _check_matrix(F: Form, T) -> tuple:
    T = intmat.as_matrix(T)
    if len(T) != F.n_vars:
        raise ContractError("matrix size does not match variable count")
    return T


def substitute(F: Form, T, check: bool = True) -> Form:
    """Return F(x * T) exactly.

    x_j is replaced by the linear form sum_k T[k][j] x_k (column j of T).
    """
    if check:
        T = _check_matrix(F, T)
        if intmat.det(T) == 0:
            raise ContractError("singular transformation matrix")
    return Form._raw(F.n_vars, F.degree, substitute_terms(F._terms, T, F.n_vars, F.degree))


def substitute_terms(terms: Mapping, T, n_vars: int, d: int, modulus: int | None = None) -> dict:
    """Sparse substitution kernel on raw term maps (optionally reduced mod modulus)."""
    if not terms:
        return {}
    unit = tuple([0] * n_vars)
    cols = []
    for j in range(n_vars):
        lin = {}
        for k in range(n_vars):
            c = T[k][j]
            if modulus is not None:
                c %= modulus
            if c:
                lin[tuple(1 if t == k else 0 for t in range(n_vars))] = c
        cols.append(lin)
    # cache powers of each column's linear form
    maxexp = [0] * n_vars
    for e in terms:
        for j, a in enumerate(e):
            if a > maxexp[j]:
                maxexp[j] = a
    powers = []
    for j in range(n_vars):
        pw = [{unit: 1}]
        for _ in range(maxexp[j]):
            nxt = _mul_terms(pw[-1], cols[j])
            if modulus is not None:
                nxt = {k: v % modulus for k, v in nxt.items() if v % modulus}
            pw.append(nxt)
        powers.append(pw)
    out: dict = {}
    for e, c in terms.items():
        prod = {unit: c % modulus if modulus is not None else c}
        for j, a in enumerate(e):
            if a:
                prod = _mul_terms(prod, powers[j][a])
                if modulus is not None:
                    prod = {k: v % modulus for k, v in prod.items() if v % modulus}
                if not prod:
                    break
        for k, v in prod.items():
            s = out.get(k, 0) + v
            if modulus is not None:
                s %= modulus
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def scale_variables(F: Form, scalars: Sequence[int]) -> Form:
    """Return F(s_0 x_0, ..., s_n x_n)."""
    if len(scalars) != F.n_vars:
        raise ContractError("scalar count does not match variable count")
    out = {}
    for e, c in F._terms.items():
        m = c
        for s, a in zip(scalars, e):
            if a:
                m *= s**a
        if m:
            out[e] = m
    return Form._raw(F.n_vars, F.degree, out)


# --------------------------------------------------------------------------
# valuations, content


def vp(x: int, p: int):
    if x == 0:
        return INFINITY
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def valuation(F: Form, p: int):
    """Minimum p-adic valuation of the coefficients; INFINITY for the zero form."""
    best = INFINITY
    for c in F._terms.values():
        v = 0
        while c % p == 0:
            c //= p
            v += 1
            if best is not INFINITY and v >= best:
                break
        if best is INFINITY or v < best:
            best = v
            if best == 0:
                return 0
    return best


def content(F: Form) -> int:
    if F.is_zero():
        raise ContractError("content of the zero form")
    g = 0
    for c in F._terms.values():
        g = gcd(g, c)
    return g


def normalize(F: Form) -> Form:
    """Divide out the content; sign is preserved."""
    return F.exact_div(content(F))


def divide_by_prime_power(F: Form, p: int, e: int) -> Form:
    return F if e == 0 else F.exact_div(p**e)


# --------------------------------------------------------------------------
# weights


def _check_weight(F: Form, w: Sequence[int]) -> tuple:
    w = tuple(int(a) for a in w)
    if len(w) != F.n_vars:
        raise ContractError("weight length does not match variable count")
    if any(a < 0 for a in w):
        raise ContractError("weights must be non-negative")
    return w


def apply_weight(F: Form, T, w: Sequence[int], p: int) -> tuple[Form, int]:
    """Substitute by unimodular T, scale x_i by p^{w_i}, divide out p^e.

    Returns (F_2 / p^e, e) where F_2 is the scaled form and e = v_p(F_2).
    """
    if F.is_zero():
        raise ContractError("weight applied to the zero form")
    w = _check_weight(F, w)
    T = _check_matrix(F, T)
    if not intmat.is_unimodular(T):
        raise ContractError("apply_weight requires a unimodular matrix")
    G = substitute(F, T, check=False)
    G = scale_variables(G, [p**a for a in w])
    e = valuation(G, p)
    return divide_by_prime_power(G, p, e), e


def is_unstable(F: Form, w: Sequence[int], p: int) -> bool:
    """Instability test for the weight system (identity, w) at p."""
    w = _check_weight(F, w)
    if F.is_zero():
        return True
    e = valuation(scale_variables(F, [p**a for a in w]), p)
    return F.n_vars * e > F.degree * sum(w)


# --------------------------------------------------------------------------
# transform records


class TransformRecord:
    """Audit record (matrix, scale_exp): output = F(x * matrix) / prime^scale_exp.

    For global results ``scale`` maps each prime to its exponent and
    ``prime`` is None.
    """

    __slots__ = ("matrix", "scale", "prime")

    def __init__(self, matrix, scale: Mapping[int, int] | int = 0, prime: int | None = None):
        self.matrix = intmat.as_matrix(matrix)
        if isinstance(scale, int):
            if prime is None and scale:
                raise ContractError("a nonzero scale exponent needs a prime")
            scale = {prime: scale} if scale else {}
        self.scale = {int(q): int(e) for q, e in scale.items() if e}
        if any(e < 0 for e in self.scale.values()):
            raise ContractError("scale exponents must be non-negative")
        self.prime = prime

    @property
    def scale_exp(self) -> int:
        if self.prime is None:
            if len(self.scale) > 1:
                raise AttributeError("global record has several primes; use .scale")
            return next(iter(self.scale.values()), 0)
        return self.scale.get(self.prime, 0)

    @property
    def divisor(self) -> int:
        out = 1
        for q, e in self.scale.items():
            out *= q**e
        return out

    @classmethod
    def identity(cls, n_vars: int, prime: int | None = None) -> "TransformRecord":
        return cls(intmat.identity(n_vars), {}, prime)

    def then(self, other: "TransformRecord") -> "TransformRecord":
        """Record of applying self first, then other to the result."""
        scale = dict(self.scale)
        for q, e in other.scale.items():
            scale[q] = scale.get(q, 0) + e
        prime = self.prime if self.prime == other.prime else None
        return TransformRecord(intmat.matmul(other.matrix, self.matrix), scale, prime)

    def apply(self, F: Form) -> Form:
        G = substitute(F, self.matrix)
        return G.exact_div(self.divisor) if self.divisor != 1 else G

    def verify(self, F: Form, output: Form) -> bool:
        """Exact check that divisor * output == F(x * matrix)."""
        return substitute(F, self.matrix) == output * self.divisor

    def __eq__(self, other):
        if not isinstance(other, TransformRecord):
            return NotImplemented
        return self.matrix == other.matrix and self.scale == other.scale and self.prime == other.prime

    def __repr__(self):
        return f"TransformRecord(matrix={self.matrix}, scale={self.scale}, prime={self.prime})"


# --------------------------------------------------------------------------
# text syntax

_VAR_ALIASES = {"x": 0, "y": 1, "z": 2, "w": 3}
_FACTOR = re.compile(r"^(?:(x)(\d+)|([xyzw]))(?:\^(\d+))?$")


def parse_form(text: str, n_vars: int | None = None) -> Form:
    """Parse text like ``3*x0^2*x1 - x2^3`` into a Form.

    Variables are x0..x9; the shorthands x, y, z, w stand for x0..x3.
    The number of variables defaults to the largest index used plus one
    (at least two).
    """
    src = text.replace(" ", "").replace("\t", "").replace("\n", "")
    if not src:
        raise ContractError("empty form")
    terms: list[tuple[int, dict]] = []
    maxvar = -1
    if src[0] not in "+-":
        src = "+" + src
    pieces = re.findall(r"[+-][^+-]*", src)
    if "".join(pieces) != src:
        raise ContractError(f"malformed form: {text!r}")
    for piece in pieces:
        sign = -1 if piece[0] == "-" else 1
        body = piece[1:]
        if not body:
            raise ContractError(f"malformed form: {text!r}")
        coef = sign
        powers: dict[int, int] = {}
        for fac in body.split("*"):
            if not fac:
                raise ContractError(f"malformed term: {piece!r}")
            if fac.isdigit():
                coef *= int(fac)
                continue
            m = _FACTOR.match(fac)
            if not m:
                if fac[0].isdigit() or fac[0] == ".":
                    raise ContractError(f"malformed integer: {fac!r}")
                raise ContractError(f"unknown variable: {fac!r}")
            if m.group(1):
                idx = int(m.group(2))
                if idx > 9:
                    raise ContractError(f"unknown variable: {fac!r}")
            else:
                idx = _VAR_ALIASES[m.group(3)]
            k = int(m.group(4)) if m.group(4) else 1
            powers[idx] = powers.get(idx, 0) + k
            maxvar = max(maxvar, idx)
        terms.append((coef, powers))
    nv = max(maxvar + 1, 2) if n_vars is None else n_vars
    if maxvar >= nv:
        raise ContractError("variable index exceeds the declared variable count")
    degs = {sum(pw.values()) for c, pw in terms if c}
    if len(degs) > 1:
        raise ContractError("form is not homogeneous")
    d = degs.pop() if degs else sum(terms[0][1].values())
    out: dict = {}
    for c, pw in terms:
        e = tuple(pw.get(i, 0) for i in range(nv))
        out[e] = out.get(e, 0) + c
    return Form(nv, d, out)


def all_monomials_form(n_vars: int, d: int, coeffs: Iterable[int]) -> Form:
    """Form with the given coefficients in the order of ``exponents``."""
    return Form(n_vars, d, dict(zip(exponents(n_vars, d), coeffs)))


def num_monomials(n_vars: int, d: int) -> int:
    return comb(d + n_vars - 1, n_vars - 1)
