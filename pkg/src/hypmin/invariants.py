"""Transvectants of ternary forms and the invariants built from them.

``transvectant(F, G, H, k)`` applies the k-th power of the operator
``det(d/dx_i, d/dy_j, d/dz_l)`` to ``F(x) G(y) H(z)`` and then sets
x = y = z. The power is expanded multinomially over the six commuting
terms of the determinant, so only C(k+5, 5) products of mixed partials are
needed. Outputs are raw integers (no content is divided out).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial, gcd, perm

from .errors import ContractError, NeedsManualPrimesError
from .forms import Form, _mul_terms

# (permutation of the three variables, sign) for the 3x3 determinant
_PERMS = (
    ((0, 1, 2), 1),
    ((1, 2, 0), 1),
    ((2, 0, 1), 1),
    ((0, 2, 1), -1),
    ((2, 1, 0), -1),
    ((1, 0, 2), -1),
)

# Ub^2(F, F, F) = HESSIAN_CONSTANT * det(second partials of F), for every ternary F.
HESSIAN_CONSTANT = 6
# c4 = S / C4_DIVISOR and c6 = -T / C6_DIVISOR where S, T are defined in
# ternary_cubic_invariants; fixed by c4 = 1, c6 = -1 on x0*x1*x2 + x1^3 + x2^3.
C4_DIVISOR = 144
C6_DIVISOR = 3456


def _partial(terms: dict, a: tuple) -> dict:
    """Ordinary (not divided) mixed partial derivative of multi-order a."""
    out: dict = {}
    for e, c in terms.items():
        if e[0] < a[0] or e[1] < a[1] or e[2] < a[2]:
            continue
        m = c * perm(e[0], a[0]) * perm(e[1], a[1]) * perm(e[2], a[2])
        ne = (e[0] - a[0], e[1] - a[1], e[2] - a[2])
        out[ne] = out.get(ne, 0) + m
    return {k: v for k, v in out.items() if v}


def _compositions(k: int, parts: int):
    if parts == 1:
        yield (k,)
        return
    for i in range(k + 1):
        for rest in _compositions(k - i, parts - 1):
            yield (i,) + rest


@lru_cache(maxsize=32)
def _operator_expansion(k: int) -> tuple:
    """Delta^k as ((orders for x, orders for y, orders for z), coefficient) pairs."""
    groups: dict = {}
    for ks in _compositions(k, 6):
        coef = factorial(k)
        for x in ks:
            coef //= factorial(x)
        sign = 1
        a, b, c = [0, 0, 0], [0, 0, 0], [0, 0, 0]
        for (s, sg), kk in zip(_PERMS, ks):
            if kk % 2 and sg < 0:
                sign = -sign
            a[s[0]] += kk
            b[s[1]] += kk
            c[s[2]] += kk
        key = (tuple(a), tuple(b), tuple(c))
        groups[key] = groups.get(key, 0) + sign * coef
    return tuple((key, v) for key, v in groups.items() if v)


def _check_ternary(*forms: Form):
    for F in forms:
        if F.n_vars != 3:
            raise ContractError("transvectants are defined for ternary forms")


def transvectant(F: Form, G: Form, H: Form, k: int) -> Form:
    """k-th Ueberschiebung of three ternary forms."""
    _check_ternary(F, G, H)
    if k < 0:
        raise ContractError("transvectant order must be non-negative")
    deg = F.degree + G.degree + H.degree - 3 * k
    if k > min(F.degree, G.degree, H.degree):
        return Form._raw(3, max(deg, 0), {})
    tf, tg, th = F.terms, G.terms, H.terms
    cache_f: dict = {}
    cache_g: dict = {}
    cache_h: dict = {}
    out: dict = {}
    for (a, b, c), co in _operator_expansion(k):
        pf = cache_f.get(a)
        if pf is None:
            pf = cache_f[a] = _partial(tf, a)
        if not pf:
            continue
        pg = cache_g.get(b)
        if pg is None:
            pg = cache_g[b] = _partial(tg, b)
        if not pg:
            continue
        ph = cache_h.get(c)
        if ph is None:
            ph = cache_h[c] = _partial(th, c)
        if not ph:
            continue
        for e, v in _mul_terms(_mul_terms(pf, pg), ph).items():
            out[e] = out.get(e, 0) + co * v
    return Form(3, deg, out)


def _constant(F: Form) -> int:
    return F.coefficient((0, 0, 0)) if F.degree == 0 else 0


def _det3(m) -> dict:
    """Determinant of a 3x3 matrix of term dicts."""
    out: dict = {}
    for s, sg in _PERMS:
        prod = _mul_terms(_mul_terms(m[0][s[0]], m[1][s[1]]), m[2][s[2]])
        for e, v in prod.items():
            out[e] = out.get(e, 0) + sg * v
    return {k: v for k, v in out.items() if v}


def hessian(F: Form) -> Form:
    """Determinant of the matrix of second partial derivatives."""
    _check_ternary(F)
    if F.degree < 2:
        raise ContractError("Hessian needs degree at least 2")
    t = F.terms
    unit = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    m = [[_partial(t, tuple(a + b for a, b in zip(unit[i], unit[j]))) for j in range(3)] for i in range(3)]
    return Form(3, 3 * (F.degree - 2), _det3(m))


def wronskian(F: Form, G: Form, H: Form) -> Form:
    """Jacobian determinant of three ternary forms."""
    _check_ternary(F, G, H)
    unit = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    m = [[_partial(X.terms, unit[j]) for j in range(3)] for X in (F, G, H)]
    return Form(3, F.degree + G.degree + H.degree - 3, _det3(m))


@dataclass(frozen=True)
class InvariantValue:
    value: int
    degree: int  # degree in the coefficients of the input form
    tag: str


def invariants_even(F: Form) -> tuple[InvariantValue, InvariantValue]:
    """I1 = Ub^d(F,F,F) and I2 = Ub^6(G,G,G) with G = Ub^(d-2)(F,F,F)."""
    _check_ternary(F)
    d = F.degree
    if d < 2 or d % 2:
        raise ContractError("even degree >= 2 expected")
    i1 = _constant(transvectant(F, F, F, d))
    G = transvectant(F, F, F, d - 2)
    i2 = _constant(transvectant(G, G, G, 6))
    return (
        InvariantValue(i1, 3, f"Ub^{d}(F,F,F)"),
        InvariantValue(i2, 9, f"Ub^6(G,G,G), G=Ub^{d - 2}(F,F,F)"),
    )


def cubic_covariant(F: Form) -> Form:
    """Ub^(d-1)(F,F,F), a cubic covariant of a form of odd degree d >= 5."""
    _check_ternary(F)
    d = F.degree
    if d % 2 == 0:
        raise ContractError("odd degree expected")
    if d < 5:
        raise ContractError("the cubic covariant is used for d >= 5; take F itself for d = 3")
    return transvectant(F, F, F, d - 1)


def _ratio(A: Form, B: Form) -> int:
    """Integer r with A = r * B (B nonzero)."""
    r = None
    for e, b in B.items():
        a = A.coefficient(e)
        if a % b:
            raise ArithmeticError("transvectant chain is not proportional")
        q = a // b
        if r is None:
            r = q
        elif r != q:
            raise ArithmeticError("transvectant chain is not proportional")
    if any(B.coefficient(e) == 0 for e, _ in A.items()):
        raise ArithmeticError("transvectant chain is not proportional")
    return r if r is not None else 0


def _exact(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError("invariant normalization is not integral")
    return q


def ternary_cubic_invariants(C: Form) -> tuple:
    """Classical invariants (c4, c6) of a ternary cubic.

    With H = Ub^2(C,C,C): Ub^2(C,C,H) = S*C and Ub^2(C,H,H) + S*H = T*C;
    c4 = S/144 and c6 = -T/3456, both integral on integral cubics.
    """
    _check_ternary(C)
    if C.degree != 3:
        raise ContractError("cubic expected")
    if C.is_zero():
        return 0, 0
    H = transvectant(C, C, C, 2)
    S = _ratio(transvectant(C, C, H, 2), C)
    T = _ratio(transvectant(C, H, H, 2) + H * S, C)
    return _exact(S, C4_DIVISOR), _exact(-T, C6_DIVISOR)


def invariant_pair(F: Form) -> tuple[str, tuple]:
    """Pair of invariants whose gcd controls the bad primes of a plane curve.

    Returns (tag, (a, b)): (I1, I2) for even d, (c4, c6) of F for d = 3 and
    (c4, c6) of the cubic covariant for odd d >= 5.
    """
    _check_ternary(F)
    d = F.degree
    if d < 2:
        raise ContractError("degree at least 2 expected")
    if d % 2 == 0:
        i1, i2 = invariants_even(F)
        return "I1,I2", (i1.value, i2.value)
    if d == 3:
        return "c4,c6", ternary_cubic_invariants(F)
    return "c4,c6(G)", ternary_cubic_invariants(cubic_covariant(F))


def invariant_gcd(F: Form) -> int:
    """gcd of the invariant pair; raises when both vanish."""
    _, (a, b) = invariant_pair(F)
    a, b = int(a), int(b)
    if a == 0 and b == 0:
        raise NeedsManualPrimesError("both invariants vanish; supply the primes explicitly")
    return abs(gcd(a, b))
