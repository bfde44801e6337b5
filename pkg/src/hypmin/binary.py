"""Minimization of binary forms at a prime."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import intmat
from .errors import ContractError, UnstableInputError
from .forms import INFINITY, Form, TransformRecord, apply_weight, divide_by_prime_power, valuation, vp
from .fp import binary_form_linear_factors, reduce_mod_p
from .geometry import move_line_to


@dataclass
class StepResult:
    success: bool
    form: Form
    matrix: tuple
    e: int


def _check_binary(F: Form):
    if F.n_vars != 2:
        raise ContractError("binary form expected")
    if F.degree < 2:
        raise ContractError("degree at least 2 expected")


def coefficients(F: Form) -> list[int]:
    """Coefficients of x0^(d-i) x1^i for i = 0..d."""
    d = F.degree
    return [F.coefficient((d - i, i)) for i in range(d + 1)]


def sylvester_resultant(f: list[int], g: list[int]) -> int:
    """Resultant of two polynomials given by coefficient lists, highest degree first.

    The formal degrees are len - 1, so leading zeros are allowed.
    """
    m, n = len(f) - 1, len(g) - 1
    if m < 0 or n < 0:
        raise ContractError("empty coefficient list")
    if m == 0 and n == 0:
        return 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(f) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(g) + [0] * (size - n - 1 - i))
    return intmat.det(rows)


def _partial(F: Form, var: int) -> list[int]:
    d = F.degree
    out = []
    for i in range(d):
        # monomial x0^(d-1-i) x1^i in the derivative
        if var == 0:
            out.append((d - i) * F.coefficient((d - i, i)))
        else:
            out.append((i + 1) * F.coefficient((d - 1 - i, i + 1)))
    return out


def discriminant(F: Form) -> int:
    """Discriminant, normalized so that disc(x0^2 + b x0 x1 + c x1^2) = b^2 - 4c."""
    _check_binary(F)
    d = F.degree
    r = sylvester_resultant(_partial(F, 0), _partial(F, 1))
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    q, rem = divmod(sign * r, d ** (d - 2))
    if rem:
        raise ArithmeticError("discriminant normalization failed")
    return q


def _poly_gcd_q(a: list, b: list) -> list:
    """Monic gcd over Q of coefficient lists (highest degree first)."""

    def trim(x):
        i = 0
        while i < len(x) and x[i] == 0:
            i += 1
        return x[i:]

    a, b = trim([Fraction(x) for x in a]), trim([Fraction(x) for x in b])
    while b:
        while len(a) >= len(b) and a:
            q = a[0] / b[0]
            a = trim([x - q * y for x, y in zip(a, b + [0] * (len(a) - len(b)))])
        a, b = b, a
    return [x / a[0] for x in a] if a else []


def is_nullform(F: Form) -> bool:
    """True iff F has a linear factor over an algebraic closure of multiplicity > d/2.

    Such a factor is unique, hence rational; so F is a nullform iff some
    rational point is a root of all x1-derivatives up to order floor(d/2),
    or x0 divides F to that order.
    """
    _check_binary(F)
    d = F.degree
    k = d // 2
    c = coefficients(F)
    # x0^m divides F iff c_i = 0 for i > d - m
    m_x0 = next((i for i in range(d + 1) if c[d - i]), d + 1)
    if m_x0 > k:
        return True
    # affine part f(t) = F(1, t), highest degree first
    f = list(reversed(c))
    g = f
    for _ in range(k):
        deriv = [a * (len(f) - 1 - i) for i, a in enumerate(f[:-1])]
        g = _poly_gcd_q(g, deriv)
        f = deriv
        if len(g) <= 1:
            return False
    return len(g) > 1


def minimize_binary_one_step(F: Form, p: int) -> StepResult:
    _check_binary(F)
    d = F.degree
    Fbar = reduce_mod_p(F, p)
    ident = intmat.identity(2)
    if Fbar.is_zero():
        raise ContractError("form must be primitive at p")
    for lin, m in binary_form_linear_factors(Fbar):
        if 2 * m <= d:
            continue
        T = move_line_to(lin, 1, p)
        G1, e = apply_weight(F, T, (0, 1), p)
        if 2 * e > d:
            return StepResult(True, G1, intmat.matmul(intmat.diagonal((1, p)), T), e)
        break
    return StepResult(False, F, ident, 0)


def step_cap(F: Form, p: int) -> int:
    """Iteration cap: v_p(disc) + 1 for nonzero discriminant.

    For zero discriminant the cap falls back to d times the largest finite
    coefficient valuation plus a constant; each step lowers a nonzero
    invariant, so semistable inputs stay well inside it.
    """
    D = discriminant(F)
    if D:
        return vp(D, p) + 1
    vals = [vp(c, p) for _, c in F.items()]
    return F.degree * max(v for v in vals if v is not INFINITY) + 64


def minimize_binary(F: Form, p: int, cap: int | None = None) -> tuple[Form, TransformRecord]:
    """Loop the one-step procedure; returns (G, record) with p^e * G = F(x * T)."""
    _check_binary(F)
    if F.is_zero():
        raise ContractError("zero form")
    if is_nullform(F):
        raise UnstableInputError("binary form is a nullform")
    e = valuation(F, p)
    G = divide_by_prime_power(F, p, e)
    rec = TransformRecord(intmat.identity(2), e, p)
    limit = step_cap(G, p) if cap is None else cap
    steps = 0
    while True:
        res = minimize_binary_one_step(G, p)
        if not res.success:
            return G, rec
        steps += 1
        if steps > limit:
            raise UnstableInputError("minimization did not terminate within the step cap")
        G = res.form
        rec = rec.then(TransformRecord(res.matrix, res.e, p))
