"""Geometry over F_p needed by the minimizers.

Points and hyperplanes are tuples of residues normalized so that the first
nonzero entry is 1. Matrices returned by the ``move_*`` helpers are integer
unimodular matrices acting by ``F -> F(x * T)``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from . import intmat
from .errors import ContractError
from .fp import (
    DEFAULT_SEED,
    FpIdeal,
    FpPoly,
    binary_form_linear_factors,
    exact_divide,
    linear_poly,
    solve_zero_dim,
    up_gcd,
    univariate_roots,
)
from .forms import Form, substitute

# ---------------------------------------------------------------------------
# small helpers


def normalize_vec(v: Sequence[int], p: int) -> tuple:
    v = [a % p for a in v]
    for a in v:
        if a:
            inv = pow(a, -1, p)
            return tuple(x * inv % p for x in v)
    raise ContractError("zero vector has no projective normalization")


def pivot(v: Sequence[int]) -> int:
    for i, a in enumerate(v):
        if a:
            return i
    raise ContractError("zero vector")


def projective_points(nvars: int, p: int):
    """All normalized points of P^{nvars-1}(F_p)."""
    for k in range(nvars):
        for rest in itertools.product(range(p), repeat=nvars - k - 1):
            yield (0,) * k + (1,) + rest


def hasse_index_set(nvars: int, order: int):
    """Exponent tuples alpha with |alpha| == order."""
    for a in itertools.product(range(order + 1), repeat=nvars):
        if sum(a) == order:
            yield a


def multiplicity_at(f: FpPoly, point: Sequence[int]) -> int:
    """Multiplicity of the point on the hypersurface f = 0 (Taylor shift).

    Returns a large number (degree + 1) when f vanishes to every order.
    """
    p = f.p
    d = f.total_degree()
    for k in range(d + 1):
        for a in hasse_index_set(f.nvars, k):
            if f.hasse_derivative(a).evaluate(point) % p:
                return k
    return d + 1


def lift_sl(Abar: Sequence[Sequence[int]], p: int) -> tuple:
    """Integer matrix of determinant 1 congruent to Abar mod p (det Abar = 1 mod p).

    Abar is reduced to the identity by transvections; the inverse product is
    lifted factor by factor.
    """
    n = len(Abar)
    A = [[x % p for x in r] for r in Abar]
    ops = []  # (i, j, c): row_i += c * row_j

    def addrow(i, j, c):
        c %= p
        if c:
            A[i] = [(x + c * y) % p for x, y in zip(A[i], A[j])]
            ops.append((i, j, c))

    for j in range(n):
        if A[j][j] == 0:
            src = next((i for i in range(j + 1, n) if A[i][j]), None)
            if src is None:
                raise ContractError("matrix not invertible mod p")
            addrow(j, src, 1)
        if A[j][j] != 1 and j < n - 1:
            if A[j + 1][j] == 0:
                addrow(j + 1, j, 1)
            addrow(j, j + 1, (1 - A[j][j]) * pow(A[j + 1][j], -1, p))
        if A[j][j] != 1:
            raise ContractError("determinant is not 1 mod p")
        for i in range(n):
            if i != j and A[i][j]:
                addrow(i, j, -A[i][j])
    M = intmat.identity(n)
    for i, j, c in ops:
        M = intmat.matmul(M, intmat.elementary(n, i, j, -c))
    return M


def complete_rows(rows: Sequence[Sequence[int]], n: int, p: int) -> tuple:
    """Unimodular integer matrix whose first rows reduce to multiples of ``rows``."""
    rows = [list(normalize_vec(r, p)) for r in rows]
    ech: list = []
    pivots: list = []
    for r in rows:
        v = list(r)
        for pv, er in zip(pivots, ech):
            if v[pv]:
                f = v[pv]
                v = [(x - f * y) % p for x, y in zip(v, er)]
        if not any(v):
            raise ContractError("rows are dependent mod p")
        c = pivot(v)
        inv = pow(v[c], -1, p)
        ech.append([x * inv % p for x in v])
        pivots.append(c)
    full = [list(r) for r in rows]
    for c in range(n):
        if c not in pivots:
            full.append([1 if j == c else 0 for j in range(n)])
    direct = tuple(tuple(r) for r in full)
    if intmat.det(direct) in (1, -1):
        return direct
    det = intmat.det(direct) % p
    inv = pow(det, -1, p)
    full[-1] = [x * inv % p for x in full[-1]]
    return lift_sl(full, p)


def move_point_to(P: Sequence[int], target: int, p: int) -> tuple:
    """Unimodular T with e_target * T = P mod p (row ``target`` of T is P)."""
    P = normalize_vec(P, p)
    n = len(P)
    i = pivot(P)
    rows = [list(r) for r in intmat.identity(n)]
    rows[i] = list(P)
    rows[i], rows[target] = rows[target], rows[i]
    T = tuple(tuple(r) for r in rows)
    assert intmat.det(T) in (1, -1)
    return T


def move_line_to(L: Sequence[int], target: int, p: int) -> tuple:
    """Unimodular T with L(x * T) = lambda * x_target mod p."""
    L = normalize_vec(L, p)
    n = len(L)
    i = pivot(L)
    # (I + v e_i^T) with v_j = -L_j for j != i sends L to e_i
    rows = [list(r) for r in intmat.identity(n)]
    for j in range(n):
        if j != i:
            rows[j][i] = (-L[j]) % p
    if i != target:
        rows[i], rows[target] = rows[target], rows[i]
        # swap moves e_i image: T*L has the target entry after row swap
    T = tuple(tuple(r) for r in rows)
    assert intmat.det(T) in (1, -1)
    return T


def apply_linear_form(L: Sequence[int], T, p: int) -> tuple:
    """Coefficients of L(x * T) mod p."""
    n = len(L)
    return tuple(sum(T[k][j] * L[j] for j in range(n)) % p for k in range(n))


# ---------------------------------------------------------------------------
# linear factors


def _substitute_pencil(f: FpPoly, lin: Sequence[int]) -> dict:
    """Coefficient polynomials in c of f restricted to lin + c*x_last = 0.

    The pivot variable of lin is eliminated; returns a map from exponents of
    the remaining variables to univariate coefficient lists in c.
    """
    p, n = f.p, f.nvars
    i = pivot(lin)
    last = n - 1
    # x_i = -(sum_{j != i, j < last} lin_j x_j) - (lin_last + c) x_last
    # Work in n+1 variables: original ones plus c at index n.
    cols = []
    for j in range(n):
        if j != i:
            cols.append(FpPoly.var(p, n + 1, j))
        else:
            t = {}
            for k in range(n):
                if k != i and k != last and lin[k]:
                    t[tuple(1 if m == k else 0 for m in range(n + 1))] = -lin[k]
            if lin[last]:
                t[tuple(1 if m == last else 0 for m in range(n + 1))] = -lin[last]
            t[tuple(1 if m in (last, n) else 0 for m in range(n + 1))] = -1
            cols.append(FpPoly(p, n + 1, t))
    g = FpPoly(p, n + 1, {e + (0,): c for e, c in f.terms.items()}).substitute_linear(cols)
    groups: dict = {}
    for e, c in g.terms.items():
        key = e[:n]
        lst = groups.setdefault(key, {})
        lst[e[n]] = c
    out = {}
    for key, cs in groups.items():
        deg = max(cs)
        out[key] = [cs.get(k, 0) for k in range(deg + 1)]
    return out


def _distinct_linear_factors(f: FpPoly) -> list[tuple]:
    n = f.nvars
    p = f.p
    if f.total_degree() <= 0:
        return []
    if n == 2:
        return [lin for lin, _ in binary_form_linear_factors(f)]
    last = n - 1
    out = []
    restricted = f.specialize(last, 0)
    g = f
    xl = tuple(1 if j == last else 0 for j in range(n))
    if restricted.is_zero():
        out.append(xl)
        while True:
            q = exact_divide(g, linear_poly(p, xl))
            if q is None:
                break
            g = q
        restricted = g.specialize(last, 0)
        if g.total_degree() <= 0:
            return out
    for lin0 in _distinct_linear_factors(restricted):
        lin = tuple(lin0) + (0,)
        coeffs = _substitute_pencil(g, lin)
        h: list = []
        for cs in coeffs.values():
            h = up_gcd(h, cs, p) if h else up_gcd(cs, [], p)
            if len(h) == 1:
                break
        if not coeffs:
            raise ContractError("pencil substitution vanished identically")
        if len(h) <= 1:
            continue
        for c, _ in univariate_roots(h, p):
            cand = list(lin)
            cand[last] = (cand[last] + c) % p
            out.append(normalize_vec(cand, p))
    return sorted(set(out))


def linear_factors(f: FpPoly) -> list[tuple[tuple, int]]:
    """All F_p-rational linear factors of a homogeneous form with multiplicities."""
    if f.is_zero():
        raise ContractError("linear factors of the zero form")
    if not f.is_homogeneous():
        raise ContractError("homogeneous input expected")
    out = []
    for lin in _distinct_linear_factors(f):
        L = linear_poly(f.p, lin)
        m = 0
        g = f
        while True:
            q = exact_divide(g, L)
            if q is None:
                break
            g = q
            m += 1
        if m:
            out.append((lin, m))
    return sorted(out)


def strip_linear_factors(f: FpPoly, factors) -> FpPoly:
    g = f
    for lin, m in factors:
        L = linear_poly(f.p, lin)
        for _ in range(m):
            q = exact_divide(g, L)
            if q is None:
                raise ContractError("reported factor does not divide")
            g = q
    return g


# ---------------------------------------------------------------------------
# points on plane curves


def _chart_systems(polys: Sequence[FpPoly]):
    """Yield (k, dehomogenized polys in n-1-k vars) for the standard charts."""
    n = polys[0].nvars
    for k in range(n):
        sub = []
        for g in polys:
            h = g
            for j in range(k):
                h = h.specialize(0, 0)
            h = h.specialize(0, 1)
            if not h.is_zero():
                sub.append(h)
        yield k, sub


def _chart_point(k: int, n: int, affine: Sequence[int]) -> tuple:
    return (0,) * k + (1,) + tuple(affine)


def projective_solutions(polys: Sequence[FpPoly], seed: int = DEFAULT_SEED):
    """F_p-points of a homogeneous system, or None if some chart is positive-dimensional."""
    n = polys[0].nvars
    pts = []
    for k, sub in _chart_systems(polys):
        nv = n - 1 - k
        if not sub:
            if nv == 0:
                pts.append(_chart_point(k, n, ()))
                continue
            return None
        if any(all(sum(e) == 0 for e in g.terms) for g in sub):
            continue
        if nv == 0:
            continue
        res = solve_zero_dim(FpIdeal.of(sub), seed)
        if res.positive_dimensional:
            return None
        pts.extend(_chart_point(k, n, a) for a in res.points)
    return sorted(pts)


def high_multiplicity_points(g: FpPoly, threshold: int, seed: int = DEFAULT_SEED) -> list[tuple]:
    """All F_p-points of multiplicity > threshold on g = 0 (finite case)."""
    if threshold < 0:
        raise ContractError("threshold out of range")
    if g.is_zero():
        raise ContractError("zero polynomial")
    if threshold >= g.total_degree():
        return []
    derivs = []
    for k in range(threshold + 1):
        for a in hasse_index_set(g.nvars, k):
            h = g.hasse_derivative(a)
            if not h.is_zero():
                derivs.append(h)
    pts = projective_solutions(derivs, seed)
    if pts is None:
        raise ContractError("points of high multiplicity form a curve")
    return pts


def high_multiplicity_point(g: FpPoly, threshold: int, seed: int = DEFAULT_SEED):
    """The unique point of multiplicity > threshold on a linear-factor-free curve, or None."""
    if threshold < 0:
        raise ContractError("threshold out of range")
    if 2 * threshold >= g.total_degree() and linear_factors(g):
        raise ContractError("curve has a linear factor")
    pts = high_multiplicity_points(g, threshold, seed)
    if len(pts) > 1:
        raise ContractError("several points exceed the threshold")
    return pts[0] if pts else None


# ---------------------------------------------------------------------------
# cubic surfaces


@dataclass
class SingularLocusReport:
    kind: str  # "finite-points" | "singular-line"
    points: list = field(default_factory=list)
    line: tuple | None = None  # two spanning points when kind == "singular-line"


def singular_system(f: FpPoly) -> list[FpPoly]:
    """f together with its first divided partials."""
    out = [f]
    for i in range(f.nvars):
        out.append(f.hasse_derivative(tuple(1 if j == i else 0 for j in range(f.nvars))))
    return [g for g in out if not g.is_zero()]


def is_geometrically_singular(f: FpPoly) -> bool:
    """True iff f = 0 has a singular point over the algebraic closure of F_p."""
    system = singular_system(f)
    for _, sub in _chart_systems(system):
        if not sub:
            return True
        if FpIdeal.of(sub).is_unit():
            continue
        return True
    return False


def _line_is_singular(f: FpPoly, P: Sequence[int], Q: Sequence[int]) -> bool:
    p, n = f.p, f.nvars
    s = FpPoly.var(p, 2, 0)
    t = FpPoly.var(p, 2, 1)
    cols = [s.scale(P[j]) + t.scale(Q[j]) for j in range(n)]
    return all(g.substitute_linear(cols).is_zero() for g in singular_system(f))


def _plane_basis(a: Sequence[int], p: int) -> list[tuple]:
    """Three vectors spanning the plane a . x = 0 in F_p^4."""
    i = pivot(a)
    inv = pow(a[i], -1, p)
    basis = []
    for j in range(len(a)):
        if j == i:
            continue
        v = [0] * len(a)
        v[j] = 1
        v[i] = (-a[j] * inv) % p
        basis.append(tuple(v))
    return basis


def _singular_points_on_plane(f: FpPoly, a: Sequence[int], seed: int):
    p, n = f.p, f.nvars
    B = _plane_basis(a, p)
    cols = []
    for j in range(n):
        t = {}
        for r, v in enumerate(B):
            if v[j]:
                t[tuple(1 if m == r else 0 for m in range(n - 1))] = v[j]
        cols.append(FpPoly(p, n - 1, t))
    system = [g.substitute_linear(cols) for g in singular_system(f)]
    system = [g for g in system if not g.is_zero()]
    if not system:
        return None
    sols = projective_solutions(system, seed)
    if sols is None:
        return None
    pts = []
    for u in sols:
        pts.append(normalize_vec([sum(u[r] * B[r][j] for r in range(n - 1)) for j in range(n)], p))
    return pts


def nullspace_mod_p(rows, ncols: int, p: int) -> list[list[int]]:
    """Basis of {v : rows . v = 0} over F_p."""
    A = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    basis = []
    for fc in (c for c in range(ncols) if c not in pivots):
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-A[i][fc]) % p
        basis.append(v)
    return basis


MAX_TRIPLE_POINTS = 10**4


def triple_points(f: FpPoly, max_points: int = MAX_TRIPLE_POINTS) -> list[tuple]:
    """F_p-points of multiplicity 3 on a cubic, sorted.

    The second divided partials of a cubic are linear forms, so the candidates
    form a linear subspace; a point, a line or a plane of them. Subspaces with
    more than ``max_points`` points are skipped (the cubic is then the cube of
    a linear form).
    """
    rows = []
    for a in hasse_index_set(f.nvars, 2):
        h = f.hasse_derivative(a)
        rows.append([h.terms.get(tuple(1 if j == i else 0 for j in range(f.nvars)), 0) for i in range(f.nvars)])
    basis = nullspace_mod_p(rows, f.nvars, f.p)
    k = len(basis)
    if k == 0 or (f.p**k - 1) // (f.p - 1) > max_points:
        return []
    pts = set()
    for c in projective_points(k, f.p):
        P = normalize_vec([sum(c[r] * basis[r][j] for r in range(k)) for j in range(f.nvars)], f.p)
        if multiplicity_at(f, P) >= 3:
            pts.add(P)
    return sorted(pts)


def cubic_surface_singular_locus(f: FpPoly, seed: int = DEFAULT_SEED) -> SingularLocusReport:
    """Classify the F_p-rational singular locus of a cubic surface without linear factor."""
    if f.nvars != 4 or f.total_degree() != 3 or not f.is_homogeneous():
        raise ContractError("quaternary cubic expected")
    if linear_factors(f):
        raise ContractError("cubic surface contains a plane")
    system = singular_system(f)
    pts = projective_solutions(system, seed)
    if pts is not None:
        return SingularLocusReport("finite-points", pts)
    line = find_singular_line(f, seed)
    if line is not None:
        return SingularLocusReport("singular-line", [], line)
    return SingularLocusReport("finite-points", triple_points(f))


def find_singular_line(f: FpPoly, seed: int = DEFAULT_SEED, attempts: int = 60, slices_wanted: int = 4):
    """An F_p-line of singular points, found by slicing with random planes.

    A rational singular line meets a plane not containing it in one rational
    point, so joining points from different slices finds it.
    """
    p, n = f.p, f.nvars
    rng = random.Random(seed)
    found: set = set()
    good = 0
    tried = 0
    while good < slices_wanted and tried < attempts:
        tried += 1
        a = [rng.randrange(p) for _ in range(n)]
        if not any(a):
            continue
        pts = _singular_points_on_plane(f, a, seed)
        if pts is None:
            continue
        good += 1
        found.update(pts)
    if good < 2:
        if p ** (n - 1) <= 20000:
            return _scan_singular_line(f)
        raise ContractError("could not find transversal planes for the singular locus")
    for P, Q in itertools.combinations(sorted(found), 2):
        if _line_is_singular(f, P, Q):
            return (P, Q)
    return None


def _scan_singular_line(f: FpPoly):
    sing = [P for P in projective_points(f.nvars, f.p) if all(g.evaluate(P) == 0 for g in singular_system(f))]
    for P, Q in itertools.combinations(sing, 2):
        if _line_is_singular(f, P, Q):
            return (P, Q)
    return None


@dataclass
class VerySingularReport:
    points: list
    line: tuple | None = None
    line_very_singular: bool = False


def lift_value(F: Form, point: Sequence[int]) -> int:
    acc = 0
    for e, c in F.items():
        m = c
        for x, a in zip(point, e):
            if a:
                m *= x**a
        acc += m
    return acc


def very_singular_points(F: Form, p: int, seed: int = DEFAULT_SEED) -> VerySingularReport:
    """Very singular F_p-points of a cubic surface, plus the singular line if there is one.

    On a singular line moved to x2 = x3 = 0, F(x0, x1, 0, 0) = p * g3 and a
    point of the line is very singular iff g3 vanishes there mod p; if g3 is
    zero mod p the whole line is very singular and ``points`` is left empty.
    """

    f = FpPoly.from_form(F, p)
    rep = cubic_surface_singular_locus(f, seed)
    if rep.kind == "singular-line":
        P, Q = rep.line
        T = complete_rows([P, Q], 4, p)
        G = substitute(F, T)
        g3 = {(e[0], e[1]): c // p for e, c in G.items() if e[2] == 0 and e[3] == 0}
        if any(c % p for e, c in G.items() if e[2] == 0 and e[3] == 0):
            raise ContractError("line is not contained in the reduction")
        gbar = FpPoly(p, 2, g3)
        if gbar.is_zero():
            return VerySingularReport([], rep.line, True)
        pts = []
        for (a, b), _ in binary_form_linear_factors(gbar):
            xi0, xi1 = b % p, (-a) % p
            pts.append(normalize_vec([xi0 * u + xi1 * v for u, v in zip(T[0], T[1])], p))
        return VerySingularReport(sorted(set(pts)), rep.line, False)
    pts = [P for P in rep.points if lift_value(F, P) % (p * p) == 0]
    return VerySingularReport(sorted(pts))
