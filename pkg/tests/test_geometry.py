import random

import pytest

from hypmin import intmat
from hypmin.errors import ContractError
from hypmin.forms import Form, exponents, parse_form, substitute
from hypmin.fp import FpPoly, exact_divide, linear_poly, reduce_mod_p
from hypmin.geometry import (
    apply_linear_form,
    cubic_surface_singular_locus,
    high_multiplicity_point,
    high_multiplicity_points,
    is_geometrically_singular,
    lift_value,
    linear_factors,
    move_line_to,
    move_point_to,
    multiplicity_at,
    normalize_vec,
    projective_points,
    triple_points,
    very_singular_points,
)


def fbar(text, p, n=None):
    return reduce_mod_p(parse_form(text, n), p)


def scan_singular(f):
    return sorted(P for P in projective_points(f.nvars, f.p) if multiplicity_at(f, P) >= 2)


def scan_linear_factors(f):
    out = []
    for L in projective_points(f.nvars, f.p):
        g, m = f, 0
        while True:
            q = exact_divide(g, linear_poly(f.p, L))
            if q is None:
                break
            g, m = q, m + 1
        if m:
            out.append((L, m))
    return sorted(out)


class TestLinearFactors:
    def test_examples(self):
        assert linear_factors(fbar("x2^3", 5, 3)) == [((0, 0, 1), 3)]
        assert linear_factors(fbar("x0^3 + x0*x1*x2", 5)) == [((1, 0, 0), 1)]
        assert linear_factors(fbar("x0*x1*x2 + x3^3", 5)) == []

    def test_zero_rejected(self):
        with pytest.raises(ContractError):
            linear_factors(FpPoly(5, 3, {}))

    def test_against_scan(self):
        rng = random.Random(200)
        for k in range(200):
            p = rng.choice([2, 3, 5])
            n = 3 if k % 2 else 4
            if n == 4 and p == 5:
                p = 3
            d = rng.randint(2, 3)
            # half of the inputs get a planted factor
            g = FpPoly(p, n, {e: rng.randrange(p) for e in exponents(n, d - 1)})
            if rng.random() < 0.5:
                L = FpPoly(p, n, {tuple(1 if j == i else 0 for j in range(n)): rng.randrange(p) for i in range(n)})
                f = g * L
            else:
                f = FpPoly(p, n, {e: rng.randrange(p) for e in exponents(n, d)})
            if f.is_zero():
                continue
            assert linear_factors(f) == scan_linear_factors(f)


class TestHighMultiplicity:
    def test_cusp(self):
        assert high_multiplicity_point(fbar("x1^2*x2 - x0^3", 5), 1) == (0, 0, 1)

    def test_smooth_conic(self):
        assert high_multiplicity_point(fbar("x0^2 + x1^2 + x2^2", 5), 1) is None

    def test_linear_factor_guard(self):
        with pytest.raises(ContractError):
            high_multiplicity_point(fbar("x2^4", 5, 3), 2)

    def test_against_scan(self):
        rng = random.Random(5)
        for _ in range(60):
            p = rng.choice([2, 3, 5])
            d = rng.randint(3, 4)
            f = FpPoly(p, 3, {e: rng.randrange(p) for e in exponents(3, d) if rng.random() < 0.6})
            if f.is_zero() or not f.is_homogeneous() or f.total_degree() != d:
                continue
            m = d // 2
            try:
                got = high_multiplicity_points(f, m)
            except ContractError:
                continue
            scan = sorted(P for P in projective_points(3, p) if multiplicity_at(f, P) > m)
            assert got == scan
            if not linear_factors(f):
                assert len(got) <= 1


class TestMoves:
    def test_identities(self):
        assert move_line_to((0, 1), 1, 5) == intmat.identity(2)
        assert move_point_to((1, 0, 0), 0, 5) == intmat.identity(3)

    def test_line_to_x2(self):
        T = move_line_to((1, 1, 0), 2, 5)
        assert intmat.is_unimodular(T)
        img = apply_linear_form((1, 1, 0), T, 5)
        assert img[:2] == (0, 0) and img[2] != 0

    def test_random(self):
        rng = random.Random(8)
        for _ in range(100):
            p = rng.choice([2, 3, 5, 7])
            n = rng.choice([2, 3, 4])
            v = [rng.randrange(p) for _ in range(n)]
            if not any(v):
                continue
            t = rng.randrange(n)
            T = move_point_to(v, t, p)
            assert intmat.is_unimodular(T) and normalize_vec(T[t], p) == normalize_vec(v, p)
            T = move_line_to(v, t, p)
            img = apply_linear_form(v, T, p)
            assert intmat.is_unimodular(T) and all(c == 0 for i, c in enumerate(img) if i != t) and img[t]


class TestCubicSurfaces:
    def test_three_nodes(self):
        rep = cubic_surface_singular_locus(fbar("x0*x1*x2 + x3^3", 5))
        assert rep.kind == "finite-points"
        assert rep.points == [(0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0)]
        assert rep.points == scan_singular(fbar("x0*x1*x2 + x3^3", 5))

    def test_smooth_diagonal(self):
        f = fbar("x0^3 + x1^3 + x2^3 + x3^3", 5)
        assert cubic_surface_singular_locus(f).points == []
        assert not is_geometrically_singular(f)

    def test_cone_over_nodal_cubic(self):
        # x3 is absent: cone with vertex [0:0:0:1] over the nodal curve x1^2 x2 = x0^2 (x0 + x2)
        f = fbar("x1^2*x2 - x0^3 - x0^2*x2", 3, 4)
        rep = cubic_surface_singular_locus(f)
        scan = scan_singular(f)
        if rep.kind == "singular-line":
            P, Q = rep.line
            on_line = sorted({normalize_vec([(a * u + b * v) % 3 for u, v in zip(P, Q)], 3) for a, b in [(1, 0), (0, 1), (1, 1), (1, 2)]})
            assert on_line == scan
        else:
            assert rep.points == scan

    def test_plane_rejected(self):
        with pytest.raises(ContractError):
            cubic_surface_singular_locus(fbar("x0*(x1^2 + x2^2 + x3^2)", 5))

    def test_against_scan(self):
        rng = random.Random(31)
        seen = 0
        for _ in range(80):
            p = rng.choice([2, 3])
            f = FpPoly(p, 4, {e: rng.randrange(p) for e in exponents(4, 3) if rng.random() < 0.4})
            if f.is_zero() or f.total_degree() != 3 or linear_factors(f):
                continue
            rep = cubic_surface_singular_locus(f)
            if rep.kind == "finite-points":
                assert rep.points == scan_singular(f)
                seen += 1
        assert seen > 20


class TestVerySingular:
    def test_examples(self):
        rep = very_singular_points(parse_form("x0*x1*x2 + x3^3 + 5*x0^3"), 5)
        assert rep.points == [(0, 0, 1, 0), (0, 1, 0, 0)]
        rep = very_singular_points(parse_form("x0*x1*x2 + x3^3 + 25*x0^3"), 5)
        assert rep.points == [(0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0)]
        assert very_singular_points(parse_form("x0^3 + x1^3 + x2^3 + x3^3"), 5).points == []

    def test_lift_independence(self):
        rng = random.Random(12)
        for _ in range(40):
            p = rng.choice([2, 3, 5])
            F = parse_form("x0*x1*x2 + x3^3") + Form(4, 3, {e: p * rng.randint(-3, 3) for e in exponents(4, 3)})
            f = reduce_mod_p(F, p)
            if linear_factors(f):
                continue
            rep = very_singular_points(F, p)
            sing = cubic_surface_singular_locus(f)
            if sing.kind != "finite-points":
                continue
            for P in sing.points:
                shift = [a + p * rng.randint(-5, 5) for a in P]
                assert (lift_value(F, shift) % (p * p) == 0) == (P in rep.points)

    def test_singular_line(self):
        # singular along x2 = x3 = 0; g3 = x0^2 x1 vanishes at [1:0] and [0:1]
        F = parse_form("x0*x2^2 + x1*x3^2 + x2^3 + 3*x0^2*x1", 4)
        rep = very_singular_points(F, 3)
        assert rep.line is not None and not rep.line_very_singular
        assert rep.points == [(0, 1, 0, 0), (1, 0, 0, 0)]
        F = parse_form("x0*x2^2 + x1*x3^2 + x2^3 + 9*x0^2*x1", 4)
        assert very_singular_points(F, 3).line_very_singular


class TestTriplePoints:
    def test_cone_vertex(self):
        assert triple_points(fbar("x1^3 + x2^3 + x3^3 + x1*x2*x3", 5, 4)) == [(1, 0, 0, 0)]

    def test_line_of_triple_points(self):
        # binary cubic irreducible over F_2: every point of x1 = x2 = 0 is triple
        f = fbar("x1^3 + x1*x2^2 + x2^3", 2, 4)
        assert triple_points(f) == [(0, 0, 0, 1), (1, 0, 0, 0), (1, 0, 0, 1)]

    def test_smooth(self):
        assert triple_points(fbar("x0^3 + x1^3 + x2^3 + x3^3", 5)) == []

    def test_against_scan(self):
        rng = random.Random(4)
        for _ in range(50):
            p = rng.choice([2, 3])
            f = FpPoly(p, 4, {e: rng.randrange(p) for e in exponents(4, 3) if e[0] == 0 or rng.random() < 0.1})
            if f.is_zero():
                continue
            scan = sorted(P for P in projective_points(4, p) if multiplicity_at(f, P) >= 3)
            if len(scan) <= 20:
                assert triple_points(f) == scan



def test_move_line_then_substitute():
    # after moving the plane x0 + x1 = 0 to x3 = 0 the reduction is divisible by x3
    F = parse_form("(x0 + x1)*x2*x3".replace("(x0 + x1)*x2*x3", "x0*x2*x3 + x1*x2*x3"))
    T = move_line_to((1, 1, 0, 0), 3, 5)
    G = reduce_mod_p(substitute(F, T), 5)
    assert any(L == (0, 0, 0, 1) for L, _ in linear_factors(G))
