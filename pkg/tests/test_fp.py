import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypmin.errors import ContractError
from hypmin.forms import parse_form
from hypmin.fp import (
    FpIdeal,
    FpPoly,
    binary_cofactor,
    binary_form_linear_factors,
    groebner,
    reduce_mod_p,
    resultant,
    solve_zero_dim,
    univariate_resultant,
    univariate_roots,
)


def poly(p, nv, terms):
    return FpPoly(p, nv, terms)


X, Y = (1, 0), (0, 1)


def xy(p, terms):
    """Bivariate affine polynomial from {(i, j): c}."""
    return FpPoly(p, 2, terms)


class TestReduce:
    def test_examples(self):
        assert reduce_mod_p(parse_form("7*x0^2 + x1^2"), 7) == poly(7, 2, {(0, 2): 1})
        assert not reduce_mod_p(parse_form("x0^2 + 3*x1^2"), 3).is_zero()
        assert reduce_mod_p(parse_form("5*x0^2 + 10*x1^2"), 5).is_zero()


class TestRoots:
    def test_examples(self):
        assert univariate_roots([1, 0, 1], 5) == [(2, 1), (3, 1)]
        assert univariate_roots([-1, 3, -3, 1], 7) == [(1, 3)]
        assert univariate_roots([1, 0, 1], 7) == []

    def test_zero_rejected(self):
        with pytest.raises(ContractError):
            univariate_roots([0, 0], 5)

    def test_large_prime_path(self):
        p = 1000003
        f = [1]
        for r in (5, 17, 17, 999999):
            f = [((f[i - 1] if i else 0) - r * (f[i] if i < len(f) else 0)) % p for i in range(len(f) + 1)]
        assert univariate_roots(f, p) == [(5, 1), (17, 2), (999999, 1)]

    @given(st.sampled_from([2, 3, 5, 7]), st.lists(st.integers(0, 6), min_size=2, max_size=6))
    def test_against_scan(self, p, coeffs):
        if not any(c % p for c in coeffs):
            return
        roots = dict(univariate_roots(coeffs, p))
        scan = {x for x in range(p) if sum(c * x**i for i, c in enumerate(coeffs)) % p == 0}
        assert set(roots) == scan


class TestBinaryFactors:
    def test_examples(self):
        f = poly(5, 2, {(2, 1): 1})
        assert binary_form_linear_factors(f) == [((1, 0), 2), ((0, 1), 1)]
        got = binary_form_linear_factors(poly(5, 2, {(2, 0): 1, (0, 2): 1}))
        assert got == [((1, 2), 1), ((1, 3), 1)]
        assert binary_form_linear_factors(poly(7, 2, {(2, 0): 1, (0, 2): 1})) == []

    def test_zero_rejected(self):
        with pytest.raises(ContractError):
            binary_form_linear_factors(poly(5, 2, {}))

    def test_reconstruction(self):
        rng = random.Random(500)
        for _ in range(500):
            p = rng.choice([2, 3, 5, 13])
            d = rng.randint(1, 6)
            f = poly(p, 2, {(d - i, i): rng.randrange(p) for i in range(d + 1)})
            if f.is_zero():
                continue
            facs = binary_form_linear_factors(f)
            cof = binary_cofactor(f, facs)
            prod = cof
            for (a, b), m in facs:
                prod = prod * poly(p, 2, {X: a, Y: b}) ** m
            assert prod == f
            # cofactor has no linear factor left
            assert binary_form_linear_factors(cof) == [] or cof.total_degree() == 0


class TestGroebner:
    def test_linear(self):
        I = FpIdeal.of([xy(7, {X: 1, (0, 0): -1}), xy(7, {Y: 1, X: -1})])
        assert set(map(repr, groebner(I, "lex"))) == {repr(xy(7, {X: 1, (0, 0): -1})), repr(xy(7, {Y: 1, (0, 0): -1}))}

    def test_unit(self):
        I = FpIdeal.of([FpPoly.constant(5, 2, 1)])
        assert groebner(I) == [FpPoly.constant(5, 2, 1)]

    def test_elimination(self):
        I = FpIdeal.of([xy(5, {(2, 0): 1, Y: -1}), xy(5, {(0, 2): 1, X: -1})])
        gb = groebner(I, "lex")
        only_y = [g for g in gb if all(e[0] == 0 for e in g.terms)]
        assert only_y == [xy(5, {(0, 4): 1, Y: -1})]
        assert I.contains(xy(5, {(0, 4): 1, Y: -1}))

    def test_idempotent(self):
        I = FpIdeal.of([xy(5, {(2, 0): 1, Y: -1}), xy(5, {(0, 2): 1, X: -1})])
        gb = groebner(I, "grevlex")
        assert groebner(FpIdeal.of(gb), "grevlex") == gb

    def test_normal_form_is_multiplicative(self):
        rng = random.Random(9)
        p = 7
        I = FpIdeal.of([xy(p, {(2, 0): 1, (1, 1): 3, (0, 0): 1}), xy(p, {(0, 2): 1, X: 2})])
        for _ in range(30):
            f = xy(p, {(i, j): rng.randrange(p) for i in range(3) for j in range(3)})
            g = xy(p, {(i, j): rng.randrange(p) for i in range(3) for j in range(3)})
            assert I.normal_form(f * g) == I.normal_form(I.normal_form(f) * I.normal_form(g))


class TestSolve:
    def test_examples(self):
        r = solve_zero_dim(FpIdeal.of([xy(7, {(2, 0): 1, (0, 0): -1}), xy(7, {Y: 1, X: -1})]))
        assert not r.positive_dimensional and r.points == [(1, 1), (6, 6)]
        r = solve_zero_dim(FpIdeal.of([xy(7, {X: 1}), xy(7, {Y: 1})]))
        assert r.points == [(0, 0)]
        assert solve_zero_dim(FpIdeal.of([xy(3, {(1, 1): 1})])).positive_dimensional

    def test_against_exhaustive_scan(self):
        rng = random.Random(77)
        checked = 0
        for _ in range(200):
            p = rng.choice([2, 3, 5, 7])
            nv = rng.choice([1, 2, 3]) if p < 7 else rng.choice([1, 2])
            mons = [e for e in itertools.product(range(3), repeat=nv) if sum(e) <= 2]
            gens = [FpPoly(p, nv, {e: rng.randrange(p) for e in mons if rng.random() < 0.5}) for _ in range(nv + 1)]
            gens = [g for g in gens if not g.is_zero()]
            if not gens:
                continue
            res = solve_zero_dim(FpIdeal.of(gens))
            scan = sorted(pt for pt in itertools.product(range(p), repeat=nv) if all(g.evaluate(pt) == 0 for g in gens))
            if res.positive_dimensional:
                continue
            assert res.points == scan
            checked += 1
        assert checked > 100


class TestResultant:
    def test_linear_sign(self):
        # Sylvester convention: Res(f, g) = prod over roots r of f of g(r)
        p = 11
        a, b = 3, 8
        r = resultant(xy(p, {X: 1, (0, 0): -a}), xy(p, {X: 1, (0, 0): -b}), 0)
        assert r == FpPoly.constant(p, 2, (a - b) % p)
        assert univariate_resultant([-a, 1], [-b, 1], p) == (a - b) % p

    def test_shared_root(self):
        assert univariate_resultant([1, 0, 1], [2, 1], 5) == 0
        r = resultant(xy(5, {(2, 0): 1, (0, 0): 1}), xy(5, {X: 1, (0, 0): 2}), 0)
        assert r.is_zero()

    def test_coprime_linears(self):
        assert univariate_resultant([1, 1], [2, 1], 5) != 0

    def test_vanishes_at_common_roots(self):
        p = 7
        f = xy(p, {(2, 0): 1, Y: -1})
        g = xy(p, {X: 1, Y: -1, (0, 0): -2})
        r = resultant(f, g, 0)
        for y in range(p):
            common = any(f.evaluate((x, y)) == 0 and g.evaluate((x, y)) == 0 for x in range(p))
            if common:
                assert r.evaluate((0, y)) == 0
