import random

import pytest
from conftest import random_unimodular
from fixtures import S0_SURFACE

from hypmin import intmat
from hypmin.cubic_surface import (
    is_triple_point,
    minimize_cubic_surface,
    minimize_cubic_surface_one_step,
    quadratic_rank,
    test_0001 as try_0001,
    test_0011 as try_0011,
    test_0111 as try_0111,
    test_0122_0223 as try_0122_0223,
)
from hypmin.errors import ContractError, UnstableInputError
from hypmin.forms import Form, content, divide_by_prime_power, exponents, parse_form, substitute, valuation
from hypmin.fp import FpPoly, reduce_mod_p
from hypmin.geometry import cubic_surface_singular_locus
from hypmin.oracle import oracle_one_step

CUBIC_WEIGHTS = [(0, 0, 0, 1), (0, 0, 1, 1), (0, 1, 1, 1), (0, 1, 2, 2), (0, 2, 2, 3)]

# found by pushing random cubics through diag(p^(2 - w)) / diag(p^(3 - w)) at p = 3
RANK_TWO_CHAIN = parse_form(
    "81*x0^3 + 18*x0^2*x2 + 9*x0^2*x3 - 9*x0*x1^2 - 3*x0*x1*x3 + x0*x2*x3"
    " + 6*x1^3 - x1^2*x2 + 2*x1^2*x3"
)
RANK_ONE_0223 = parse_form(
    "-81*x0^2*x2 - 27*x0^2*x3 + 3*x0*x1*x3 - 9*x0*x2^2 + x0*x3^2"
    " + 2*x1^3 - x1^2*x2 - x1*x2^2 - 2*x2^3"
)
RANK_ONE_0122 = parse_form(
    "729*x0^3 + 81*x0^2*x1 - 18*x0*x1*x2 + 18*x0*x2^2 - 2*x0*x3^2 + x1^2*x2 - 2*x2^3"
)


def check_step(F, step, p):
    assert substitute(F, step.matrix) == step.form * p**step.e
    k = intmat.vp_int(intmat.det(step.matrix), p)
    assert 4 * step.e > 3 * k
    assert valuation(step.form, p) == 0


def pushed(rng, w, p):
    G = Form(4, 3, {e: rng.randint(-3, 3) for e in exponents(4, 3)})
    m = max(w)
    A = intmat.matmul(random_unimodular(rng, 4), intmat.diagonal([p ** (m - a) for a in w]))
    A = intmat.matmul(A, random_unimodular(rng, 4))
    F = substitute(G, A)
    return G, F.exact_div(content(F))


class TestLinearFactor:
    def test_split_plane(self):
        F = parse_form("x0^2*x3 + x1^2*x3 + x2^2*x3 + 5*x0^3 + 5*x1*x2*x3")
        step = try_0001(F, 5)
        assert step is not None and step.weight == (0, 0, 0, 1) and step.e >= 1
        check_step(F, step, 5)

    def test_irreducible(self):
        assert try_0001(parse_form("x0*x1*x2 + x3^3 + x0^3"), 5) is None

    def test_diagonal(self):
        assert try_0001(parse_form("x0^3 + x1^3 + x2^3 + x3^3"), 5) is None


class TestSingularLine:
    def test_very_singular_line(self):
        p = 3
        F = parse_form(f"x0*x2^2 + x1*x3^2 + x2^3 + {p}*x0^2*x2 + {p}*x1^2*x3 + {p*p}*x0^3 + {p*p}*x1^3")
        step = try_0011(F, p)
        assert step is not None and step.weight == (0, 0, 1, 1)
        check_step(F, step, p)

    def test_line_not_very_singular(self):
        F = parse_form("x0*x2^2 + x1*x3^2 + x2^3 + 3*x0^3 + 3*x1^3")
        assert try_0011(F, 3) is None

    def test_no_line(self):
        assert try_0011(parse_form("x0*x1*x2 + x3^3"), 5) is None


class TestTriplePoint:
    def test_cone_success(self):
        p = 5
        F = parse_form(f"{p**3}*x0^3 + {p*p}*x0^2*x1 + {p}*x0*x2*x3 + x1^3 + x2^3 + x3^3 + x1*x2*x3")
        assert is_triple_point(reduce_mod_p(F, p), (1, 0, 0, 0))
        step = try_0111(F, p, (1, 0, 0, 0))
        assert step is not None and step.weight == (0, 1, 1, 1)
        check_step(F, step, p)

    def test_vertex_fails_valuation(self):
        assert try_0111(parse_form("5*x0^3 + x1^3 + x2^3 + x3^3"), 5, (1, 0, 0, 0)) is None

    def test_not_triple(self):
        assert try_0111(parse_form("x0*x1*x2 + x3^3"), 5, (1, 0, 0, 0)) is None


class TestChains:
    def test_rank_two(self):
        p = 3
        rep = cubic_surface_singular_locus(reduce_mod_p(RANK_TWO_CHAIN, p))
        assert (1, 0, 0, 0) in rep.points
        step = try_0122_0223(RANK_TWO_CHAIN, p, (1, 0, 0, 0))
        assert step is not None and step.weight == (0, 1, 2, 2)
        check_step(RANK_TWO_CHAIN, step, p)

    @pytest.mark.parametrize("F,weight", [(RANK_ONE_0223, (0, 2, 2, 3)), (RANK_ONE_0122, (0, 1, 2, 2))])
    def test_rank_one(self, F, weight):
        step = try_0122_0223(F, 3, (1, 0, 0, 0))
        assert step is not None and step.weight == weight
        check_step(F, step, 3)

    def test_rank_three_absent(self):
        F = parse_form("x0*x1^2 + x0*x2^2 + x0*x3^2 + x1^3 + x2^3 + x3^3")
        assert try_0122_0223(F, 5, (1, 0, 0, 0)) is None
        assert minimize_cubic_surface_one_step(F, 5) is None

    def test_fixtures_are_not_minimal_for_oracle(self):
        for F in (RANK_TWO_CHAIN, RANK_ONE_0223, RANK_ONE_0122):
            assert oracle_one_step(F, 3).success
            G, rec = minimize_cubic_surface(F, 3)
            assert rec.verify(F, G) and not oracle_one_step(G, 3).success


class TestQuadraticRank:
    @pytest.mark.parametrize(
        "terms,p,rank",
        [
            ({(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1}, 5, 3),
            ({(1, 1, 0): 1}, 2, 2),
            ({(2, 0, 0): 1, (0, 2, 0): 1}, 2, 1),  # (x + y)^2 in characteristic 2
            ({(2, 0, 0): 1, (1, 1, 0): 1, (0, 2, 0): 1}, 2, 2),
            ({(2, 0, 0): 1}, 3, 1),
            ({}, 3, 0),
        ],
    )
    def test_examples(self, terms, p, rank):
        assert quadratic_rank(FpPoly(p, 3, terms)) == rank


class TestDriver:
    def test_s0_at_733(self):
        p = 733
        F = divide_by_prime_power(S0_SURFACE, p, valuation(S0_SURFACE, p))
        # the reduction is a cone: its vertex is a triple point
        rep = cubic_surface_singular_locus(reduce_mod_p(F, p))
        assert any(is_triple_point(reduce_mod_p(F, p), P) for P in rep.points)
        assert minimize_cubic_surface_one_step(F, p) is None

    def test_smooth(self):
        F = parse_form("x0^3 + x1^3 + x2^3 + x3^3")
        G, rec = minimize_cubic_surface(F, 5)
        assert G == F and rec.scale == {}

    def test_guards(self):
        with pytest.raises(ContractError):
            minimize_cubic_surface(parse_form("x0^2 + x1^2 + x2^2 + x3^2"), 3)
        with pytest.raises(ContractError):
            minimize_cubic_surface_one_step(parse_form("3*x0^3 + 3*x1^3 + 3*x2^3 + 3*x3^3"), 3)

    def test_cap(self):
        with pytest.raises(UnstableInputError):
            minimize_cubic_surface(parse_form("x0^3", 4), 3, cap=2)

    @pytest.mark.parametrize("w", CUBIC_WEIGHTS)
    def test_forward_round_trips(self, w):
        rng = random.Random(sum(w) * 101 + len(w))
        for _ in range(6):
            p = rng.choice([2, 3])
            _, F = pushed(rng, w, p)
            step = minimize_cubic_surface_one_step(F, p)
            assert (step is not None) == oracle_one_step(F, p).success
            if step is not None:
                check_step(F, step, p)
            G, rec = minimize_cubic_surface(F, p)
            assert rec.verify(F, G)
            assert not oracle_one_step(G, p).success

    def test_random_agree_with_oracle(self):
        rng = random.Random(99)
        for _ in range(30):
            p = rng.choice([2, 3])
            F = Form(4, 3, {e: rng.randint(-4, 4) for e in exponents(4, 3)})
            F = divide_by_prime_power(F, p, valuation(F, p))
            assert (minimize_cubic_surface_one_step(F, p) is not None) == oracle_one_step(F, p).success
