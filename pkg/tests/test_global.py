import random

import pytest
from conftest import random_form, random_unimodular
from fixtures import DNS_SEXTIC

from hypmin import intmat
from hypmin.binary import discriminant, minimize_binary_one_step
from hypmin.errors import ContractError, NeedsManualPrimesError, UnstableInputError
from hypmin.forms import Form, content, parse_form, substitute
from hypmin.globalmin import candidate_primes, candidate_primes_binary, candidate_primes_ternary, minimize_global
from hypmin.invariants import invariant_pair
from hypmin.plane import minimize_plane_curve_one_step


def pushed(rng, n, d, p):
    while True:
        G = random_form(rng, n, d, -6, 6)
        if content(G) != 1:
            continue
        if n == 2 and not discriminant(G):
            continue
        if n == 3 and not any(invariant_pair(G)[1]):
            continue
        break
    diag = [1] * (n - 1) + [p]
    if rng.random() < 0.5:
        diag[-1] = p * p
    M = intmat.matmul(intmat.matmul(random_unimodular(rng, n), intmat.diagonal(diag)), random_unimodular(rng, n))
    F = substitute(G, M)
    return F.exact_div(content(F))


class TestCandidates:
    def test_examples(self):
        assert candidate_primes_binary(parse_form("x0*x1")) == set()
        assert 7 in candidate_primes_binary(parse_form("x1^2 + 49*x0^2"))
        assert candidate_primes_binary(parse_form("x0^4 + x0*x1^3 + x1^4")) <= {3, 229}
        assert candidate_primes_ternary(parse_form("x*y*z + y^3 + z^3")) == set()
        assert candidate_primes(DNS_SEXTIC) == {2, 3, 5, 7}

    def test_nullform(self):
        with pytest.raises(UnstableInputError):
            candidate_primes_binary(parse_form("x0^3*x1"))

    def test_special_curve(self):
        # three concurrent lines: both invariants vanish
        with pytest.raises(NeedsManualPrimesError):
            candidate_primes_ternary(parse_form("x0^3 + x1^3", 3))

    def test_quaternary_rejected(self):
        with pytest.raises(ContractError):
            candidate_primes(parse_form("x0^3 + x1^3 + x2^3 + x3^3"))

    def test_soundness_binary(self):
        rng = random.Random(61)
        hits = 0
        for _ in range(60):
            p = rng.choice([2, 3, 5, 7, 11, 13])
            F = pushed(rng, 2, rng.choice([3, 4, 5, 6]), p)
            if minimize_binary_one_step(F, p).success:
                hits += 1
                assert p in candidate_primes_binary(F)
        assert hits > 20

    def test_soundness_ternary(self):
        rng = random.Random(62)
        hits = 0
        for _ in range(40):
            p = rng.choice([2, 3, 5, 7])
            F = pushed(rng, 3, rng.choice([3, 4]), p)
            if minimize_plane_curve_one_step(F, p).success:
                hits += 1
                assert p in candidate_primes_ternary(F)
        assert hits > 15


class TestDriver:
    def test_dns(self):
        G, rec = minimize_global(DNS_SEXTIC)
        assert rec.verify(DNS_SEXTIC, G)
        assert sorted(rec.scale) == [2]
        for p in (2, 3, 5, 7):
            assert not minimize_plane_curve_one_step(G, p).success

    def test_binary_without_reduction(self):
        F = substitute(parse_form("x0^4 + x0*x1^3 + x1^4"), intmat.diagonal((1, 9)))
        G, rec = minimize_global(F)
        assert rec.verify(F, G) and rec.scale == {3: 8}
        assert G.n_vars == 2

    def test_minimal_input(self):
        F = parse_form("x0^3 + x1^3 + x2^3")
        G, rec = minimize_global(F)
        assert G == F and rec.scale == {} and rec.matrix == intmat.identity(3)

    def test_cubic_surface_needs_primes(self):
        F = parse_form("x0^3 + x1^3 + x2^3 + x3^3")
        with pytest.raises(ContractError):
            minimize_global(F)
        G, rec = minimize_global(substitute(F, intmat.diagonal((1, 1, 1, 2))), [2])
        assert rec.verify(substitute(F, intmat.diagonal((1, 1, 1, 2))), G) and rec.scale == {2: 3}

    def test_bad_primes(self):
        with pytest.raises(ContractError):
            minimize_global(parse_form("x0^2 + x1^2 + x2^2"), [1])
        with pytest.raises(ContractError):
            minimize_global(Form(3, 2, {}))

    def test_forward_ternary(self):
        rng = random.Random(63)
        for _ in range(8):
            p = rng.choice([2, 3, 5])
            F = pushed(rng, 3, 3, p)
            G, rec = minimize_global(F)
            assert rec.verify(F, G)
            for q in candidate_primes(G) | {p}:
                assert not minimize_plane_curve_one_step(G, q).success
