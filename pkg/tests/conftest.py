import os
import random
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from hypmin import intmat  # noqa: E402
from hypmin.forms import Form, exponents  # noqa: E402

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_form(rng: random.Random, n_vars: int, d: int, lo: int = -5, hi: int = 5) -> Form:
    return Form(n_vars, d, {e: rng.randint(lo, hi) for e in exponents(n_vars, d)})


def random_unimodular(rng: random.Random, n: int, steps: int = 6, size: int = 2) -> tuple:
    M = intmat.identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        M = intmat.matmul(M, intmat.elementary(n, i, j, rng.randint(-size, size)))
    return M


@st.composite
def forms(draw, n_vars=None, degree=None, bound=6):
    n = draw(st.integers(2, 4)) if n_vars is None else n_vars
    d = draw(st.integers(1, 4)) if degree is None else degree
    coeffs = draw(st.lists(st.integers(-bound, bound), min_size=len(exponents(n, d)), max_size=len(exponents(n, d))))
    return Form(n, d, dict(zip(exponents(n, d), coeffs)))


@st.composite
def unimodular(draw, n):
    M = intmat.identity(n)
    for _ in range(draw(st.integers(0, 5))):
        i = draw(st.integers(0, n - 1))
        j = draw(st.integers(0, n - 2))
        j = j + 1 if j >= i else j
        M = intmat.matmul(M, intmat.elementary(n, i, j, draw(st.integers(-3, 3))))
    return M


stretch = pytest.mark.skipif(os.environ.get("HYPMIN_STRETCH", "") != "1", reason="set HYPMIN_STRETCH=1")


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
