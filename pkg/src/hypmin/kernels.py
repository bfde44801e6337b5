"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``HYPMIN_PURE_PYTHON=1`` to force the fallback. ``BACKEND`` names the
active implementation.
"""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

from . import _fallback
from .forms import exponents

_impl = _fallback
BACKEND = "python"
if os.environ.get("HYPMIN_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]

        _impl = _compiled
        BACKEND = "compiled"
    except ImportError:  # pragma: no cover - depends on build
        pass


class SubstitutionPlan:
    """Monomial index tables for dense substitution in degree <= d.

    Monomials of degree a occupy global indices offsets[a]..offsets[a+1]-1;
    ``mul1[idx, k]`` is the index of (monomial idx) * x_k.
    """

    def __init__(self, n_vars: int, degree: int):
        self.n_vars = n_vars
        self.degree = degree
        mons = []
        offsets = [0]
        for a in range(degree + 1):
            mons.extend(exponents(n_vars, a))
            offsets.append(len(mons))
        index = {e: i for i, e in enumerate(mons)}
        mul1 = np.full((len(mons), n_vars), -1, dtype=np.int64)
        for i, e in enumerate(mons):
            if sum(e) < degree:
                for k in range(n_vars):
                    f = list(e)
                    f[k] += 1
                    mul1[i, k] = index[tuple(f)]
        self.mul1 = np.ascontiguousarray(mul1)
        self.exps = np.ascontiguousarray(np.array(mons, dtype=np.int64))
        self.offsets = np.array(offsets, dtype=np.int64)
        self.mul1_list = mul1.tolist()
        self.offsets_list = offsets
        self.top_exps = mons[offsets[degree]:]
        self.top_index = {e: i for i, e in enumerate(self.top_exps)}

    def dense(self, terms, modulus: int) -> np.ndarray:
        out = np.zeros(len(self.top_exps), dtype=np.int64)
        for e, c in terms.items():
            out[self.top_index[e]] = c % modulus
        return out

    def sparse(self, vec) -> dict:
        return {self.top_exps[i]: int(v) for i, v in enumerate(vec) if v}


@lru_cache(maxsize=64)
def plan_for(n_vars: int, degree: int) -> SubstitutionPlan:
    return SubstitutionPlan(n_vars, degree)


def subst_mod(coeffs, T, modulus: int, plan: SubstitutionPlan, impl=None):
    _check_modulus(modulus)
    return (impl or _impl).subst_mod(coeffs, T, modulus, plan)


def first_vanishing(coeffs, mats, modulus: int, plan: SubstitutionPlan, impl=None) -> int:
    _check_modulus(modulus)
    if len(mats) == 0:
        return -1
    return int((impl or _impl).first_vanishing(coeffs, mats, modulus, plan))


def _check_modulus(m: int):
    if not 1 < m < 2**31:
        raise ValueError("kernel modulus must lie in (1, 2**31)")


def implementations() -> dict:
    out = {"python": _fallback}
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]

        out["compiled"] = _compiled
    except ImportError:  # pragma: no cover
        pass
    return out
