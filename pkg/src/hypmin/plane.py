"""Minimization of plane curves (ternary forms) at a prime.

A bounded tree search over lattice moves with the two basic weights
[0,0,1] (move a line of the reduction to x2 = 0) and [0,1,1] (move a point
of high multiplicity to [1:0:0]). Each node carries the remaining distance
budget r, the accumulated valuation change gamma and the accumulated
matrix; a node with gamma < 0 certifies instability of the input.
"""

from __future__ import annotations

import heapq
import itertools
from collections import deque
from dataclasses import dataclass

from . import intmat
from .binary import StepResult
from .errors import ContractError, UnstableInputError
from .fp import DEFAULT_SEED, FpPoly, binary_form_linear_factors, reduce_mod_p
from .forms import Form, TransformRecord, apply_weight, divide_by_prime_power, scale_variables, valuation, vp
from .geometry import high_multiplicity_points, linear_factors, move_line_to, move_point_to, strip_linear_factors
from .weights import delta_bound

STRATEGIES = ("dfs", "bfs", "best")
DEFAULT_CAP = 64


def v011(F: Form, p: int):
    return valuation(scale_variables(F, [1, p, p]), p)


def v001(F: Form, p: int):
    return valuation(scale_variables(F, [1, 1, p]), p)


@dataclass
class _Node:
    form: Form
    r: int
    gamma: int
    T0: tuple
    e: int  # scaling accumulated from the root


@dataclass
class SearchStats:
    nodes: int = 0
    max_depth_used: int = 0


def _children(node: _Node, p: int, d: int, seed: int):
    """Successor nodes in the fixed branch order: lines first, then the point."""
    F = node.form
    Fbar = reduce_mod_p(F, p)
    if Fbar.is_zero():
        raise ContractError("form is not primitive at p")
    factors = linear_factors(Fbar)
    for lin, m in factors:
        T = move_line_to(lin, 2, p)
        if 3 * m <= d:
            moved = _substitute_fp(Fbar, T)
            H = _restrict_after_division(moved, m)
            need = d - 3 * m  # multiplicity must exceed need / 2
            if not any(2 * mult > need for _, mult in binary_form_linear_factors(H)):
                continue
        F1, e = apply_weight(F, T, (0, 0, 1), p)
        M = intmat.matmul(intmat.diagonal((1, 1, p)), T)
        yield _Node(F1, node.r - 1, node.gamma + d - 3 * e, intmat.matmul(M, node.T0), node.e + e)
    G = strip_linear_factors(Fbar, factors)
    if G.total_degree() > d // 2:
        for P in high_multiplicity_points(G, d // 2, seed):
            if any(sum(a * b for a, b in zip(lin, P)) % p == 0 for lin, _ in factors):
                continue
            T = move_point_to(P, 0, p)
            F1, e = apply_weight(F, T, (0, 1, 1), p)
            M = intmat.matmul(intmat.diagonal((1, p, p)), T)
            yield _Node(F1, node.r - 2, node.gamma + 2 * d - 3 * e, intmat.matmul(M, node.T0), node.e + e)


def _substitute_fp(f: FpPoly, T) -> FpPoly:
    p, n = f.p, f.nvars
    cols = []
    for j in range(n):
        t = {}
        for k in range(n):
            c = T[k][j] % p
            if c:
                t[tuple(1 if i == k else 0 for i in range(n))] = c
        cols.append(FpPoly(p, n, t))
    return f.substitute_linear(cols)


def _restrict_after_division(f: FpPoly, m: int) -> FpPoly:
    """(f / x2^m)(x0, x1, 0) as a binary form."""
    terms = {(e[0], e[1]): c for e, c in f.terms.items() if e[2] == m}
    return FpPoly(f.p, 2, terms)


def _is_terminal(node: _Node, p: int):
    if node.gamma < 0:
        return "success"
    if intmat.is_zero_mod(node.T0, p) or node.r <= 0:
        return "pruned"
    return None


def minimize_plane_curve_one_step(
    F: Form, p: int, strategy: str = "dfs", delta: int | None = None, seed: int = DEFAULT_SEED, stats: SearchStats | None = None
) -> StepResult:
    """One minimization step; success iff some node of the search has gamma < 0."""
    if F.n_vars != 3:
        raise ContractError("ternary form expected")
    d = F.degree
    if d < 2:
        raise ContractError("degree at least 2 expected")
    if strategy not in STRATEGIES:
        raise ContractError(f"unknown strategy {strategy!r}")
    stats = stats if stats is not None else SearchStats()
    r0 = delta_bound(d) if delta is None else delta
    root = _Node(F, r0, 0, intmat.identity(3), 0)
    if strategy == "dfs":
        hit = _dfs(root, p, d, seed, stats, r0)
    else:
        hit = _queue_search(root, p, d, seed, stats, r0, strategy)
    if hit is None:
        return StepResult(False, F, intmat.identity(3), 0)
    return StepResult(True, hit.form, hit.T0, hit.e)


def _visit(node: _Node, p: int, stats: SearchStats, r0: int):
    stats.nodes += 1
    stats.max_depth_used = max(stats.max_depth_used, r0 - node.r)
    return _is_terminal(node, p)


def _dfs(node: _Node, p: int, d: int, seed: int, stats: SearchStats, r0: int):
    state = _visit(node, p, stats, r0)
    if state == "success":
        return node
    if state == "pruned":
        return None
    for child in _children(node, p, d, seed):
        found = _dfs(child, p, d, seed, stats, r0)
        if found is not None:
            return found
    return None


def _queue_search(root: _Node, p: int, d: int, seed: int, stats: SearchStats, r0: int, strategy: str):
    """Breadth-first, or best-first ordered by gamma (ties in discovery order)."""
    counter = itertools.count()
    if strategy == "bfs":
        queue = deque([root])
        pop, push = queue.popleft, queue.append
    else:
        heap = [(root.gamma, next(counter), root)]
        pop = lambda: heapq.heappop(heap)[2]  # noqa: E731
        push = lambda n: heapq.heappush(heap, (n.gamma, next(counter), n))  # noqa: E731
        queue = heap
    while queue:
        node = pop()
        state = _visit(node, p, stats, r0)
        if state == "success":
            return node
        if state == "pruned":
            continue
        for child in _children(node, p, d, seed):
            push(child)
    return None


def step_cap(F: Form, p: int) -> int:
    """One more than the smallest valuation of a nonzero invariant of F.

    Every successful step lowers the valuation of each nonzero invariant, so
    this bounds the number of steps. Falls back to DEFAULT_CAP when both
    invariants vanish.
    """
    from .invariants import invariant_pair

    _, pair = invariant_pair(F)
    vals = [vp(int(a), p) for a in pair if a]
    return min(vals) + 1 if vals else DEFAULT_CAP


def minimize_plane_curve(
    F: Form, p: int, strategy: str = "dfs", cap: int | None = None, seed: int = DEFAULT_SEED
) -> tuple[Form, TransformRecord]:
    """Loop one-step until it fails; p^e * G = F(x * T) for the returned record."""
    if F.n_vars != 3:
        raise ContractError("ternary form expected")
    if F.is_zero():
        raise ContractError("zero form")
    e = valuation(F, p)
    G = divide_by_prime_power(F, p, e)
    rec = TransformRecord(intmat.identity(3), e, p)
    limit = step_cap(G, p) if cap is None else cap
    steps = 0
    while True:
        res = minimize_plane_curve_one_step(G, p, strategy=strategy, seed=seed)
        if not res.success:
            return G, rec
        steps += 1
        if steps > limit:
            raise UnstableInputError("minimization did not terminate within the step cap")
        G = res.form
        rec = rec.then(TransformRecord(res.matrix, res.e, p))
