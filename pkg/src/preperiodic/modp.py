"""Exhaustive analysis of polynomial maps reduced modulo a prime.

Points of F_p^n are indexed by their base-p digit string, little-endian in
x1: the point (a_1, ..., a_n) has index a_1 + a_2*p + ... + a_n*p^(n-1).
"""

from dataclasses import dataclass, field

import numpy as np

from ._arith import is_prime
from .errors import BudgetExceeded, InputError, PrimeDividesDenominator
from .poly import integer_determinant, jacobian_determinant, reduce_mod_prime

DEFAULT_POINT_BUDGET = 10**7

MODES = ("fixed", "periodic")


def _check_budget(p, n, budget):
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    size = p**n
    if size > budget:
        raise BudgetExceeded(f"{p}^{n} = {size} points exceeds the budget of {budget}")
    return size


def grid(p, n):
    """Coordinate arrays (x1, ..., xn) for every point index, in index order."""
    idx = np.arange(p**n, dtype=np.int64)
    return [(idx // p**i) % p for i in range(n)]


def point_of(index, p, n):
    out = []
    for _ in range(n):
        index, r = divmod(index, p)
        out.append(r)
    return tuple(out)


def index_of(point, p):
    index = 0
    for x in reversed(point):
        index = index * p + x % p
    return index


@dataclass(frozen=True, eq=False)
class FiniteMap:
    p: int
    n: int
    table: np.ndarray = field(repr=False)

    def __post_init__(self):
        if len(self.table) != self.p**self.n:
            raise InputError("table length must be p^n")

    def __call__(self, index):
        return int(self.table[index])

    def point(self, index):
        return point_of(index, self.p, self.n)


def build_finite_map(pmap, p, budget=DEFAULT_POINT_BUDGET):
    """Evaluation table of ``pmap`` mod p on all of F_p^n."""
    if pmap.denominator % p == 0:
        raise PrimeDividesDenominator(p, pmap.denominator)
    _check_budget(p, pmap.arity, budget)
    coords = grid(p, pmap.arity)
    table = np.zeros(p**pmap.arity, dtype=np.int64)
    for i, f in enumerate(pmap.components):
        table += reduce_mod_prime(f, p).evaluate_grid(coords) * p**i
    return FiniteMap(p, pmap.arity, table)


def fixed_points(fm):
    return set(np.flatnonzero(fm.table == np.arange(len(fm.table))).tolist())


def periodic_points(fm):
    """Points on cycles of the functional graph, found by peeling leaves."""
    table = fm.table
    size = len(table)
    indeg = np.bincount(table, minlength=size)
    alive = np.ones(size, dtype=bool)
    frontier = np.flatnonzero(indeg == 0)
    while frontier.size:
        alive[frontier] = False
        targets = table[frontier]
        np.subtract.at(indeg, targets, 1)
        frontier = np.unique(targets[indeg[targets] == 0])
    return set(np.flatnonzero(alive).tolist())


@dataclass(frozen=True)
class UnramifiedReport:
    p: int
    mode: str
    ok: bool
    witnesses: tuple  # ((point, jacobian value mod p), ...)
    checked_count: int

    def to_json(self):
        return {
            "p": self.p,
            "mode": self.mode,
            "ok": self.ok,
            "witnesses": [{"point": list(pt), "jacobian": j} for pt, j in self.witnesses],
            "checked": self.checked_count,
        }


def jacobian_table(pmap, p, budget=DEFAULT_POINT_BUDGET):
    """J mod p at every point of F_p^n, in index order."""
    if pmap.denominator % p == 0:
        raise PrimeDividesDenominator(p, pmap.denominator)
    _check_budget(p, pmap.arity, budget)
    J = reduce_mod_prime(jacobian_determinant(pmap), p)
    return J.evaluate_grid(grid(p, pmap.arity))


def unramified_report(pmap, p, mode="periodic", budget=DEFAULT_POINT_BUDGET):
    """Check that J mod p is nonzero at every fixed (or periodic) F_p-point."""
    if mode not in MODES:
        raise InputError(f"mode must be one of {MODES}, not {mode!r}")
    fm = build_finite_map(pmap, p, budget)
    pts = sorted(fixed_points(fm) if mode == "fixed" else periodic_points(fm))
    jac = jacobian_table(pmap, p, budget)[pts].tolist()
    witnesses = [(fm.point(idx), j) for idx, j in zip(pts, jac)]
    ok = all(j != 0 for j in jac)
    return UnramifiedReport(p, mode, ok, tuple(witnesses), len(witnesses))


def count_affine_points(equations, p, n=None, budget=DEFAULT_POINT_BUDGET):
    """Number of common zeros of ``equations`` in F_p^n."""
    if n is None:
        if not equations:
            raise InputError("arity n is required when no equations are given")
        n = equations[0].arity
    if any(e.arity != n for e in equations):
        raise InputError("equations must all have arity n")
    size = _check_budget(p, n, budget)
    if not equations:
        return size
    coords = grid(p, n)
    mask = np.ones(size, dtype=bool)
    for e in equations:
        mask &= reduce_mod_prime(e, p).evaluate_grid(coords) == 0
    return int(mask.sum())


def monomial_unramified(A, p):
    """The monomial map x -> x^A on the torus is unramified mod p iff p does not divide det A."""
    return integer_determinant(A) % p != 0
