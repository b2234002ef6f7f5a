"""Explicit orbit-size bounds, computed exactly with Python integers.

The constant ``C`` that appears in the multi-map bounds is a universal bound
on periodic orbit sizes whose value is not known in closed form; it is
always supplied by the caller and never guessed here.

Strictness differs between formulas.  :func:`single_map_bound` and
:func:`dvr_bound` are strict (``|O_f(x)| < value``), while
:func:`multi_map_bound`, :func:`corollary3_bound` and
:func:`eventually_fixed_bound` are inclusive (``|O(x)| <= value``).
Decision procedures only use them as "give up once the orbit exceeds
value", which is sound in both cases.
"""

from dataclasses import dataclass, field

from ._arith import is_prime
from .errors import InputError

# optimal cycle lengths for polynomial self-maps of Z^2 and Z^3 (Pezda)
_PEZDA_OPTIMAL = {2: 24, 3: 112}


def _positive(**kwargs):
    for name, v in kwargs.items():
        if not isinstance(v, int) or v < 1:
            raise InputError(f"{name} must be a positive integer, got {v!r}")


def pezda_cycle_bound(n):
    """Maximum cycle length of a polynomial self-map of Z^n."""
    _positive(n=n)
    return _PEZDA_OPTIMAL.get(n, 2 * (4**n - 2**n))


def single_map_bound(point_count, cycle_bound):
    _positive(point_count=point_count, cycle_bound=cycle_bound)
    return point_count + cycle_bound


def _is_power_of(q, p):
    while q % p == 0:
        q //= p
    return q == 1


def dvr_bound(point_count, q, d, p, vp):
    """point_count * ((q^d - 1) * p^vp + 1), a strict bound."""
    _positive(point_count=point_count, q=q, p=p, vp=vp)
    if not isinstance(d, int) or d < 0:
        raise InputError(f"d must be a non-negative integer, got {d!r}")
    if not is_prime(p):
        raise InputError(f"p = {p} is not prime")
    if not _is_power_of(q, p):
        raise InputError(f"q = {q} is not a power of p = {p}")
    return point_count * ((q**d - 1) * p**vp + 1)


def multi_map_bound(C, point_count, s):
    """(C * point_count * s + 1) ** (C * point_count - 1)."""
    _positive(C=C, point_count=point_count, s=s)
    B = C * point_count
    return (B * s + 1) ** (B - 1)


def corollary3_bound(C, p, n, s):
    _positive(C=C, p=p, n=n, s=s)
    return multi_map_bound(C, p**n, s)


def eventually_fixed_bound(p, n):
    _positive(p=p, n=n)
    return p**n


_FORMULAS = {
    "single": (single_map_bound, ("point_count", "cycle_bound")),
    "dvr": (dvr_bound, ("point_count", "q", "d", "p", "vp")),
    "multi": (multi_map_bound, ("C", "point_count", "s")),
    "corollary3": (corollary3_bound, ("C", "p", "n", "s")),
    "eventually_fixed": (eventually_fixed_bound, ("p", "n")),
}

KINDS = tuple(_FORMULAS)


@dataclass(frozen=True)
class BoundReport:
    kind: str
    inputs: dict = field(hash=False)
    value: int

    def recompute(self):
        func, names = _FORMULAS[self.kind]
        return func(*(self.inputs[k] for k in names))

    def to_json(self):
        return {"kind": self.kind, "inputs": dict(self.inputs), "value": str(self.value)}


def bound_report(kind, **inputs):
    """Evaluate the named bound and record its inputs alongside the value."""
    if kind not in _FORMULAS:
        raise InputError(f"unknown bound kind {kind!r}; expected one of {KINDS}")
    func, names = _FORMULAS[kind]
    missing = [k for k in names if k not in inputs]
    if missing:
        raise InputError(f"bound {kind!r} needs {', '.join(missing)}")
    used = {k: inputs[k] for k in names}
    return BoundReport(kind, used, func(**used))
