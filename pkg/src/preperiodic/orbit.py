"""Exact orbits over Z[1/N]^n and the bounded-search decision procedures.

A point is decided by iterating its orbit until it either closes up or
grows past a bound that every preperiodic orbit must respect.  The bound is
only valid once the map has been certified unramified at a prime, so every
negative verdict carries that certification with it.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ._arith import divides_power_of, primes_from
from .bounds import multi_map_bound, pezda_cycle_bound, single_map_bound
from .errors import (
    ArityError,
    BoundTooLarge,
    CertificationFailed,
    CoordinateSizeExceeded,
    InputError,
    MapNotCertified,
    NoAdmissiblePrime,
    PreconditionError,
    PrimeDividesDenominator,
)
from .modp import DEFAULT_POINT_BUDGET, jacobian_table, unramified_report
from .poly import reduce_rational

DEFAULT_ORBIT_BUDGET = 10**6
DEFAULT_BIT_GUARD = 10**6
DEFAULT_PRIME_CAP = 200

CLOSED = "closed"
EXCEEDED = "exceeded_budget"

PREPERIODIC = "preperiodic"
NOT_PREPERIODIC = "not_preperiodic"


def parse_point(text):
    """Parse a comma-separated list of rational literals such as ``"1/2,-3"``."""
    try:
        return tuple(Fraction(s.strip()) for s in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed point {text!r}: {exc}") from None


def as_point(coords, pmap=None):
    pt = tuple(Fraction(c) for c in coords)
    if pmap is not None:
        if len(pt) != pmap.arity:
            raise ArityError(f"point has {len(pt)} coordinates, map has arity {pmap.arity}")
        for c in pt:
            if c.denominator != 1 and not divides_power_of(c.denominator, pmap.denominator):
                raise InputError(f"coordinate {c} is not in Z[1/{pmap.denominator}]")
    return pt


def _canonical(pt):
    return tuple(int(c) if c.denominator == 1 else c for c in map(Fraction, pt))


@lru_cache(maxsize=128)
def _compiled(pmap):
    comps = []
    for f in pmap.components:
        terms = []
        for mono, c in f.items():
            c = int(c) if c.denominator == 1 else c
            terms.append((c, tuple((i, e) for i, e in enumerate(mono) if e)))
        comps.append(terms)
    return comps


def _step(pmap, pt):
    out = []
    for terms in _compiled(pmap):
        total = 0
        for c, mono in terms:
            v = c
            for i, e in mono:
                v *= pt[i] ** e
            total += v
        if isinstance(total, Fraction) and total.denominator == 1:
            total = total.numerator
        out.append(total)
    return tuple(out)


def _guard(pt, bit_guard):
    for c in pt:
        if isinstance(c, Fraction):
            size = max(c.numerator.bit_length(), c.denominator.bit_length())
        else:
            size = c.bit_length()
        if size > bit_guard:
            raise CoordinateSizeExceeded(
                f"coordinate exceeds {bit_guard} bits; no verdict possible")


def apply_map(pmap, point):
    """One exact step f(point)."""
    pt = as_point(point, pmap)
    return tuple(Fraction(c) for c in _step(pmap, _canonical(pt)))


@dataclass(frozen=True)
class OrbitReport:
    status: str
    elements: tuple
    tail: int = None
    period: int = None

    @property
    def closed(self):
        return self.status == CLOSED

    def __len__(self):
        return len(self.elements)


def orbit_single(pmap, point, budget=DEFAULT_ORBIT_BUDGET, bit_guard=DEFAULT_BIT_GUARD):
    """Iterate ``pmap`` from ``point`` until the first repeat.

    Gives up with status EXCEEDED once more than ``budget`` distinct points
    have been seen.
    """
    x = _canonical(as_point(point, pmap))
    seen = {}
    elements = []
    while True:
        if x in seen:
            tail = seen[x]
            return OrbitReport(CLOSED, _as_fractions(elements), tail, len(elements) - tail)
        seen[x] = len(elements)
        elements.append(x)
        if len(elements) > budget:
            return OrbitReport(EXCEEDED, _as_fractions(elements))
        x = _step(pmap, x)
        _guard(x, bit_guard)


def orbit_multi(maps, point, budget=DEFAULT_ORBIT_BUDGET, bit_guard=DEFAULT_BIT_GUARD):
    """Breadth-first closure of ``{point}`` under every map in ``maps``."""
    maps = list(maps)
    if not maps:
        raise InputError("at least one map is required")
    arity = maps[0].arity
    if any(m.arity != arity for m in maps):
        raise ArityError("maps have different arities")
    x = _canonical(as_point(point, maps[0]))
    seen = {x}
    elements = [x]
    if len(elements) > budget:
        return OrbitReport(EXCEEDED, _as_fractions(elements))
    frontier = [x]
    while frontier:
        nxt = []
        for y in frontier:
            for f in maps:
                z = _step(f, y)
                if z in seen:
                    continue
                _guard(z, bit_guard)
                seen.add(z)
                elements.append(z)
                nxt.append(z)
                if len(elements) > budget:
                    return OrbitReport(EXCEEDED, _as_fractions(elements))
        frontier = nxt
    return OrbitReport(CLOSED, _as_fractions(elements))


def _as_fractions(elements):
    return tuple(tuple(Fraction(c) for c in pt) for pt in elements)


# ---------------------------------------------------------------------------
# decisions

@dataclass(frozen=True)
class Decision:
    verdict: str
    bound_used: int
    prime: int
    certification: object
    orbit: OrbitReport
    budgets: dict = field(default_factory=dict, hash=False)

    @property
    def preperiodic(self):
        return self.verdict == PREPERIODIC

    def to_json(self):
        closed = self.verdict == PREPERIODIC
        return {
            "verdict": self.verdict,
            "bound": str(self.bound_used),
            "prime": self.prime,
            "orbit": [[str(c) for c in pt] for pt in self.orbit.elements] if closed else None,
            "tail": self.orbit.tail if closed else None,
            "period": self.orbit.period if closed else None,
            "visited": len(self.orbit.elements),
            "budgets": dict(self.budgets),
        }


def find_unramified_prime(pmap, cap=DEFAULT_PRIME_CAP, point_budget=DEFAULT_POINT_BUDGET):
    """First prime p <= cap, p not dividing N, whose periodic F_p-points are all unramified.

    Returns ``(p, report)``; raises NoAdmissiblePrime if none qualifies.
    """
    tried = 0
    for p in primes_from(2):
        if p > cap or p**pmap.arity > point_budget:
            break
        if pmap.denominator % p == 0:
            continue
        tried += 1
        report = unramified_report(pmap, p, "periodic", point_budget)
        if report.ok:
            return p, report
    raise NoAdmissiblePrime(
        f"no prime up to {cap} certifies the map ({tried} primes tried within "
        f"a point budget of {point_budget})")


def decide_single(pmap, point, p=None, *, point_budget=DEFAULT_POINT_BUDGET,
                  orbit_budget=DEFAULT_ORBIT_BUDGET, bit_guard=DEFAULT_BIT_GUARD,
                  prime_cap=DEFAULT_PRIME_CAP):
    """Decide whether ``point`` is preperiodic under ``pmap``.

    The map is first certified at ``p`` (or at a searched prime): its
    Jacobian must be nonzero mod p at every periodic F_p-point.  Then every
    preperiodic orbit has fewer than p^n + pezda_cycle_bound(n) elements,
    and the orbit is iterated until it closes or exceeds that count.
    """
    point = as_point(point, pmap)
    if p is None:
        p, report = find_unramified_prime(pmap, prime_cap, point_budget)
    else:
        if pmap.denominator % p == 0:
            raise PrimeDividesDenominator(p, pmap.denominator)
        report = unramified_report(pmap, p, "periodic", point_budget)
        if not report.ok:
            raise CertificationFailed(
                f"the Jacobian vanishes mod {p} at a periodic point", report)
    n = pmap.arity
    bound = single_map_bound(p**n, pezda_cycle_bound(n))
    budgets = {"point_budget": point_budget, "orbit_budget": orbit_budget, "bit_guard": bit_guard}
    if bound > orbit_budget:
        raise BoundTooLarge(f"bound {bound} exceeds the orbit budget {orbit_budget}")
    orbit = orbit_single(pmap, point, bound, bit_guard)
    verdict = PREPERIODIC if orbit.closed else NOT_PREPERIODIC
    return Decision(verdict, bound, p, report, orbit, budgets)


def decide_multi(maps, point, C, p, *, point_budget=DEFAULT_POINT_BUDGET,
                 orbit_budget=DEFAULT_ORBIT_BUDGET, bit_guard=DEFAULT_BIT_GUARD):
    """Decide whether ``point`` has a finite orbit under the monoid generated by ``maps``.

    ``C`` bounds the size of periodic orbits and must come from the caller.
    Each map must have a Jacobian determinant that is nowhere zero on F_p^n,
    which makes its reduction unramified and the multi-map bound applicable.
    """
    maps = list(maps)
    if not maps:
        raise InputError("at least one map is required")
    n = maps[0].arity
    if any(m.arity != n for m in maps):
        raise ArityError("maps have different arities")
    point = as_point(point, maps[0])
    for i, m in enumerate(maps):
        if m.denominator % p == 0:
            raise PrimeDividesDenominator(p, m.denominator)
        if (jacobian_table(m, p, point_budget) == 0).any():
            raise MapNotCertified(i, p)
    bound = multi_map_bound(C, p**n, len(maps))
    budgets = {"point_budget": point_budget, "orbit_budget": orbit_budget, "bit_guard": bit_guard}
    if bound > orbit_budget:
        raise BoundTooLarge(f"bound {bound} exceeds the orbit budget {orbit_budget}")
    orbit = orbit_multi(maps, point, bound, bit_guard)
    verdict = PREPERIODIC if orbit.closed else NOT_PREPERIODIC
    cert = {"p": p, "maps": len(maps), "jacobian_nowhere_zero": True, "C": C}
    return Decision(verdict, bound, p, cert, orbit, budgets)


def tail_injectivity_check(pmap, point, p, *, point_budget=DEFAULT_POINT_BUDGET,
                           orbit_budget=DEFAULT_ORBIT_BUDGET, bit_guard=DEFAULT_BIT_GUARD):
    """True iff the tail points f^0(x), ..., f^(tail-1)(x) stay distinct mod p."""
    report = unramified_report(pmap, p, "periodic", point_budget)
    if not report.ok:
        raise PreconditionError(f"map is not certified at p = {p}")
    orbit = orbit_single(pmap, point, orbit_budget, bit_guard)
    if not orbit.closed:
        raise PreconditionError("orbit does not close within the budget")
    reduced = [tuple(reduce_rational(c, p) for c in pt) for pt in orbit.elements[:orbit.tail]]
    return len(set(reduced)) == len(reduced)
