"""Buchberger's algorithm over Q with cofactor tracking.

Every polynomial that enters the basis carries a vector of cofactors that
expresses it as a combination of the input generators.  When the reduced
basis is ``{1}`` those cofactors are a Nullstellensatz certificate, which is
how :func:`unit_ideal_certificate` proves that the Jacobian determinant of a
map does not vanish at any of its fixed points over the algebraic closure.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from ._arith import lcm_all, primes_from
from .errors import ArityError, CommonZeroExists, InputError, TermLimitExceeded
from .poly import (
    Polynomial,
    grevlex_key,
    jacobian_determinant,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    parse_polynomial,
)

TERM_LIMIT = 10**5


@dataclass(frozen=True)
class TrackedBasis:
    generators: tuple
    basis: tuple
    cofactors: tuple  # cofactors[i][j] multiplies generators[j]

    def verify(self):
        for b, cof in zip(self.basis, self.cofactors):
            combo = Polynomial.zero(b.arity)
            for c, g in zip(cof, self.generators):
                combo = combo + c * g
            if combo != b:
                return False
        return True

    def is_unit(self):
        return len(self.basis) == 1 and self.basis[0] == 1


class _Row:
    """Mutable working polynomial with its cofactor vector (plain dicts)."""

    __slots__ = ("poly", "cof")

    def __init__(self, poly, cof):
        self.poly = poly
        self.cof = cof

    def lm(self):
        return max(self.poly, key=grevlex_key)

    def lc(self):
        return self.poly[self.lm()]


def _axpy(target, src, coef, shift):
    """target -= coef * x^shift * src, in place."""
    for m, c in src.items():
        t = mono_mul(m, shift)
        s = target.get(t, 0) - coef * c
        if s:
            target[t] = s
        else:
            target.pop(t, None)
    if len(target) > TERM_LIMIT:
        raise TermLimitExceeded(f"intermediate polynomial exceeds {TERM_LIMIT} terms")


def _scale(d, coef):
    return {m: c * coef for m, c in d.items()}


def _reduce(row, basis, tail=True):
    """Reduce ``row`` by ``basis`` (a list of _Row).  Returns a new _Row.

    With ``tail`` every term is reduced, otherwise only the leading one.
    """
    p = dict(row.poly)
    cof = [dict(c) for c in row.cof]
    rem = {}
    leads = [(b.lm(), b.lc(), b) for b in basis]
    while p:
        m = max(p, key=grevlex_key)
        c = p[m]
        for lm, lc, b in leads:
            if mono_divides(lm, m):
                q = c / lc
                shift = mono_div(m, lm)
                _axpy(p, b.poly, q, shift)
                for k, bc in enumerate(b.cof):
                    _axpy(cof[k], bc, q, shift)
                break
        else:
            rem[m] = c
            del p[m]
            if not tail:
                rem.update(p)
                break
    return _Row(rem, cof)


def _spoly(a, b):
    la, lb = a.lm(), b.lm()
    L = mono_lcm(la, lb)
    sa, sb = mono_div(L, la), mono_div(L, lb)
    ca, cb = 1 / a.lc(), 1 / b.lc()
    poly = {}
    _axpy(poly, a.poly, -ca, sa)
    _axpy(poly, b.poly, cb, sb)
    cof = []
    for x, y in zip(a.cof, b.cof):
        d = {}
        _axpy(d, x, -ca, sa)
        _axpy(d, y, cb, sb)
        cof.append(d)
    return _Row(poly, cof)


def groebner_basis(gens):
    """Reduced grevlex Groebner basis of ``gens`` with verified cofactors."""
    gens = tuple(gens)
    if not gens:
        raise InputError("generator list is empty")
    arity = gens[0].arity
    if any(g.arity != arity for g in gens):
        raise ArityError("generators have different arities")
    m = len(gens)
    zero_mono = (0,) * arity

    G = []
    for j, g in enumerate(gens):
        if g.is_zero():
            continue
        cof = [{} for _ in range(m)]
        cof[j] = {zero_mono: Fraction(1)}
        G.append(_Row(dict(g.items()), cof))
    if not G:
        basis, cofactors = (), ()
        return TrackedBasis(gens, basis, cofactors)

    pairs = {(i, j) for j in range(len(G)) for i in range(j)}
    while pairs:
        # normal selection strategy: smallest lcm first
        i, j = min(pairs, key=lambda ij: (grevlex_key(mono_lcm(G[ij[0]].lm(), G[ij[1]].lm())), ij))
        pairs.discard((i, j))
        li, lj = G[i].lm(), G[j].lm()
        L = mono_lcm(li, lj)
        if mono_mul(li, lj) == L:
            continue  # product criterion
        if any(k not in (i, j) and mono_divides(G[k].lm(), L)
               and (min(i, k), max(i, k)) not in pairs
               and (min(j, k), max(j, k)) not in pairs
               for k in range(len(G))):
            continue  # chain criterion
        r = _reduce(_spoly(G[i], G[j]), G)
        if not r.poly:
            continue
        n = len(G)
        G.append(r)
        pairs.update((k, n) for k in range(n))
        if all(not any(mono) for mono in r.poly):
            break  # unit ideal

    if any(all(not any(mono) for mono in g.poly) for g in G):
        unit = next(g for g in G if all(not any(mono) for mono in g.poly))
        G = [unit]
    else:
        # minimalize: drop elements whose leading monomial is divisible by another's
        keep = []
        for idx, g in enumerate(G):
            lm = g.lm()
            if any(mono_divides(h.lm(), lm) and (h.lm() != lm or k < idx)
                   for k, h in enumerate(G) if k != idx):
                continue
            keep.append(g)
        G = keep
        # interreduce tails
        G = [_reduce(g, [h for h in G if h is not g]) for g in G]

    out_basis, out_cof = [], []
    for g in sorted(G, key=lambda r: grevlex_key(r.lm())):
        inv = 1 / g.lc()
        out_basis.append(Polynomial(arity, _scale(g.poly, inv)))
        out_cof.append(tuple(Polynomial(arity, _scale(c, inv)) for c in g.cof))
    tb = TrackedBasis(gens, tuple(out_basis), tuple(out_cof))
    if not tb.verify():
        raise AssertionError("cofactor verification failed")
    return tb


# ---------------------------------------------------------------------------
# certificates

@dataclass(frozen=True)
class Certificate:
    """h[0]*J + h[1]*g_1 + ... + h[n]*g_n = k with g_i = f_i - x_i.

    ``N`` clears every denominator of the h_i and of k; ``Nk`` is N*k.
    """

    h: tuple
    k: Fraction
    N: int
    Nk: int

    def to_json(self):
        return {
            "h": [str(p) for p in self.h],
            "k": f"{self.k.numerator}/{self.k.denominator}",
            "N": self.N,
            "Nk": self.Nk,
        }

    @classmethod
    def from_json(cls, obj, arity):
        if isinstance(obj, str):
            obj = json.loads(obj)
        h = tuple(parse_polynomial(s, arity) for s in obj["h"])
        return cls(h, Fraction(obj["k"]), int(obj["N"]), int(obj["Nk"]))


def _certificate_terms(pmap):
    J = jacobian_determinant(pmap)
    return [J] + pmap.fixed_locus()


def verify_certificate(cert, pmap):
    """Exact check of the identity h_0*J + sum h_i*g_i == k."""
    gens = _certificate_terms(pmap)
    if len(cert.h) != len(gens) or any(h.arity != pmap.arity for h in cert.h):
        return False
    total = Polynomial.zero(pmap.arity)
    for h, g in zip(cert.h, gens):
        total = total + h * g
    return total == cert.k and cert.k != 0


def _normalize(h, k):
    """Rescale so that (N*h, N*k) is a primitive integer vector."""
    coeffs = [c for p in h for c in p.coefficients()] + [k]
    D = lcm_all(c.denominator for c in coeffs)
    content = 0
    for c in coeffs:
        content = gcd(content, c.numerator * (D // c.denominator))
    scale = Fraction(1, content)
    if k < 0:
        scale = -scale
    h = tuple(p * scale for p in h)
    k = k * scale
    N = lcm_all(c.denominator for c in [c for p in h for c in p.coefficients()] + [k])
    return h, k, N


def unit_ideal_certificate(pmap):
    """Nullstellensatz certificate that J and the g_i have no common zero.

    Raises CommonZeroExists when the ideal (J, g_1, ..., g_n) is proper.
    """
    gens = _certificate_terms(pmap)
    tb = groebner_basis(gens)
    if not tb.is_unit():
        raise CommonZeroExists(
            "the Jacobian determinant vanishes at a fixed point over the algebraic "
            f"closure; Groebner basis is [{', '.join(str(b) for b in tb.basis)}]")
    h, k, N = _normalize(tb.cofactors[0], Fraction(1))
    cert = Certificate(h, k, N, int(N * k))
    if not verify_certificate(cert, pmap):
        raise AssertionError("certificate failed verification")
    return cert


def select_prime(cert, pmap, start=2):
    """Smallest prime p >= start dividing neither Nk nor the map's N."""
    for p in primes_from(start):
        if cert.Nk % p and pmap.denominator % p:
            return p
