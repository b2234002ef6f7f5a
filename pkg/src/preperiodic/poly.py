"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` is an immutable map from exponent tuples to nonzero
:class:`fractions.Fraction` coefficients.  Terms are ordered by graded
reverse lexicographic order (grevlex) whenever an order matters: leading
terms for division and Groebner bases, and the canonical text form.

The text grammar is::

    poly  := ['-'] term (('+'|'-') term)*
    term  := coeff ['*' mono] | mono
    coeff := int ['/' posint]
    mono  := var ['^' posint] ('*' var ['^' posint])*
    var   := 'x' posint

Variables are 1-based (``x1`` ... ``xn``) and whitespace is ignored.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._arith import divides_power_of, lcm_all
from .errors import (
    ArityError,
    ExponentOverflow,
    InputError,
    ParseError,
    PrimeDividesDenominator,
)

MAX_EXPONENT = 2**31 - 1


def grevlex_key(mono):
    """Sort key: a larger key means a larger monomial in grevlex order."""
    return (sum(mono), tuple(-e for e in reversed(mono)))


def _check_exponents(mono):
    for e in mono:
        if e > MAX_EXPONENT:
            raise ExponentOverflow(f"exponent {e} exceeds {MAX_EXPONENT}")
        if e < 0:
            raise InputError(f"negative exponent {e}")


def _mono_str(mono):
    parts = []
    for i, e in enumerate(mono):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts)


def mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a, b):
    m = tuple(x + y for x, y in zip(a, b))
    _check_exponents(m)
    return m


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class Polynomial:
    """Immutable sparse polynomial in ``arity`` variables over Q."""

    __slots__ = ("arity", "_terms", "_hash")

    def __init__(self, arity, terms=None):
        if arity < 1:
            raise ArityError("arity must be positive")
        self.arity = arity
        clean = {}
        if terms:
            for mono, c in terms.items():
                mono = tuple(mono)
                if len(mono) != arity:
                    raise ArityError(
                        f"monomial {mono} has length {len(mono)}, expected {arity}")
                c = Fraction(c)
                if c:
                    _check_exponents(mono)
                    clean[mono] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, arity, terms):
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.arity = arity
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, arity, c):
        return cls(arity, {(0,) * arity: c})

    @classmethod
    def variable(cls, arity, i):
        """The coordinate function x_i (1-based)."""
        if not 1 <= i <= arity:
            raise ArityError(f"variable index {i} out of range 1..{arity}")
        mono = tuple(1 if k == i - 1 else 0 for k in range(arity))
        return cls._raw(arity, {mono: Fraction(1)})

    @classmethod
    def zero(cls, arity):
        return cls._raw(arity, {})

    # -- inspection ----------------------------------------------------

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return all(not any(m) for m in self._terms)

    def constant_term(self):
        return self._terms.get((0,) * self.arity, Fraction(0))

    def total_degree(self):
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def sorted_terms(self):
        """Terms in descending grevlex order."""
        return sorted(self._terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading_monomial(self):
        return max(self._terms, key=grevlex_key)

    def leading_coefficient(self):
        return self._terms[self.leading_monomial()]

    def denominator_lcm(self):
        return lcm_all(c.denominator for c in self._terms.values())

    def coefficients(self):
        return list(self._terms.values())

    # -- comparisons -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.arity == other.arity and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Polynomial.constant(self.arity, other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self._terms.items())))
        return self._hash

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.arity != self.arity:
                raise ArityError(f"arity mismatch: {self.arity} vs {other.arity}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.arity, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(self.arity, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.arity, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial.zero(self.arity)
            return Polynomial._raw(self.arity, {m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial._raw(self.arity, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise InputError("polynomial exponent must be a non-negative int")
        result = Polynomial.constant(self.arity, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_term(self, mono, coef):
        """Multiply by the single term ``coef * x^mono``."""
        if not coef:
            return Polynomial.zero(self.arity)
        return Polynomial._raw(
            self.arity, {mono_mul(m, mono): c * coef for m, c in self._terms.items()})

    def divexact(self, other):
        """Exact quotient ``self / other``; raises ArithmeticError if inexact."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lm, lc = other.leading_monomial(), other.leading_coefficient()
        rem = dict(self._terms)
        quot = {}
        while rem:
            m = max(rem, key=grevlex_key)
            if not mono_divides(lm, m):
                raise ArithmeticError("division is not exact")
            qm = mono_div(m, lm)
            qc = rem[m] / lc
            quot[qm] = qc
            for om, oc in other._terms.items():
                t = mono_mul(om, qm)
                s = rem.get(t, 0) - qc * oc
                if s:
                    rem[t] = s
                else:
                    rem.pop(t, None)
        return Polynomial._raw(self.arity, quot)

    # -- evaluation / calculus --------------------------------------------

    def evaluate(self, point):
        if len(point) != self.arity:
            raise ArityError(f"point has {len(point)} coordinates, expected {self.arity}")
        total = Fraction(0)
        for mono, c in self._terms.items():
            v = c
            for x, e in zip(point, mono):
                if e:
                    v *= x**e
            total += v
        return Fraction(total)

    def derivative(self, i):
        """Formal partial derivative with respect to x_i (1-based)."""
        if not 1 <= i <= self.arity:
            raise ArityError(f"variable index {i} out of range 1..{self.arity}")
        k = i - 1
        out = {}
        for mono, c in self._terms.items():
            e = mono[k]
            if e:
                m = mono[:k] + (e - 1,) + mono[k + 1:]
                out[m] = c * e
        return Polynomial._raw(self.arity, out)

    # -- text ------------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for idx, (mono, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            ms = _mono_str(mono)
            if not ms:
                body = str(a)
            elif a == 1:
                body = ms
            else:
                body = f"{a}*{ms}"
            if idx == 0:
                pieces.append(("-" if sign == "-" else "") + body)
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    def __repr__(self):
        return f"Polynomial({self.arity}, {str(self)!r})"


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|x(?P<var>\d+)|(?P<op>[-+*/^])|(?P<bad>\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace only
            break
        start = m.end() - len(m.group(0).lstrip())
        if m.lastgroup == "bad":
            raise ParseError(f"unexpected character {m.group('bad')!r}", start)
        tokens.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, arity):
        self.toks = _tokenize(text)
        self.i = 0
        self.arity = arity

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, found {val or 'end of input'!r}", pos)

    def posint(self, what):
        kind, val, pos = self.take()
        if kind != "int":
            raise ParseError(f"expected {what}, found {val or 'end of input'!r}", pos)
        n = int(val)
        if n < 1:
            raise ParseError(f"{what} must be positive", pos)
        return n, pos

    def poly(self):
        out = {}
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.take()
            sign = -1
        while True:
            mono, c = self.term()
            s = out.get(mono, 0) + sign * c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
            kind, val, pos = self.peek()
            if kind == "end":
                break
            if kind == "op" and val in "+-":
                self.take()
                sign = 1 if val == "+" else -1
                continue
            raise ParseError(f"unexpected {('x' + val) if kind == 'var' else val!r}", pos)
        return Polynomial(self.arity, out)

    def term(self):
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            num = int(val)
            den = 1
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "/":
                self.take()
                k3, v3, p3 = self.take()
                if k3 != "int":
                    raise ParseError(f"expected denominator, found {v3 or 'end of input'!r}", p3)
                den = int(v3)
                if den == 0:
                    raise ParseError("zero denominator", p3)
            coef = Fraction(num, den)
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "*":
                self.take()
                return self.mono(), coef
            return (0,) * self.arity, coef
        if kind == "var":
            return self.mono(), Fraction(1)
        raise ParseError(f"expected a term, found {val or 'end of input'!r}", pos)

    def mono(self):
        exps = [0] * self.arity
        while True:
            kind, val, pos = self.take()
            if kind != "var":
                raise ParseError(f"expected a variable, found {val or 'end of input'!r}", pos)
            idx = int(val)
            if not 1 <= idx <= self.arity:
                raise ParseError(f"variable index x{idx} out of range 1..{self.arity}", pos)
            e = 1
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "^":
                self.take()
                e, epos = self.posint("exponent")
                if e > MAX_EXPONENT:
                    raise ExponentOverflow(f"exponent {e} exceeds {MAX_EXPONENT} at position {epos}")
            exps[idx - 1] += e
            if exps[idx - 1] > MAX_EXPONENT:
                raise ExponentOverflow(f"exponent of x{idx} exceeds {MAX_EXPONENT}")
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "*" and self.toks[self.i + 1][0] == "var":
                self.take()
                continue
            return tuple(exps)


def parse_polynomial(text, arity):
    """Parse ``text`` into a canonical :class:`Polynomial` in ``arity`` variables."""
    return _Parser(text, arity).poly()


def evaluate(poly, point):
    return poly.evaluate(point)


def partial_derivative(poly, i):
    return poly.derivative(i)


# ---------------------------------------------------------------------------
# maps and determinants

@dataclass(frozen=True)
class PolyMap:
    """A polynomial self-map of Z[1/N]^n given by ``arity`` components."""

    arity: int
    denominator: int
    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if self.denominator < 1:
            raise InputError("denominator N must be a positive integer")
        if len(self.components) != self.arity:
            raise ArityError(
                f"{len(self.components)} components given for arity {self.arity}")
        for k, f in enumerate(self.components):
            if f.arity != self.arity:
                raise ArityError(f"component {k + 1} has arity {f.arity}, expected {self.arity}")
            for c in f.coefficients():
                if c.denominator != 1 and not divides_power_of(c.denominator, self.denominator):
                    raise InputError(
                        f"coefficient {c} of component {k + 1} is not in Z[1/{self.denominator}]")

    @classmethod
    def from_strings(cls, polys, denominator=1):
        n = len(polys)
        return cls(n, denominator, tuple(parse_polynomial(s, n) for s in polys))

    @classmethod
    def identity(cls, arity):
        return cls(arity, 1, tuple(Polynomial.variable(arity, i) for i in range(1, arity + 1)))

    def jacobian_matrix(self):
        return [[f.derivative(j) for j in range(1, self.arity + 1)] for f in self.components]

    def fixed_locus(self):
        """The polynomials g_i = f_i - x_i whose common zeros are the fixed points."""
        return [f - Polynomial.variable(self.arity, i + 1) for i, f in enumerate(self.components)]

    def __str__(self):
        return "(" + ", ".join(str(f) for f in self.components) + ")"


def _det_bareiss(matrix):
    n = len(matrix)
    arity = matrix[0][0].arity
    M = [list(row) for row in matrix]
    sign = 1
    prev = Polynomial.constant(arity, 1)
    for k in range(n - 1):
        if M[k][k].is_zero():
            for i in range(k + 1, n):
                if not M[i][k].is_zero():
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return Polynomial.zero(arity)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]).divexact(prev)
        prev = M[k][k]
    return M[n - 1][n - 1] * sign


def _det_cofactor(matrix):
    n = len(matrix)
    arity = matrix[0][0].arity
    memo = {}

    def minor(row, cols):
        # determinant of rows row.. and the given column subset
        if row == n:
            return Polynomial.constant(arity, 1)
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = Polynomial.zero(arity)
        for pos, c in enumerate(cols):
            entry = matrix[row][c]
            if entry.is_zero():
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
            term = entry * sub
            total = total - term if pos % 2 else total + term
        memo[key] = total
        return total

    return minor(0, tuple(range(n)))


def determinant(matrix, method=None):
    """Exact determinant of a square matrix of polynomials.

    ``method`` is ``"bareiss"`` (fraction-free elimination) or ``"cofactor"``
    (Laplace expansion); by default Bareiss is used up to 4x4.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ArityError("determinant of a non-square matrix")
    if method is None:
        method = "bareiss" if n <= 4 else "cofactor"
    if method == "bareiss":
        return _det_bareiss(matrix)
    if method == "cofactor":
        return _det_cofactor(matrix)
    raise InputError(f"unknown determinant method {method!r}")


def jacobian_determinant(pmap, method=None):
    return determinant(pmap.jacobian_matrix(), method)


def integer_determinant(rows):
    """Determinant of an integer matrix via Bareiss elimination."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ArityError("determinant of a non-square matrix")
    if n == 0:
        return 1
    M = [list(map(int, r)) for r in rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# ---------------------------------------------------------------------------
# reduction modulo a prime

class PolynomialModP:
    """Polynomial over F_p with coefficients stored as residues in [1, p-1]."""

    __slots__ = ("p", "arity", "_terms")

    def __init__(self, p, arity, terms=None):
        self.p = p
        self.arity = arity
        clean = {}
        for mono, c in (terms or {}).items():
            c %= p
            if c:
                clean[tuple(mono)] = c
        self._terms = clean

    @property
    def terms(self):
        return dict(self._terms)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return all(not any(m) for m in self._terms)

    def constant_term(self):
        return self._terms.get((0,) * self.arity, 0)

    def __eq__(self, other):
        if not isinstance(other, PolynomialModP):
            return NotImplemented
        return (self.p, self.arity, self._terms) == (other.p, other.arity, other._terms)

    def __hash__(self):
        return hash((self.p, self.arity, frozenset(self._terms.items())))

    def _same_ring(self, other):
        if (self.p, self.arity) != (other.p, other.arity):
            raise ArityError("operands live in different rings")

    def __add__(self, other):
        self._same_ring(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return PolynomialModP(self.p, self.arity, out)

    def __neg__(self):
        return PolynomialModP(self.p, self.arity, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return PolynomialModP(self.p, self.arity, {m: c * other for m, c in self._terms.items()})
        self._same_ring(other)
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                out[m] = (out.get(m, 0) + c1 * c2) % self.p
        return PolynomialModP(self.p, self.arity, out)

    __rmul__ = __mul__

    def evaluate(self, point):
        if len(point) != self.arity:
            raise ArityError(f"point has {len(point)} coordinates, expected {self.arity}")
        p = self.p
        total = 0
        for mono, c in self._terms.items():
            v = c
            for x, e in zip(point, mono):
                if e:
                    v = v * pow(x, e, p) % p
            total += v
        return total % p

    def evaluate_grid(self, coords):
        """Vectorized evaluation; ``coords[i]`` is an int64 array of x_{i+1} residues."""
        p = self.p
        shape = coords[0].shape
        total = np.zeros(shape, dtype=np.int64)
        powers = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                base = coords[i]
                result = np.ones(shape, dtype=np.int64)
                k = e
                while k:
                    if k & 1:
                        result = result * base % p
                    k >>= 1
                    if k:
                        base = base * base % p
                powers[key] = result
            return powers[key]

        for mono, c in self._terms.items():
            v = np.full(shape, c, dtype=np.int64)
            for i, e in enumerate(mono):
                if e:
                    v = v * power(i, e) % p
            total = (total + v) % p
        return total

    def __str__(self):
        if not self._terms:
            return "0"
        items = sorted(self._terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)
        out = []
        for mono, c in items:
            ms = _mono_str(mono)
            if not ms:
                out.append(str(c))
            elif c == 1:
                out.append(ms)
            else:
                out.append(f"{c}*{ms}")
        return " + ".join(out)

    def __repr__(self):
        return f"PolynomialModP({self.p}, {str(self)!r})"


def reduce_mod_prime(poly, p):
    """Reduce ``poly`` coefficient-wise into F_p, inverting denominators."""
    terms = {}
    for mono, c in poly.items():
        if c.denominator % p == 0:
            raise PrimeDividesDenominator(p, c.denominator)
        terms[mono] = c.numerator * pow(c.denominator, -1, p)
    return PolynomialModP(p, poly.arity, terms)


def reduce_rational(c, p):
    """Residue of a rational number mod p."""
    c = Fraction(c)
    if c.denominator % p == 0:
        raise PrimeDividesDenominator(p, c.denominator)
    return c.numerator * pow(c.denominator, -1, p) % p
