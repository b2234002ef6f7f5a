from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from preperiodic.errors import ArityError, ExponentOverflow, ParseError, PrimeDividesDenominator
from preperiodic.poly import (
    MAX_EXPONENT,
    PolyMap,
    Polynomial,
    determinant,
    evaluate,
    integer_determinant,
    jacobian_determinant,
    parse_polynomial,
    partial_derivative,
    reduce_mod_prime,
)

from conftest import poly_pairs, polynomials


def P(text, n=1):
    return parse_polynomial(text, n)


class TestParse:
    def test_single_monomial(self):
        p = P("x1*x2", 2)
        assert p.terms == {(1, 1): 1}

    def test_second_component_of_counterexample_map(self):
        p = P("x1^2 + x1*x2", 2)
        assert p.terms == {(2, 0): 1, (1, 1): 1}

    def test_cancellation_gives_zero(self):
        p = P("3*x1 - 3*x1 + 0")
        assert p.is_zero()
        assert str(p) == "0"

    def test_whitespace_and_rationals(self):
        p = P(" - 1/2 * x1 ^ 3 *x2+ x2^2 -x1+7 ", 2)
        assert p.terms == {(3, 1): Fraction(-1, 2), (0, 2): 1, (1, 0): -1, (0, 0): 7}

    def test_repeated_variable_multiplies(self):
        assert P("x1*x1^2") == P("x1^3")

    @pytest.mark.parametrize("text, pos", [
        ("x1 +", 4),
        ("2*", 2),
        ("x1 $ x2", 3),
        ("x1^0", 3),
        ("x1^", 3),
        ("--x1", 1),
        ("x1 x1", 3),
    ])
    def test_syntax_errors_report_position(self, text, pos):
        with pytest.raises(ParseError) as info:
            P(text)
        assert info.value.position == pos

    def test_variable_out_of_range(self):
        with pytest.raises(ParseError, match="out of range"):
            P("x3", 2)
        with pytest.raises(ParseError, match="out of range"):
            P("x0", 2)

    def test_zero_denominator(self):
        with pytest.raises(ParseError, match="zero denominator"):
            P("1/0*x1")

    def test_exponent_cap(self):
        P(f"x1^{MAX_EXPONENT}")
        with pytest.raises(ExponentOverflow):
            P(f"x1^{MAX_EXPONENT + 1}")
        with pytest.raises(ExponentOverflow):
            P(f"x1^{MAX_EXPONENT}") * P("x1")

    def test_canonical_grevlex_text(self):
        p = P("x2^2 + x1*x3 + x1^2 + x2*x3 + x3^2 + 1 + x1", 3)
        # grevlex: x1^2 > x1*x2 > x2^2 > x1*x3 > x2*x3 > x3^2
        assert str(p) == "x1^2 + x2^2 + x1*x3 + x2*x3 + x3^2 + x1 + 1"

    @given(st.integers(1, 4).flatmap(polynomials))
    def test_round_trip(self, p):
        text = str(p)
        q = parse_polynomial(text, p.arity)
        assert q == p
        assert str(q) == text


class TestEvaluate:
    def test_examples(self):
        assert evaluate(P("x1*x2", 2), (2, -1)) == -2
        assert evaluate(P("x1^2+x1*x2", 2), (2, -1)) == 2
        assert evaluate(P("x1^2-3*x1"), (3,)) == 0

    def test_exact_rational(self):
        assert evaluate(P("1/3*x1^2 + 1/2"), (Fraction(3, 2),)) == Fraction(5, 4)

    def test_arity_mismatch(self):
        with pytest.raises(ArityError):
            evaluate(P("x1*x2", 2), (1,))


class TestDerivative:
    def test_examples(self):
        assert partial_derivative(P("x1^2+x1*x2", 2), 1) == P("2*x1+x2", 2)
        assert partial_derivative(P("5"), 1).is_zero()
        assert partial_derivative(P("x1*x2", 2), 2) == P("x1", 2)

    def test_index_out_of_range(self):
        with pytest.raises(ArityError):
            partial_derivative(P("x1"), 2)


class TestRingLaws:
    @given(poly_pairs(3))
    def test_commutative_associative_distributive(self, abc):
        a, b, c = abc
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == Polynomial.zero(a.arity)

    @given(poly_pairs(2), st.data())
    def test_evaluation_is_a_homomorphism(self, ab, data):
        a, b = ab
        pt = data.draw(st.tuples(*[st.fractions(max_denominator=5, min_value=-5, max_value=5)] * a.arity))
        assert evaluate(a * b, pt) == evaluate(a, pt) * evaluate(b, pt)
        assert evaluate(a + b, pt) == evaluate(a, pt) + evaluate(b, pt)

    @given(poly_pairs(2), st.data())
    def test_leibniz(self, ab, data):
        a, b = ab
        i = data.draw(st.integers(1, a.arity))
        d = partial_derivative
        assert d(a * b, i) == a * d(b, i) + b * d(a, i)

    @given(poly_pairs(2))
    def test_exact_division_inverts_multiplication(self, ab):
        a, b = ab
        if b.is_zero():
            return
        assert (a * b).divexact(b) == a


class TestJacobian:
    def test_counterexample_map(self, fib_map):
        # d(xy) = (y, x), d(x^2+xy) = (2x+y, x): det = xy - x(2x+y) = -2x^2
        J = jacobian_determinant(fib_map)
        assert J == P("-2*x1^2", 2)
        assert evaluate(J, (0, 0)) == 0

    def test_univariate(self, quad_map):
        assert jacobian_determinant(quad_map) == P("2*x1-3")

    def test_identity(self):
        assert jacobian_determinant(PolyMap.identity(5)) == 1

    @settings(max_examples=30, deadline=None)
    @given(st.integers(1, 4).flatmap(
        lambda n: st.lists(polynomials(2, max_terms=3, max_exp=2), min_size=n * n, max_size=n * n)))
    def test_bareiss_matches_cofactor(self, entries):
        n = int(round(len(entries) ** 0.5))
        M = [entries[i * n:(i + 1) * n] for i in range(n)]
        assert determinant(M, "bareiss") == determinant(M, "cofactor")

    def test_five_by_five_uses_cofactor_and_matches_bareiss(self):
        f = PolyMap.from_strings(["x1+x2^2", "x2+x3^2", "x3+x4^2", "x4+x5^2", "x5+x1^2"])
        M = f.jacobian_matrix()
        assert jacobian_determinant(f) == determinant(M, "bareiss")
        # triangular-plus-corner structure: det = 1 + 32*x1*x2*x3*x4*x5
        assert jacobian_determinant(f) == P("1 + 32*x1*x2*x3*x4*x5", 5)

    def test_integer_determinant(self):
        assert integer_determinant([[1, 1], [0, 1]]) == 1
        assert integer_determinant([[2, 0], [0, 3]]) == 6
        assert integer_determinant([[0, 1], [1, 0]]) == -1
        assert integer_determinant([[1, 2, 3], [4, 5, 6], [7, 8, 10]]) == -3


class TestReduceModP:
    def test_examples(self):
        assert reduce_mod_prime(P("x1^2-3*x1"), 7).terms == {(2,): 1, (1,): 4}
        assert reduce_mod_prime(P("1/2*x1"), 7).terms == {(1,): 4}
        with pytest.raises(PrimeDividesDenominator):
            reduce_mod_prime(P("1/2*x1"), 2)

    @given(st.integers(1, 3).flatmap(polynomials), st.sampled_from([2, 3, 5, 7, 11, 13]), st.data())
    def test_commutes_with_evaluation(self, p, prime, data):
        pt = data.draw(st.tuples(*[st.integers(-50, 50)] * p.arity))
        try:
            red = reduce_mod_prime(p, prime)
        except PrimeDividesDenominator:
            return
        v = evaluate(p, pt)
        assert v.numerator * pow(v.denominator, -1, prime) % prime == red.evaluate(pt)


class TestPolyMap:
    def test_denominators_must_divide_power_of_N(self):
        PolyMap.from_strings(["1/4*x1"], 2)
        PolyMap.from_strings(["1/6*x1 + 1/9"], 6)
        with pytest.raises(ValueError):
            PolyMap.from_strings(["1/3*x1"], 2)

    def test_fixed_locus(self, quad_map):
        assert quad_map.fixed_locus() == [P("x1^2-4*x1")]
