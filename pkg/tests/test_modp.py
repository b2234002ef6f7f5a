import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from preperiodic.errors import BudgetExceeded, InputError, PrimeDividesDenominator
from preperiodic.groebner import select_prime, unit_ideal_certificate
from preperiodic.modp import (
    FiniteMap,
    build_finite_map,
    count_affine_points,
    fixed_points,
    index_of,
    monomial_unramified,
    periodic_points,
    point_of,
    unramified_report,
)
from preperiodic.poly import PolyMap, parse_polynomial


def brute_periodic(table):
    # y is periodic iff f^k(y) = y for some 1 <= k <= size
    out = set()
    for y in range(len(table)):
        z = table[y]
        for _ in range(len(table)):
            if z == y:
                out.add(y)
                break
            z = table[z]
    return out


class TestFiniteMap:
    def test_quadratic_mod_7(self, quad_map):
        fm = build_finite_map(quad_map, 7)
        assert fm.table.tolist() == [0, 5, 5, 0, 4, 3, 4]
        assert fixed_points(fm) == {0, 4}
        assert periodic_points(fm) == {0, 4}

    def test_indexing_is_little_endian(self):
        assert point_of(1 + 2 * 3, 3, 2) == (1, 2)
        assert index_of((1, 2), 3) == 7
        f = PolyMap.from_strings(["x2", "x1"])
        fm = build_finite_map(f, 3)
        assert fm.point(fm(index_of((1, 2), 3))) == (2, 1)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(1, 30).flatmap(lambda n: st.lists(st.integers(0, n - 1), min_size=n, max_size=n)))
    def test_periodic_points_match_definition(self, table):
        fm = FiniteMap(len(table), 1, np.array(table, dtype=np.int64))
        per = periodic_points(fm)
        assert per == brute_periodic(table)
        assert fixed_points(fm) <= per
        # f permutes its periodic points
        assert {table[y] for y in per} == per

    def test_budget_and_prime_checks(self, quad_map):
        with pytest.raises(BudgetExceeded):
            build_finite_map(PolyMap.from_strings(["x1", "x2", "x3"]), 101, budget=10**5)
        with pytest.raises(InputError):
            build_finite_map(quad_map, 9)
        with pytest.raises(PrimeDividesDenominator):
            build_finite_map(PolyMap.from_strings(["1/2*x1"], 2), 2)


class TestUnramified:
    def test_quadratic_mod_7(self, quad_map):
        r = unramified_report(quad_map, 7, "periodic")
        assert r.ok
        assert r.witnesses == (((0,), 4), ((4,), 5))

    def test_counterexample_fails_at_origin(self, fib_map):
        for p in (2, 3, 5, 7, 11):
            r = unramified_report(fib_map, p, "fixed")
            assert not r.ok
            assert ((0, 0), 0) in r.witnesses

    def test_fixed_vs_periodic(self):
        # x -> -x mod 3: fixed {0}, periodic {0,1,2}; J = -1 everywhere
        f = PolyMap.from_strings(["-x1"])
        assert unramified_report(f, 3, "fixed").checked_count == 1
        assert unramified_report(f, 3, "periodic").checked_count == 3

    def test_bad_mode(self, quad_map):
        with pytest.raises(InputError):
            unramified_report(quad_map, 7, "cyclic")

    @pytest.mark.parametrize("polys, p", [
        (["x1 + 2*x1^2"], 2),
        (["x1 + 7*x1^2"], 7),
        (["x1 + 3*x2^2", "x2 + 3*x1^2"], 3),
        (["x1 + 2*x1*x2", "x2"], 2),
    ])
    def test_identity_mod_p_maps_are_unramified(self, polys, p):
        # f = x + p*g has J = 1 mod p
        assert unramified_report(PolyMap.from_strings(polys), p, "periodic").ok

    def test_certificate_prime_passes_fixed_mode(self, quad_map):
        cert = unit_ideal_certificate(quad_map)
        for start in (2, 3, 8, 20):
            assert unramified_report(quad_map, select_prime(cert, quad_map, start), "fixed").ok


class TestCounting:
    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_empty_system(self, p, n):
        assert count_affine_points([], p, n) == p**n

    def test_circle_over_f3(self):
        assert count_affine_points([parse_polynomial("x1^2+x2^2-1", 2)], 3) == 4

    @pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
    def test_circle_counts(self, p):
        # affine conic x^2 + y^2 = 1 has p - (-1/p) points
        legendre = 1 if p % 4 == 1 else -1
        assert count_affine_points([parse_polynomial("x1^2+x2^2-1", 2)], p) == p - legendre

    def test_fixed_points_agree_with_table(self, quad_map):
        assert count_affine_points(quad_map.fixed_locus(), 7) == len(fixed_points(build_finite_map(quad_map, 7)))

    def test_needs_arity(self):
        with pytest.raises(InputError):
            count_affine_points([], 5)


def test_monomial_maps():
    assert monomial_unramified([[1, 1], [0, 1]], 2)
    assert not monomial_unramified([[2, 0], [0, 1]], 2)
    assert monomial_unramified([[2, 0], [0, 1]], 3)
