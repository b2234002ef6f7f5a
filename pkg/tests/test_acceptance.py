"""Acceptance criteria, one test each.

Each test prints a single ``PASS``/``FAIL`` line; the lines are also
collected and repeated in the pytest terminal summary.
"""

import itertools
import os
import random
import time

import pytest

from preperiodic.bounds import dvr_bound, eventually_fixed_bound, multi_map_bound, pezda_cycle_bound
from preperiodic.errors import CommonZeroExists, CoordinateSizeExceeded
from preperiodic.groebner import select_prime, unit_ideal_certificate, verify_certificate
from preperiodic.lab import run_trials
from preperiodic.modp import count_affine_points, unramified_report
from preperiodic.orbit import NOT_PREPERIODIC, PREPERIODIC, decide_single, orbit_single, tail_injectivity_check
from preperiodic.poly import PolyMap, parse_polynomial
from preperiodic._arith import primes_from

from conftest import fibonacci

RESULTS = []


def report(number, title, ok, elapsed, limit, detail=""):
    ok = ok and elapsed < limit
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({elapsed:.2f}s, limit {limit}s){detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


FIB = PolyMap.from_strings(["x1*x2", "x1^2+x1*x2"])
QUAD = PolyMap.from_strings(["x1^2-3*x1"])


def test_1_fibonacci_orbit_law():
    t0 = time.perf_counter()
    ok = True
    for n in range(1, 16):
        r = orbit_single(FIB, (fibonacci(n), -fibonacci(n - 1)))
        ok &= r.closed and len(r) == n + 2 and r.elements[-1] == (0, 0)
    report(1, "Fibonacci orbit sizes n+2 ending at (0,0), n = 1..15", ok, time.perf_counter() - t0, 1)


def test_2_counterexample_rejected():
    t0 = time.perf_counter()
    try:
        unit_ideal_certificate(FIB)
        ok = False
    except CommonZeroExists:
        ok = True
    primes = list(itertools.takewhile(lambda p: p <= 100, primes_from(2)))
    for p in primes:
        r = unramified_report(FIB, p, "fixed")
        ok &= not r.ok and ((0, 0), 0) in r.witnesses
    report(2, f"no certificate; ramified at (0,0) for all {len(primes)} primes <= 100", ok,
           time.perf_counter() - t0, 5)


def eventually_fixed_sizes(limit):
    # plain integer iteration; |x| >= 5 implies |x^2 - 3x| >= 2|x|, so such orbits escape
    sizes = {}
    for x0 in range(-limit, limit + 1):
        seen = []
        x = x0
        while x not in seen and abs(x) < 5:
            seen.append(x)
            x = x * x - 3 * x
        if x in seen and x * x - 3 * x == x:
            sizes[x0] = len(seen)
    return sizes


def test_3_final_proposition_pipeline():
    t0 = time.perf_counter()
    cert = unit_ideal_certificate(QUAD)
    ok = verify_certificate(cert, QUAD)
    excluded = {p for p in (2, 3, 5, 7, 11, 13) if cert.Nk % p == 0}
    ok &= abs(cert.Nk) == 15 and excluded == {3, 5}
    p = select_prime(cert, QUAD, 2)
    ok &= p == 2 and eventually_fixed_bound(p, 1) == 2
    sizes = eventually_fixed_sizes(1000)
    top = max(sizes.values())
    ok &= top <= 2 and {x for x, s in sizes.items() if s == top} == {3, -1}
    report(3, "certificate Nk=15, prime 2, eventually fixed orbits <= 2 on |x| <= 1000", ok,
           time.perf_counter() - t0, 5)


def escapes(x, steps=10_000):
    seen = set()
    for _ in range(steps):
        if x in seen:
            return False
        if abs(x) >= 5:
            return True
        seen.add(x)
        x = x * x - 3 * x
    return True


def test_4_decision_soundness():
    t0 = time.perf_counter()
    d3 = decide_single(QUAD, (3,), 7)
    d1 = decide_single(QUAD, (1,), 7)
    ok = d3.verdict == PREPERIODIC and d3.bound_used == 11 and d1.verdict == NOT_PREPERIODIC
    disagreements = []
    for x in range(-200, 201):
        d = decide_single(QUAD, (x,), 7)
        if d.preperiodic == escapes(x):
            disagreements.append(x)
    ok &= not disagreements
    report(4, "decide_single agrees with direct iteration on |x| <= 200", ok,
           time.perf_counter() - t0, 10, f", {len(disagreements)} disagreements")


# x_i + p*g_i(x) + h_i(x_1^p, ..., x_n^p)
SHAPED_MAPS = [
    (["x1^2 - x1"], 2),                         # x - 2x + (x^2)
    (["x1^3 - 2*x1"], 3),                       # x - 3x + (x^3)
    (["x1 + 7*x1^2"], 7),
    (["x1^7 - 6*x1 + 7"], 7),
    (["x2^2 - x1", "x1^2 - x2"], 2),
    (["x1^2 - x1", "x2^2 - x2 + 2*x1"], 2),
    (["x1^3 - 2*x1", "x2^3 - 2*x2 + 3*x1"], 3),
]


def test_5_tail_injectivity():
    t0 = time.perf_counter()
    violations = checked = 0
    for polys, p in SHAPED_MAPS:
        f = PolyMap.from_strings(polys)
        n = f.arity
        assert unramified_report(f, p, "periodic").ok
        for start in itertools.product(range(-20, 21), repeat=n):
            try:
                r = orbit_single(f, start, budget=p**n + pezda_cycle_bound(n), bit_guard=4096)
            except CoordinateSizeExceeded:
                continue
            if not r.closed:
                continue
            checked += 1
            good = tail_injectivity_check(f, start, p, bit_guard=4096)
            good &= r.tail <= p**n and r.period <= pezda_cycle_bound(n)
            violations += not good
    ok = violations == 0 and checked > 0
    report(5, f"tail injectivity on {len(SHAPED_MAPS)} maps", ok, time.perf_counter() - t0, 60,
           f", {checked} preperiodic starts, {violations} violations")


def test_6_finite_combinatorics():
    t0 = time.perf_counter()
    threads = min(4, os.cpu_count() or 1)
    big = run_trials(1000, seed=20240601, max_size=40, max_maps=3, exhaustive_paths_up_to=0, threads=threads)
    small = run_trials(500, seed=20240602, max_size=12, max_maps=3, exhaustive_paths_up_to=12, threads=threads)
    failures = big["failures"] + small["failures"]
    report(6, "1000 systems (size <= 40) + 500 exhaustive systems (size <= 12)", not failures,
           time.perf_counter() - t0, 120, f", {len(failures)} violations")


def test_7_bound_formulas():
    t0 = time.perf_counter()
    ok = (pezda_cycle_bound(2), pezda_cycle_bound(3), pezda_cycle_bound(1)) == (24, 112, 4)
    ok &= multi_map_bound(4, 7, 1) == 29**27
    ok &= str(multi_map_bound(4, 7, 1)) == "3053134545970524535745336759489912159909"
    rng = random.Random(99)
    for _ in range(20):
        p = rng.choice([2, 3, 5, 7, 11])
        q = p ** rng.randint(1, 3)
        pc, d, vp = rng.randint(1, 10**6), rng.randint(0, 5), rng.randint(1, 4)
        ok &= dvr_bound(pc, q, d, p, vp) == pc * ((q**d - 1) * p**vp + 1)
    report(7, "Pezda constants, 29^27, dvr substitution", ok, time.perf_counter() - t0, 1)


def test_8_point_counting():
    t0 = time.perf_counter()
    primes = list(itertools.takewhile(lambda p: p <= 31, primes_from(2)))
    ok = all(count_affine_points([], p, n) == p**n for p in primes for n in range(1, 5))
    ok &= count_affine_points([parse_polynomial("x1^2+x2^2-1", 2)], 3) == 4
    report(8, "empty system counts p^n, circle over F_3 has 4 points", ok, time.perf_counter() - t0, 10)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
