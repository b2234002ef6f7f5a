"""
Choosing a good prime with a Nullstellensatz certificate
========================================================

For f(x) = x^2 - 3x the Jacobian 2x - 3 and the fixed-point equation
x^2 - 4x share no root, so some combination of them is a nonzero
constant.  Primes dividing that constant (after clearing denominators)
are the only ones where a fixed point can become ramified.
"""

from preperiodic import PolyMap, select_prime, unit_ideal_certificate, verify_certificate
from preperiodic.bounds import eventually_fixed_bound
from preperiodic.modp import build_finite_map, unramified_report

f = PolyMap.from_strings(["x1^2-3*x1"])
cert = unit_ideal_certificate(f)
print("h =", [str(h) for h in cert.h])
print("k =", cert.k, " N =", cert.N, " Nk =", cert.Nk)
print("identity holds:", verify_certificate(cert, f))

###############################################################################
# 3 and 5 divide Nk, so they are skipped when starting the search at 3.

for start in (2, 3):
    p = select_prime(cert, f, start)
    print(f"start {start}: p = {p}, eventually fixed orbits have size <= {eventually_fixed_bound(p, 1)}")

###############################################################################
# At p = 5 the fixed point 4 is ramified, matching 5 | Nk.

print(build_finite_map(f, 5).table)
print(unramified_report(f, 5, "fixed"))
