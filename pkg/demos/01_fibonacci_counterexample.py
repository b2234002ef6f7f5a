"""
Long orbits when the Jacobian vanishes at a fixed point
=======================================================

The map (x, y) -> (xy, x^2 + xy) sends a_n = (F_n, -F_(n-1)) to a
multiple of a_(n-1), so the orbit of a_n walks down the Fibonacci
numbers and lands on (0, 0) after n + 1 steps.  Orbit sizes are
therefore unbounded, and no prime can certify this map.
"""

from preperiodic import PolyMap, jacobian_determinant, orbit_single, unramified_report

f = PolyMap.from_strings(["x1*x2", "x1^2+x1*x2"])

fib = [0, 1]
while len(fib) < 16:
    fib.append(fib[-1] + fib[-2])

for n in range(1, 11):
    r = orbit_single(f, (fib[n], -fib[n - 1]))
    print(f"n={n:2d}  start=({fib[n]}, {-fib[n - 1]})  orbit size {len(r)}  tail {r.tail}")

###############################################################################
# The Jacobian is -2*x1^2, which is zero at the fixed point (0, 0) modulo
# every prime.

print("J =", jacobian_determinant(f))
for p in (2, 3, 5, 7):
    rep = unramified_report(f, p, "fixed")
    print(p, rep.ok, rep.witnesses[:2])
