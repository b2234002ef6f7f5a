"""
Deciding preperiodicity by bounded search
=========================================

Once a map is certified at p, a preperiodic orbit has fewer than
p^n + (Pezda cycle bound) points.  Iterating that many times either
closes the orbit or proves the point is not preperiodic.
"""

from preperiodic import PolyMap, decide_multi, decide_single, tail_injectivity_check

f = PolyMap.from_strings(["x1^2-3*x1"])

for x in (-1, 0, 1, 2, 3, 4):
    d = decide_single(f, (x,), 7)
    extra = f"tail {d.orbit.tail}, period {d.orbit.period}" if d.preperiodic else f"{len(d.orbit)} points visited"
    print(f"x={x:2d}: {d.verdict:16s} bound {d.bound_used}  {extra}")

###############################################################################
# Along a certified tail, reduction mod p is injective.

print(tail_injectivity_check(f, (3,), 7))

###############################################################################
# With several maps the bound depends on a caller-supplied constant C.

g = PolyMap.from_strings(["x1+2*x1^2"])
h = PolyMap.from_strings(["x1+2*x1^3"])
print(decide_multi([g, h], (0,), C=1, p=2).to_json())
print(decide_multi([PolyMap.from_strings(["x1+1"])], (0,), C=1, p=2).verdict)
