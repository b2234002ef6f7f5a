"""
Levels in finite dynamical systems
==================================

The multi-map bound comes from a counting argument on the
reachability order of an orbit.  Here the same quantities are computed
directly on small random systems.
"""

import numpy as np

from preperiodic.lab import FiniteSystem, level_data, manymap_checks, random_system, run_trials

chain = FiniteSystem(3, ([1, 2, 2],))
ld = level_data(chain, 0)
print("chain levels:", ld.lvl, "B =", ld.B)

###############################################################################
# Two maps on six points: components of the orbit of 0 and their levels.

sys6 = random_system(seed=11, size=6, nmaps=2)
print(np.vstack(sys6.maps))
ld = level_data(sys6, 0)
print("components:", [sorted(c) for c in ld.components])
print("levels:", {t: sorted(v) for t, v in ld.levels.items()})
print(manymap_checks(sys6, 0, ld))

###############################################################################
# A few hundred random systems, with exhaustive path enumeration on the
# small ones.

print(run_trials(300, seed=1, max_size=12))
