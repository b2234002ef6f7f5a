"""Exact decision procedures for preperiodic points of polynomial maps.

Submodules:

- :mod:`preperiodic.poly` -- sparse rational polynomials, Jacobians, reduction mod p
- :mod:`preperiodic.groebner` -- Buchberger with cofactors, Nullstellensatz certificates
- :mod:`preperiodic.modp` -- exhaustive F_p analysis: fixed/periodic points, point counts
- :mod:`preperiodic.bounds` -- explicit orbit-size bounds
- :mod:`preperiodic.orbit` -- exact orbits and the bounded-search decision procedures
- :mod:`preperiodic.lab` -- finite dynamical systems and brute-force lemma checks
- :mod:`preperiodic.cli` -- the ``preperiodic`` command
"""

from .bounds import (
    corollary3_bound,
    dvr_bound,
    eventually_fixed_bound,
    multi_map_bound,
    pezda_cycle_bound,
    single_map_bound,
)
from .groebner import groebner_basis, select_prime, unit_ideal_certificate, verify_certificate
from .modp import (
    build_finite_map,
    count_affine_points,
    fixed_points,
    monomial_unramified,
    periodic_points,
    unramified_report,
)
from .orbit import (
    apply_map,
    decide_multi,
    decide_single,
    orbit_multi,
    orbit_single,
    tail_injectivity_check,
)
from .poly import (
    PolyMap,
    Polynomial,
    evaluate,
    jacobian_determinant,
    parse_polynomial,
    partial_derivative,
    reduce_mod_prime,
)

__version__ = "0.1.0"
