"""Finite dynamical systems for checking the orbit combinatorics by brute force.

A :class:`FiniteSystem` is a point set ``0..size-1`` with a list of self-maps
stored as index arrays.  The monoid generated by the maps contains the
identity, so reachability is reflexive.

Levels are computed from the strongly connected components of the orbit: a
path (a set of pairwise comparable points) is a union of components lying
on one chain of the condensation, so the largest path between ``x`` and
``y`` is a heaviest chain of components from the component of ``x`` to that
of ``y``, each weighted by its size.  :func:`verify_level_lemmas` compares
this against exhaustive path enumeration on small orbits.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import factorial

import numpy as np

from .errors import GuardViolation, InputError

MASK64 = (1 << 64) - 1


class SplitMix64:
    """The splitmix64 generator; identical streams in any language for a seed."""

    def __init__(self, seed):
        self.state = seed & MASK64

    def next(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n):
        # plain modulo; the bias is irrelevant for test generation
        return self.next() % n


@dataclass(frozen=True, eq=False)
class FiniteSystem:
    size: int
    maps: tuple

    def __post_init__(self):
        if self.size < 1:
            raise InputError("a finite system needs at least one point")
        maps = tuple(np.asarray(m, dtype=np.int64) for m in self.maps)
        if not maps:
            raise InputError("a finite system needs at least one map")
        for m in maps:
            if m.shape != (self.size,) or (m < 0).any() or (m >= self.size).any():
                raise InputError("every map must be a total function on 0..size-1")
        object.__setattr__(self, "maps", maps)

    def successors(self, y):
        return {int(m[y]) for m in self.maps}


def random_system(seed, size, nmaps):
    """Uniform random maps drawn from a splitmix64 stream seeded with ``seed``."""
    if size < 1 or nmaps < 1:
        raise InputError("size and nmaps must be positive")
    rng = SplitMix64(seed)
    maps = [[rng.below(size) for _ in range(size)] for _ in range(nmaps)]
    return FiniteSystem(size, tuple(maps))


def orbit(sys, x):
    """O_S(x) in breadth-first discovery order."""
    seen = {x}
    order = [x]
    i = 0
    while i < len(order):
        for z in sys.successors(order[i]):
            if z not in seen:
                seen.add(z)
                order.append(z)
        i += 1
    return order


def is_s_periodic(sys, x, orb=None):
    orb = orbit(sys, x) if orb is None else orb
    return all(len({int(m[y]) for y in orb}) == len(orb) for m in sys.maps)


def classify(sys):
    """Per-point flags; every point of a finite system is S-finite."""
    return [{"s_finite": True, "s_periodic": is_s_periodic(sys, x)} for x in range(sys.size)]


def max_periodic_orbit_size(sys):
    best = 0
    for x in range(sys.size):
        orb = orbit(sys, x)
        if is_s_periodic(sys, x, orb):
            best = max(best, len(orb))
    return best


# ---------------------------------------------------------------------------
# levels

def _tarjan(nodes, succ):
    """Strongly connected components, emitted sinks first (reverse topological)."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    comps = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ(w))))
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.append(w)
                        if w == v:
                            break
                    comps.append(frozenset(comp))
    return comps


@dataclass(frozen=True)
class LevelData:
    x: int
    orbit: frozenset
    components: tuple        # SCCs of the orbit, topological order (source first)
    component_of: dict
    dag: dict                # component index -> set of successor component indices
    B: int
    lvl: dict
    levels: dict             # t -> frozenset of points at level t

    def level_set(self, t):
        return self.levels.get(t, frozenset())


def level_data(sys, x):
    orb = orbit(sys, x)
    comps = _tarjan(orb, lambda y: sorted(sys.successors(y)))
    comps.reverse()
    comp_of = {y: i for i, c in enumerate(comps) for y in c}
    dag = {i: set() for i in range(len(comps))}
    for y in orb:
        for z in sys.successors(y):
            if comp_of[z] != comp_of[y]:
                dag[comp_of[y]].add(comp_of[z])
    # heaviest chain from the component of x; comps[0] contains x
    best = [0] * len(comps)
    best[comp_of[x]] = len(comps[comp_of[x]])
    for i in range(len(comps)):
        for j in dag[i]:
            best[j] = max(best[j], best[i] + len(comps[j]))
    lvl = {y: best[comp_of[y]] for y in orb}
    levels = {}
    for y, t in lvl.items():
        levels.setdefault(t, set()).add(y)
    return LevelData(
        x=x,
        orbit=frozenset(orb),
        components=tuple(comps),
        component_of=comp_of,
        dag=dag,
        B=max(best),
        lvl=lvl,
        levels={t: frozenset(v) for t, v in sorted(levels.items())},
    )


# ---------------------------------------------------------------------------
# lemma checks

def _map_power(m, e):
    result = np.arange(len(m), dtype=np.int64)
    base = m
    while e:
        if e & 1:
            result = base[result]
        e >>= 1
        if e:
            base = base[base]
    return result


def verify_check_periodic(sys, x, C, max_c=8):
    """Check: x is S-periodic iff f^(C!) fixes every point of O_S(x) for every f.

    ``C`` must bound the orbit size of every S-periodic point of ``sys``.
    """
    if C < 1:
        raise InputError("C must be positive")
    if max_c is not None and C > max_c:
        raise GuardViolation(f"C = {C} exceeds the guard {max_c}")
    orb = orbit(sys, x)
    lhs = is_s_periodic(sys, x, orb)
    e = factorial(C)
    idx = np.asarray(orb)
    rhs = all((_map_power(m, e)[idx] == idx).all() for m in sys.maps)
    return lhs == rhs


def level_monotone(sys, x, ld=None):
    """lvl(y) <= lvl(f(y)) for every orbit point y and every map f."""
    ld = level_data(sys, x) if ld is None else ld
    return all(ld.lvl[y] <= ld.lvl[int(m[y])] for y in ld.orbit for m in sys.maps)


def manymap_checks(sys, x, ld=None):
    """Named results for the counting argument behind the multi-map bound."""
    ld = level_data(sys, x) if ld is None else ld
    s = len(sys.maps)
    B = ld.B
    size = len(ld.orbit)
    sizes = {t: len(v) for t, v in ld.levels.items()}
    start = ld.lvl[x]
    recursion = True
    running = 0
    for t in range(1, B + 1):
        if t > start and sizes.get(t, 0) > B * s * running:
            recursion = False
        running += sizes.get(t, 0)
    return {
        "inequality": size <= (B * s + 1) ** (B - 1),
        "level_one": sizes.get(1, 0) <= 1,
        "partition": sum(sizes.values()) == size,
        "empty_above_B": all(t <= B for t in sizes),
        "recursion": recursion,
    }


def verify_manymap_inequality(sys, x):
    return all(manymap_checks(sys, x).values())


def _enumerate_paths(k, comparable):
    """Every nonempty set of pairwise comparable vertices, as bitmasks."""
    out = []

    def extend(mask, cand):
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            new = mask | (1 << v)
            out.append(new)
            extend(new, cand & comparable[v])

    extend(0, (1 << k) - 1)
    return out


def level_lemma_checks(sys, x, max_orbit=20):
    """Exhaustive checks over every path of O_S(x); returns named results."""
    ld = level_data(sys, x)
    orb = sorted(ld.orbit)
    k = len(orb)
    if k > max_orbit:
        raise GuardViolation(f"orbit of size {k} exceeds the path-enumeration guard {max_orbit}")
    pos = {y: i for i, y in enumerate(orb)}
    # reach[i]: bitmask of points reachable from orb[i], reflexively
    reach = []
    for y in orb:
        mask = 0
        for z in orbit(sys, y):
            mask |= 1 << pos[z]
        reach.append(mask)
    into = [sum(1 << j for j in range(k) if reach[j] >> i & 1) for i in range(k)]
    comparable = [reach[i] | into[i] for i in range(k)]
    lvl = [ld.lvl[y] for y in orb]
    paths = _enumerate_paths(k, comparable)

    def between(a, b):
        # points z with a -> z -> b
        return reach[a] & into[b]

    def is_path(mask):
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            if mask & ~comparable[v]:
                return False
        return True

    xi = pos[x]
    brute = [0] * k
    for P in paths:
        size = bin(P).count("1")
        if not P >> xi & 1:
            continue
        # P in P_{x,y}: contains x and y, every element between x and y
        m = P
        while m:
            y = (m & -m).bit_length() - 1
            m &= m - 1
            if P & ~between(xi, y) == 0 and size > brute[y]:
                brute[y] = size

    slices = True
    for P in paths:
        m = P
        while m:
            y = (m & -m).bit_length() - 1
            m &= m - 1
            sl = 0
            mm = P
            while mm:
                z = (mm & -mm).bit_length() - 1
                mm &= mm - 1
                if lvl[z] == lvl[y]:
                    sl |= 1 << z
            if sl & ~between(y, y) or not is_path(sl):
                slices = False

    unions = True
    for y in range(k):
        U = 0
        for P in paths:
            if P >> y & 1 and P & ~between(y, y) == 0:
                U |= P
        if not (U >> y & 1) or U & ~between(y, y) or not is_path(U):
            unions = False

    return {
        "level_definition": brute == lvl,
        "monotone": level_monotone(sys, x, ld),
        "level_slices": slices,
        "path_unions": unions,
    }


def verify_level_lemmas(sys, x, max_orbit=20):
    return all(level_lemma_checks(sys, x, max_orbit).values())


# ---------------------------------------------------------------------------
# randomized trials

def trial_system(seed, max_size, max_maps):
    """System used by trial ``seed``; fully determined by the seed.

    Size, map count and shape come from a splitmix64 stream on ``seed``.
    Shapes rotate between uniform maps, maps with f(i) <= i (long tails and
    many fixed points) and permutations, so that both tree-like and cyclic
    orbits are exercised.
    """
    rng = SplitMix64(seed)
    size = 1 + rng.below(max_size)
    nmaps = 1 + rng.below(max_maps)
    style = rng.below(3)
    maps = []
    for _ in range(nmaps):
        if style == 0:
            maps.append([rng.below(size) for _ in range(size)])
        elif style == 1:
            maps.append([rng.below(i + 1) for i in range(size)])
        else:
            perm = list(range(size))
            for i in range(size - 1, 0, -1):
                j = rng.below(i + 1)
                perm[i], perm[j] = perm[j], perm[i]
            maps.append(perm)
    return FiniteSystem(size, tuple(maps))


def check_system(sys, exhaustive_paths_up_to=12):
    """Every failing (point, lemma) pair for one system."""
    failures = []
    C = max(1, max_periodic_orbit_size(sys))
    for x in range(sys.size):
        ld = level_data(sys, x)
        for name, ok in manymap_checks(sys, x, ld).items():
            if not ok:
                failures.append((x, name))
        if not level_monotone(sys, x, ld):
            failures.append((x, "monotone"))
        if not verify_check_periodic(sys, x, C, max_c=None):
            failures.append((x, "check_periodic"))
        if len(ld.orbit) <= exhaustive_paths_up_to:
            for name, ok in level_lemma_checks(sys, x, exhaustive_paths_up_to).items():
                if not ok:
                    failures.append((x, name))
    return failures


def _run_one(args):
    seed, max_size, max_maps, exhaustive = args
    sys = trial_system(seed, max_size, max_maps)
    return [[seed, x, name] for x, name in check_system(sys, exhaustive)]


def run_trials(trials, seed=0, max_size=40, max_maps=3, exhaustive_paths_up_to=12, threads=1):
    """Run ``trials`` random systems; returns ``{"trials": n, "failures": [...]}``."""
    master = SplitMix64(seed)
    jobs = [(master.next(), max_size, max_maps, exhaustive_paths_up_to) for _ in range(trials)]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_run_one, jobs, chunksize=16))
    else:
        results = [_run_one(j) for j in jobs]
    return {"trials": trials, "failures": [f for r in results for f in r]}
