"""Random problem generators shared by the test modules."""
import math

import numpy as np

from fibercount.classifier import PolytopeCollection
from fibercount.lattice import LatticePolytope, SupportSet

from oracles import minor_gcd


def random_primitive(rng, n, max_entry=3):
    while True:
        u = tuple(int(c) for c in rng.integers(0, max_entry + 1, n))
        if any(u) and math.gcd(*u) == 1:
            return u


def random_adjacent_v(rng, u, max_entry=3):
    """Non-negative v whose class generates (Z^n cap span(u, v)) / Z.u.

    The class of v is a generator exactly when the 2x2 minors of (u, v) are
    coprime, so we draw v and keep it when that index is 1.
    """
    n = len(u)
    while True:
        v = tuple(int(c) for c in rng.integers(0, max_entry + 1, n))
        if any(u[i] * v[j] - u[j] * v[i] for i in range(n) for j in range(i + 1, n)) \
                and minor_gcd(u, v) == 1:
            return v


def random_nonempty_collection(rng, n=None):
    """Delta_1 on a segment of Z.u, Delta_2 spanning L1 and an adjacent line L2.

    Returns (collection, u, v, l2_points).
    """
    if n is None:
        n = int(rng.choice([2, 3, 4]))
    u = random_primitive(rng, n)
    v = random_adjacent_v(rng, u)
    m1 = int(rng.integers(1, 6))          # 2..6 points on L1
    j = int(rng.integers(0, 3))           # extra reach of Delta_2 along L1
    p = int(rng.integers(2, 7))           # 2..6 points on L2
    d1 = [tuple(0 for _ in u), tuple(m1 * c for c in u)]
    l2 = [tuple(vi + m * ui for vi, ui in zip(v, u)) for m in range(p)]
    d2 = {tuple(0 for _ in u), tuple(j * c for c in u), l2[0], l2[-1]}
    coll = PolytopeCollection([LatticePolytope(SupportSet(d1)), LatticePolytope(SupportSet(d2))])
    return coll, u, v, l2


def random_collection(rng, n, k, max_coord=3, max_gens=4):
    """Random polytopes with the origin as a vertex (any non-negative set containing 0)."""
    deltas = []
    for _ in range(k):
        size = int(rng.integers(1, max_gens + 1))
        pts = {tuple(0 for _ in range(n))}
        pts |= {tuple(int(c) for c in rng.integers(0, max_coord + 1, n)) for _ in range(size)}
        deltas.append(LatticePolytope(SupportSet(pts, n)))
    return PolytopeCollection(deltas)


def permute_collection(c, perm):
    return PolytopeCollection([
        LatticePolytope(SupportSet([tuple(p[i] for i in perm) for p in d.generators], c.n))
        for d in c.deltas
    ])


def rng_for(seed):
    return np.random.default_rng(seed)
