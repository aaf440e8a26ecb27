"""Independent reference computations used by the tests.

None of these go through the exact hull / normal-form code in the package:
lattice points come from a bounding-box scan with an LP feasibility check,
the strip test from gcds of 2x2 minors and from a parallelogram scan.
"""
import itertools
import math
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog


def in_hull_lp(x, gens):
    """Is x a convex combination of gens? (HiGHS feasibility LP)."""
    G = np.array(gens, dtype=float).T
    m = G.shape[1]
    A_eq = np.vstack([G, np.ones((1, m))])
    b_eq = np.concatenate([np.array(x, dtype=float), [1.0]])
    res = linprog(np.zeros(m), A_eq=A_eq, b_eq=b_eq, bounds=[(0, None)] * m, method="highs")
    return res.status == 0


def lattice_points_scan(gens):
    gens = [tuple(g) for g in gens]
    lo = [min(c) for c in zip(*gens)]
    hi = [max(c) for c in zip(*gens)]
    return {p for p in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))
            if in_hull_lp(p, gens)}


def vertices_lp(gens):
    """Generators that are not in the hull of the remaining generators."""
    gens = sorted(set(map(tuple, gens)))
    if len(gens) == 1:
        return set(gens)
    return {g for g in gens if not in_hull_lp(g, [h for h in gens if h != g])}


def numpy_rank(points):
    pts = np.array(points, dtype=float)
    if len(pts) <= 1:
        return 0
    return int(np.linalg.matrix_rank(pts[1:] - pts[0]))


def minor_gcd(u, v):
    """Index of Z.u + Z.v in its saturation."""
    return math.gcd(*(u[i] * v[j] - u[j] * v[i]
                      for i, j in itertools.combinations(range(len(u)), 2)))


def strip_scan(u, v):
    """Brute force: is there an integer point a*u + b*v with 0 <= a < 1, 0 < b < 1?"""
    corners = [tuple(a * x + b * y for x, y in zip(u, v)) for a in (0, 1) for b in (0, 1)]
    lo = [min(c) for c in zip(*corners)]
    hi = [max(c) for c in zip(*corners)]
    n = len(u)
    pairs = [(i, j) for i, j in itertools.combinations(range(n), 2) if u[i] * v[j] - u[j] * v[i]]
    i, j = pairs[0]
    det = u[i] * v[j] - u[j] * v[i]
    for p in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        a = Fraction(p[i] * v[j] - p[j] * v[i], det)
        b = Fraction(u[i] * p[j] - u[j] * p[i], det)
        if all(a * x + b * y == c for x, y, c in zip(u, v, p)) and 0 <= a < 1 and 0 < b < 1:
            return False
    return True


def poly_mul_dict(h, g):
    out = {}
    for w1, a in h.items():
        for w2, b in g.items():
            w = tuple(x + y for x, y in zip(w1, w2))
            out[w] = out.get(w, 0) + a * b
    return {w: c for w, c in out.items() if c != 0}
