"""Decide whether a collection of Newton polytopes admits codimension-one fibers.

The decision pipeline in :func:`classify` tags every rejection with a reason,
and on success reports the direction ``u`` of the line through the origin
carrying the first polytope, the base point ``v`` of the parallel line, the
lattice points of the second polytope on that line and the resulting count.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from . import lattice as lc
from .errors import DegenerateStrip, MalformedCollection, NotCollinear
from .lattice import LatticePolytope, SupportSet, Vec


class Verdict(str, enum.Enum):
    NONEMPTY_C1 = "NONEMPTY_C1"
    EMPTY_C1 = "EMPTY_C1"


class Reason(str, enum.Enum):
    K_AT_LEAST_3 = "K_AT_LEAST_3"
    DEPENDENT = "DEPENDENT"
    DELTA1_NOT_LINE = "DELTA1_NOT_LINE"
    DELTA2_NOT_IN_STRIP = "DELTA2_NOT_IN_STRIP"
    STRIP_HAS_INTERIOR_POINT = "STRIP_HAS_INTERIOR_POINT"
    COUNT_ZERO = "COUNT_ZERO"
    OK = "OK"


@dataclass(frozen=True)
class PolytopeCollection:
    deltas: tuple

    def __init__(self, deltas: Sequence[LatticePolytope]):
        deltas = tuple(deltas)
        if not deltas:
            raise MalformedCollection("collection needs at least one polytope")
        n = deltas[0].ambient_dim
        for i, d in enumerate(deltas, 1):
            if d.ambient_dim != n:
                raise MalformedCollection(f"polytope {i} lives in dimension {d.ambient_dim}, expected {n}")
            if (0,) * n not in d.vertices:
                raise MalformedCollection(f"polytope {i} does not have the origin as a vertex")
        object.__setattr__(self, "deltas", deltas)

    @classmethod
    def from_supports(cls, supports) -> "PolytopeCollection":
        return cls([LatticePolytope(s if isinstance(s, SupportSet) else SupportSet(s))
                    for s in supports])

    @property
    def k(self) -> int:
        return len(self.deltas)

    @property
    def n(self) -> int:
        return self.deltas[0].ambient_dim


class Independence(NamedTuple):
    independent: bool
    witness: Optional[tuple] = None  # 1-based indices of a violating subset


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    reason: Reason
    u: Optional[Vec] = None
    v: Optional[Vec] = None
    l2_points: Optional[SupportSet] = None
    predicted_count: Optional[int] = None
    independence: Optional[Independence] = None


def is_independent(c: PolytopeCollection) -> Independence:
    """Check dim(sum of Delta_i, i in I) >= |I| for every nonempty I.

    Subsets are tried by size, then lexicographically, so the reported
    witness is a smallest violating subset.
    """
    verts = [SupportSet(d.vertices) for d in c.deltas]
    for size in range(1, c.k + 1):
        for idx in itertools.combinations(range(c.k), size):
            total = verts[idx[0]]
            for i in idx[1:]:
                total = lc.minkowski_sum(total, verts[i])
            if lc.affine_dim(total) < size:
                return Independence(False, tuple(i + 1 for i in idx))
    return Independence(True)


def _in_span2(basis, x) -> Optional[tuple]:
    """Rational coordinates of x in the basis (b1, b2), or None if x is outside the span."""
    b1, b2 = basis
    n = len(x)
    for i, j in itertools.combinations(range(n), 2):
        dt = b1[i] * b2[j] - b1[j] * b2[i]
        if dt:
            c1 = Fraction(x[i] * b2[j] - x[j] * b2[i], dt)
            c2 = Fraction(b1[i] * x[j] - b1[j] * x[i], dt)
            if all(c1 * p + c2 * q == xi for p, q, xi in zip(b1, b2, x)):
                return c1, c2
            return None
    raise DegenerateStrip("basis vectors are dependent")


def strip_interior_lattice_free(u: Sequence[int], v: Sequence[int], n: Optional[int] = None) -> bool:
    """True iff no integer point lies strictly between R.u and v + R.u.

    Computes a basis of the saturated lattice Z^n cap span(u, v) and checks
    that v maps to a generator of the quotient by Z.u.
    """
    u, v = tuple(u), tuple(v)
    n = len(u) if n is None else n
    if len(u) != n or len(v) != n:
        raise ValueError(f"u and v must have length {n}")
    if lc.primitive_vector(u) != u:
        raise ValueError(f"u = {u} is not primitive")
    if lc.rank([u, v]) < 2:
        raise DegenerateStrip(f"v = {v} lies on the line spanned by u = {u}")
    complement = lc.integer_kernel([u, v], n)
    lam = lc.integer_kernel(complement, n)
    assert len(lam) == 2
    a1, a2 = _in_span2(lam, u)
    c1, c2 = _in_span2(lam, v)
    return abs(a1 * c2 - a2 * c1) == 1


def predicted_count(l2_points) -> int:
    pts = list(l2_points)
    if not pts:
        raise NotCollinear("empty point set")
    if lc.line_containment(pts) is None:
        raise NotCollinear(f"points {pts} are not collinear")
    return len(pts) - 1


def _multiple_of(p, u) -> Optional[int]:
    """Integer m with p == m*u, else None (u primitive, nonzero)."""
    j = next(i for i, c in enumerate(u) if c)
    if p[j] % u[j]:
        return None
    m = p[j] // u[j]
    return m if all(m * c == x for c, x in zip(u, p)) else None


def classify(c: PolytopeCollection) -> Classification:
    n, k = c.n, c.k
    if not 2 <= k <= n:
        raise MalformedCollection(f"need 2 <= k <= n, got k={k}, n={n}")
    if k >= 3:
        return Classification(Verdict.EMPTY_C1, Reason.K_AT_LEAST_3)

    ind = is_independent(c)
    if not ind.independent:
        return Classification(Verdict.EMPTY_C1, Reason.DEPENDENT, independence=ind)

    def empty(reason, **kw):
        return Classification(Verdict.EMPTY_C1, reason, independence=ind, **kw)

    d1, d2 = c.deltas
    origin = (0,) * n
    pts1 = d1.lattice_pts
    line = lc.line_containment(pts1)
    if line is None or origin not in pts1:
        return empty(Reason.DELTA1_NOT_LINE)
    u = line.direction
    if any(_multiple_of(p, u) is None for p in pts1):
        return empty(Reason.DELTA1_NOT_LINE, u=u)

    off = [p for p in d2.lattice_pts if lc.rank([u, p]) > 1]
    # independence rules out an empty `off` (Delta_2 would sit on L1)
    q0 = off[0]
    if any(lc.rank([u, lc.sub(q, q0)]) > 1 for q in off):
        return empty(Reason.DELTA2_NOT_IN_STRIP, u=u)
    v = min(off, key=lambda q: (lc.dot(q, u), q))
    l2 = SupportSet(off, n)

    if not strip_interior_lattice_free(u, v, n):
        return empty(Reason.STRIP_HAS_INTERIOR_POINT, u=u, v=v, l2_points=l2)

    count = predicted_count(l2)
    if count == 0:
        return empty(Reason.COUNT_ZERO, u=u, v=v, l2_points=l2, predicted_count=0)
    return Classification(Verdict.NONEMPTY_C1, Reason.OK, u=u, v=v, l2_points=l2,
                          predicted_count=count, independence=ind)

