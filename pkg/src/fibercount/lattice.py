"""Exact integer lattice geometry for polynomial supports.

Everything here works with Python ints and Fractions; no floating point is
used, so equality tests on lattice point counts are exact.

Points are plain tuples of ints. A :class:`SupportSet` is a finite set of
such tuples in the non-negative orthant, and a :class:`LatticePolytope` is
its convex hull with the facet description, vertices and lattice points
computed on demand.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import DimensionMismatch, InvalidSupport, ZeroVector

Vec = tuple  # tuple[int, ...]


# -- small integer / rational linear algebra -------------------------------

def primitive_vector(v: Sequence[int]) -> Vec:
    """Divide an integer vector by the gcd of its entries."""
    g = math.gcd(*v) if len(v) else 0
    if g == 0:
        raise ZeroVector(f"zero vector {tuple(v)} has no primitive direction")
    return tuple(c // g for c in v)


def sub(a: Sequence[int], b: Sequence[int]) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def add(a: Sequence[int], b: Sequence[int]) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def scale(m, a: Sequence[int]) -> Vec:
    return tuple(m * x for x in a)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def rref(rows: Iterable[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q. Returns (nonzero rows, pivot columns)."""
    mat = [[Fraction(x) for x in r] for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        lead = mat[r][c]
        mat[r] = [x / lead for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Iterable[Sequence]) -> int:
    rows = [tuple(r) for r in rows]
    if all(type(x) is int for r in rows for x in r):
        return _int_rank(rows)
    return len(rref(rows)[1])


def _int_rank(rows) -> int:
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    r = 0
    for c in range(len(m[0])):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        top = m[r]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f:
                row = [top[c] * x - f * y for x, y in zip(m[i], top)]
                g = math.gcd(*row)
                m[i] = [x // g for x in row] if g > 1 else row
        r += 1
        if r == len(m):
            break
    return r


def det(mat: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss, fraction free)."""
    n = len(mat)
    if n == 0:
        return 1
    if n == 1:
        return mat[0][0]
    if n == 2:
        (a, b), (c, d) = mat
        return a * d - b * c
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = mat
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    m = [list(r) for r in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def normal_vector(vectors: Sequence[Sequence[int]], dim: int) -> Vec:
    """Generalized cross product of ``dim - 1`` integer vectors in Z^dim.

    The result is orthogonal to every input vector and is zero exactly when
    the inputs are linearly dependent.
    """
    if dim == 1:
        return (1,)
    if dim == 2:
        (a, b), = vectors
        return (-b, a)
    if dim == 3:
        (a1, a2, a3), (b1, b2, b3) = vectors
        return (a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)
    out = []
    for j in range(dim):
        minor = [[row[c] for c in range(dim) if c != j] for row in vectors]
        out.append((-1) ** j * det(minor))
    return tuple(out)


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[Vec]:
    """Z-basis of {x in Z^ncols : rows . x = 0}.

    Unimodular row reduction of [rows^T | I]; the identity block of the rows
    that vanish on the left part spans the kernel.
    """
    m = len(rows)
    aug = [[rows[i][j] for i in range(m)] + [int(j == k) for k in range(ncols)]
           for j in range(ncols)]
    r = 0
    for c in range(m):
        while True:
            live = [i for i in range(r, ncols) if aug[i][c] != 0]
            if not live:
                break
            piv = min(live, key=lambda i: abs(aug[i][c]))
            aug[r], aug[piv] = aug[piv], aug[r]
            done = True
            for i in range(r + 1, ncols):
                if aug[i][c] != 0:
                    q = aug[i][c] // aug[r][c]
                    aug[i] = [x - q * y for x, y in zip(aug[i], aug[r])]
                    if aug[i][c] != 0:
                        done = False
            if done:
                r += 1
                break
        if r == ncols:
            break
    return [tuple(row[m:]) for row in aug[r:]]


# -- supports ----------------------------------------------------------------

class SupportSet:
    """Finite nonempty set of exponent vectors in N^n, kept in lex order."""

    __slots__ = ("ambient_dim", "points", "_set")

    def __init__(self, points: Iterable[Sequence[int]], ambient_dim: Optional[int] = None,
                 *, dedupe: bool = False):
        pts = [tuple(int(c) for c in p) for p in points]
        if not pts:
            raise InvalidSupport("support set is empty")
        n = len(pts[0]) if ambient_dim is None else ambient_dim
        if n < 1:
            raise InvalidSupport("ambient dimension must be at least 1")
        for p in pts:
            if len(p) != n:
                raise InvalidSupport(f"point {p} has length {len(p)}, expected {n}")
            if any(c < 0 for c in p):
                raise InvalidSupport(f"point {p} has a negative exponent")
        uniq = set(pts)
        if len(uniq) != len(pts) and not dedupe:
            dup = next(p for p in pts if pts.count(p) > 1)
            raise InvalidSupport(f"duplicate point {dup}")
        self.ambient_dim = n
        self.points = tuple(sorted(uniq))
        self._set = frozenset(uniq)

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __contains__(self, p):
        return tuple(p) in self._set

    def __eq__(self, other):
        if not isinstance(other, SupportSet):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self._set == other._set

    def __hash__(self):
        return hash((self.ambient_dim, self._set))

    def __repr__(self):
        return f"SupportSet({list(self.points)})"

    def as_set(self) -> frozenset:
        return self._set


def affine_dim(S: Iterable[Sequence[int]]) -> int:
    pts = list(S)
    if not pts:
        raise InvalidSupport("affine_dim of an empty set")
    p0 = pts[0]
    return rank(sub(p, p0) for p in pts[1:])


def minkowski_sum(A: SupportSet, B: SupportSet) -> SupportSet:
    if A.ambient_dim != B.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {A.ambient_dim} and {B.ambient_dim}")
    return SupportSet((add(a, b) for a in A for b in B), A.ambient_dim, dedupe=True)


class LineWitness(NamedTuple):
    base: Vec
    direction: Vec


def line_containment(S: Iterable[Sequence[int]]) -> Optional[LineWitness]:
    """Return a line (lex-minimal base, primitive direction) containing S, if any."""
    pts = sorted(tuple(p) for p in S)
    if not pts:
        raise InvalidSupport("line_containment of an empty set")
    base = pts[0]
    if affine_dim(pts) > 1:
        return None
    far = next((p for p in reversed(pts) if p != base), None)
    if far is None:
        return LineWitness(base, (1,) + (0,) * (len(base) - 1))
    # base is lex-minimal, so this direction is lex-positive
    return LineWitness(base, primitive_vector(sub(far, base)))


# -- polytopes ---------------------------------------------------------------

class _Frame(NamedTuple):
    """Affine hull p0 + rowspace(basis), with basis in RREF on ``pivots``.

    A point x of the affine hull is determined by its pivot coordinates:
    x = p0 + sum_j (x[pivots[j]] - p0[pivots[j]]) * basis[j].
    """
    p0: Vec
    basis: list
    pivots: list

    def project(self, x):
        return tuple(x[j] for j in self.pivots)

    def lift(self, y) -> Optional[Vec]:
        """Integer point of the affine hull over projected coords ``y``, if any."""
        out = list(self.p0)
        for yj, j, row in zip(y, self.pivots, self.basis):
            c = yj - self.p0[j]
            if c:
                for i, b in enumerate(row):
                    if b:
                        out[i] += c * b
        if any(isinstance(c, Fraction) and c.denominator != 1 for c in out):
            return None
        return tuple(int(c) for c in out)


def _frame(points: Sequence[Vec]) -> _Frame:
    p0 = points[0]
    basis, pivots = rref(sub(p, p0) for p in points[1:])
    return _Frame(p0, basis, pivots)


def _supporting(combo, pts, d):
    """Facet (normal, offset) through ``combo`` with all pts on the <= side, or None."""
    a0 = combo[0]
    normal = normal_vector([sub(c, a0) for c in combo[1:]], d)
    if not any(normal):
        return None
    b = dot(normal, a0)
    pos = neg = False
    for p in pts:
        s = dot(normal, p) - b
        if s > 0:
            pos = True
        elif s < 0:
            neg = True
        if pos and neg:
            return None
    if pos:
        normal = tuple(-c for c in normal)
        b = -b
    g = math.gcd(*normal)
    return tuple(c // g for c in normal), b // g


def _facets_through(p, others, d) -> set:
    """Supporting hyperplanes of others + [p] spanned by p and d - 1 of the others."""
    pts = list(others) + [p]
    facets = set()
    for combo in itertools.combinations(others, d - 1):
        f = _supporting((p,) + combo, pts, d)
        if f is not None:
            facets.add(f)
    return facets


def _tight_rank(p, facets) -> int:
    return rank([a for a, b in facets if dot(a, p) == b])


def _inside(p, facets) -> bool:
    return all(dot(a, p) <= b for a, b in facets)


def _hull(pts: Sequence[Vec], d: int) -> tuple[set, list]:
    """Facets and vertices of full-dimensional integer points in Z^d.

    Beneath-beyond: when a point p outside the current hull is added, the
    facets not visible from p survive and every new facet passes through p.
    Far-from-centroid points go first so most of the rest are skipped as
    interior.
    """
    if d == 0:
        return set(), [pts[0]]
    cen = [Fraction(sum(p[i] for p in pts), len(pts)) for i in range(d)]
    order = sorted(pts, key=lambda p: (-sum((p[i] - cen[i]) ** 2 for i in range(d)), p))
    simplex = [order[0]]
    for p in order[1:]:
        if rank([sub(q, simplex[0]) for q in simplex[1:] + [p]]) == len(simplex):
            simplex.append(p)
            if len(simplex) == d + 1:
                break
    facets = set()
    for i, p in enumerate(simplex):
        facets |= _facets_through(p, simplex[:i] + simplex[i + 1:], d)
    current = list(simplex)
    for p in order:
        if p in current or _inside(p, facets):
            continue
        facets = {(a, b) for a, b in facets if dot(a, p) <= b} | _facets_through(p, current, d)
        current = [q for q in current + [p] if _tight_rank(q, facets) == d]
    vertices = sorted(p for p in pts if _tight_rank(p, facets) == d)
    return facets, vertices


@dataclass(frozen=True, eq=False)
class LatticePolytope:
    """Convex hull of a support set.

    Vertices, facets and the full lattice-point set are cached on first use;
    the caches are pure functions of ``generators`` so concurrent first
    access is harmless.
    """
    generators: SupportSet

    @classmethod
    def from_points(cls, points, ambient_dim=None, *, dedupe=True) -> "LatticePolytope":
        return cls(SupportSet(points, ambient_dim, dedupe=dedupe))

    @property
    def ambient_dim(self) -> int:
        return self.generators.ambient_dim

    @cached_property
    def _frame(self) -> _Frame:
        return _frame(self.generators.points)

    @property
    def dim(self) -> int:
        return len(self._frame.pivots)

    @cached_property
    def _hull(self):
        fr = self._frame
        proj = sorted({fr.project(p) for p in self.generators})
        facets, vproj = _hull(proj, self.dim)
        vset = set(vproj)
        vertices = tuple(p for p in self.generators if fr.project(p) in vset)
        return facets, vertices

    @property
    def facets(self) -> set:
        """Inequalities ``a . y <= b`` in the projected coordinates of the affine hull."""
        return self._hull[0]

    @property
    def vertices(self) -> tuple:
        return self._hull[1]

    def contains(self, x: Sequence[int]) -> bool:
        x = tuple(x)
        if len(x) != self.ambient_dim:
            raise DimensionMismatch(f"point {x} not in dimension {self.ambient_dim}")
        fr = self._frame
        y = fr.project(x)
        return fr.lift(y) == x and _inside(y, self.facets)

    @cached_property
    def lattice_pts(self) -> SupportSet:
        fr = self._frame
        facets = self.facets
        proj_v = [fr.project(v) for v in self.vertices]
        ranges = [range(min(c), max(c) + 1) for c in zip(*proj_v)]
        found = []
        for y in itertools.product(*ranges):
            if not _inside(y, facets):
                continue
            x = fr.lift(y)
            if x is not None:
                found.append(x)
        return SupportSet(found, self.ambient_dim)

    def __eq__(self, other):
        if not isinstance(other, LatticePolytope):
            return NotImplemented
        return set(self.vertices) == set(other.vertices)

    def __hash__(self):
        return hash(frozenset(self.vertices))

    def __repr__(self):
        return f"LatticePolytope(vertices={list(self.vertices)})"


def lattice_points(P: LatticePolytope) -> SupportSet:
    return P.lattice_pts


class LemmaCheck(NamedTuple):
    sigma: int
    alpha: int
    beta: int
    equality: bool
    sum_in_line: bool


def lemma_difr2_check(A: LatticePolytope, B: LatticePolytope) -> LemmaCheck:
    """Compare lattice point counts of A, B and A + B.

    ``sigma >= alpha + beta - 1`` always holds; equality should coincide with
    the sum lying on a line when both summands have at least two points.
    """
    if A.ambient_dim != B.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {A.ambient_dim} and {B.ambient_dim}")
    S = LatticePolytope(minkowski_sum(SupportSet(A.vertices), SupportSet(B.vertices)))
    sigma = len(S.lattice_pts)
    alpha = len(A.lattice_pts)
    beta = len(B.lattice_pts)
    return LemmaCheck(
        sigma=sigma,
        alpha=alpha,
        beta=beta,
        equality=sigma == alpha + beta - 1,
        sum_in_line=line_containment(S.lattice_pts) is not None,
    )
