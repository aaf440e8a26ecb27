"""Concrete computation of the codimension-one fiber set for k = 2.

With ``t = x^u`` the two components split as

    f1 = p01(t),    f2 = p02(t) + x^v * pv2(t),

and the points of C1 are (p01(t*), p02(t*)) for the nonzero roots t* of
pv2. Every such fiber contains the whole binomial hypersurface {x^u = t*},
which :func:`verify_codim1` checks by random sampling.
"""
from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import lattice as lc
from .classifier import PolytopeCollection, Verdict, classify
from .errors import (DegenerateStrip, NoSolvableCoordinate, PreconditionError,
                     RetriesExhausted, UnalignedExponent, ZeroPolynomial)
from .poly import PolynomialMap, SparsePolynomial, evaluate

log = logging.getLogger(__name__)

ZERO_ROOT_TOL = 1e-12
KAPPA_TOL = 1e-8
CLUSTER_RTOL = 1e-6
MIN_ROOT_GAP = 1e-6


@dataclass(frozen=True)
class UnivariatePoly:
    """Dense univariate polynomial, ascending coefficients, trailing zeros trimmed.

    The zero polynomial has ``coeffs == ()`` and degree -1.
    """
    coeffs: tuple

    def __init__(self, coeffs: Sequence):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self) -> "UnivariatePoly":
        return UnivariatePoly([i * c for i, c in enumerate(self.coeffs)][1:])


@dataclass(frozen=True)
class BinomialFactor:
    u: tuple
    t0: complex

    def __post_init__(self):
        if not any(self.u):
            raise NoSolvableCoordinate("binomial direction u is zero")
        if lc.primitive_vector(self.u) != tuple(self.u):
            raise ValueError(f"u = {self.u} is not primitive")
        if self.t0 == 0:
            raise ValueError("t0 must be nonzero")


@dataclass(frozen=True)
class Decomposition:
    u: tuple
    v: tuple
    p01: UnivariatePoly
    p02: UnivariatePoly
    pv2: UnivariatePoly

    def reconstruct(self) -> PolynomialMap:
        """Rebuild (f1, f2) from the three univariate pieces."""
        n = len(self.u)
        f1 = {lc.scale(m, self.u): c for m, c in enumerate(self.p01.coeffs)}
        f2 = {lc.scale(m, self.u): c for m, c in enumerate(self.p02.coeffs)}
        f2.update({lc.add(self.v, lc.scale(m, self.u)): c for m, c in enumerate(self.pv2.coeffs)})
        return PolynomialMap([SparsePolynomial(f1, n), SparsePolynomial(f2, n)])


def _ray_index(w, u) -> Optional[int]:
    """m >= 0 with w == m*u, else None."""
    j = next(i for i, c in enumerate(u) if c)
    if w[j] % u[j]:
        return None
    m = w[j] // u[j]
    if m < 0 or any(m * c != x for c, x in zip(u, w)):
        return None
    return m


def _dense(entries: dict) -> UnivariatePoly:
    if not entries:
        return UnivariatePoly([])
    cs = [0] * (max(entries) + 1)
    for m, c in entries.items():
        cs[m] = c
    return UnivariatePoly(cs)


def decompose(f: PolynomialMap, u: Sequence[int], v: Sequence[int]) -> Decomposition:
    u, v = tuple(u), tuple(v)
    if f.k != 2:
        raise ValueError(f"decompose needs a map with k = 2, got k = {f.k}")
    if len(u) != f.n or len(v) != f.n:
        raise ValueError(f"u and v must have length {f.n}")
    if lc.primitive_vector(u) != u:
        raise ValueError(f"u = {u} is not primitive")
    if lc.rank([u, v]) < 2:
        raise DegenerateStrip(f"v = {v} lies on the line spanned by u = {u}")
    f1, f2 = f.components
    p01 = {}
    for w, c in f1.terms.items():
        m = _ray_index(w, u)
        if m is None:
            raise UnalignedExponent(f"f1 exponent {w} is not a non-negative multiple of u = {u}")
        p01[m] = c
    p02, pv2 = {}, {}
    for w, c in f2.terms.items():
        m = _ray_index(w, u)
        if m is not None:
            p02[m] = c
            continue
        m = _ray_index(lc.sub(w, v), u)
        if m is None:
            raise UnalignedExponent(f"f2 exponent {w} lies on neither N.u nor v + N.u (u = {u}, v = {v})")
        pv2[m] = c
    return Decomposition(u, v, _dense(p01), _dense(p02), _dense(pv2))


def univariate_roots(p: UnivariatePoly) -> list[tuple[complex, int]]:
    """Roots of p as (root, multiplicity) pairs.

    Companion-matrix eigenvalues followed by one Newton step per root (kept
    only if it lowers the residual). Eigenvalues closer than
    ``CLUSTER_RTOL * max(1, |r|)`` are merged into one multiple root.
    Exact zero roots from vanishing low-order coefficients are split off
    first and reported as 0.
    """
    if p.degree < 0:
        raise ZeroPolynomial("the zero polynomial has every number as a root")
    cs = [complex(c) for c in p.coeffs]
    nzero = next(i for i, c in enumerate(cs) if c != 0)
    cs = cs[nzero:]
    deg = len(cs) - 1
    roots: list[complex] = []
    if deg > 0:
        monic = np.array(cs[:-1]) / cs[-1]
        comp = np.zeros((deg, deg), dtype=complex)
        comp[1:, :-1] = np.eye(deg - 1)
        comp[:, -1] = -monic
        q = UnivariatePoly(cs)
        dq = q.derivative()
        for r in np.linalg.eigvals(comp):
            r = complex(r)
            d = dq(r)
            if d != 0:
                polished = r - q(r) / d
                if abs(q(polished)) <= abs(q(r)):
                    r = polished
            roots.append(r)
    clusters: list[list[complex]] = []
    for r in sorted(roots, key=lambda z: (z.real, z.imag)):
        for cl in clusters:
            if abs(cl[0] - r) <= CLUSTER_RTOL * max(1.0, abs(r)):
                cl.append(r)
                break
        else:
            clusters.append([r])
    out = [(sum(cl) / len(cl), len(cl)) for cl in clusters]
    if nzero:
        out.insert(0, (0j, nzero))
    return out


@dataclass(frozen=True)
class VerifyResult:
    passed: bool
    max_residual: float


def _solve_coordinate(u) -> int:
    nz = [i for i, c in enumerate(u) if c]
    if not nz:
        raise NoSolvableCoordinate("u = 0: no coordinate can absorb x^u = t0")
    return max(nz, key=lambda i: (abs(u[i]), -i))


def sample_binomial_hypersurface(u, t0: complex, rng: np.random.Generator) -> tuple:
    """One random point x of the torus with x^u = t0.

    Free coordinates get moduli uniform in [0.5, 2] and uniform phases; the
    coordinate with the largest |u_j| is solved for.
    """
    n = len(u)
    j = _solve_coordinate(u)
    x = [0j] * n
    rest = 1 + 0j
    for i in range(n):
        if i == j:
            continue
        x[i] = cmath.rect(rng.uniform(0.5, 2.0), rng.uniform(0.0, 2 * math.pi))
        if u[i]:
            rest *= x[i] ** u[i]
    x[j] = (complex(t0) / rest) ** (1.0 / u[j])
    return tuple(x)


def verify_codim1(f: PolynomialMap, kappa: Sequence, bin: BinomialFactor, samples: int = 100,
                  tol: float = 1e-6, seed: int = 0) -> VerifyResult:
    """Check that f is constant equal to kappa on {x^u = t0} at random samples."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if len(kappa) != f.k:
        raise ValueError(f"kappa has {len(kappa)} entries, expected {f.k}")
    fc = f.to_complex()
    kappa = [complex(z) for z in kappa]
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        x = sample_binomial_hypersurface(bin.u, bin.t0, rng)
        for p, kz in zip(fc.components, kappa):
            worst = max(worst, abs(evaluate(p, x) - kz))
    return VerifyResult(worst <= tol, worst)


@dataclass(frozen=True)
class C1Point:
    kappa: tuple
    t0: complex
    multiplicity: int
    residual: float
    verified: bool


@dataclass(frozen=True)
class C1Result:
    points: tuple
    decomposition: Decomposition
    warnings: tuple = field(default=())

    def __len__(self):
        return len(self.points)


def _kappa_close(a, b) -> bool:
    scale = max(1.0, *(abs(z) for z in a), *(abs(z) for z in b))
    return max(abs(x - y) for x, y in zip(a, b)) <= KAPPA_TOL * scale


def compute_C1(f: PolynomialMap, u: Sequence[int], v: Sequence[int], *, samples: int = 100,
               tol: float = 1e-6, seed: int = 0) -> C1Result:
    dec = decompose(f, u, v)
    warnings = []
    found: list[list] = []  # [kappa, t0, multiplicity]
    for t, mult in univariate_roots(dec.pv2):
        if abs(t) < ZERO_ROOT_TOL:
            msg = f"dropped root t = 0 of pv2 (multiplicity {mult}); it lies outside the torus"
            log.warning(msg)
            warnings.append(msg)
            continue
        if mult > 1:
            warnings.append(f"pv2 has a root of multiplicity {mult} near t = {t:.6g}")
        kappa = (complex(dec.p01(t)), complex(dec.p02(t)))
        for entry in found:
            if _kappa_close(entry[0], kappa):
                entry[2] += mult
                warnings.append(f"distinct roots of pv2 give the same point {kappa}")
                break
        else:
            found.append([kappa, t, mult])
    found.sort(key=lambda e: (round(e[1].real, 12), round(e[1].imag, 12)))
    points = []
    for kappa, t, mult in found:
        res = verify_codim1(f, kappa, BinomialFactor(dec.u, t), samples, tol, seed)
        points.append(C1Point(kappa, t, mult, res.max_residual, res.passed))
    return C1Result(tuple(points), dec, tuple(warnings))


def _annulus(rng: np.random.Generator, size: int) -> list[complex]:
    # uniform with respect to area on 0.5 <= |z| <= 2
    r = np.sqrt(rng.uniform(0.25, 4.0, size))
    theta = rng.uniform(0.0, 2 * math.pi, size)
    return [complex(a) for a in r * np.exp(1j * theta)]


def sample_generic(c: PolytopeCollection, seed: int, max_retries: int = 100) -> PolynomialMap:
    """Random coefficients on every lattice point, certified generic.

    The certificate: pv2 has full degree, a nonzero constant term and roots
    pairwise further apart than ``MIN_ROOT_GAP``.
    """
    cl = classify(c)
    if cl.verdict != Verdict.NONEMPTY_C1:
        raise PreconditionError(f"sample_generic needs a NONEMPTY_C1 collection, got {cl.reason.value}")
    rng = np.random.default_rng(seed)
    supports = [d.lattice_pts for d in c.deltas]
    for _ in range(max_retries):
        comps = [SparsePolynomial.from_support(s, _annulus(rng, len(s))) for s in supports]
        f = PolynomialMap(comps)
        pv2 = decompose(f, cl.u, cl.v).pv2
        if pv2.degree != cl.predicted_count or pv2(0) == 0:
            continue
        roots = [r for r, _ in univariate_roots(pv2)]
        if len(roots) != pv2.degree:
            continue
        gap = min((abs(a - b) for i, a in enumerate(roots) for b in roots[i + 1:]), default=math.inf)
        if gap > MIN_ROOT_GAP:
            return f
    raise RetriesExhausted(f"no generic coefficients found after {max_retries} draws")
