"""Sparse multivariate polynomials over C.

A polynomial is a dict from exponent tuple to coefficient. Coefficients live
in one of two backends:

* exact: :class:`GaussianRational` (ints and Fractions are promoted),
* float: Python ``complex``.

Any float or complex coefficient switches a polynomial to the float backend;
products of an exact and a float polynomial are float.
"""
from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .errors import DimensionMismatch, InvalidSupport, ZeroCoordinate, ZeroPolynomial
from .lattice import LatticePolytope, SupportSet, Vec

# float backend: drop product terms below this fraction of the largest one
CLEANUP_RTOL = 1e-14


class GaussianRational:
    """Exact complex number re + i*im with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot convert {type(x).__name__} to GaussianRational exactly")

    def __add__(self, o):
        if isinstance(o, (complex, float)):
            return complex(self) + o
        o = self.coerce(o)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, (complex, float)):
            return complex(self) * o
        o = self.coerce(o)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, (complex, float)):
            return complex(self) / o
        o = self.coerce(o)
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero")
        return GaussianRational((self.re * o.re + self.im * o.im) / den,
                                (self.im * o.re - self.re * o.im) / den)

    def __rtruediv__(self, o):
        if isinstance(o, (complex, float)):
            return o / complex(self)
        return self.coerce(o) / self

    def __pow__(self, e: int):
        return _ipow(self, e)

    def __eq__(self, o):
        if isinstance(o, GaussianRational):
            return self.re == o.re and self.im == o.im
        if isinstance(o, (int, Fraction)):
            return self.im == 0 and self.re == o
        if isinstance(o, (complex, float)):
            return complex(self) == o
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __abs__(self) -> float:
        return abs(complex(self))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


def _is_exact(c) -> bool:
    return isinstance(c, (GaussianRational, Fraction, int)) and not isinstance(c, bool)


def _ipow(x, e: int):
    """x**e by repeated squaring, exact for exact x."""
    if e < 0:
        return 1 / _ipow(x, -e)
    result = GaussianRational(1) if isinstance(x, GaussianRational) else 1
    base = x
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


class SparsePolynomial:
    """Immutable sparse polynomial in ``ambient_dim`` variables.

    Zero coefficients are never stored, terms are kept in lexicographic
    order of exponents.
    """

    __slots__ = ("ambient_dim", "terms", "exact")

    def __init__(self, terms: Mapping[Sequence[int], numbers.Number], ambient_dim: Optional[int] = None):
        items = [(tuple(int(c) for c in w), a) for w, a in dict(terms).items()]
        if ambient_dim is None:
            if not items:
                raise InvalidSupport("cannot infer ambient dimension of an empty polynomial")
            ambient_dim = len(items[0][0])
        exact = all(_is_exact(a) for _, a in items)
        clean = {}
        for w, a in items:
            if len(w) != ambient_dim:
                raise DimensionMismatch(f"exponent {w} has length {len(w)}, expected {ambient_dim}")
            if any(c < 0 for c in w):
                raise InvalidSupport(f"exponent {w} has a negative entry")
            a = GaussianRational.coerce(a) if exact else complex(a)
            if a:
                clean[w] = a
        self.ambient_dim = ambient_dim
        self.terms = dict(sorted(clean.items()))
        self.exact = exact

    @classmethod
    def from_support(cls, support, coeffs) -> "SparsePolynomial":
        pts = list(support)
        if len(pts) != len(coeffs):
            raise ValueError(f"{len(pts)} exponents but {len(coeffs)} coefficients")
        n = support.ambient_dim if isinstance(support, SupportSet) else len(pts[0])
        return cls(dict(zip(pts, coeffs)), n)

    @classmethod
    def constant(cls, c, ambient_dim: int) -> "SparsePolynomial":
        return cls({(0,) * ambient_dim: c}, ambient_dim)

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> SupportSet:
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no support")
        return SupportSet(self.terms, self.ambient_dim)

    def coefficient(self, w):
        return self.terms.get(tuple(w), 0)

    def to_complex(self) -> "SparsePolynomial":
        if not self.exact:
            return self
        return SparsePolynomial({w: complex(a) for w, a in self.terms.items()}, self.ambient_dim)

    def __mul__(self, other):
        if isinstance(other, SparsePolynomial):
            return expand_product(self, other)
        return SparsePolynomial({w: a * other for w, a in self.terms.items()}, self.ambient_dim)

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, SparsePolynomial):
            other = SparsePolynomial.constant(other, self.ambient_dim)
        _check_dims(self, other)
        out = dict(self.terms)
        for w, a in other.terms.items():
            out[w] = out[w] + a if w in out else a
        return SparsePolynomial(out, self.ambient_dim)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial({w: -a for w, a in self.terms.items()}, self.ambient_dim)

    def __sub__(self, other):
        return self + (-other)

    def __call__(self, x):
        return evaluate(self, x)

    def __eq__(self, other):
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.ambient_dim, tuple(self.terms.items())))

    def __repr__(self):
        body = " + ".join(f"({a!r})*x^{w}" for w, a in self.terms.items()) or "0"
        return f"SparsePolynomial({body})"


def _check_dims(p, q):
    if p.ambient_dim != q.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {p.ambient_dim} and {q.ambient_dim}")


def expand_product(h: SparsePolynomial, g: SparsePolynomial) -> SparsePolynomial:
    """Product h*g by convolution of the term maps."""
    _check_dims(h, g)
    exact = h.exact and g.exact
    out: dict = {}
    for w1, a1 in h.terms.items():
        for w2, a2 in g.terms.items():
            w = tuple(x + y for x, y in zip(w1, w2))
            if exact:
                prod = a1 * a2
            else:
                prod = complex(a1) * complex(a2)
            out[w] = out[w] + prod if w in out else prod
    if not exact and out:
        top = max(abs(a) for a in out.values())
        out = {w: a for w, a in out.items() if abs(a) >= CLEANUP_RTOL * top}
    return SparsePolynomial(out, h.ambient_dim)


def newton_polytope(p: SparsePolynomial) -> LatticePolytope:
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has no Newton polytope")
    return LatticePolytope(p.support())


def evaluate(p: SparsePolynomial, x: Sequence):
    """Evaluate p at a point of the torus, summing terms in lex order of exponents."""
    x = tuple(x)
    if len(x) != p.ambient_dim:
        raise DimensionMismatch(f"point has {len(x)} coordinates, expected {p.ambient_dim}")
    if any(xi == 0 for xi in x):
        raise ZeroCoordinate(f"point {x} has a zero coordinate")
    use_exact = p.exact and all(_is_exact(xi) for xi in x)
    if use_exact:
        x = tuple(GaussianRational.coerce(xi) for xi in x)
        total = GaussianRational(0)
    else:
        x = tuple(complex(xi) for xi in x)
        total = 0j
    for w, a in p.terms.items():
        term = a if use_exact else complex(a)
        for xi, e in zip(x, w):
            if e:
                term = term * _ipow(xi, e)
        total = total + term
    return total


@dataclass(frozen=True)
class PolynomialMap:
    components: tuple

    def __init__(self, components: Sequence[SparsePolynomial]):
        comps = tuple(components)
        if not comps:
            raise ValueError("a polynomial map needs at least one component")
        n = comps[0].ambient_dim
        for p in comps:
            if p.ambient_dim != n:
                raise DimensionMismatch("components have different ambient dimensions")
        object.__setattr__(self, "components", comps)

    @property
    def n(self) -> int:
        return self.components[0].ambient_dim

    @property
    def k(self) -> int:
        return len(self.components)

    def __call__(self, x) -> tuple:
        return tuple(evaluate(p, x) for p in self.components)

    def to_complex(self) -> "PolynomialMap":
        return PolynomialMap([p.to_complex() for p in self.components])
