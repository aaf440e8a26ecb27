"""Exception types raised across the package.

All input-shape problems derive from ValueError so callers can catch them
broadly; the CLI maps them onto its exit-code contract.
"""


class InvalidSupport(ValueError):
    """A support set is empty, has duplicates, negative or ragged exponents."""


class ZeroVector(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class DegenerateStrip(ValueError):
    """The base point of the second line lies on the first line."""


class MalformedCollection(ValueError):
    pass


class NotCollinear(ValueError):
    pass


class ZeroPolynomial(ValueError):
    pass


class ZeroCoordinate(ValueError):
    """Evaluation point is outside the torus (some coordinate is zero)."""


class UnalignedExponent(ValueError):
    """A monomial fits neither ray of the two-line decomposition."""


class NoSolvableCoordinate(ValueError):
    pass


class PreconditionError(ValueError):
    pass


class RetriesExhausted(RuntimeError):
    pass
