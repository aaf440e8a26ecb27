"""Codimension-one fibers of sparse polynomial maps on the complex torus."""

__version__ = "0.1.0"

from .classifier import (Classification, PolytopeCollection, Reason, Verdict, classify,  # noqa: E402
                         is_independent, predicted_count, strip_interior_lattice_free)
from .fibers import (BinomialFactor, C1Result, Decomposition, UnivariatePoly, compute_C1,  # noqa: E402
                     decompose, sample_generic, univariate_roots, verify_codim1)
from .lattice import (LatticePolytope, LineWitness, SupportSet, affine_dim,  # noqa: E402
                      lattice_points, lemma_difr2_check, line_containment, minkowski_sum,
                      primitive_vector)
from .poly import (GaussianRational, PolynomialMap, SparsePolynomial, evaluate,  # noqa: E402
                   expand_product, newton_polytope)
