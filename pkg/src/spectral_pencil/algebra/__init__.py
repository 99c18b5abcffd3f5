"""Scalar backends, dense linear algebra and polynomial arithmetic."""
from .conjugacy import ConjClassInvariant
from .linalg import (adjugate, adjugate_batch, charpoly, det, diagonalize, eigen, inv, is_singular, nullspace, rank,
                     rref, solve)
from .poly import BiPoly, bipoly_divide, bipoly_gcd, interpolate_grid, udivmod, ueval, ugcd
from .scalars import (DEFAULT_TOL, EXACT, FLOAT, ONE, ZERO, GaussianRational, ToleranceConfig, backend_of, convert,
                      eye, gq, is_exact, to_exact, to_float, zeros)

__all__ = [
    "BiPoly", "ConjClassInvariant", "DEFAULT_TOL", "EXACT", "FLOAT", "GaussianRational", "ONE",
    "ToleranceConfig", "ZERO", "adjugate", "adjugate_batch", "backend_of", "bipoly_divide", "bipoly_gcd",
    "charpoly", "convert", "det", "diagonalize", "eigen", "eye", "gq", "interpolate_grid", "inv", "is_exact",
    "is_singular", "nullspace", "rank", "rref", "solve", "to_exact", "to_float", "udivmod", "ueval", "ugcd",
    "zeros",
]
