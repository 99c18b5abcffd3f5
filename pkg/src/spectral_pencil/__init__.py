"""Sheaves on P1 x P1 as linear matrix pencils.

The package computes spectral curves, bigraded sheaf cohomology, and the
Poisson and loop-orbit structure on quadruples ``(X, Y, F, G)``, on an exact
Gaussian-rational backend and a complex floating-point backend.
"""
from .algebra import *  # noqa: F401,F403
from .algebra import __all__ as _algebra_all
from .cohomology import (CohClassSpace, MonadComplex, SplittingType, Twist, closed_form_chi, euler_characteristic,
                         hilbert_polynomial, induced_map, koszul_complex, line_bundle_dims, monad_cohomology,
                         p1_splitting_type, rank_theorem_check, resolution_complex, sheaf_cohomology, theorem1_check)
from .errors import *  # noqa: F401,F403
from .loop_orbit import (BoundaryData, OrbitSpec, RationalMap, block_determinant, boundary_data,
                         free_properness_check, from_rational_map, orbit_invariants, to_rational_map)
from .pencil import (BipurityReport, CurveSample, Pencil, Quadruple, SpectralCurve, act_full, act_K,
                     adjugate_coefficients, bipurity_check, curve_csv, geometric_resolution_check,
                     minimal_polynomial, mobius_shift, normalize, sample_curve, spectral_curve, spectral_det)
from .poisson import (HamiltonianFn, LeafSpec, Trajectory, bracket, coordinate, flow, leaf_membership,
                      moment_map_X, moment_map_Y, spectral_combination, spectral_hamiltonian, trace_power,
                      trace_word, vector_field)

__version__ = "0.1.0"

__all__ = list(_algebra_all) + [
    "BipurityReport", "BoundaryData", "CohClassSpace", "CurveSample", "HamiltonianFn", "LeafSpec",
    "MonadComplex", "OrbitSpec", "Pencil", "Quadruple", "RationalMap", "SpectralCurve", "SplittingType",
    "Trajectory", "Twist", "act_K", "act_full", "adjugate_coefficients", "bipurity_check", "block_determinant",
    "boundary_data", "bracket", "closed_form_chi", "coordinate", "curve_csv", "euler_characteristic", "flow",
    "free_properness_check", "from_rational_map", "geometric_resolution_check", "hilbert_polynomial",
    "induced_map", "koszul_complex", "leaf_membership", "line_bundle_dims", "minimal_polynomial",
    "mobius_shift", "moment_map_X", "moment_map_Y", "monad_cohomology", "normalize", "orbit_invariants",
    "p1_splitting_type", "rank_theorem_check", "resolution_complex", "sample_curve", "sheaf_cohomology",
    "spectral_combination", "spectral_curve", "spectral_det", "spectral_hamiltonian", "theorem1_check",
    "to_rational_map", "trace_power", "trace_word", "vector_field",
]
