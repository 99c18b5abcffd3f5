"""Exception hierarchy shared by all modules."""


class SpectralPencilError(Exception):
    """Base class for every error raised by this package."""


class NonSplitting(SpectralPencilError):
    """Characteristic polynomial has an irreducible factor of degree > 1 over Q(i)."""


class BackendUnsupported(SpectralPencilError):
    """Operation is only available on the exact backend."""


class NotDiagonalizable(SpectralPencilError):
    pass


class PointAtInfinityOnSupport(SpectralPencilError):
    """det(A1 | B1) = 0, so (inf, inf) lies on the support."""


class SingularGroupElement(SpectralPencilError):
    pass


class ZeroDeterminant(SpectralPencilError):
    """det M(zeta, eta) vanishes identically."""


class BidegreeMismatch(SpectralPencilError):
    pass


class NotAResolution(SpectralPencilError):
    pass


class NonLinearHilbert(SpectralPencilError):
    pass


class DegenerateInput(SpectralPencilError):
    pass


class StepRejected(SpectralPencilError):
    """Drift of the Hamiltonian over a single step exceeded the tolerance."""


class IncompatibleXY(SpectralPencilError):
    pass


class GenerationFailed(SpectralPencilError):
    pass


class SchemaError(SpectralPencilError):
    """Malformed JSON input. ``field`` names the offending key path."""

    def __init__(self, message, field=None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field
