"""Exception hierarchy shared by all modules."""


class PadicScaleError(Exception):
    """Base class for all library errors."""


class NonPrimeError(PadicScaleError):
    """A number that was required to be prime is not."""


class NotSquareError(PadicScaleError):
    """Matrix operation requires a square matrix."""


class SingularMatrixError(PadicScaleError):
    """Matrix operation requires an invertible matrix."""


class DegreeCapExceededError(PadicScaleError):
    """Polynomial degree above the configured factorization cap."""


class SingularPolynomialError(PadicScaleError):
    """Polynomial has 0 as a root where an invertible map is required."""


class AmbientMismatchError(PadicScaleError):
    """Lattice operation on lattices with different prime or ambient dim."""


class NotNestedError(PadicScaleError):
    """Index of non-nested lattices requested."""


class RankMismatchError(PadicScaleError):
    """Index of lattices with different rank or span requested."""


class PrecisionExhaustedError(PadicScaleError):
    """Rank certification failed at the working precision; raise it."""

    def __init__(self, message, precision=None):
        super().__init__(message)
        self.precision = precision


class IterationCapError(PadicScaleError):
    """A lattice chain failed to stabilize within the iteration cap."""


class InexactSplitError(PadicScaleError):
    """Operation requires an exact contraction split."""


class CapExceededError(PadicScaleError):
    """Finite-group enumeration exceeded the configured cap."""


class UnknownPrimeError(PadicScaleError):
    """Prime does not occur in the given product group."""


class NoFiniteFactorError(PadicScaleError):
    """Quotient by the finite factor requested but none is present."""


class BlockMismatchError(PadicScaleError):
    """Automorphism blocks do not match the group model."""


class CertificateError(PadicScaleError):
    """An internal consistency certificate failed; indicates a bug."""
