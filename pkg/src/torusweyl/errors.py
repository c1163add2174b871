"""Exception types shared across the package."""


class TorusWeylError(ValueError):
    """Base class for all domain errors raised by this package."""


class DimensionMismatch(TorusWeylError):
    """Operands live on tori of different Hilbert dimension."""


class NotNormalized(TorusWeylError):
    """State vector does not have unit norm."""


class NonOrthogonal(TorusWeylError):
    """Pair of states expected to be orthogonal is not."""


class NotUnitary(TorusWeylError):
    """Matrix expected to be unitary fails the unitarity check."""


class SymmetryViolation(TorusWeylError):
    """Phase-space array breaks the half-period sign symmetry."""


class EvenDimension(TorusWeylError):
    """Operation requires odd Hilbert dimension."""


class KindMismatch(TorusWeylError):
    """Phase-space array has the wrong kind (center vs chord) for this operation."""


class ZeroDirection(TorusWeylError):
    """Lattice direction (0, 0) is not a valid line orientation here."""


class EmptyList(TorusWeylError):
    """Operator list must contain at least one element."""


class FileFormatError(TorusWeylError):
    """Input file is malformed or has an unexpected kind."""
