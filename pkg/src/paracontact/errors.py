"""Exception types raised across the package."""


class GeometryError(ValueError):
    """Base class for invalid geometric input."""


class DimMismatch(GeometryError):
    pass


class NotSymmetric(GeometryError):
    pass


class NotPositiveDefinite(GeometryError):
    pass


class InvalidStructure(GeometryError):
    """Raised when (phi, xi, eta, g) fails the structure axioms.

    The full :class:`StructureReport` is attached as ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class JacobiViolation(GeometryError):
    def __init__(self, message, worst=None, residual=None):
        super().__init__(message)
        self.worst = worst
        self.residual = residual


class SymmetryViolation(GeometryError):
    def __init__(self, message, worst=None, residual=None):
        super().__init__(message)
        self.worst = worst
        self.residual = residual


class ResidualTooLarge(GeometryError):
    pass


class BadClassIndex(GeometryError):
    pass


class BadN(GeometryError):
    pass


class NotDim3(GeometryError):
    pass


class NotPhiBasis(GeometryError):
    pass


class ModeUnsupported(GeometryError):
    """A quantity needs a connection but only raw F data is available."""
