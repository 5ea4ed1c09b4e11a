"""Exception types shared across the package."""


class EnneperError(Exception):
    """Base class for all library errors."""


class ExpressionSyntaxError(EnneperError):
    def __init__(self, message, offset, text=""):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.text = text


class EvaluationError(EnneperError, ArithmeticError):
    pass


class IntegrationError(EnneperError):
    pass


class NotHolomorphic(EnneperError):
    pass


class DegenerateAt(EnneperError):
    """Raised when the immersion margin collapses at a sample point."""

    def __init__(self, z, margin):
        super().__init__(f"degenerate at z={z!r} (margin={margin:.3e})")
        self.z = z
        self.margin = margin


class PeriodObstruction(EnneperError):
    """A reconstructed coordinate would be multivalued around a hole."""

    def __init__(self, component, value):
        super().__init__(f"nonzero period for {component}: {value!r}")
        self.component = component
        self.value = value


class NorthPole(EnneperError):
    pass


class MeshError(EnneperError):
    pass


class ConfigError(EnneperError):
    pass
