"""Exception hierarchy shared by all foliana modules."""


class FolianaError(Exception):
    """Base class for every error raised by the library."""

    kind = "analysis_error"


class PolySyntaxError(FolianaError, ValueError):
    """Malformed polynomial text; carries 1-based line and column."""

    kind = "syntax_error"

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class LiteralOverflowError(PolySyntaxError):
    kind = "literal_overflow"


class DegreeCapError(FolianaError):
    """A resultant or clearing step would exceed the configured degree cap."""

    kind = "degree_cap"


class CommonComponentError(FolianaError):
    """Two polynomials share a nonconstant factor, so their zero set is not isolated."""

    kind = "common_component"


class NonConvergenceError(FolianaError):
    kind = "nonconvergence"

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NotSingularError(FolianaError):
    kind = "not_singular"


class SingularPointError(FolianaError):
    """Raised when a regular point was required but the field vanishes."""

    kind = "singular_point"


class ClassificationError(FolianaError):
    kind = "classification_error"


class ContourError(FolianaError):
    kind = "contour_error"


class FlowError(FolianaError):
    kind = "flow_error"
