"""Exception hierarchy shared by every module of the package."""


class MilnorError(Exception):
    """Base class for all errors raised by milnor_atlas."""


class DimensionMismatch(MilnorError, ValueError):
    pass


class ParseError(MilnorError, ValueError):
    def __init__(self, message, line=1, column=1):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class EvaluationOnZeroSet(MilnorError, ValueError):
    """Raised when a logarithmic quantity is requested where the polynomial vanishes."""

    def __init__(self, message, value=None):
        self.value = value
        super().__init__(message)


class PointOnLink(EvaluationOnZeroSet):
    pass


class OffSphere(MilnorError, ValueError):
    def __init__(self, message, norm=None):
        self.norm = norm
        super().__init__(message)


class ConstantTermPresent(MilnorError, ValueError):
    pass


class NotWeightedHomogeneous(MilnorError, ValueError):
    pass


class CertificateRequired(MilnorError, ValueError):
    pass


class NotHomogeneous(MilnorError, ValueError):
    pass


class RootFindingDidNotConverge(MilnorError, ArithmeticError):
    def __init__(self, message, residual=None):
        self.residual = residual
        super().__init__(message)


class DegenerateSpan(MilnorError, ValueError):
    pass


class ZeroVector(MilnorError, ValueError):
    pass


class NotSingular(MilnorError, ValueError):
    def __init__(self, message, margin=None):
        self.margin = margin
        super().__init__(message)


class NotAFold(MilnorError, ValueError):
    pass


class IndexMismatch(MilnorError, AssertionError):
    """The eigenvalue structure of a fold contradicts the expected index."""


class UnknownSuite(MilnorError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""
