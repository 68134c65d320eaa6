"""Exception hierarchy shared by all modules."""


class WebError(Exception):
    """Base class for every error raised by threewebs."""


class PreconditionError(WebError, ValueError):
    """An input violates the documented precondition of an operation."""


class NonzeroConstantTerm(PreconditionError):
    pass


class NotInvertible(PreconditionError):
    pass


class InexactDivision(PreconditionError):
    def __init__(self, divisor, degree):
        self.divisor = divisor
        self.degree = degree
        super().__init__(f"not divisible by {divisor} in homogeneous degree {degree}")


class DegenerateLinearPart(PreconditionError):
    pass


class BadLinearCoefficient(PreconditionError):
    pass


class ZeroLambda(PreconditionError):
    pass


class BadLinearPart(PreconditionError):
    pass


class BadJet(PreconditionError):
    pass


class NotInvariant(PreconditionError):
    pass


class ResidualError(WebError, RuntimeError):
    """A verification residual that must vanish did not (internal bug)."""


class ParseError(WebError, ValueError):
    """Syntax error in an expression, with byte offset and expected tokens."""

    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(expected))
        text = f"{message} at byte {offset}"
        if self.expected:
            text += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(text)


class NegativeExponent(ParseError):
    pass


class NotCircular(PreconditionError):
    """The synthesized map is not a circular symmetry of the synthesized web."""
