"""Exception hierarchy shared by every layer of the engine."""


class PolarError(Exception):
    """Base class for all errors raised by polarvc."""


class ParseError(PolarError, ValueError):
    """Malformed polynomial text."""

    def __init__(self, message, text="", position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class UnknownVariable(ParseError):
    def __init__(self, name, text="", position=None):
        self.name = name
        super().__init__(f"unknown variable {name!r}", text, position)


class RingMismatch(PolarError):
    """Operands live in polynomial rings with different variables."""


class ResourceLimit(PolarError):
    """The reduction-step budget was exhausted."""


class PrecisionExhausted(PolarError):
    """A Puiseux order could not be certified at the maximal truncation."""


class NotACurve(PolarError):
    def __init__(self, dimension, detail=""):
        self.dimension = dimension
        msg = f"expected a curve germ at the origin, got dimension {dimension}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class NonProperIntersection(PolarError):
    """The hypersurface contains the component it is intersected with."""


class ConstantOnStratum(PolarError):
    pass


class GenericityFailure(PolarError):
    """Independent random samples kept disagreeing."""


class IsolationCheckFailed(PolarError):
    pass


class HypothesisViolated(PolarError):
    def __init__(self, report):
        self.report = report
        names = ", ".join(f"{s}: {p}" for s, p in report.offending)
        super().__init__(f"polar components contained in V(f): {names}")


class RingNotIntegralDomain(PolarError):
    pass


class DegreeMismatch(PolarError):
    pass
