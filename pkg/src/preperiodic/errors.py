"""Exception types shared across the package.

Errors fall into two families that the command line maps to distinct exit
codes: input errors (malformed text, arity mismatches, bad parameters) and
resource errors (enumeration or iteration budgets, size guards).  Sound
negative answers such as a failed certification are also exceptions here so
that callers cannot mistake them for a verdict.
"""


class PreperiodicError(Exception):
    """Base class for every error raised by this package."""


class InputError(PreperiodicError, ValueError):
    """Malformed or inconsistent input."""


class ParseError(InputError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class ArityError(InputError):
    pass


class ExponentOverflow(InputError):
    pass


class PrimeDividesDenominator(InputError):
    """The chosen prime divides a denominator, so reduction is undefined."""

    def __init__(self, p, denominator=None):
        self.p = p
        self.denominator = denominator
        super().__init__(f"prime {p} divides denominator {denominator}")


class ResourceError(PreperiodicError):
    """A budget or size guard was hit; no verdict could be reached."""


class BudgetExceeded(ResourceError):
    pass


class TermLimitExceeded(ResourceError):
    pass


class CoordinateSizeExceeded(ResourceError):
    pass


class BoundTooLarge(ResourceError):
    """The certified bound is larger than the iteration budget allows."""


class GuardViolation(ResourceError):
    pass


class NegativeResult(PreperiodicError):
    """A sound negative answer (certification failed, hypothesis false)."""


class CommonZeroExists(NegativeResult):
    """J and the fixed-locus polynomials share a zero over the algebraic closure."""


class CertificationFailed(NegativeResult):
    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class NoAdmissiblePrime(NegativeResult):
    pass


class MapNotCertified(NegativeResult):
    def __init__(self, index, p):
        self.index = index
        self.p = p
        super().__init__(f"map {index} has a vanishing Jacobian mod {p}")


class PreconditionError(InputError):
    pass
