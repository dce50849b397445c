"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`GVQKError`
so the CLI can map it to an exit code.
"""


class GVQKError(Exception):
    """Base class for library errors."""


class ValidationError(GVQKError):
    """Input data violates a structural invariant."""


class SemiPositivityError(ValidationError):
    pass


class RankMismatch(ValidationError):
    pass


class NotDivisible(GVQKError):
    pass


class TruncationMismatch(GVQKError):
    pass


class OutOfTruncation(GVQKError):
    """Coefficient requested beyond the truncation; it is unknown, not zero."""


class NotDivisorClosed(ValidationError):
    def __init__(self, beta, missing):
        self.beta = beta
        self.missing = missing
        super().__init__(f"table is not divisor-closed: {beta} needs {missing}")


class KindMismatch(GVQKError):
    pass


class UnsupportedN(GVQKError):
    pass


class DegreeHypothesisViolated(GVQKError):
    def __init__(self, beta, reason):
        self.beta = beta
        self.reason = reason
        super().__init__(f"degree hypothesis violated at {beta}: {reason}")


class PoleAtOne(GVQKError):
    pass


class DegreeMismatch(GVQKError):
    pass


class NoIntegralLift(GVQKError):
    pass


class SingularPairing(GVQKError):
    pass
