"""Exception types shared across the package."""


class VerificationError(AssertionError):
    """A hard identity check failed.

    ``residual`` carries whatever is left over (usually an MPoly) so a report
    can show exactly what did not cancel.
    """

    def __init__(self, check, message, residual=None):
        super().__init__(f"{check}: {message}")
        self.check = check
        self.message = message
        self.residual = residual


class DomainError(ValueError):
    pass


class NotOnCurveError(ValueError):
    pass


class PoleError(ZeroDivisionError):
    def __init__(self, denominator, point):
        super().__init__(f"{denominator} vanishes at {point}")
        self.denominator = denominator
        self.point = point


class DegenerateConfigurationError(ValueError):
    pass
