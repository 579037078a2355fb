"""Exception hierarchy. Everything raised on purpose derives from PolytopeError."""


class PolytopeError(ValueError):
    pass


class MissingBound(PolytopeError):
    """No unique least or greatest face."""


class RankSkip(PolytopeError):
    """A cover pair whose ranks do not differ by exactly one."""


class NotComparable(PolytopeError):
    pass


class DiamondViolation(PolytopeError):
    pass


class BadParameter(PolytopeError):
    pass


class ValidationFailed(PolytopeError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotSimplicial(PolytopeError):
    pass


class NotVertexDescribable(PolytopeError):
    pass


class TooLargeForExplicit(PolytopeError):
    pass


class SearchExhausted(PolytopeError):
    pass
