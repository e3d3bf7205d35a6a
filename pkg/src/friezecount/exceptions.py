"""Exception types raised across the package."""


class FriezeError(ValueError):
    """Base class for all errors raised by friezecount."""


class NotAUnit(FriezeError):
    pass


class ModuliNotCoprime(FriezeError):
    pass


class InvalidModulus(FriezeError):
    pass


class ModulusMismatch(FriezeError):
    pass


class NotADivisor(FriezeError):
    pass


class NoTransporter(FriezeError):
    """No SL2 element maps one edge onto the other; cannot happen for valid edges."""


class VertexNotInGraph(FriezeError):
    pass


class InvalidParams(FriezeError):
    pass


class BadAnchor(FriezeError):
    pass


class PreconditionViolated(FriezeError):
    pass


class NotSemiclosed(FriezeError):
    pass


class NonIntegerResult(FriezeError):
    """An exact-arithmetic assembly failed to produce an integer."""


class LimitExceeded(FriezeError):
    def __init__(self, limit, partial):
        super().__init__(f"enumeration limit {limit} exceeded")
        self.limit = limit
        self.partial = partial
