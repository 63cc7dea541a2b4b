"""Exception types shared across the package."""


class SsidError(Exception):
    """Base class for all library errors."""


class NotPrime(SsidError, ValueError):
    def __init__(self, n):
        super().__init__(f"{n} is not prime")
        self.n = n


class CharTooSmall(SsidError, ValueError):
    """Characteristic 2 or 3: callers must use the j = 0 rule directly."""


class NotANonResidue(SsidError, ValueError):
    pass


class ZeroInput(SsidError, ValueError):
    pass


class RNotDividingGroupOrder(SsidError, ValueError):
    pass


class FieldMismatch(SsidError, ValueError):
    pass


class NotInSubgroup(SsidError, ValueError):
    pass


class SingularCurve(SsidError, ValueError):
    pass


class PointsOnDifferentCurves(SsidError, ValueError):
    pass


class ParseError(SsidError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class FileMissing(SsidError, FileNotFoundError):
    def __init__(self, ell, searched=()):
        self.ell = ell
        self.searched = tuple(searched)
        where = ", ".join(str(s) for s in self.searched) or "<none>"
        super().__init__(f"no modular polynomial file for ell={ell} (searched: {where})")


class InvariantViolation(SsidError, ValueError):
    pass


class PrimeTooLargeForOracle(SsidError, ValueError):
    pass


class BadLambda(SsidError, ValueError):
    pass


class ExcludedJInvariant(SsidError, ValueError):
    pass


class MissingNonResidue(SsidError, ValueError):
    pass


class NotDefinedOverPrimeField(SsidError, ValueError):
    pass


class FieldTooLarge(SsidError, ValueError):
    pass


class SameCharacteristic(SsidError, ValueError):
    pass


class SupersingularVertex(SsidError, ValueError):
    pass


class NoOrdinaryCurveWithJ(SsidError, ValueError):
    pass


class NotAnEdge(SsidError, ValueError):
    pass
