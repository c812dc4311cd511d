"""Exception hierarchy shared by every salemlab module."""


class SalemLabError(Exception):
    """Base class for domain errors (CLI exit status 1)."""

    def to_dict(self):
        return {"error": type(self).__name__, "message": str(self)}


class NotDivisible(SalemLabError, ArithmeticError):
    pass


class BadLeadingCoeff(SalemLabError, ValueError):
    pass


class ZeroLeading(SalemLabError, ValueError):
    pass


class PrecisionUnreachable(SalemLabError):
    pass


class Degenerate(SalemLabError):
    pass


class DegreeCapExceeded(SalemLabError, ValueError):
    pass


class GIdenticallyZero(SalemLabError):
    pass


class CriterionFails(SalemLabError):
    """The S' nonnegativity test found a sign change on the unit circle.

    ``witness`` is an (lo, hi) pair of Fractions in the x = z + 1/z variable:
    either the transformed difference polynomial changes sign between lo and
    hi, or it is negative on all of (lo, hi).
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

    def to_dict(self):
        d = super().to_dict()
        if self.witness is not None:
            d["witness"] = [str(self.witness[0]), str(self.witness[1])]
        return d


class NoAssociation(SalemLabError):
    pass


class CaseMismatch(SalemLabError):
    pass


class BracketDivisionByZero(SalemLabError, ZeroDivisionError):
    pass


class NoRootAboveOne(SalemLabError):
    pass
