"""Exception hierarchy.

Validation problems derive from :class:`ValidationError` (CLI exit code 2),
numerical breakdowns from :class:`NumericalError` (exit code 3).
"""


class FreeSupportError(Exception):
    pass


class ValidationError(FreeSupportError, ValueError):
    pass


class MassNotOne(ValidationError):
    pass


class OverlappingSegments(ValidationError):
    pass


class DiracMass(ValidationError):
    """The input is a single point mass; the semigroup is then trivial."""


class UnboundedSupport(ValidationError):
    pass


class InvalidTime(ValidationError):
    pass


class EmptySet(ValidationError):
    pass


class UnsupportedLawTime(ValidationError):
    pass


class NumericalError(FreeSupportError, ArithmeticError):
    pass


class PoleOnAxis(NumericalError):
    pass


class ZeroCauchy(NumericalError):
    pass


class PsiNotReal(NumericalError):
    pass


class ZeroF(NumericalError):
    pass
