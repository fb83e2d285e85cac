"""Exceptions raised by twistlab.

Every error that the CLI maps to exit code 2 derives from ``InvalidInput``;
budget exhaustion (exit code 3) derives from ``BudgetExceeded``.
"""


class TwistlabError(Exception):
    pass


class InvalidInput(TwistlabError, ValueError):
    pass


class ZeroVector(InvalidInput):
    pass


class NonPrimitive(InvalidInput):
    pass


class NotUnimodular(InvalidInput):
    pass


class SameCurve(InvalidInput):
    pass


class DuplicateCurve(InvalidInput):
    pass


class TooManyCurves(InvalidInput):
    pass


class MixedPowers(InvalidInput):
    pass


class BadPair(InvalidInput):
    pass


class BadIndex(InvalidInput, IndexError):
    pass


class NotMultipleOfFour(InvalidInput):
    pass


class BudgetExceeded(TwistlabError):
    pass
