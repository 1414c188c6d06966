"""Exception hierarchy.

Every error carries a stable ``code`` (the class name) and the CLI exit code
for the category it belongs to.
"""

from __future__ import annotations

EXIT_CONFIG = 2
EXIT_CONSTRUCTION = 3
EXIT_VERIFICATION = 4
EXIT_BUDGET = 5


class LrcError(Exception):
    exit_code = EXIT_CONFIG

    @property
    def code(self) -> str:
        return type(self).__name__


# field arithmetic
class NotPrime(LrcError):
    pass


class ReducibleModulus(LrcError):
    pass


class DegreeMismatch(LrcError):
    pass


class DivisionByZero(LrcError, ZeroDivisionError):
    pass


class ContextMismatch(LrcError):
    pass


# series
class NotInvertible(LrcError):
    pass


class NoContraction(LrcError):
    exit_code = EXIT_CONSTRUCTION


# curves
class PlaceAtInfinity(LrcError):
    pass


class NonRationalPlace(LrcError):
    pass


class UnsupportedBackend(LrcError):
    pass


class Exhausted(LrcError):
    exit_code = EXIT_CONSTRUCTION


class PrecisionExhausted(LrcError):
    exit_code = EXIT_CONSTRUCTION


# builder
class RankDeficient(LrcError):
    exit_code = EXIT_CONSTRUCTION


class InsufficientPrecision(LrcError):
    exit_code = EXIT_CONSTRUCTION


class PoleBoundViolated(LrcError):
    exit_code = EXIT_CONSTRUCTION


class NotEnoughPlaces(LrcError):
    exit_code = EXIT_CONSTRUCTION


class AlphaInvalid(LrcError):
    exit_code = EXIT_CONSTRUCTION


class FieldTooSmall(LrcError):
    exit_code = EXIT_CONSTRUCTION


class BadLocalityParity(LrcError):
    exit_code = EXIT_CONSTRUCTION


class NotEnoughIrreducibles(LrcError):
    exit_code = EXIT_CONSTRUCTION


# codec
class BudgetExceeded(LrcError):
    exit_code = EXIT_BUDGET


class NotInAnyGroup(LrcError):
    exit_code = EXIT_VERIFICATION


class MultipleErasures(LrcError):
    pass


class InconsistentWord(LrcError):
    exit_code = EXIT_VERIFICATION


class DistanceUnknown(LrcError):
    exit_code = EXIT_BUDGET


# bounds
class DomainError(LrcError, ValueError):
    pass


class NotASquare(LrcError, ValueError):
    pass


class NotOddPower(LrcError, ValueError):
    pass


class NoEvenDivisor(LrcError):
    pass


class BadParams(LrcError, ValueError):
    pass
