"""Exception hierarchy shared by every module of the package."""


class ScatteredLabError(Exception):
    """Base class for all errors raised by scattered_lab."""


class DivisionByZero(ScatteredLabError, ZeroDivisionError):
    pass


class NotInSubfield(ScatteredLabError, ValueError):
    pass


class BadCharacteristic(ScatteredLabError, ValueError):
    pass


class OddCharRequired(BadCharacteristic):
    pass


class EvenCharRequired(BadCharacteristic):
    pass


class BadSubfieldIndex(ScatteredLabError, ValueError):
    pass


class ZeroLeadingCoefficient(ScatteredLabError, ValueError):
    pass


class IndexOutOfRange(ScatteredLabError, IndexError):
    pass


class BadIndex(ScatteredLabError, IndexError):
    pass


class InvalidFieldSpec(ScatteredLabError, ValueError):
    pass


class NotPrimePower(ScatteredLabError, ValueError):
    pass


class EnumerationTooLarge(ScatteredLabError, ValueError):
    pass


class TooLargeForExhaustive(EnumerationTooLarge):
    pass


class NonSubspaceKernel(ScatteredLabError, ArithmeticError):
    """A zero set that should be an F_q-subspace has non-q-power size."""


class ZeroB(ScatteredLabError, ValueError):
    pass


class ZeroInput(ScatteredLabError, ValueError):
    pass


class NormOne(ScatteredLabError, ValueError):
    pass


class PreconditionUnmet(ScatteredLabError, ValueError):
    pass


class ConstraintViolated(ScatteredLabError, ValueError):
    pass


class NotClosed(ScatteredLabError, ArithmeticError):
    pass


class OracleDisagreement(ScatteredLabError, ArithmeticError):
    """Closed-form verdict and brute-force verdict differ for some ``b``."""

    def __init__(self, b, closed_form, oracle):
        self.b = b
        self.closed_form = closed_form
        self.oracle = oracle
        super().__init__(
            f"oracle disagreement at b={list(b.coeffs)}: "
            f"closed form says {closed_form}, brute force says {oracle}"
        )
