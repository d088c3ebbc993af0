"""Exception types shared across the package."""


class DivisionByZero(ZeroDivisionError):
    """Division by an exact zero."""


class PoleAtOne(ArithmeticError):
    """A rational function has a pole at q = 1."""


class PrecisionLoss(ArithmeticError):
    """Not enough p-adic precision left to certify a result."""


class NotPAdicInteger(ValueError):
    """An exponent has p in its denominator."""


class DegenerateEquation(ArithmeticError):
    """The leading coefficient of a recurrence step vanishes."""


class NotInvertible(ValueError):
    """A residue is not a unit modulo the character modulus."""
