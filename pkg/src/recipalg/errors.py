"""Exception types shared across the package."""


class RecipAlgError(Exception):
    """Base class for all package errors."""


class NotPrime(RecipAlgError):
    pass


class ReducibleModulus(RecipAlgError):
    pass


class DivisionByZero(RecipAlgError):
    pass


class NonInvertible(RecipAlgError):
    """Inversion of a non-unit; signals a reducible modulus in field mode."""


class InfiniteField(RecipAlgError):
    pass


class DenominatorVanishes(RecipAlgError):
    """Evaluation point hit a denominator zero; callers resample."""


class NonAdditive(RecipAlgError):
    """A polynomial has a term at an exponent that is not a power of q."""

    def __init__(self, exponent, coefficient):
        self.exponent = exponent
        self.coefficient = coefficient
        super().__init__(f"non-additive term at exponent {exponent}")


class EngineDisagreement(RecipAlgError):
    """Probabilistic rank trials kept disagreeing after escalation."""


class NotSubmodule(RecipAlgError):
    pass


class NotFree(RecipAlgError):
    pass


class NotLevelStructure(RecipAlgError):
    pass


class UnknownIdentity(RecipAlgError):
    pass


class ConfigError(RecipAlgError):
    """Bad CLI / run configuration (exit code 3)."""
