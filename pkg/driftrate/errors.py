# -*- coding: utf-8 -*-

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_HYPOTHESIS = 2
EXIT_VERIFICATION = 3


class DriftRateError(Exception):
    """Base class for errors raised by **driftrate**."""
    exit_code = EXIT_INPUT


class DomainError(DriftRateError, ValueError):
    """A parameter lies outside the precondition of a formula."""


class RangeError(DriftRateError, ValueError):
    """An exponent or rate lies outside its admissible range."""


class NonFiniteError(DriftRateError, ArithmeticError):
    """A field or trajectory produced a non-finite value."""


class HypothesisError(DriftRateError):
    """A drift/contraction hypothesis needed for a bound does not hold."""
    exit_code = EXIT_HYPOTHESIS


class VerificationError(DriftRateError):
    """A Monte Carlo check of a bound failed."""
    exit_code = EXIT_VERIFICATION
