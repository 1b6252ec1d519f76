"""Exposes the exceptions raised by tfkit.

Validation problems subclass `ValueError` and numerical failures subclass
`ArithmeticError`, so callers that only care about the broad category can
catch the builtin.
"""


class TfkitError(Exception):
    """Base class of all errors raised by tfkit"""


class InvalidSignalError(TfkitError, ValueError):
    """A signal violates a precondition e.g. odd length or non-finite samples"""


class UnknownKernelError(TfkitError, ValueError):
    """A kernel name or its parameters are not recognised"""


class NonMarginalKernelError(TfkitError, ValueError):
    """A relation that needs both marginals was given a non-marginal distribution"""


class NotSymplecticError(TfkitError, ValueError):
    """A matrix does not satisfy S^T J S = J"""


class FormatError(TfkitError, ValueError):
    """A file is malformed or written in an unsupported version"""


class NumericalError(TfkitError, ArithmeticError):
    """A computation produced a value it cannot work with e.g. a non-positive mass"""


class SupportOverflowError(NumericalError):
    """A signal action pushed too much energy off the sampled grid"""
