"""Exception hierarchy shared by the evaluators, the oracle and the CLI."""


class SmallWError(Exception):
    """Base class for every error raised by this package."""


class InvalidArgument(SmallWError, ValueError):
    """Non-finite or otherwise malformed input."""


class OutOfRange(SmallWError, ValueError):
    """Input outside the range a routine is certified for."""


class DivisionHazard(SmallWError, ValueError):
    """A formula with a 1/x or 1/x**3 factor was called at x <= 0."""


class OutOfDomain(SmallWError, ValueError):
    """The automatic scheme has no certified method for this point.

    Raised for 1e-6 < y with |z| <= 15, a region this package deliberately
    leaves to other algorithms.
    """


class DegenerateEvaluation(SmallWError, ArithmeticError):
    """A continued-fraction denominator vanished."""


class PrecisionExhausted(SmallWError, ArithmeticError):
    """The reference evaluator could not reach the requested digits."""
