"""Exception types raised across the package."""


class PetraceError(Exception):
    """Base class for all errors raised by petrace."""


class RingMismatchError(PetraceError, TypeError):
    """Operands live over different coefficient rings."""


class TruncationError(PetraceError, IndexError):
    """A coefficient at or beyond the known truncation was requested."""


class NotAUnitError(PetraceError, ArithmeticError):
    """Inversion of a zero / non-unit element or series."""


class PreconditionError(PetraceError, ValueError):
    """An operation's input precondition does not hold."""


class DivisorError(PetraceError, ValueError):
    """Malformed divisor, or lifts that do not satisfy the required sum condition."""
