"""
Exception hierarchy for timed-rv
"""

from typing import Optional


class TimedRVError(Exception):
    """Base class for all timed-rv errors"""


class FormulaError(TimedRVError, ValueError):
    """A BTL formula could not be built or parsed"""


class BtlSyntaxError(FormulaError):
    """Formula text does not conform to the BTL grammar"""

    def __init__(
        self,
        message: str,
        position: int = 0,
        line: Optional[int] = None,
        column: Optional[int] = None,
    ):
        super().__init__(message)
        self.position = position
        self.line = line
        self.column = column


class NegativeConstantError(FormulaError):
    """A temporal bound is negative"""


class EmptyWindowError(FormulaError):
    """between[c,d] with c > d"""


class PropositionClashError(FormulaError):
    """A canonical name p<n> collides with an already allocated alias"""


class RationalOverflowError(TimedRVError, ArithmeticError):
    """A rational left the signed 64-bit range"""


class MdlError(TimedRVError, ValueError):
    """An MDL formula is unsuitable for the requested operation"""


class PredicateError(MdlError):
    """A monadic predicate reached a predicate-free procedure"""


class FreeVariableError(MdlError):
    """A decision was requested on a formula with free variables other than z"""


class UnhousedError(MdlError):
    """A valuation or predicate-set vector lacks an entry"""


class QuotientError(TimedRVError, ValueError):
    """Quotienting was asked to go backwards or stand still in time"""


class RunError(TimedRVError, ValueError):
    """A run prefix would not start at 0 or would not strictly advance"""


class MonitorError(TimedRVError):
    """Base class for monitor loop errors"""


class VerdictReachedError(MonitorError):
    """The monitor was fed after a terminal verdict"""


class NonMonotoneTimeError(MonitorError, ValueError):
    """A timed state did not advance the monitor clock"""


class FormulaTooLargeError(MonitorError):
    """The monitored formula nests too deeply to decide"""


class TraceError(TimedRVError, ValueError):
    """A trace line could not be read"""

    def __init__(self, message: str, line_number: Optional[int] = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number
