"""
timed-rv

Online runtime verification of timed event streams against bounded temporal
logic. Formulas are translated to monadic difference logic, quotiented by each
observed timed state and decided with difference decision diagrams.
"""

__version__ = "1.0.0"
__author__ = "Ari Munandar"
__email__ = "arimunandar.dev@gmail.com"

# Core exports
from .core.btl import BtlFormula
from .core.mdl import MdlFormula
from .core.models import RunPrefix, TimedState, VerdictRecord, VerdictStatus
from .core.monitor import Monitor, compute_et, compute_ett, compute_eut
from .core.parser import parse_btl
from .core.props import PropTable
from .core.quotient import quotient_step
from .core.translate import translate, translate_positive

# Decision backends
from .backends import DddBackend, DecisionBackend, OracleBackend, get_backend
from .ddd import DddManager

from .exceptions import TimedRVError

__all__ = [
    # Core
    "BtlFormula",
    "MdlFormula",
    "RunPrefix",
    "TimedState",
    "VerdictRecord",
    "VerdictStatus",
    "Monitor",
    "PropTable",
    "compute_et",
    "compute_ett",
    "compute_eut",
    "parse_btl",
    "quotient_step",
    "translate",
    "translate_positive",
    # Decision backends
    "DecisionBackend",
    "DddBackend",
    "OracleBackend",
    "DddManager",
    "get_backend",
    "TimedRVError",
]
