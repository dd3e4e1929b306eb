"""
Core formula, run and monitor functionality
"""

from .btl import BtlFormula, format_btl
from .intervals import Interval, IntervalUnion
from .mdl import LiteralIndex, MdlFormula, format_mdl, literal_substitute
from .models import (
    RunPrefix,
    TimedState,
    VerdictRecord,
    VerdictSource,
    VerdictStatus,
)
from .monitor import Monitor, MonitorState, compute_et, compute_ett, compute_eut
from .parser import parse_btl
from .progression import Progression
from .props import PropTable
from .quotient import (
    QuotientCase,
    anchor_initial,
    quotient_prefix,
    quotient_step,
    windowed,
)
from .rational import format_rational, parse_rational
from .translate import translate, translate_positive

__all__ = [
    "BtlFormula",
    "MdlFormula",
    "LiteralIndex",
    "Interval",
    "IntervalUnion",
    "RunPrefix",
    "TimedState",
    "VerdictRecord",
    "VerdictSource",
    "VerdictStatus",
    "Monitor",
    "MonitorState",
    "Progression",
    "PropTable",
    "QuotientCase",
    "anchor_initial",
    "compute_et",
    "compute_ett",
    "compute_eut",
    "format_btl",
    "format_mdl",
    "format_rational",
    "literal_substitute",
    "parse_btl",
    "parse_rational",
    "quotient_prefix",
    "quotient_step",
    "translate",
    "translate_positive",
    "windowed",
]
