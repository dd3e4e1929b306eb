"""
Trace and verdict wire formats
"""

from .models import (
    CheckReport,
    ExplainReport,
    MonitorConfig,
    TimerReport,
    TraceEvent,
    VerdictEvent,
    format_time,
)
from .reader import parse_event, read_trace

__all__ = [
    "CheckReport",
    "ExplainReport",
    "MonitorConfig",
    "TimerReport",
    "TraceEvent",
    "VerdictEvent",
    "format_time",
    "parse_event",
    "read_trace",
]
