"""
Line-oriented JSON trace reader
"""

import json
import logging
from typing import Iterable, Iterator, Optional

from pydantic import ValidationError

from ..core.models import TimedState
from ..core.props import PropTable
from ..exceptions import FormulaError, TraceError
from .models import TraceEvent

logger = logging.getLogger(__name__)


def parse_event(line: str, line_number: Optional[int] = None) -> TraceEvent:
    """Parse one JSON line such as {"t": "7/2", "props": ["p1"]}"""
    try:
        data = json.loads(line)
    except json.JSONDecodeError as e:
        raise TraceError(f"malformed JSON: {e.msg}", line_number) from e
    try:
        return TraceEvent.model_validate(data)
    except ValidationError as e:
        errors = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or 'line'}: {err['msg']}"
            for err in e.errors()
        )
        raise TraceError(f"invalid trace event ({errors})", line_number) from e


def read_trace(
    lines: Iterable[str], props: Optional[PropTable] = None
) -> Iterator[TimedState]:
    """Yield timed states from JSON lines, checking that time starts at 0 and
    strictly increases. Blank lines are skipped.
    """
    if props is None:
        props = PropTable()
    previous = None
    for line_number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        event = parse_event(line, line_number)
        if previous is None and event.t != 0:
            raise TraceError(f"a trace starts at time 0, got {event.t}", line_number)
        if previous is not None and event.t <= previous:
            raise TraceError(
                f"timestamp {event.t} does not follow {previous}", line_number
            )
        try:
            state = event.to_timed_state(props)
        except FormulaError as e:
            raise TraceError(str(e), line_number) from e
        logger.debug("line %d: %s at %s", line_number, sorted(state.state), state.time)
        previous = event.t
        yield state
