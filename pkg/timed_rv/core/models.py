"""
Core data models for timed runs and monitor verdicts
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import FrozenSet, Iterable, Iterator, List, Tuple

from ..exceptions import RunError
from .rational import check_rational, format_rational, parse_rational


@dataclass(frozen=True)
class TimedState:
    """A set of propositions holding from ``time`` until the next event"""

    state: FrozenSet[int]
    time: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "state", frozenset(self.state))
        object.__setattr__(self, "time", check_rational(Fraction(self.time)))
        if self.time < 0:
            raise ValueError(f"timestamps must be non-negative, got {self.time}")

    def holds(self, prop: int) -> bool:
        return prop in self.state


@dataclass
class RunPrefix:
    """Finite prefix of a timed run: first time 0, strictly increasing times"""

    events: List[TimedState] = field(default_factory=list)

    def __post_init__(self) -> None:
        events, self.events = list(self.events), []
        for event in events:
            self.extend(event)

    @classmethod
    def of(cls, *pairs: Tuple[Iterable[int], object]) -> "RunPrefix":
        """Build from (state, time) pairs; times may be ints, Fractions or strings"""
        return cls([TimedState(frozenset(s), parse_rational(t)) for s, t in pairs])

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[TimedState]:
        return iter(self.events)

    def __getitem__(self, index: int) -> TimedState:
        return self.events[index]

    @property
    def last(self) -> TimedState:
        return self.events[-1]

    def extend(self, event: TimedState) -> None:
        """Append an event, keeping the prefix well formed"""
        if not self.events:
            if event.time != 0:
                raise RunError(f"a run starts at time 0, got {event.time}")
        elif event.time <= self.events[-1].time:
            raise RunError(
                f"time {event.time} does not follow {self.events[-1].time}"
            )
        self.events.append(event)

    def pairs(self) -> Iterator[Tuple[TimedState, TimedState]]:
        return zip(self.events, self.events[1:])

    def state_at(self, u: Fraction) -> TimedState:
        """The event in force at time u: the last one with time <= u.

        Beyond the last event the last state persists.
        """
        if u < 0:
            raise ValueError(f"no state before time 0 (asked for {u})")
        current = self.events[0]
        for event in self.events[1:]:
            if event.time > u:
                break
            current = event
        return current


class VerdictStatus(Enum):
    """Status of a monitored formula"""

    UNDETERMINED = "undetermined"
    FULFILLED = "fulfilled"
    FAILED = "failed"


class VerdictSource(Enum):
    """What produced a verdict"""

    INITIAL = "initial"
    EVENT = "event"
    TIMER = "timer"


@dataclass(frozen=True)
class VerdictRecord:
    """Verdict after one monitor step"""

    status: VerdictStatus
    time: Fraction
    source: VerdictSource

    @property
    def is_terminal(self) -> bool:
        return self.status is not VerdictStatus.UNDETERMINED

    def to_dict(self) -> dict:
        """Convert to dictionary for serialization"""
        return {
            "t": format_rational(self.time),
            "verdict": self.status.value,
            "source": self.source.value,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "VerdictRecord":
        """Create from dictionary"""
        return cls(
            status=VerdictStatus(data["verdict"]),
            time=parse_rational(data["t"]),
            source=VerdictSource(data["source"]),
        )
