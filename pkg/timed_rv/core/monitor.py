"""
Online monitor loop with optional timer injection
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import (
    TYPE_CHECKING,
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Optional,
    Tuple,
    Union,
)

from ..exceptions import (
    FormulaTooLargeError,
    NonMonotoneTimeError,
    VerdictReachedError,
)
from . import mdl
from .btl import BtlFormula
from .intervals import IntervalUnion
from .models import TimedState, VerdictRecord, VerdictSource, VerdictStatus
from .progression import Progression, clip, predicate_reach
from .quotient import quotient_step, windowed
from .translate import translate_positive

if TYPE_CHECKING:
    from ..backends.base import DecisionBackend

logger = logging.getLogger(__name__)

# A time or math.inf when no such time exists.
TimePoint = Union[Fraction, float]


def _default_backend() -> "DecisionBackend":
    from ..backends.ddd import DddBackend

    return DddBackend()


def substitutions(phi: mdl.MdlFormula) -> Tuple[mdl.MdlFormula, mdl.MdlFormula]:
    """(phi with every literal predicate at 0, and at 1)"""
    return mdl.literal_substitute(phi, False), mdl.literal_substitute(phi, True)


def _candidates(phi: mdl.MdlFormula, t: Fraction) -> List[Fraction]:
    """Times from t worth testing: t shifted by sums and differences of constants"""
    constants = set(mdl.constants(phi)) | {Fraction(0)}
    horizon = t + 2 * max(abs(c) for c in constants)
    points = {t}
    for a in constants:
        for b in constants:
            for base in (Fraction(0), t):
                points.update((base + a, base + a + b, base + a - b))
    ordered = sorted(p for p in points if t <= p <= horizon)
    midpoints = [(lo + hi) / 2 for lo, hi in zip(ordered, ordered[1:])]
    return sorted(set(ordered) | set(midpoints))


def _earliest(
    phi: mdl.MdlFormula,
    state: FrozenSet[int],
    t: Fraction,
    backend: "DecisionBackend",
    tautology: bool,
) -> TimePoint:
    here = TimedState(state, t)
    for candidate in _candidates(phi, t):
        if candidate == t:
            quotient = phi
        else:
            quotient = quotient_step(phi, here, TimedState(state, candidate))
        low, high = substitutions(quotient)
        if tautology and backend.is_tautology(low):
            return candidate
        if not tautology and backend.is_unsatisfiable(high):
            return candidate
    return math.inf


def compute_ett(
    phi: mdl.MdlFormula,
    state: Iterable[int],
    t: Fraction,
    backend: Optional["DecisionBackend"] = None,
) -> TimePoint:
    """Earliest time from t at which phi becomes a tautology if s persists.

    Best effort: only a finite candidate grid is searched.
    """
    return _earliest(phi, frozenset(state), t, backend or _default_backend(), True)


def compute_eut(
    phi: mdl.MdlFormula,
    state: Iterable[int],
    t: Fraction,
    backend: Optional["DecisionBackend"] = None,
) -> TimePoint:
    """Earliest time from t at which phi becomes unsatisfiable if s persists"""
    return _earliest(phi, frozenset(state), t, backend or _default_backend(), False)


def compute_et(
    phi: mdl.MdlFormula,
    state: Iterable[int],
    t: Fraction,
    backend: Optional["DecisionBackend"] = None,
) -> TimePoint:
    backend = backend or _default_backend()
    return min(
        compute_ett(phi, state, t, backend), compute_eut(phi, state, t, backend)
    )


@dataclass
class MonitorState:
    """Current formula, last observed state and the verdict so far"""

    phi: mdl.MdlFormula
    state: FrozenSet[int]
    time: Fraction
    verdict: VerdictRecord
    literals: mdl.LiteralIndex

    @property
    def timed_state(self) -> TimedState:
        return TimedState(self.state, self.time)


class Monitor:
    """Checks a timed run against a formula, one timed state at a time.

    The formula is kept in positive form and quotiented by every observed
    pair of states. After each step its 0- and 1-substitutions are handed to
    the decision backend: a tautology means fulfilled, unsatisfiability
    means failed.

    The quotient is not built by stacking substitutions. The monitor keeps
    the region where each proposition held so far and rewrites the positive
    form against it, which gives the same formula as quotienting by every
    pair. Regions are clipped to where the formula can still read them and
    top-level quantifiers are settled once their past is decided, so the
    formula stays bounded on long runs of a bounded-lookahead property.
    """

    def __init__(
        self,
        psi: BtlFormula,
        initial: Iterable[int] = (),
        backend: Optional["DecisionBackend"] = None,
        max_timer_injections: int = 16,
    ):
        self.psi = psi
        self.backend = backend or _default_backend()
        self.max_timer_injections = max_timer_injections
        self.formula = translate_positive(psi)
        self.progression = Progression(self.formula)
        s0 = frozenset(initial)
        self._preds = mdl.predicates(self.formula)
        self.known: Dict[int, IntervalUnion] = {
            j: IntervalUnion.point(Fraction(0)) for j in s0 & self._preds
        }
        self.history: List[VerdictRecord] = []
        self.state = MonitorState(
            phi=mdl.TRUE,
            state=s0,
            time=Fraction(0),
            verdict=VerdictRecord(
                VerdictStatus.UNDETERMINED, Fraction(0), VerdictSource.INITIAL
            ),
            literals=mdl.LiteralIndex.of(self.formula),
        )
        self._step(VerdictSource.INITIAL)

    @property
    def verdict(self) -> VerdictRecord:
        return self.state.verdict

    @property
    def phi(self) -> mdl.MdlFormula:
        return self.state.phi

    def _decide(self, source: VerdictSource) -> VerdictRecord:
        low, high = substitutions(self.state.phi)
        if self.backend.is_tautology(low):
            status = VerdictStatus.FULFILLED
        elif self.backend.is_unsatisfiable(high):
            status = VerdictStatus.FAILED
        else:
            status = VerdictStatus.UNDETERMINED
        record = VerdictRecord(status, self.state.time, source)
        self.state.verdict = record
        self.history.append(record)
        if record.is_terminal:
            logger.info(
                "verdict %s at %s (%s)", status.value, record.time, source.value
            )
        else:
            logger.debug("undetermined at %s (%s)", record.time, source.value)
        return record

    def _advance(self, nxt: TimedState, source: VerdictSource) -> VerdictRecord:
        if self.state.verdict.is_terminal:
            raise VerdictReachedError(
                f"monitor already {self.state.verdict.status.value} "
                f"at {self.state.verdict.time}"
            )
        if nxt.time <= self.state.time:
            raise NonMonotoneTimeError(
                f"time {nxt.time} does not follow {self.state.time}"
            )
        span = IntervalUnion.half_open(self.state.time, nxt.time)
        at = IntervalUnion.point(nxt.time)
        for j in self._preds:
            region = self.known.get(j, IntervalUnion.empty())
            if j in self.state.state:
                region = region | span
            if nxt.holds(j):
                region = region | at
            if not region.is_empty():
                self.known[j] = region
        self.state.state = nxt.state
        self.state.time = nxt.time
        return self._step(source)

    def _settle(self) -> None:
        """Settle every top-level quantifier whose observed part is decided"""
        t = self.state.time
        known = clip(self.known, predicate_reach(self.progression.current()))
        for index, piece, bound in self.progression.slices(t):
            view = windowed(piece, known, t)
            if isinstance(piece, mdl.Forall):
                decided = self.backend.is_tautology(mdl.literal_substitute(view, False))
            else:
                decided = self.backend.is_unsatisfiable(
                    mdl.literal_substitute(view, True)
                )
            if decided:
                self.progression.settle(index, bound)

    def _step(self, source: VerdictSource) -> VerdictRecord:
        """Rebuild the quotient for the current time and decide it"""
        try:
            self._settle()
            current = self.progression.current()
            self.known = clip(self.known, predicate_reach(current))
            self.state.phi = windowed(current, self.known, self.state.time)
            return self._decide(source)
        except RecursionError as e:
            raise FormulaTooLargeError(
                f"formula at {self.state.time} is too deep to decide"
            ) from e

    def feed(self, nxt: TimedState) -> VerdictRecord:
        """Quotient by the step to ``nxt`` and decide"""
        return self._advance(nxt, VerdictSource.EVENT)

    def next_timer(self) -> TimePoint:
        """min(ETT, EUT) from the current state"""
        try:
            return compute_et(
                self.state.phi, self.state.state, self.state.time, self.backend
            )
        except RecursionError as e:
            raise FormulaTooLargeError(
                f"formula at {self.state.time} is too deep to time"
            ) from e

    def _inject_until(self, deadline: TimePoint) -> Optional[VerdictRecord]:
        """Inject timer states strictly before ``deadline`` while they help"""
        for _ in range(self.max_timer_injections):
            if self.state.verdict.is_terminal:
                break
            expiry = self.next_timer()
            if expiry == math.inf or expiry >= deadline:
                break
            if expiry <= self.state.time:
                break
            logger.debug("timer expires at %s", expiry)
            self._advance(
                TimedState(self.state.state, Fraction(expiry)), VerdictSource.TIMER
            )
        return self.state.verdict if self.state.verdict.is_terminal else None

    def feed_timed(self, nxt: TimedState) -> VerdictRecord:
        """Like ``feed``, but first fire any timer expiring before ``nxt``"""
        if self.state.verdict.is_terminal:
            raise VerdictReachedError(
                f"monitor already {self.state.verdict.status.value} "
                f"at {self.state.verdict.time}"
            )
        if nxt.time <= self.state.time:
            raise NonMonotoneTimeError(
                f"time {nxt.time} does not follow {self.state.time}"
            )
        decided = self._inject_until(nxt.time)
        if decided is not None:
            return decided
        return self.feed(nxt)

    def expire(self) -> VerdictRecord:
        """Fire timers with no further events in sight"""
        self._inject_until(math.inf)
        return self.state.verdict

    def run(
        self, states: Iterable[TimedState], timer: bool = False
    ) -> Iterator[VerdictRecord]:
        """Feed states in order and yield every verdict record, initial one first.

        Each record is yielded before the next state is pulled, and nothing is
        pulled after a terminal verdict. With ``timer`` set, timers fire
        between events and once more after the last one.
        """
        yield from self.drain()
        if self.state.verdict.is_terminal:
            return
        for nxt in states:
            if timer:
                self.feed_timed(nxt)
            else:
                self.feed(nxt)
            yield from self.drain()
            if self.state.verdict.is_terminal:
                return
        if timer:
            self.expire()
            yield from self.drain()

    def drain(self) -> Iterator[VerdictRecord]:
        """Yield the records not handed out yet, and forget them"""
        records, self.history = self.history, []
        yield from records

    def diagrams(self) -> Tuple[str, str]:
        """Backend renderings of the current 0- and 1-substitutions"""
        low, high = substitutions(self.state.phi)
        return self.backend.dump(low), self.backend.dump(high)
