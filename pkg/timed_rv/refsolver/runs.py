"""
Three-valued evaluation of bounded temporal formulas on finite run prefixes
"""

from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, Tuple

from ..core import btl
from ..core.intervals import IntervalUnion
from ..core.models import RunPrefix

FULL = IntervalUnion.full()


class ThreeValued(Enum):
    """Kleene truth values"""

    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, value: bool) -> "ThreeValued":
        return cls.TRUE if value else cls.FALSE

    @property
    def decisive(self) -> bool:
        return self is not ThreeValued.UNKNOWN

    def __invert__(self) -> "ThreeValued":
        if self is ThreeValued.TRUE:
            return ThreeValued.FALSE
        if self is ThreeValued.FALSE:
            return ThreeValued.TRUE
        return self

    def __and__(self, other: "ThreeValued") -> "ThreeValued":
        if ThreeValued.FALSE in (self, other):
            return ThreeValued.FALSE
        if ThreeValued.UNKNOWN in (self, other):
            return ThreeValued.UNKNOWN
        return ThreeValued.TRUE

    def __or__(self, other: "ThreeValued") -> "ThreeValued":
        return ~(~self & ~other)


def monadic_sets(
    prefix: RunPrefix, horizon: Fraction, preds: Iterable[int] = ()
) -> Dict[int, IntervalUnion]:
    """S_j: the times in [0, horizon] at which p_j holds.

    Every proposition of the prefix gets an entry, as does every index in
    ``preds``. The last state persists up to and including the horizon.
    """
    if not len(prefix):
        raise ValueError("monadic sets of an empty prefix")
    if horizon < prefix.last.time:
        raise ValueError(
            f"horizon {horizon} precedes the last event {prefix.last.time}"
        )
    indices = set(preds)
    for event in prefix:
        indices |= event.state
    pieces: Dict[int, list] = {j: [] for j in indices}
    for prev, nxt in prefix.pairs():
        for j in prev.state:
            pieces[j].append(IntervalUnion.half_open(prev.time, nxt.time))
    for j in prefix.last.state:
        pieces[j].append(IntervalUnion.closed(prefix.last.time, horizon))
    sets = {}
    for j, parts in pieces.items():
        result = IntervalUnion.empty()
        for part in parts:
            result = result | part
        sets[j] = result
    return sets


TruthSets = Tuple[IntervalUnion, IntervalUnion]


def truth_sets(prefix: RunPrefix, horizon: Fraction, psi: btl.BtlFormula) -> TruthSets:
    """Times at which psi is known true and known false.

    The run is known on [0, horizon] and unknown after it.
    """
    known = IntervalUnion.closed(Fraction(0), horizon)
    sets = monadic_sets(prefix, horizon, psi.props())
    return _truth(psi, sets, known)


def _truth(
    psi: btl.BtlFormula, sets: Dict[int, IntervalUnion], known: IntervalUnion
) -> TruthSets:
    if isinstance(psi, btl.Prop):
        holds = sets[psi.index] & known
        return holds, known - holds
    if isinstance(psi, btl.Not):
        t, f = _truth(psi.arg, sets, known)
        return f, t
    if isinstance(psi, (btl.And, btl.Or, btl.Implies, btl.Iff)):
        t1, f1 = _truth(psi.left, sets, known)
        t2, f2 = _truth(psi.right, sets, known)
        if isinstance(psi, btl.And):
            return t1 & t2, f1 | f2
        if isinstance(psi, btl.Or):
            return t1 | t2, f1 & f2
        if isinstance(psi, btl.Implies):
            return f1 | t2, t1 & f2
        return (t1 & t2) | (f1 & f2), (t1 & f2) | (f1 & t2)
    if isinstance(psi, btl.Always):
        t, f = _truth(psi.arg, sets, known)
        return _all_within(t, psi.bound), f.window_exists(Fraction(0), psi.bound)
    if isinstance(psi, btl.AlwaysUnbounded):
        t, f = _truth(psi.arg, sets, known)
        return _all_within(t, None), f.window_exists(Fraction(0), None)
    if isinstance(psi, btl.Eventually):
        return _some_within(psi.arg, sets, known, Fraction(0), psi.bound)
    if isinstance(psi, btl.After):
        return _some_within(psi.arg, sets, known, psi.bound, None)
    if isinstance(psi, btl.Between):
        return _some_within(psi.arg, sets, known, psi.lower, psi.upper)
    if isinstance(psi, btl.UntilExact):
        t1, f1 = _truth(psi.left, sets, known)
        t2, f2 = _truth(psi.right, sets, known)
        c = psi.bound
        hold_true = FULL - (FULL - t1).window_exists(Fraction(0), c, True, False)
        hold_false = f1.window_exists(Fraction(0), c, True, False)
        return (
            hold_true & t2.window_exists(c, c),
            hold_false | f2.window_exists(c, c),
        )
    if isinstance(psi, btl.Until):
        t1, f1 = _truth(psi.left, sets, known)
        t2, f2 = _truth(psi.right, sets, known)
        maybe = (FULL - f1).until_exists(FULL - f2)
        return t1.until_exists(t2), FULL - maybe
    raise TypeError(f"not a BTL formula: {psi!r}")


def _all_within(true: IntervalUnion, upper) -> IntervalUnion:
    return FULL - (FULL - true).window_exists(Fraction(0), upper)


def _some_within(
    arg: btl.BtlFormula,
    sets: Dict[int, IntervalUnion],
    known: IntervalUnion,
    lower: Fraction,
    upper,
) -> TruthSets:
    t, f = _truth(arg, sets, known)
    return t.window_exists(lower, upper), FULL - (FULL - f).window_exists(lower, upper)


def eval_btl(
    prefix: RunPrefix, horizon: Fraction, u: Fraction, psi: btl.BtlFormula
) -> ThreeValued:
    """Value of psi at time u, or UNKNOWN when the prefix does not settle it"""
    if u > horizon:
        raise ValueError(f"time {u} lies beyond the horizon {horizon}")
    true, false = truth_sets(prefix, horizon, psi)
    if u in true:
        return ThreeValued.TRUE
    if u in false:
        return ThreeValued.FALSE
    return ThreeValued.UNKNOWN
