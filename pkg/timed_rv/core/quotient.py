"""
Quotienting of monadic difference formulas over observed timed states
"""

import logging
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import AbstractSet, Mapping

from ..exceptions import QuotientError
from . import mdl
from .bounds import ZERO_VAR
from .intervals import Interval, IntervalUnion
from .models import RunPrefix, TimedState

logger = logging.getLogger(__name__)


class QuotientCase(Enum):
    """Which of the four substitutions applies, by p in s and p in s'"""

    ABSENT = "I"
    RISING = "II"
    FALLING = "III"
    PRESENT = "IV"

    @classmethod
    def select(cls, before: bool, after: bool) -> "QuotientCase":
        if before:
            return cls.PRESENT if after else cls.FALLING
        return cls.RISING if after else cls.ABSENT


def _equals(x: int, value: Fraction) -> mdl.MdlFormula:
    """x - z = value"""
    return mdl.And(mdl.diff(x, ZERO_VAR, value), mdl.diff(ZERO_VAR, x, -value))


@lru_cache(maxsize=4096)
def case_expression(
    case: QuotientCase,
    t: Fraction,
    t_next: Fraction,
    var: int,
    pred: int,
    negated: bool = False,
) -> mdl.MdlFormula:
    """Replacement for P_pred(var), or for its negation when ``negated``"""
    residual = mdl.And(
        mdl.diff(var, ZERO_VAR, t_next, refuted=True), mdl.PredAtom(pred, var)
    )
    if case is QuotientCase.ABSENT:
        expression = residual
    elif case is QuotientCase.RISING:
        expression = mdl.Or(_equals(var, t_next), residual)
    else:
        from_t = mdl.diff(ZERO_VAR, var, -t)
        to_next = mdl.diff(var, ZERO_VAR, t_next, strict=case is QuotientCase.FALLING)
        expression = mdl.Or(mdl.And(from_t, to_next), residual)
    if negated:
        return mdl.to_positive_form(mdl.Not(expression))
    return expression


def _substitute(
    phi: mdl.MdlFormula, prev: TimedState, nxt: TimedState
) -> mdl.MdlFormula:
    def leaf(node: mdl.MdlFormula) -> mdl.MdlFormula:
        if not isinstance(node, mdl.PredAtom):
            return node
        case = QuotientCase.select(prev.holds(node.pred), nxt.holds(node.pred))
        return case_expression(
            case, prev.time, nxt.time, node.var, node.pred, node.negated
        )

    return mdl.rebuild(phi, leaf)


def quotient_step(
    phi: mdl.MdlFormula, prev: TimedState, nxt: TimedState
) -> mdl.MdlFormula:
    """phi / (s,t)(s',t'): fold the interval [t, t'] of the run into phi"""
    if prev.time >= nxt.time:
        raise QuotientError(
            f"quotient needs increasing times, got {prev.time} then {nxt.time}"
        )
    logger.debug("quotient over [%s, %s]", prev.time, nxt.time)
    return _substitute(phi, prev, nxt)


def quotient_prefix(phi: mdl.MdlFormula, prefix: RunPrefix) -> mdl.MdlFormula:
    """Repeated quotient over every consecutive pair of the prefix"""
    if len(prefix) < 2:
        raise QuotientError("quotienting a prefix needs at least two timed states")
    for prev, nxt in prefix.pairs():
        phi = quotient_step(phi, prev, nxt)
    return phi


def window(var: int, interval: Interval) -> mdl.MdlFormula:
    """var - z inside ``interval``"""
    lower = mdl.diff(ZERO_VAR, var, -interval.lo, strict=not interval.lo_closed)
    if interval.hi is None:
        return lower
    upper = mdl.diff(var, ZERO_VAR, interval.hi, strict=not interval.hi_closed)
    return mdl.And(lower, upper)


def known_expression(var: int, region: IntervalUnion) -> mdl.MdlFormula:
    """var - z inside ``region``, as a balanced disjunction of windows"""
    return mdl.balanced_or([window(var, interval) for interval in region])


def windowed(
    phi: mdl.MdlFormula, known: Mapping[int, IntervalUnion], until: Fraction
) -> mdl.MdlFormula:
    """Split every P_j(x) at ``until``.

    P_j(x) becomes (x - z in known[j]) or (until < x - z and P_j(x)). For the
    regions a run prefix ending at ``until`` assigns, this equals quotienting
    by every pair of the prefix, but the depth no longer grows with it.
    """

    def leaf(node: mdl.MdlFormula) -> mdl.MdlFormula:
        if not isinstance(node, mdl.PredAtom):
            return node
        region = known.get(node.pred, IntervalUnion.empty())
        residual = mdl.And(
            mdl.diff(node.var, ZERO_VAR, until, refuted=True),
            mdl.PredAtom(node.pred, node.var),
        )
        expression = mdl.Or(known_expression(node.var, region), residual)
        if node.negated:
            expression = mdl.to_positive_form(mdl.Not(expression))
        return mdl.simplify(expression)

    return mdl.simplify(mdl.rebuild(phi, leaf))


def anchor_initial(phi: mdl.MdlFormula, initial: AbstractSet[int]) -> mdl.MdlFormula:
    """Fold in what is known at time 0: P(x) holds at x = z iff p is in s0.

    Each P_j(x) becomes (x - z = 0 and [p_j in s0]) or (0 < x - z and P_j(x)).
    """
    zero = Fraction(0)
    return windowed(phi, {j: IntervalUnion.point(zero) for j in initial}, zero)


def consistent_with(
    prev: TimedState, nxt: TimedState, region: IntervalUnion, pred: int
) -> bool:
    """Whether the pair (s,t)(s',t') agrees with ``region`` as the set of P_pred"""
    if prev.time >= nxt.time:
        raise QuotientError(
            f"consistency needs increasing times, got {prev.time} then {nxt.time}"
        )
    if region.contains(nxt.time) != nxt.holds(pred):
        return False
    span = IntervalUnion.half_open(prev.time, nxt.time)
    inside = region & span
    return inside == (span if prev.holds(pred) else IntervalUnion.empty())
