"""
Bounding the monitored formula as the run grows.

The monitor keeps the positive form of the translation and the regions where
each proposition held so far. Two reductions keep what it decides on small:
known regions are clipped to the offsets a predicate occurrence can reach
through the quantifier guards, and top-level quantifiers are settled up to the
point where their body no longer looks at unseen time.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from . import mdl
from .bounds import ZERO_VAR
from .intervals import Interval, IntervalUnion

logger = logging.getLogger(__name__)

# Closed hull (lo, hi) of the offsets a variable can take; None is unbounded.
Range = Tuple[Optional[Fraction], Optional[Fraction]]

UNBOUNDED: Range = (None, None)


def _parts(phi: mdl.MdlFormula, kind) -> List[mdl.MdlFormula]:
    """Operands of the top-level ``kind`` chain"""
    parts = []
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, kind):
            stack.extend((node.right, node.left))
        else:
            parts.append(node)
    return parts


def _shift(value: Optional[Fraction], by: Fraction) -> Optional[Fraction]:
    return None if value is None else value + by


def _guard(
    atom: mdl.Diff, var: int, ranges: Mapping[int, Range], wanted: bool
) -> Range:
    """Offsets of ``var`` for which the atom has truth value ``wanted``"""
    other = atom.y if atom.x == var else atom.x
    if var not in (atom.x, atom.y) or other not in ranges:
        return UNBOUNDED
    lo, hi = ranges[other]
    admits = wanted != atom.refuted
    value = atom.bound.value
    if atom.x == var:
        # var - other <= value, or > value
        return (None, _shift(hi, value)) if admits else (_shift(lo, value), None)
    # other - var <= value, or > value
    return (_shift(lo, -value), None) if admits else (None, _shift(hi, -value))


def _meet(first: Range, second: Range) -> Range:
    lo = first[0] if second[0] is None else (
        second[0] if first[0] is None else max(first[0], second[0])
    )
    hi = first[1] if second[1] is None else (
        second[1] if first[1] is None else min(first[1], second[1])
    )
    return lo, hi


def _hull(first: Range, second: Range) -> Range:
    lo = None if first[0] is None or second[0] is None else min(first[0], second[0])
    hi = None if first[1] is None or second[1] is None else max(first[1], second[1])
    return lo, hi


def _is_empty(r: Range) -> bool:
    return r[0] is not None and r[1] is not None and r[0] > r[1]


def quantifier_range(phi, ranges: Mapping[int, Range]) -> Range:
    """Offsets of the quantified variable at which the body can matter.

    Outside them a universal body is true through one of its guard disjuncts
    and an existential body false through one of its guard conjuncts.
    """
    universal = isinstance(phi, mdl.Forall)
    result = UNBOUNDED
    for part in _parts(phi.body, mdl.Or if universal else mdl.And):
        if isinstance(part, mdl.Diff):
            result = _meet(result, _guard(part, phi.var, ranges, not universal))
    return result


def predicate_reach(
    phi: mdl.MdlFormula, origin: int = ZERO_VAR
) -> Dict[int, Range]:
    """Hull of the offsets from ``origin`` at which each predicate is read"""
    reach: Dict[int, Range] = {}
    stack: List[Tuple[mdl.MdlFormula, Dict[int, Range]]] = [
        (phi, {origin: (Fraction(0), Fraction(0))})
    ]
    while stack:
        node, ranges = stack.pop()
        if isinstance(node, mdl.PredAtom):
            at = ranges.get(node.var, UNBOUNDED)
            if node.pred in reach:
                reach[node.pred] = _hull(reach[node.pred], at)
            else:
                reach[node.pred] = at
        elif isinstance(node, mdl.Quantifier):
            own = quantifier_range(node, ranges)
            if not _is_empty(own):
                stack.append((node.body, {**ranges, node.var: own}))
        else:
            stack.extend((child, ranges) for child in node.children())
    return reach


def clip(
    known: Mapping[int, IntervalUnion], reach: Mapping[int, Range]
) -> Dict[int, IntervalUnion]:
    """Known regions restricted to where the formula reads them"""
    clipped = {}
    for pred, region in known.items():
        if pred not in reach:
            continue
        lo, hi = reach[pred]
        lo = max(lo, Fraction(0)) if lo is not None else Fraction(0)
        if hi is not None and hi < lo:
            continue
        hull = IntervalUnion([Interval(lo, hi, True, hi is not None)])
        region = region & hull
        if not region.is_empty():
            clipped[pred] = region
    return clipped


def lookahead(phi) -> Optional[Fraction]:
    """How far past its variable a quantifier body reads predicates.

    None when some read is not bounded relative to the quantified variable,
    or when the body reads no predicate at all.
    """
    highs = [hi for _, hi in predicate_reach(phi.body, origin=phi.var).values()]
    if not highs or any(hi is None for hi in highs):
        return None
    return max(Fraction(0), *highs)


def root_quantifiers(phi: mdl.MdlFormula) -> List[mdl.MdlFormula]:
    """Quantifiers reachable from the root through conjunctions and disjunctions"""
    found = []
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, (mdl.And, mdl.Or)):
            stack.extend((node.right, node.left))
        elif isinstance(node, mdl.Quantifier):
            found.append(node)
    return found


def restrict(phi, lower: Optional[Fraction], upper: Optional[Fraction]):
    """The quantifier with its variable limited to lower < x - z <= upper"""
    universal = isinstance(phi, mdl.Forall)
    guards = []
    if lower is not None:
        # x - z <= lower
        guards.append(mdl.diff(phi.var, ZERO_VAR, lower, refuted=not universal))
    if upper is not None:
        # x - z > upper
        guards.append(mdl.diff(phi.var, ZERO_VAR, upper, refuted=universal))
    if not guards:
        return phi
    if universal:
        return mdl.Forall(phi.var, mdl.Or(mdl.balanced_or(guards), phi.body))
    return mdl.Exists(phi.var, mdl.And(mdl.balanced_and(guards), phi.body))


def _replace_roots(phi: mdl.MdlFormula, replace: List[mdl.MdlFormula]):
    """phi with its top-level quantifiers swapped, left to right, for ``replace``"""
    queue = iter(replace)

    def walk(node: mdl.MdlFormula) -> mdl.MdlFormula:
        if isinstance(node, (mdl.And, mdl.Or)):
            left = walk(node.left)
            return type(node)(left, walk(node.right))
        if isinstance(node, mdl.Quantifier):
            return next(queue)
        return node

    return walk(phi)


@dataclass
class Progression:
    """A positive formula with settled bounds for its top-level quantifiers.

    ``settled[i] = c`` records that the i-th top-level quantifier, counted
    left to right, is decided for every x - z <= c of its variable x, so only
    x - z > c is left to watch.
    """

    formula: mdl.MdlFormula
    settled: Dict[int, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self._roots = root_quantifiers(self.formula)
        self._horizons = [lookahead(q) for q in self._roots]

    def current(self) -> mdl.MdlFormula:
        """The formula with every settled quantifier restricted"""
        if not self.settled:
            return self.formula
        restricted = [
            restrict(q, self.settled.get(i), None) for i, q in enumerate(self._roots)
        ]
        return _replace_roots(self.formula, restricted)

    def slices(self, t: Fraction) -> List[Tuple[int, mdl.MdlFormula, Fraction]]:
        """(index, slice, bound) for each top-level quantifier that may settle at t.

        A slice is the quantifier limited to the part between its settled
        bound and t minus its lookahead; that part reads nothing after t.
        """
        found = []
        for i, (q, horizon) in enumerate(zip(self._roots, self._horizons)):
            if horizon is None:
                continue
            bound = t - horizon
            previous = self.settled.get(i)
            if bound < 0 or (previous is not None and bound <= previous):
                continue
            found.append((i, restrict(q, previous, bound), bound))
        return found

    def settle(self, index: int, bound: Fraction) -> None:
        logger.debug("settled quantifier %d up to %s", index, bound)
        self.settled[index] = bound
