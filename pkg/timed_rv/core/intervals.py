"""
Finite unions of intervals over the non-negative reals
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Set, Tuple

ZERO = Fraction(0)


def _hi_key(hi: Optional[Fraction], closed: bool) -> Tuple[int, Fraction, int]:
    if hi is None:
        return (1, ZERO, 0)
    return (0, hi, 1 if closed else 0)


@dataclass(frozen=True)
class Interval:
    """Interval from ``lo`` to ``hi``; ``hi`` None means unbounded above"""

    lo: Fraction
    hi: Optional[Fraction]
    lo_closed: bool = True
    hi_closed: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Fraction(self.lo))
        if self.hi is None:
            object.__setattr__(self, "hi_closed", False)
        else:
            object.__setattr__(self, "hi", Fraction(self.hi))

    def is_empty(self) -> bool:
        if self.hi is None:
            return False
        if self.hi != self.lo:
            return self.hi < self.lo
        return not (self.lo_closed and self.hi_closed)

    def contains(self, point: Fraction) -> bool:
        if point < self.lo or (point == self.lo and not self.lo_closed):
            return False
        if self.hi is None:
            return True
        return point < self.hi or (point == self.hi and self.hi_closed)

    def clip(self) -> "Interval":
        """Restrict to the non-negative reals"""
        if self.lo < 0:
            return Interval(ZERO, self.hi, True, self.hi_closed)
        return self

    def __str__(self) -> str:
        left = "[" if self.lo_closed else "("
        if self.hi is None:
            return f"{left}{self.lo},inf)"
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo},{self.hi}{right}"


class IntervalUnion:
    """Sorted, disjoint, maximally merged set of intervals within [0, inf)"""

    __slots__ = ("intervals",)

    def __init__(self, intervals: Iterable[Interval] = ()):
        self.intervals: Tuple[Interval, ...] = self._normalize(intervals)

    @staticmethod
    def _normalize(intervals: Iterable[Interval]) -> Tuple[Interval, ...]:
        pieces = [iv.clip() for iv in intervals]
        pieces = sorted(
            (iv for iv in pieces if not iv.is_empty()),
            key=lambda iv: (iv.lo, not iv.lo_closed),
        )
        merged: List[Interval] = []
        for iv in pieces:
            if merged and _touches(merged[-1], iv):
                cur = merged[-1]
                if _hi_key(iv.hi, iv.hi_closed) > _hi_key(cur.hi, cur.hi_closed):
                    merged[-1] = Interval(cur.lo, iv.hi, cur.lo_closed, iv.hi_closed)
            else:
                merged.append(iv)
        return tuple(merged)

    @classmethod
    def empty(cls) -> "IntervalUnion":
        return cls()

    @classmethod
    def full(cls) -> "IntervalUnion":
        return cls([Interval(ZERO, None)])

    @classmethod
    def closed(cls, lo: Fraction, hi: Fraction) -> "IntervalUnion":
        return cls([Interval(lo, hi, True, True)])

    @classmethod
    def half_open(cls, lo: Fraction, hi: Fraction) -> "IntervalUnion":
        """[lo, hi)"""
        return cls([Interval(lo, hi, True, False)])

    @classmethod
    def open(cls, lo: Fraction, hi: Fraction) -> "IntervalUnion":
        return cls([Interval(lo, hi, False, False)])

    @classmethod
    def point(cls, at: Fraction) -> "IntervalUnion":
        return cls.closed(at, at)

    @classmethod
    def at_least(cls, lo: Fraction) -> "IntervalUnion":
        return cls([Interval(lo, None, True)])

    @classmethod
    def greater_than(cls, lo: Fraction) -> "IntervalUnion":
        return cls([Interval(lo, None, False)])

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntervalUnion):
            return NotImplemented
        return self.intervals == other.intervals

    def __hash__(self) -> int:
        return hash(self.intervals)

    def __repr__(self) -> str:
        return f"IntervalUnion({str(self)})"

    def __str__(self) -> str:
        if not self.intervals:
            return "{}"
        return " u ".join(str(iv) for iv in self.intervals)

    def is_empty(self) -> bool:
        return not self.intervals

    def is_full(self) -> bool:
        return self == IntervalUnion.full()

    def contains(self, point: Fraction) -> bool:
        return any(iv.contains(point) for iv in self.intervals)

    __contains__ = contains

    def endpoints(self) -> Set[Fraction]:
        points: Set[Fraction] = set()
        for iv in self.intervals:
            points.add(iv.lo)
            if iv.hi is not None:
                points.add(iv.hi)
        return points

    def complement(self) -> "IntervalUnion":
        """[0, inf) minus this set"""
        gaps: List[Interval] = []
        pos, pos_closed = ZERO, True
        for iv in self.intervals:
            gaps.append(Interval(pos, iv.lo, pos_closed, not iv.lo_closed))
            if iv.hi is None:
                return IntervalUnion(gaps)
            pos, pos_closed = iv.hi, not iv.hi_closed
        gaps.append(Interval(pos, None, pos_closed))
        return IntervalUnion(gaps)

    def union(self, other: "IntervalUnion") -> "IntervalUnion":
        return IntervalUnion(self.intervals + other.intervals)

    def intersection(self, other: "IntervalUnion") -> "IntervalUnion":
        return self.complement().union(other.complement()).complement()

    def difference(self, other: "IntervalUnion") -> "IntervalUnion":
        return self.intersection(other.complement())

    __or__ = union
    __and__ = intersection
    __sub__ = difference

    def assign(self, region: "IntervalUnion", value: bool) -> "IntervalUnion":
        """Copy with every point of ``region`` set to ``value``"""
        return self.union(region) if value else self.difference(region)

    def agrees_on(self, other: "IntervalUnion", region: "IntervalUnion") -> bool:
        return (self & region) == (other & region)

    def supremum(self) -> Optional[Tuple[Optional[Fraction], bool]]:
        """(sup, attained) of a non-empty set; sup None means unbounded"""
        if not self.intervals:
            return None
        last = self.intervals[-1]
        return last.hi, last.hi_closed

    def window_exists(
        self,
        lower: Fraction,
        upper: Optional[Fraction],
        lower_closed: bool = True,
        upper_closed: bool = True,
    ) -> "IntervalUnion":
        """Points u with some v in this set and v - u in the window.

        The window runs from ``lower`` to ``upper`` (None for unbounded).
        """
        window = Interval(lower, upper, lower_closed, upper_closed)
        if window.is_empty():
            return IntervalUnion()
        shifted: List[Interval] = []
        for iv in self.intervals:
            if upper is None:
                lo, lo_closed = ZERO, True
            else:
                lo, lo_closed = iv.lo - upper, iv.lo_closed and upper_closed
            if iv.hi is None:
                shifted.append(Interval(lo, None, lo_closed))
            else:
                hi = iv.hi - lower
                if hi < 0:
                    continue
                shifted.append(
                    Interval(lo, hi, lo_closed, iv.hi_closed and lower_closed)
                )
        return IntervalUnion(shifted)

    def until_exists(self, target: "IntervalUnion") -> "IntervalUnion":
        """Points u with some v >= u in ``target`` and [u, v) inside this set"""
        result = target
        for component in self.intervals:
            reach = IntervalUnion(
                [Interval(component.lo, component.hi, True, True)]
            ).intersection(target)
            sup = reach.supremum()
            if sup is None:
                continue
            hi, attained = sup
            if hi is None:
                bound = IntervalUnion.full()
            else:
                bound = IntervalUnion([Interval(ZERO, hi, True, attained)])
            result = result | (IntervalUnion([component]) & bound)
        return result


def _touches(first: Interval, second: Interval) -> bool:
    if first.hi is None or first.hi > second.lo:
        return True
    return first.hi == second.lo and (first.hi_closed or second.lo_closed)
