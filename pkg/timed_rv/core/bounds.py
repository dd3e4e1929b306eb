"""
Bounds and normalised difference atoms
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Tuple

from .rational import check_rational

# Variable 0 is the zero variable z; bound variables are numbered from 1.
ZERO_VAR = 0


@total_ordering
@dataclass(frozen=True)
class Bound:
    """Upper bound on a difference: ``<= value`` or, when strict, ``< value``.

    Bounds are ordered by tightness: smaller values first, and at equal value
    the strict bound is the tighter one.
    """

    value: Fraction
    strict: bool = False

    def key(self) -> Tuple[Fraction, int]:
        return (self.value, 0 if self.strict else 1)

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, Bound):
            return NotImplemented
        return self.key() < other.key()

    def __add__(self, other: "Bound") -> "Bound":
        value = check_rational(self.value + other.value)
        return Bound(value, self.strict or other.strict)

    def complement(self) -> "Bound":
        """Bound on the reversed difference under negation.

        not (x - y <= c) is y - x < -c, and not (x - y < c) is y - x <= -c.
        """
        return Bound(-self.value, not self.strict)

    def admits(self, difference: Fraction) -> bool:
        """Whether a concrete difference satisfies this bound"""
        if self.strict:
            return difference < self.value
        return difference <= self.value

    def symbol(self) -> str:
        return "<" if self.strict else "<="

    def __str__(self) -> str:
        return f"{self.symbol()} {self.value}"


@total_ordering
@dataclass(frozen=True)
class NormAtom:
    """Difference atom ``x - y <= c`` (or ``<``) with x ordered before y.

    The order of atoms is by variable pair, then by bound tightness.
    """

    x: int
    y: int
    bound: Bound

    def __post_init__(self) -> None:
        if self.x >= self.y:
            raise ValueError(f"normalised atom needs x < y, got x{self.x}, x{self.y}")

    def key(self) -> Tuple[int, int, Fraction, int]:
        return (self.x, self.y) + self.bound.key()

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, NormAtom):
            return NotImplemented
        return self.key() < other.key()

    @property
    def pair(self) -> Tuple[int, int]:
        return (self.x, self.y)

    def mentions(self, var: int) -> bool:
        return var == self.x or var == self.y


# (x, y, bound) reads x - y <= c / x - y < c, with no ordering requirement.
Difference = Tuple[int, int, Bound]

# A normalised atom together with the branch taken on it.
Literal = Tuple[NormAtom, bool]


def normalize(x: int, y: int, bound: Bound) -> Literal:
    """Express ``x - y ⋈ c`` as a literal over a normalised atom"""
    if x == y:
        raise ValueError("difference of a variable with itself has no atom")
    if x < y:
        return NormAtom(x, y, bound), True
    return NormAtom(y, x, bound.complement()), False


def literal_difference(literal: Literal) -> Difference:
    """The difference constraint a literal asserts"""
    atom, branch = literal
    if branch:
        return (atom.x, atom.y, atom.bound)
    return (atom.y, atom.x, atom.bound.complement())


def difference_literal(difference: Difference) -> Literal:
    x, y, bound = difference
    return normalize(x, y, bound)


def var_name(var: int) -> str:
    return "z" if var == ZERO_VAR else f"x{var}"


def format_difference(difference: Difference) -> str:
    x, y, bound = difference
    return f"{var_name(x)}-{var_name(y)} {bound.symbol()} {bound.value}"
