"""
Bounded temporal logic syntax trees
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Set, Tuple

from ..exceptions import EmptyWindowError, NegativeConstantError
from .props import PropTable
from .rational import check_rational, format_rational


class BtlFormula:
    """Base class of BTL syntax tree nodes"""

    def children(self) -> Tuple["BtlFormula", ...]:
        return ()

    def walk(self) -> Iterator["BtlFormula"]:
        """Pre-order traversal"""
        yield self
        for child in self.children():
            yield from child.walk()

    def depth(self) -> int:
        """Nesting depth of temporal operators"""
        inner = max((c.depth() for c in self.children()), default=0)
        return inner + (1 if isinstance(self, _TEMPORAL) else 0)

    def props(self) -> Set[int]:
        return {f.index for f in self.walk() if isinstance(f, Prop)}

    def __str__(self) -> str:
        return format_btl(self)


def _check_bound(value: Fraction) -> Fraction:
    value = check_rational(Fraction(value))
    if value < 0:
        raise NegativeConstantError(f"temporal bound must be non-negative, got {value}")
    return value


@dataclass(frozen=True)
class Prop(BtlFormula):
    index: int

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ValueError(f"proposition index must be >= 1, got {self.index}")


@dataclass(frozen=True)
class Not(BtlFormula):
    arg: BtlFormula

    def children(self) -> Tuple["BtlFormula", ...]:
        return (self.arg,)


@dataclass(frozen=True)
class _Binary(BtlFormula):
    left: BtlFormula
    right: BtlFormula

    def children(self) -> Tuple["BtlFormula", ...]:
        return (self.left, self.right)


@dataclass(frozen=True)
class And(_Binary):
    pass


@dataclass(frozen=True)
class Or(_Binary):
    pass


@dataclass(frozen=True)
class Implies(_Binary):
    pass


@dataclass(frozen=True)
class Iff(_Binary):
    pass


@dataclass(frozen=True)
class Always(BtlFormula):
    """always[c] arg: arg holds throughout [u, u+c]"""

    bound: Fraction
    arg: BtlFormula

    def __post_init__(self) -> None:
        object.__setattr__(self, "bound", _check_bound(self.bound))

    def children(self) -> Tuple["BtlFormula", ...]:
        return (self.arg,)


@dataclass(frozen=True)
class Eventually(BtlFormula):
    """eventually[c] arg: arg holds somewhere in [u, u+c]"""

    bound: Fraction
    arg: BtlFormula

    def __post_init__(self) -> None:
        object.__setattr__(self, "bound", _check_bound(self.bound))

    def children(self) -> Tuple["BtlFormula", ...]:
        return (self.arg,)


@dataclass(frozen=True)
class AlwaysUnbounded(BtlFormula):
    arg: BtlFormula

    def children(self) -> Tuple["BtlFormula", ...]:
        return (self.arg,)


@dataclass(frozen=True)
class After(BtlFormula):
    """after[c] arg: arg holds at some point at least c from now"""

    bound: Fraction
    arg: BtlFormula

    def __post_init__(self) -> None:
        object.__setattr__(self, "bound", _check_bound(self.bound))

    def children(self) -> Tuple["BtlFormula", ...]:
        return (self.arg,)


@dataclass(frozen=True)
class Between(BtlFormula):
    """between[c,d] arg: arg holds somewhere in [u+c, u+d]"""

    lower: Fraction
    upper: Fraction
    arg: BtlFormula

    def __post_init__(self) -> None:
        object.__setattr__(self, "lower", _check_bound(self.lower))
        object.__setattr__(self, "upper", _check_bound(self.upper))
        if self.lower > self.upper:
            raise EmptyWindowError(
                f"between[{self.lower},{self.upper}] has lower bound above upper"
            )

    def children(self) -> Tuple["BtlFormula", ...]:
        return (self.arg,)


@dataclass(frozen=True)
class UntilExact(BtlFormula):
    """left U[=c] right: left throughout [u, u+c), right at u+c"""

    bound: Fraction
    left: BtlFormula
    right: BtlFormula

    def __post_init__(self) -> None:
        object.__setattr__(self, "bound", _check_bound(self.bound))

    def children(self) -> Tuple["BtlFormula", ...]:
        return (self.left, self.right)


@dataclass(frozen=True)
class Until(_Binary):
    """left U right: right at some v >= u, left throughout [u, v)"""


_TEMPORAL = (Always, Eventually, AlwaysUnbounded, After, Between, UntilExact, Until)

_INFIX = {And: "&", Or: "|", Implies: "->", Iff: "<->", Until: "U"}


def _until_left(f: BtlFormula, props: Optional[PropTable]) -> str:
    # the left operand of U must be an atom or a parenthesised formula
    text = format_btl(f, props)
    if isinstance(f, (Prop, _Binary, UntilExact)):
        return text
    return f"({text})"


def format_btl(f: BtlFormula, props: Optional[PropTable] = None) -> str:
    """Print a formula in the surface syntax accepted by parse_btl.

    Binary nodes are always parenthesised, so parsing the output yields the
    same tree regardless of precedence.
    """
    if isinstance(f, Prop):
        return props.name(f.index) if props is not None else f"p{f.index}"
    if isinstance(f, Not):
        return f"!{format_btl(f.arg, props)}"
    if isinstance(f, Always):
        return f"always[{format_rational(f.bound)}] {format_btl(f.arg, props)}"
    if isinstance(f, Eventually):
        return f"eventually[{format_rational(f.bound)}] {format_btl(f.arg, props)}"
    if isinstance(f, AlwaysUnbounded):
        return f"always {format_btl(f.arg, props)}"
    if isinstance(f, After):
        return f"after[{format_rational(f.bound)}] {format_btl(f.arg, props)}"
    if isinstance(f, Between):
        window = f"{format_rational(f.lower)},{format_rational(f.upper)}"
        return f"between[{window}] {format_btl(f.arg, props)}"
    if isinstance(f, UntilExact):
        left, right = _until_left(f.left, props), format_btl(f.right, props)
        return f"({left} U[={format_rational(f.bound)}] {right})"
    if isinstance(f, Until):
        left, right = _until_left(f.left, props), format_btl(f.right, props)
        return f"({left} U {right})"
    if isinstance(f, _Binary):
        left, right = format_btl(f.left, props), format_btl(f.right, props)
        return f"({left} {_INFIX[type(f)]} {right})"
    raise TypeError(f"not a BTL formula: {f!r}")
