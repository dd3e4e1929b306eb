"""
Monadic difference logic syntax trees and the positive-form toolkit
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import (
    Callable,
    FrozenSet,
    Iterator,
    List,
    Optional,
    Sequence,
    Set,
    Tuple,
    TypeVar,
)

from .bounds import ZERO_VAR, Bound, var_name
from .props import PropTable

T = TypeVar("T")


class MdlFormula:
    """Base class of MDL syntax tree nodes"""

    def children(self) -> Tuple["MdlFormula", ...]:
        return ()

    def walk(self) -> Iterator["MdlFormula"]:
        """Pre-order traversal, iterative so deep quotients do not hit the stack"""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children()))

    def __str__(self) -> str:
        return format_mdl(self)


@dataclass(frozen=True)
class PredAtom(MdlFormula):
    """P_pred(var), or its negation when ``negated``"""

    pred: int
    var: int
    negated: bool = False


@dataclass(frozen=True)
class Diff(MdlFormula):
    """Difference atom x - y <= c (or < c); ``refuted`` reads its negation"""

    x: int
    y: int
    bound: Bound
    refuted: bool = False

    def __post_init__(self) -> None:
        if self.x == self.y:
            raise ValueError("difference atom needs two distinct variables")

    def holds(self, x_value: Fraction, y_value: Fraction) -> bool:
        return self.bound.admits(x_value - y_value) != self.refuted


@dataclass(frozen=True)
class Const(MdlFormula):
    value: bool


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True)
class Not(MdlFormula):
    arg: MdlFormula

    def children(self) -> Tuple[MdlFormula, ...]:
        return (self.arg,)


@dataclass(frozen=True)
class And(MdlFormula):
    left: MdlFormula
    right: MdlFormula

    def children(self) -> Tuple[MdlFormula, ...]:
        return (self.left, self.right)


@dataclass(frozen=True)
class Or(MdlFormula):
    left: MdlFormula
    right: MdlFormula

    def children(self) -> Tuple[MdlFormula, ...]:
        return (self.left, self.right)


@dataclass(frozen=True)
class Forall(MdlFormula):
    var: int
    body: MdlFormula

    def __post_init__(self) -> None:
        if self.var == ZERO_VAR:
            raise ValueError("the zero variable cannot be quantified")

    def children(self) -> Tuple[MdlFormula, ...]:
        return (self.body,)


@dataclass(frozen=True)
class Exists(MdlFormula):
    var: int
    body: MdlFormula

    def __post_init__(self) -> None:
        if self.var == ZERO_VAR:
            raise ValueError("the zero variable cannot be quantified")

    def children(self) -> Tuple[MdlFormula, ...]:
        return (self.body,)


Quantifier = (Forall, Exists)


def diff(
    x: int, y: int, value: Fraction, strict: bool = False, refuted: bool = False
) -> MdlFormula:
    """Difference atom, folded to a constant when x and y coincide"""
    bound = Bound(Fraction(value), strict)
    if x == y:
        return Const(bound.admits(Fraction(0)) != refuted)
    return Diff(x, y, bound, refuted)


def conj(*parts: MdlFormula) -> MdlFormula:
    result = parts[0]
    for part in parts[1:]:
        result = And(result, part)
    return result


def _balanced(parts: Sequence[MdlFormula], kind, empty: MdlFormula) -> MdlFormula:
    if not parts:
        return empty
    layer = list(parts)
    while len(layer) > 1:
        paired = [kind(a, b) for a, b in zip(layer[::2], layer[1::2])]
        if len(layer) % 2:
            paired.append(layer[-1])
        layer = paired
    return layer[0]


def balanced_or(parts: Sequence[MdlFormula]) -> MdlFormula:
    """Disjunction of logarithmic depth; false when ``parts`` is empty"""
    return _balanced(parts, Or, FALSE)


def balanced_and(parts: Sequence[MdlFormula]) -> MdlFormula:
    return _balanced(parts, And, TRUE)


def fold(phi: MdlFormula, combine: Callable[[MdlFormula, List[T]], T]) -> T:
    """Bottom-up evaluation with an explicit stack.

    ``combine`` receives each node with the results of its children, in order.
    """
    done: List[T] = []
    stack: List[Tuple[MdlFormula, bool]] = [(phi, False)]
    while stack:
        node, expanded = stack.pop()
        children = node.children()
        if children and not expanded:
            stack.append((node, True))
            stack.extend((child, False) for child in reversed(children))
            continue
        args: List[T] = []
        if children:
            args = done[-len(children) :]
            del done[-len(children) :]
        done.append(combine(node, args))
    return done[0]


def with_children(node: MdlFormula, args: Sequence[MdlFormula]) -> MdlFormula:
    """Copy of an inner node over new children"""
    if isinstance(node, Not):
        return Not(args[0])
    if isinstance(node, (And, Or)):
        return type(node)(args[0], args[1])
    if isinstance(node, Quantifier):
        return type(node)(node.var, args[0])
    raise TypeError(f"not an MDL formula: {node!r}")


def rebuild(
    phi: MdlFormula, leaf: Callable[[MdlFormula], MdlFormula]
) -> MdlFormula:
    """Copy of phi with every atom replaced by ``leaf(atom)``"""

    def combine(node: MdlFormula, args: List[MdlFormula]) -> MdlFormula:
        if not args:
            return leaf(node)
        return with_children(node, args)

    return fold(phi, combine)


def _folded(node: MdlFormula, args: List[MdlFormula]) -> MdlFormula:
    if not args:
        return node
    if isinstance(node, Not):
        arg = args[0]
        return Const(not arg.value) if isinstance(arg, Const) else Not(arg)
    if isinstance(node, (And, Or)):
        absorbing = isinstance(node, Or)
        kept = []
        for arg in args:
            if isinstance(arg, Const):
                if arg.value == absorbing:
                    return arg
                continue
            kept.append(arg)
        if not kept:
            return Const(not absorbing)
        if len(kept) == 1:
            return kept[0]
        return type(node)(kept[0], kept[1])
    body = args[0]
    if isinstance(body, Const):
        return body
    return type(node)(node.var, body)


def simplify(phi: MdlFormula) -> MdlFormula:
    """Fold constants: false and-operands, true or-operands, constant bodies"""
    return fold(phi, _folded)


class VarSupply:
    """Hands out fresh variable indices in creation order"""

    def __init__(self, start: int = 1):
        self._next = start

    def fresh(self) -> int:
        var = self._next
        self._next += 1
        return var

    @classmethod
    def above(cls, phi: MdlFormula) -> "VarSupply":
        return cls(max(all_vars(phi) | {ZERO_VAR}) + 1)


_DUAL = {And: Or, Or: And, Forall: Exists, Exists: Forall}


def _negated_atom(node: MdlFormula) -> MdlFormula:
    if isinstance(node, PredAtom):
        return PredAtom(node.pred, node.var, not node.negated)
    if isinstance(node, Diff):
        return Diff(node.x, node.y, node.bound, not node.refuted)
    if isinstance(node, Const):
        return Const(not node.value)
    raise TypeError(f"not an MDL formula: {node!r}")


def to_positive_form(phi: MdlFormula, negate: bool = False) -> MdlFormula:
    """Push negations down to predicate and difference atoms"""
    done: List[MdlFormula] = []
    stack: List[Tuple[MdlFormula, bool, bool]] = [(phi, negate, False)]
    while stack:
        node, flip, expanded = stack.pop()
        if isinstance(node, Not):
            stack.append((node.arg, not flip, False))
            continue
        if not isinstance(node, MdlFormula):
            raise TypeError(f"not an MDL formula: {node!r}")
        children = node.children()
        if not children:
            done.append(_negated_atom(node) if flip else node)
            continue
        if not expanded:
            stack.append((node, flip, True))
            stack.extend((child, flip, False) for child in reversed(children))
            continue
        args = done[-len(children) :]
        del done[-len(children) :]
        kind = _DUAL[type(node)] if flip else type(node)
        if isinstance(node, Quantifier):
            done.append(kind(node.var, args[0]))
        else:
            done.append(kind(args[0], args[1]))
    return done[0]


def is_positive_form(phi: MdlFormula) -> bool:
    return not any(isinstance(node, Not) for node in phi.walk())


def literal_substitute(phi: MdlFormula, value: bool) -> MdlFormula:
    """Replace every literal predicate, of either polarity, by a constant"""
    replacement = Const(value)
    return rebuild(
        phi, lambda node: replacement if isinstance(node, PredAtom) else node
    )


def polarity_sets(phi: MdlFormula) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """Predicates occurring positively and negatively"""
    positive: Set[int] = set()
    negative: Set[int] = set()
    for node in phi.walk():
        if isinstance(node, PredAtom):
            (negative if node.negated else positive).add(node.pred)
    return frozenset(positive), frozenset(negative)


def is_homogeneous(phi: MdlFormula) -> bool:
    positive, negative = polarity_sets(phi)
    return not positive & negative


def predicates(phi: MdlFormula) -> FrozenSet[int]:
    return frozenset(node.pred for node in phi.walk() if isinstance(node, PredAtom))


def has_predicates(phi: MdlFormula) -> bool:
    return any(isinstance(node, PredAtom) for node in phi.walk())


def constants(phi: MdlFormula) -> FrozenSet[Fraction]:
    """Bound values of all difference atoms"""
    return frozenset(node.bound.value for node in phi.walk() if isinstance(node, Diff))


def atom_vars(phi: MdlFormula) -> Tuple[int, ...]:
    if isinstance(phi, PredAtom):
        return (phi.var,)
    if isinstance(phi, Diff):
        return (phi.x, phi.y)
    return ()


def _free(node: MdlFormula, args: List[FrozenSet[int]]) -> FrozenSet[int]:
    if isinstance(node, Quantifier):
        return args[0] - {node.var}
    if not args:
        return frozenset(atom_vars(node))
    return frozenset().union(*args)


def free_vars(phi: MdlFormula) -> FrozenSet[int]:
    return fold(phi, _free)


def bound_vars(phi: MdlFormula) -> FrozenSet[int]:
    return frozenset(node.var for node in phi.walk() if isinstance(node, Quantifier))


def all_vars(phi: MdlFormula) -> FrozenSet[int]:
    result: Set[int] = set()
    for node in phi.walk():
        result.update(atom_vars(node))
        if isinstance(node, Quantifier):
            result.add(node.var)
    return frozenset(result)


def is_renamed_apart(phi: MdlFormula) -> bool:
    """Every quantifier binds its own variable, distinct from the free ones"""
    bound = [node.var for node in phi.walk() if isinstance(node, Quantifier)]
    return len(bound) == len(set(bound)) and not set(bound) & free_vars(phi)


def quantifier_depth(phi: MdlFormula) -> int:
    inner = max((quantifier_depth(c) for c in phi.children()), default=0)
    return inner + (1 if isinstance(phi, Quantifier) else 0)


@dataclass(frozen=True)
class LiteralIndex:
    """Numbering of literal predicates: L_i = P_i and L_{k+i} = not P_i"""

    k: int

    @classmethod
    def of(cls, phi: MdlFormula) -> "LiteralIndex":
        return cls(max(predicates(phi), default=0))

    def __len__(self) -> int:
        return 2 * self.k

    def index(self, pred: int, negated: bool = False) -> int:
        if not 1 <= pred <= self.k:
            raise ValueError(f"P{pred} is outside this literal index (k={self.k})")
        return pred + self.k if negated else pred

    def literal(self, index: int) -> Tuple[int, bool]:
        if not 1 <= index <= 2 * self.k:
            raise ValueError(f"L{index} is outside this literal index (k={self.k})")
        if index > self.k:
            return index - self.k, True
        return index, False


_REFUTED_SYMBOL = {False: ">", True: ">="}


def format_mdl(phi: MdlFormula, props: Optional[PropTable] = None) -> str:
    """Readable rendering; z is the zero variable, bound variables print as x<n>"""
    if isinstance(phi, PredAtom):
        name = f"P{phi.pred}"
        if props is not None and props.name(phi.pred) != f"p{phi.pred}":
            name = f"P[{props.name(phi.pred)}]"
        text = f"{name}({var_name(phi.var)})"
        return f"!{text}" if phi.negated else text
    if isinstance(phi, Diff):
        lhs = f"{var_name(phi.x)} - {var_name(phi.y)}"
        if phi.refuted:
            symbol = _REFUTED_SYMBOL[phi.bound.strict]
        else:
            symbol = phi.bound.symbol()
        return f"{lhs} {symbol} {phi.bound.value}"
    if isinstance(phi, Const):
        return "1" if phi.value else "0"
    if isinstance(phi, Not):
        return f"!({format_mdl(phi.arg, props)})"
    if isinstance(phi, And):
        return f"({format_mdl(phi.left, props)} & {format_mdl(phi.right, props)})"
    if isinstance(phi, Or):
        return f"({format_mdl(phi.left, props)} | {format_mdl(phi.right, props)})"
    if isinstance(phi, Forall):
        return f"forall {var_name(phi.var)}. {format_mdl(phi.body, props)}"
    if isinstance(phi, Exists):
        return f"exists {var_name(phi.var)}. {format_mdl(phi.body, props)}"
    raise TypeError(f"not an MDL formula: {phi!r}")

