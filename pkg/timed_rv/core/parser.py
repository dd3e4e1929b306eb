"""
Text parser for bounded temporal logic formulas
"""

import re
import threading
from typing import Any, List, Optional

from arpeggio import EOF, NoMatch, ParserPython, PTNodeVisitor, ZeroOrMore
from arpeggio import RegExMatch as _
from arpeggio import visit_parse_tree

from ..exceptions import BtlSyntaxError, EmptyWindowError, NegativeConstantError
from . import btl
from .props import PropTable
from .rational import parse_rational

KEYWORDS = ("always", "eventually", "after", "between", "U")

_KEYWORD_GUARD = r"(?!(?:{})\b)".format("|".join(KEYWORDS))
_IDENT_PATTERN = _KEYWORD_GUARD + r"[A-Za-z_][A-Za-z0-9_]*"
_WORD = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


# Grammar, loosest binding first:
#   <->  ->  |  &  then prefix operators and U.


def number():
    return _(r"-?\d+(\.\d+)?(/\d+)?")


def ident():
    return _(_IDENT_PATTERN)


def paren():
    return "(", equivalence, ")"


def atom():
    return [paren, ident]


def negation():
    return "!", unary


def bounded_always():
    return _(r"always\b"), "[", number, "]", unary


def unbounded_always():
    return _(r"always\b"), unary


def eventually():
    return _(r"eventually\b"), "[", number, "]", unary


def after():
    return _(r"after\b"), "[", number, "]", unary


def between():
    return _(r"between\b"), "[", number, ",", number, "]", unary


def until_exact():
    return atom, _(r"U\b"), "[", "=", number, "]", unary


def until():
    return atom, _(r"U\b"), unary


def unary():
    return [
        negation,
        bounded_always,
        unbounded_always,
        eventually,
        after,
        between,
        until_exact,
        until,
        atom,
    ]


def conjunction():
    return unary, ZeroOrMore("&", unary)


def disjunction():
    return conjunction, ZeroOrMore("|", conjunction)


def implication():
    return disjunction, ZeroOrMore("->", disjunction)


def equivalence():
    return implication, ZeroOrMore("<->", implication)


def formula():
    return equivalence, EOF


_PARSER: Optional[ParserPython] = None
_PARSER_LOCK = threading.Lock()


def _get_parser() -> ParserPython:
    global _PARSER
    if _PARSER is None:
        _PARSER = ParserPython(formula, memoization=True)
    return _PARSER


def _operands(children: List[Any]) -> List[Any]:
    # keyword and punctuation terminals come through as plain strings
    return [child for child in children if not isinstance(child, str)]


class BtlVisitor(PTNodeVisitor):
    """Builds btl syntax trees from an arpeggio parse tree"""

    def __init__(self, parser: ParserPython, props: PropTable):
        super().__init__()
        self.parser = parser
        self.props = props

    def _where(self, node: Any) -> str:
        line, column = self.parser.pos_to_linecol(node.position)
        return f"line {line}, column {column}"

    def visit_number(self, node, children):
        value = parse_rational(node.value)
        if value < 0:
            raise NegativeConstantError(
                f"negative constant {node.value} at {self._where(node)}"
            )
        return value

    def visit_ident(self, node, children):
        return btl.Prop(self.props.index(node.value))

    def visit_paren(self, node, children):
        return _operands(children)[0]

    def visit_negation(self, node, children):
        return btl.Not(_operands(children)[0])

    def visit_bounded_always(self, node, children):
        bound, arg = _operands(children)
        return btl.Always(bound, arg)

    def visit_unbounded_always(self, node, children):
        return btl.AlwaysUnbounded(_operands(children)[0])

    def visit_eventually(self, node, children):
        bound, arg = _operands(children)
        return btl.Eventually(bound, arg)

    def visit_after(self, node, children):
        bound, arg = _operands(children)
        return btl.After(bound, arg)

    def visit_between(self, node, children):
        lower, upper, arg = _operands(children)
        try:
            return btl.Between(lower, upper, arg)
        except EmptyWindowError as e:
            raise EmptyWindowError(f"{e} at {self._where(node)}") from e

    def visit_until_exact(self, node, children):
        left, bound, right = _operands(children)
        return btl.UntilExact(bound, left, right)

    def visit_until(self, node, children):
        left, right = _operands(children)
        return btl.Until(left, right)

    def visit_conjunction(self, node, children):
        operands = _operands(children)
        result = operands[0]
        for operand in operands[1:]:
            result = btl.And(result, operand)
        return result

    def visit_disjunction(self, node, children):
        operands = _operands(children)
        result = operands[0]
        for operand in operands[1:]:
            result = btl.Or(result, operand)
        return result

    def visit_implication(self, node, children):
        # right-associative: a -> b -> c is a -> (b -> c)
        operands = _operands(children)
        result = operands[-1]
        for operand in reversed(operands[:-1]):
            result = btl.Implies(operand, result)
        return result

    def visit_equivalence(self, node, children):
        operands = _operands(children)
        result = operands[0]
        for operand in operands[1:]:
            result = btl.Iff(result, operand)
        return result

    def visit_formula(self, node, children):
        return _operands(children)[0]


def parse_btl(text: str, props: Optional[PropTable] = None) -> btl.BtlFormula:
    """Parse formula text. Names are resolved through ``props`` when given.

    New names reach ``props`` only when the whole formula is accepted.
    """
    if props is None:
        props = PropTable()
    trial = props.copy()
    trial.declare_all(w for w in _WORD.findall(text) if w not in KEYWORDS)
    with _PARSER_LOCK:
        parser = _get_parser()
        try:
            tree = parser.parse(text)
        except NoMatch as e:
            line, column = parser.pos_to_linecol(e.position)
            raise BtlSyntaxError(
                f"syntax error at line {line}, column {column}: {e}",
                position=e.position,
                line=line,
                column=column,
            ) from e
        formula = visit_parse_tree(tree, BtlVisitor(parser, trial))
    props.update(trial)
    return formula
