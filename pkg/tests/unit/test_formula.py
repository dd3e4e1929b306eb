"""
Unit tests for rationals, proposition tables, BTL trees and the parser.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings

from timed_rv.core import btl
from timed_rv.core.btl import format_btl
from timed_rv.core.parser import parse_btl
from timed_rv.core.props import PropTable
from timed_rv.core.rational import INT64_MAX, format_rational, parse_rational
from timed_rv.exceptions import (
    BtlSyntaxError,
    EmptyWindowError,
    NegativeConstantError,
    PropositionClashError,
    RationalOverflowError,
)
from tests.strategies import btl_formulas

p1, p2, p3 = btl.Prop(1), btl.Prop(2), btl.Prop(3)


class TestRational:
    """Test cases for exact rational parsing."""

    def test_fraction_string(self):
        """Test that "a/b" strings parse exactly."""
        assert parse_rational("7/2") == Fraction(7, 2)

    def test_decimal_string(self):
        """Test that decimal strings parse without float rounding."""
        assert parse_rational("0.1") == Fraction(1, 10)
        assert parse_rational("9.99") == Fraction(999, 100)

    def test_integer(self):
        """Test that ints are accepted."""
        assert parse_rational(4) == Fraction(4)

    def test_float_rejected(self):
        """Test that floats are refused."""
        with pytest.raises(TypeError):
            parse_rational(0.5)

    def test_garbage_rejected(self):
        """Test that non-numeric text raises ValueError."""
        with pytest.raises(ValueError):
            parse_rational("seven")
        with pytest.raises(ValueError):
            parse_rational("1/0")

    def test_overflow(self):
        """Test that numerators outside 64 bits are signalled."""
        with pytest.raises(RationalOverflowError):
            parse_rational(str(INT64_MAX + 1))

    def test_format(self):
        """Test rendering of integers and fractions."""
        assert format_rational(Fraction(7)) == "7"
        assert format_rational(Fraction(7, 2)) == "7/2"


class TestPropTable:
    """Test cases for proposition naming."""

    def test_canonical_names(self):
        """Test that p<n> always names index n."""
        table = PropTable()
        assert table.declare("p3") == 3
        assert table.declare("p1") == 1
        assert table.declare("p3") == 3

    def test_aliases_take_smallest_free_index(self):
        """Test that other names fill the gaps."""
        table = PropTable()
        table.declare("p1")
        assert table.declare("req") == 2
        assert table.declare("ack") == 3
        assert table.name(2) == "req"

    def test_declare_all_prefers_canonical(self):
        """Test that aliases never take an index claimed later in the same batch."""
        table = PropTable()
        assert table.declare_all(["foo", "p1"]) == [2, 1]

    def test_clash(self):
        """Test that a canonical name cannot reuse an alias's index."""
        table = PropTable()
        table.declare("foo")
        with pytest.raises(PropositionClashError):
            table.declare("p1")

    def test_names_sorted_by_index(self):
        """Test that names come back in index order."""
        table = PropTable()
        table.declare_all(["p2", "p10", "p1"])
        assert table.names({10, 1, 2}) == ["p1", "p2", "p10"]


class TestBtlTrees:
    """Test cases for BTL constructors."""

    def test_negative_bound(self):
        """Test that negative bounds are refused."""
        with pytest.raises(NegativeConstantError):
            btl.Always(Fraction(-1), p1)

    def test_empty_window(self):
        """Test that between needs lower <= upper."""
        with pytest.raises(EmptyWindowError):
            btl.Between(Fraction(3), Fraction(1), p1)

    def test_props_and_depth(self):
        """Test proposition collection and temporal nesting depth."""
        f = btl.Eventually(Fraction(8), btl.Always(Fraction(3), btl.And(p1, p2)))
        assert f.props() == {1, 2}
        assert f.depth() == 2

    def test_proposition_index(self):
        """Test that proposition indices start at 1."""
        with pytest.raises(ValueError):
            btl.Prop(0)


class TestParser:
    """Test cases for parse_btl."""

    def test_nested_temporal(self):
        """Test the worked-example formula."""
        assert parse_btl("eventually[8] always[3] p2") == btl.Eventually(
            Fraction(8), btl.Always(Fraction(3), p2)
        )

    def test_and_binds_tighter_than_or(self):
        """Test precedence of & over |."""
        assert parse_btl("p1 & p2 | p3") == btl.Or(btl.And(p1, p2), p3)

    def test_implication_is_right_associative(self):
        """Test that a -> b -> c groups to the right."""
        assert parse_btl("p1 -> p2 -> p3") == btl.Implies(p1, btl.Implies(p2, p3))

    def test_equivalence_loosest(self):
        """Test that <-> binds loosest."""
        assert parse_btl("p1 -> p2 <-> p3") == btl.Iff(btl.Implies(p1, p2), p3)

    def test_unary_binds_tightest(self):
        """Test that prefix operators bind their immediate operand."""
        assert parse_btl("eventually[5] p1 & always[5] !p1") == btl.And(
            btl.Eventually(Fraction(5), p1), btl.Always(Fraction(5), btl.Not(p1))
        )

    def test_unbounded_always(self):
        """Test always without a bound."""
        assert parse_btl("always (p1 -> eventually[30] !p1)") == btl.AlwaysUnbounded(
            btl.Implies(p1, btl.Eventually(Fraction(30), btl.Not(p1)))
        )

    def test_until_forms(self):
        """Test both until operators."""
        assert parse_btl("p1 U p2") == btl.Until(p1, p2)
        assert parse_btl("p1 U[=2] p2") == btl.UntilExact(Fraction(2), p1, p2)

    def test_after_and_between(self):
        """Test after and between with rational bounds."""
        assert parse_btl("after[1/2] p1") == btl.After(Fraction(1, 2), p1)
        assert parse_btl("between[1, 2.5] p1") == btl.Between(
            Fraction(1), Fraction(5, 2), p1
        )

    def test_named_propositions(self):
        """Test that names resolve through a shared table."""
        table = PropTable()
        f = parse_btl("req -> eventually[5] ack", table)
        assert f == btl.Implies(btl.Prop(1), btl.Eventually(Fraction(5), btl.Prop(2)))
        assert table.index("ack") == 2

    def test_negative_constant(self):
        """Test that a negative bound is reported with its position."""
        with pytest.raises(NegativeConstantError, match="line 1"):
            parse_btl("eventually[-1] p1")

    def test_empty_between(self):
        """Test that between[3,1] is refused."""
        with pytest.raises(EmptyWindowError):
            parse_btl("between[3,1] p1")

    def test_syntax_error_position(self):
        """Test that syntax errors carry line and column."""
        with pytest.raises(BtlSyntaxError) as info:
            parse_btl("p1 &")
        assert info.value.line == 1
        assert info.value.column is not None

    def test_unbalanced_parenthesis(self):
        """Test a missing closing parenthesis."""
        with pytest.raises(BtlSyntaxError):
            parse_btl("(p1 | p2")

    def test_clash_through_parser(self):
        """Test that a canonical name clashing with an alias is reported."""
        table = PropTable()
        table.declare("foo")
        with pytest.raises(PropositionClashError):
            parse_btl("p1 & foo", table)

    @pytest.mark.parametrize("text", ["req & (ack", "eventually[-2] req | ack"])
    def test_rejected_formula_leaves_table_alone(self, text):
        """Test that names of a refused formula are not declared."""
        table = PropTable()
        table.declare("busy")
        with pytest.raises((BtlSyntaxError, NegativeConstantError)):
            parse_btl(text, table)
        assert len(table) == 1
        assert "req" not in table
        assert table.declare("req") == 2

    def test_until_with_negated_left(self):
        """Test that a printed until with a prefix-operator left side reparses."""
        f = btl.Until(btl.Not(p1), p2)
        assert parse_btl(format_btl(f)) == f

    @settings(max_examples=200, deadline=None)
    @given(btl_formulas(max_leaves=6))
    def test_print_parse(self, f):
        """Test that parsing the printed form gives the same tree."""
        assert parse_btl(format_btl(f)) == f
