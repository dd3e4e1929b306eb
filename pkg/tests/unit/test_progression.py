"""
Unit tests for reach analysis and quantifier settling.
"""

from fractions import Fraction

import pytest

from timed_rv.core import mdl
from timed_rv.core.bounds import ZERO_VAR
from timed_rv.core.intervals import IntervalUnion
from timed_rv.core.parser import parse_btl
from timed_rv.core.progression import (
    Progression,
    clip,
    lookahead,
    predicate_reach,
    restrict,
    root_quantifiers,
)
from timed_rv.core.translate import translate_positive

Z = ZERO_VAR
F = Fraction

RESPONSE = "always (p1 -> eventually[5] p2)"


def positive(text):
    return translate_positive(parse_btl(text))


class TestPredicateReach:
    """Test cases for the offsets at which predicates are read."""

    def test_atom(self):
        """Test that an atom is read at time 0 only."""
        assert predicate_reach(mdl.PredAtom(1, Z)) == {1: (F(0), F(0))}

    def test_bounded_always(self):
        """Test that the guard bounds the read window."""
        assert predicate_reach(positive("always[3] p1")) == {1: (F(0), F(3))}

    def test_nested_windows_add_up(self):
        """Test that an inner window is shifted by the outer one."""
        reach = predicate_reach(positive("eventually[8] always[3] p2"))
        assert reach == {2: (F(0), F(11))}

    def test_unbounded(self):
        """Test that an unbounded invariant reads every later time."""
        reach = predicate_reach(positive(RESPONSE))
        assert reach == {1: (F(0), None), 2: (F(0), None)}


class TestLookahead:
    """Test cases for how far a quantifier body reads past its variable."""

    @pytest.mark.parametrize(
        "text,expected",
        [
            ("eventually[8] always[3] p2", F(3)),
            (RESPONSE, F(5)),
            ("always[4] p1", F(0)),
            ("eventually[2] always p1", None),
        ],
    )
    def test_root_lookahead(self, text, expected):
        """Test the lookahead of the outermost quantifier."""
        (root,) = root_quantifiers(positive(text))
        assert lookahead(root) == expected

    def test_roots_under_connectives(self):
        """Test that quantifiers joined by connectives are all found."""
        roots = root_quantifiers(positive("eventually[5] p1 & always[5] !p1"))
        assert [type(q) for q in roots] == [mdl.Exists, mdl.Forall]


class TestClip:
    """Test cases for trimming known regions."""

    def test_clip_to_reach(self):
        """Test that regions are cut to the hull and unread predicates dropped."""
        known = {1: IntervalUnion.closed(F(0), F(10)), 2: IntervalUnion.point(F(0))}
        assert clip(known, {1: (F(4), None)}) == {1: IntervalUnion.closed(F(4), F(10))}

    def test_negative_lower_end(self):
        """Test that a hull reaching below 0 keeps the region from 0."""
        known = {1: IntervalUnion.closed(F(0), F(5))}
        assert clip(known, {1: (F(-2), F(1))}) == {1: IntervalUnion.closed(F(0), F(1))}


class TestRestrict:
    """Test cases for limiting a quantifier to a slice."""

    def test_forall_lower(self):
        """Test that a settled universal skips everything up to the bound."""
        body = mdl.PredAtom(1, 1)
        assert restrict(mdl.Forall(1, body), F(2), None) == mdl.Forall(
            1, mdl.Or(mdl.diff(1, Z, 2), body)
        )

    def test_exists_both_ends(self):
        """Test that an existential slice conjoins both ends."""
        body = mdl.PredAtom(1, 1)
        guard = mdl.And(mdl.diff(1, Z, 2, refuted=True), mdl.diff(1, Z, 5))
        assert restrict(mdl.Exists(1, body), F(2), F(5)) == mdl.Exists(
            1, mdl.And(guard, body)
        )

    def test_unrestricted(self):
        """Test that no bounds leave the quantifier alone."""
        phi = mdl.Exists(1, mdl.PredAtom(1, 1))
        assert restrict(phi, None, None) is phi


class TestProgression:
    """Test cases for settled bounds."""

    def test_no_slice_before_lookahead(self):
        """Test that nothing can settle while the lookahead reaches past 0."""
        assert Progression(positive(RESPONSE)).slices(F(3)) == []

    def test_settle(self):
        """Test slicing, settling and the restricted formula."""
        formula = positive(RESPONSE)
        (root,) = root_quantifiers(formula)
        progression = Progression(formula)
        assert progression.current() is formula
        assert progression.slices(F(7)) == [(0, restrict(root, None, F(2)), F(2))]
        progression.settle(0, F(2))
        assert progression.slices(F(7)) == []
        assert progression.slices(F(8)) == [(0, restrict(root, F(2), F(3)), F(3))]
        assert progression.current() == restrict(root, F(2), None)
        assert predicate_reach(progression.current())[1] == (F(2), None)

    def test_unbounded_lookahead_never_settles(self):
        """Test that a body reading unbounded future offers no slice."""
        assert Progression(positive("eventually[2] always p1")).slices(F(50)) == []
