"""
Unit tests for difference decision diagrams.
"""

from fractions import Fraction

import pytest

from timed_rv.backends import DddBackend, OracleBackend, get_backend
from timed_rv.core import mdl
from timed_rv.core.bounds import ZERO_VAR, Bound, NormAtom
from timed_rv.ddd import (
    FALSE,
    TRUE,
    DddManager,
    PathConstraint,
    feasible,
    path_feasible,
)
from timed_rv.ddd.feasibility import project, tighten
from timed_rv.exceptions import FreeVariableError, PredicateError

Z = ZERO_VAR
F = Fraction


def implies(a, b):
    return mdl.Or(mdl.Not(a), b)


@pytest.fixture
def manager():
    return DddManager()


class TestFeasibility:
    """Test cases for difference-constraint feasibility."""

    def test_tight_cycle(self):
        """Test that x1 = x0 + 1 is feasible."""
        assert feasible([(1, 0, Bound(F(1))), (0, 1, Bound(F(-1)))])

    def test_strict_zero_cycle(self):
        """Test that a zero-weight cycle through a strict edge is infeasible."""
        assert not feasible([(1, 0, Bound(F(1), True)), (0, 1, Bound(F(-1)))])

    def test_negative_cycle(self):
        """Test a three-variable negative cycle."""
        assert not feasible(
            [(1, 0, Bound(F(1))), (2, 1, Bound(F(1))), (0, 2, Bound(F(-3)))]
        )

    def test_self_difference(self):
        """Test constraints on x - x."""
        assert feasible([(1, 1, Bound(F(0)))])
        assert not feasible([(1, 1, Bound(F(0), True))])

    def test_tighten_keeps_tightest(self):
        """Test that only the tightest bound per ordered pair is kept."""
        kept = tighten(((1, 0, Bound(F(3))),), (1, 0, Bound(F(2))))
        assert kept == ((1, 0, Bound(F(2))),)
        assert tighten(kept, (1, 0, Bound(F(5)))) == kept

    def test_project(self):
        """Test elimination by pairing bounds."""
        # x1 - z <= 3 and x2 - x1 <= 1 give x2 - z <= 4
        assert project(1, [(1, Z, Bound(F(3))), (2, 1, Bound(F(1)))]) == [
            (2, Z, Bound(F(4)))
        ]
        assert project(1, [(1, Z, Bound(F(-1))), (Z, 1, Bound(F(0)))]) is None


class TestManager:
    """Test cases for node management and boolean operations."""

    def test_find_or_add_shares_nodes(self, manager):
        """Test hash-consing and the redundant-node rule."""
        atom = NormAtom(0, 1, Bound(F(3)))
        u = manager.find_or_add(atom, FALSE, TRUE)
        assert manager.find_or_add(atom, FALSE, TRUE) == u
        assert manager.find_or_add(atom, TRUE, TRUE) == TRUE
        assert len(manager) == 1
        assert u in manager
        assert manager.succ(u) == (atom, FALSE, TRUE)

    def test_negate_involution(self, manager):
        """Test that negating twice gives the same node."""
        u = manager.build(mdl.And(mdl.diff(1, Z, 3), mdl.diff(2, 1, 0)))
        assert manager.negate(manager.negate(u)) == u

    def test_dump(self, manager):
        """Test the text rendering of a single-atom diagram."""
        u = manager.difference((1, Z, Bound(F(3))))
        assert manager.dump(u) == f"{u}: z-x1 < -3 ? 0 : 1"
        assert manager.dump(TRUE) == "1"

    def test_same_pair_atoms_are_implied(self, manager):
        """Test that a tighter bound on the same pair subsumes a looser one."""
        tight, loose = mdl.diff(1, Z, 3), mdl.diff(1, Z, 5)
        both = mdl.And(tight, loose)
        u = manager.build(mdl.And(implies(both, tight), implies(tight, both)))
        assert manager.is_taut(u)

    def test_apply_rejects_unknown_operator(self, manager):
        """Test that only and/or are supported."""
        with pytest.raises(ValueError):
            manager.apply("xor", TRUE, FALSE)

    def test_validate(self, manager):
        """Test the ordering and reduction check on built diagrams."""
        u = manager.build(
            mdl.Or(mdl.And(mdl.diff(1, Z, 3), mdl.diff(2, 1, 0)), mdl.diff(2, Z, -1))
        )
        assert manager.validate(u)

    def test_stats_and_clear(self, manager):
        """Test cache statistics and clearing."""
        manager.build(mdl.And(mdl.diff(1, Z, 3), mdl.diff(2, 1, 0)))
        assert manager.stats()["nodes"] > 0
        manager.clear()
        assert len(manager) == 0
        assert manager.stats()["apply_cache"] == 0


class TestDecisions:
    """Test cases for tautology and unsatisfiability checks."""

    def test_contingent_atom(self, manager):
        """Test that a lone atom is neither valid nor unsatisfiable."""
        u = manager.build(mdl.diff(1, Z, 3))
        assert not manager.is_taut(u)
        assert not manager.is_unsat(u)

    def test_excluded_middle(self, manager):
        """Test that an atom or its negation is valid."""
        atom = mdl.diff(1, Z, 3)
        assert manager.is_taut(manager.build(mdl.Or(atom, mdl.Not(atom))))

    def test_infeasible_cycle_is_unsat(self, manager):
        """Test that a negative cycle across three pairs is unsatisfiable."""
        u = manager.build(
            mdl.conj(mdl.diff(1, Z, 1), mdl.diff(2, 1, 1), mdl.diff(Z, 2, -3))
        )
        assert u != FALSE
        assert manager.is_unsat(u)

    def test_exists(self, manager):
        """Test that some x1 lies within [z, z+3]."""
        phi = mdl.Exists(1, mdl.And(mdl.diff(Z, 1, 0), mdl.diff(1, Z, 3)))
        assert manager.is_taut(manager.build(phi, check_closed=True))

    def test_exists_through_chain(self, manager):
        """Test projection through an intermediate variable."""
        # exists x1: x1 - z <= 3 and x2 - x1 <= 1 is x2 - z <= 4
        phi = mdl.Exists(1, mdl.And(mdl.diff(1, Z, 3), mdl.diff(2, 1, 1)))
        target = mdl.diff(2, Z, 4)
        u = manager.build(mdl.And(implies(phi, target), implies(target, phi)))
        assert manager.is_taut(u)

    def test_forall(self, manager):
        """Test that not every x1 is within 3 of z."""
        phi = mdl.Forall(1, mdl.diff(1, Z, 3))
        assert manager.is_unsat(manager.build(phi))

    def test_free_variable_check(self, manager):
        """Test that closed decisions refuse extra free variables."""
        with pytest.raises(FreeVariableError):
            manager.build(mdl.diff(1, Z, 3), check_closed=True)

    def test_predicates_refused(self, manager):
        """Test that predicates cannot enter a diagram."""
        with pytest.raises(PredicateError):
            manager.build(mdl.PredAtom(1, Z))

    def test_guarded_window_diagram(self, manager):
        """Test y-x in [0,3] implying y-z in [4,7] on every path."""
        x, y = 1, 2
        guard = mdl.And(mdl.diff(x, y, 0), mdl.diff(y, x, 3))
        window = mdl.And(mdl.diff(Z, y, -4), mdl.diff(y, Z, 7))
        u = manager.build(implies(guard, window))
        assert not manager.is_unsat(u)
        assert not manager.is_taut(u)
        paths = list(manager.paths(u))
        assert {terminal for _, terminal in paths} == {FALSE, TRUE}
        assert all(path_feasible(path) for path, _ in paths)
        assert manager.validate(u)

    def test_path_constraint_text(self, manager):
        """Test the printed form of a path."""
        u = manager.difference((1, Z, Bound(F(3))))
        texts = {str(path) for path, _ in manager.paths(u)}
        assert texts == {"z-x1 < -3", "x1-z <= 3"}
        assert str(PathConstraint(())) == "true"


class TestBackends:
    """Test cases for the decision backends."""

    def test_get_backend(self):
        """Test the backend factory."""
        assert isinstance(get_backend("ddd"), DddBackend)
        assert isinstance(get_backend("oracle"), OracleBackend)
        with pytest.raises(ValueError, match="Unsupported backend"):
            get_backend("sat")

    @pytest.mark.parametrize("backend", [DddBackend(), OracleBackend()])
    def test_agree_on_examples(self, backend):
        """Test both backends on fixed formulas."""
        some = mdl.Exists(1, mdl.And(mdl.diff(Z, 1, 0), mdl.diff(1, Z, 3)))
        none = mdl.Exists(1, mdl.And(mdl.diff(1, Z, 3), mdl.diff(Z, 1, -4)))
        assert backend.is_tautology(some)
        assert not backend.is_unsatisfiable(some)
        assert backend.is_unsatisfiable(none)
        assert not backend.is_tautology(none)

    @pytest.mark.parametrize("backend", [DddBackend(), OracleBackend()])
    def test_free_variables_refused(self, backend):
        """Test that only z may be free."""
        with pytest.raises(FreeVariableError):
            backend.is_tautology(mdl.diff(1, Z, 3))

    def test_ddd_backend_clears_large_tables(self):
        """Test that the node table is bounded."""
        backend = DddBackend(max_nodes=1)
        phi = mdl.Exists(1, mdl.And(mdl.diff(Z, 1, 0), mdl.diff(1, Z, 3)))
        backend.is_tautology(phi)
        backend.is_tautology(phi)
        assert len(backend.manager) <= 4
