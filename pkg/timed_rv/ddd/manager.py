"""
Difference decision diagrams.

Nodes are integers. 0 and 1 are the terminals; every other node tests one
normalised difference atom and has a low (atom false) and a high (atom true)
successor. Atoms strictly increase along every path and no node has equal
successors. Diagrams are not canonical, so decisions go through path
feasibility rather than through terminal identity.
"""

import logging
from fractions import Fraction
from typing import Dict, FrozenSet, Iterator, List, Set, Tuple

from ..core import mdl
from ..core.bounds import (
    Difference,
    Literal,
    NormAtom,
    literal_difference,
    normalize,
    var_name,
)
from ..exceptions import FreeVariableError, PredicateError
from .feasibility import PathConstraint, literals_feasible, project, tighten

logger = logging.getLogger(__name__)

FALSE = 0
TRUE = 1

AND = "and"
OR = "or"


class DddManager:
    """Unique table, operation caches and decision procedures for DDDs.

    A manager is owned by one thread. Node references are only meaningful
    for the manager that created them and become invalid after ``clear``.
    """

    def __init__(self) -> None:
        self._succ: Dict[int, Tuple[NormAtom, int, int]] = {}
        self._pred: Dict[Tuple[NormAtom, int, int], int] = {}
        self._apply_cache: Dict[Tuple[str, int, int], int] = {}
        self._negate_cache: Dict[int, int] = {}
        self._support_cache: Dict[int, FrozenSet[int]] = {}
        self._next_id = 2

    def __len__(self) -> int:
        """Number of non-terminal nodes"""
        return len(self._succ)

    def __contains__(self, u: int) -> bool:
        return u in (FALSE, TRUE) or u in self._succ

    def succ(self, u: int) -> Tuple[NormAtom, int, int]:
        """(atom, low, high) of a non-terminal node"""
        return self._succ[u]

    def find_or_add(self, atom: NormAtom, low: int, high: int) -> int:
        """Node testing ``atom``, shared with any existing equal node"""
        if low == high:
            return low
        key = (atom, low, high)
        u = self._pred.get(key)
        if u is not None:
            return u
        u = self._next_id
        self._next_id += 1
        self._succ[u] = key
        self._pred[key] = u
        return u

    def literal(self, literal: Literal) -> int:
        atom, branch = literal
        if branch:
            return self.find_or_add(atom, FALSE, TRUE)
        return self.find_or_add(atom, TRUE, FALSE)

    def difference(self, difference: Difference) -> int:
        x, y, bound = difference
        if x == y:
            return TRUE if bound.admits(Fraction(0)) else FALSE
        return self.literal(normalize(x, y, bound))

    def conjunction(self, differences: List[Difference]) -> int:
        u = TRUE
        for difference in differences:
            u = self.apply(AND, u, self.difference(difference))
        return u

    # boolean combinators

    def negate(self, u: int) -> int:
        if u in (FALSE, TRUE):
            return 1 - u
        r = self._negate_cache.get(u)
        if r is not None:
            return r
        atom, low, high = self._succ[u]
        r = self.find_or_add(atom, self.negate(low), self.negate(high))
        self._negate_cache[u] = r
        self._negate_cache[r] = u
        return r

    def _cofactor(self, u: int, atom: NormAtom, branch: bool) -> int:
        """Restrict u to the side of ``atom`` given by ``branch``.

        Atoms over the same variable pair are implied by the tighter one: if
        x - y <= c holds then so does every looser bound on x - y, and if it
        fails then so does every tighter one.
        """
        while u > TRUE:
            u_atom, low, high = self._succ[u]
            if u_atom == atom:
                u = high if branch else low
            elif u_atom.pair != atom.pair:
                break
            elif branch and atom.bound <= u_atom.bound:
                u = high
            elif not branch and u_atom.bound <= atom.bound:
                u = low
            else:
                break
        return u

    def apply(self, op: str, u: int, v: int) -> int:
        """Pointwise ``op`` ("and" or "or") of two diagrams"""
        if op == AND:
            if u == FALSE or v == FALSE:
                return FALSE
            if u == TRUE:
                return v
            if v == TRUE or u == v:
                return u
        elif op == OR:
            if u == TRUE or v == TRUE:
                return TRUE
            if u == FALSE:
                return v
            if v == FALSE or u == v:
                return u
        else:
            raise ValueError(f"unknown operator {op!r}")
        if u > v:
            u, v = v, u
        key = (op, u, v)
        r = self._apply_cache.get(key)
        if r is not None:
            return r
        atom = min(self._succ[u][0], self._succ[v][0])
        high = self.apply(
            op, self._cofactor(u, atom, True), self._cofactor(v, atom, True)
        )
        low = self.apply(
            op, self._cofactor(u, atom, False), self._cofactor(v, atom, False)
        )
        r = self.find_or_add(atom, low, high)
        self._apply_cache[key] = r
        return r

    def ite(self, atom: NormAtom, high: int, low: int) -> int:
        """``high`` where atom holds, ``low`` elsewhere"""
        test = self.find_or_add(atom, FALSE, TRUE)
        return self.apply(
            OR,
            self.apply(AND, test, high),
            self.apply(AND, self.negate(test), low),
        )

    # quantifiers

    def support(self, u: int) -> FrozenSet[int]:
        """Variables mentioned by atoms reachable from u"""
        if u in (FALSE, TRUE):
            return frozenset()
        r = self._support_cache.get(u)
        if r is not None:
            return r
        atom, low, high = self._succ[u]
        r = frozenset(atom.pair) | self.support(low) | self.support(high)
        self._support_cache[u] = r
        return r

    def exists(self, var: int, u: int) -> int:
        """Projection of u along ``var``.

        Walks the paths of u carrying the constraints met on ``var`` and
        eliminates it at the 1-terminal by pairing upper with lower bounds.
        Atoms that do not mention ``var`` are rebuilt around the results.
        """
        cache: Dict[Tuple[int, Tuple[Difference, ...]], int] = {}
        return self._exists(var, u, (), cache)

    def _exists(
        self,
        var: int,
        u: int,
        acc: Tuple[Difference, ...],
        cache: Dict[Tuple[int, Tuple[Difference, ...]], int],
    ) -> int:
        if u == FALSE:
            return FALSE
        residue = project(var, acc)
        if residue is None:
            return FALSE
        if u == TRUE or var not in self.support(u):
            return self.apply(AND, u, self.conjunction(residue))
        key = (u, acc)
        r = cache.get(key)
        if r is not None:
            return r
        atom, low, high = self._succ[u]
        if atom.mentions(var):
            r = self.apply(
                OR,
                self._exists(var, high, _constrain(acc, (atom, True)), cache),
                self._exists(var, low, _constrain(acc, (atom, False)), cache),
            )
        else:
            r = self.ite(
                atom,
                self._exists(var, high, acc, cache),
                self._exists(var, low, acc, cache),
            )
        cache[key] = r
        return r

    def forall(self, var: int, u: int) -> int:
        return self.negate(self.exists(var, self.negate(u)))

    # construction

    def build(self, phi: mdl.MdlFormula, check_closed: bool = False) -> int:
        """Diagram of a predicate-free formula.

        With ``check_closed`` the formula may have no free variable but z.
        """
        if check_closed:
            free = mdl.free_vars(phi) - {0}
            if free:
                names = ", ".join(var_name(v) for v in sorted(free))
                raise FreeVariableError(f"free variables besides z: {names}")
        return self._build(phi)

    def _build(self, phi: mdl.MdlFormula) -> int:
        return mdl.fold(phi, self._combine)

    def _combine(self, phi: mdl.MdlFormula, args: List[int]) -> int:
        if isinstance(phi, mdl.Const):
            return TRUE if phi.value else FALSE
        if isinstance(phi, mdl.Diff):
            u = self.difference((phi.x, phi.y, phi.bound))
            return self.negate(u) if phi.refuted else u
        if isinstance(phi, mdl.PredAtom):
            raise PredicateError(
                f"cannot build a diagram over the predicate P{phi.pred}"
            )
        if isinstance(phi, mdl.Not):
            return self.negate(args[0])
        if isinstance(phi, mdl.And):
            return self.apply(AND, args[0], args[1])
        if isinstance(phi, mdl.Or):
            return self.apply(OR, args[0], args[1])
        if isinstance(phi, mdl.Exists):
            return self.exists(phi.var, args[0])
        if isinstance(phi, mdl.Forall):
            return self.forall(phi.var, args[0])
        raise TypeError(f"not an MDL formula: {phi!r}")

    # decisions

    def _reaches(self, u: int, terminal: int) -> bool:
        """Whether a feasible path leads from u to ``terminal``"""
        stack: List[Tuple[int, Tuple[Literal, ...]]] = [(u, ())]
        while stack:
            node, path = stack.pop()
            if node in (FALSE, TRUE):
                if node == terminal:
                    return True
                continue
            atom, low, high = self._succ[node]
            for branch, child in ((False, low), (True, high)):
                extended = path + ((atom, branch),)
                if literals_feasible(extended):
                    stack.append((child, extended))
        return False

    def is_taut(self, u: int) -> bool:
        """No feasible path reaches 0"""
        return not self._reaches(u, FALSE)

    def is_unsat(self, u: int) -> bool:
        """No feasible path reaches 1"""
        return not self._reaches(u, TRUE)

    # diagnostics

    def paths(self, u: int) -> Iterator[Tuple[PathConstraint, int]]:
        """Every root-to-terminal path with the terminal it ends in"""
        stack: List[Tuple[int, Tuple[Literal, ...]]] = [(u, ())]
        while stack:
            node, path = stack.pop()
            if node in (FALSE, TRUE):
                yield PathConstraint(path), node
                continue
            atom, low, high = self._succ[node]
            stack.append((low, path + ((atom, False),)))
            stack.append((high, path + ((atom, True),)))

    def descendants(self, u: int) -> List[int]:
        """Non-terminal nodes reachable from u, root first"""
        seen: Set[int] = set()
        order: List[int] = []
        stack = [u]
        while stack:
            node = stack.pop()
            if node in (FALSE, TRUE) or node in seen:
                continue
            seen.add(node)
            order.append(node)
            _, low, high = self._succ[node]
            stack.extend((low, high))
        return order

    def dump(self, u: int) -> str:
        """One line per node: ``id: x-y <= c ? high : low``"""
        if u in (FALSE, TRUE):
            return f"{u}"
        lines = []
        for node in self.descendants(u):
            atom, low, high = self._succ[node]
            test = f"{var_name(atom.x)}-{var_name(atom.y)} {atom.bound}"
            lines.append(f"{node}: {test} ? {high} : {low}")
        return "\n".join(lines)

    def validate(self, u: int) -> bool:
        """Raise ``AssertionError`` unless u is ordered, reduced and shared"""
        for node in self.descendants(u):
            atom, low, high = self._succ[node]
            if low == high:
                raise AssertionError(f"node {node} has equal successors")
            if self._pred.get((atom, low, high)) != node:
                raise AssertionError(f"node {node} missing from the unique table")
            for child in (low, high):
                if child > TRUE and not atom < self._succ[child][0]:
                    raise AssertionError(
                        f"order violated between node {node} and {child}"
                    )
        return True

    def stats(self) -> Dict[str, int]:
        return {
            "nodes": len(self._succ),
            "apply_cache": len(self._apply_cache),
            "negate_cache": len(self._negate_cache),
            "support_cache": len(self._support_cache),
        }

    def clear(self) -> None:
        """Drop every node and cache"""
        logger.debug("clearing DDD manager: %s", self.stats())
        self._succ.clear()
        self._pred.clear()
        self._apply_cache.clear()
        self._negate_cache.clear()
        self._support_cache.clear()
        self._next_id = 2


def _constrain(acc: Tuple[Difference, ...], literal: Literal) -> Tuple[Difference, ...]:
    return tighten(acc, literal_difference(literal))
