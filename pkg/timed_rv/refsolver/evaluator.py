"""
Reference evaluator for monadic difference formulas.

Quantifiers are decided by sampling. With every other variable fixed, the
truth of a body as a function of the quantified variable is piecewise
constant, and its breakpoints are base values (outer variables and interval
endpoints) shifted by sums of constants along chains of difference atoms.
Sampling those breakpoints, a midpoint of every gap between them and a point
beyond the extremes visits every piece.
"""

from fractions import Fraction
from typing import Dict, FrozenSet, List, Mapping, Optional, Set, Tuple

from ..core import mdl
from ..core.bounds import var_name
from ..core.intervals import IntervalUnion
from ..exceptions import UnhousedError

Valuation = Mapping[int, Fraction]
PredicateSets = Mapping[int, IntervalUnion]

_BASE = -1


class _Evaluator:
    def __init__(self, sets: PredicateSets, nonnegative: bool, refine: int):
        self.sets = sets
        self.nonnegative = nonnegative
        self.refine = refine
        self._free: Dict[int, FrozenSet[int]] = {}
        self._offsets: Dict[int, FrozenSet[Fraction]] = {}
        self._memo: Dict[Tuple[int, Tuple[Fraction, ...]], bool] = {}
        self._endpoints: Set[Fraction] = set()
        for region in sets.values():
            self._endpoints |= region.endpoints()

    def free(self, phi: mdl.MdlFormula) -> FrozenSet[int]:
        key = id(phi)
        if key not in self._free:
            self._free[key] = mdl.free_vars(phi)
        return self._free[key]

    def value(self, env: Dict[int, Fraction], var: int) -> Fraction:
        try:
            return env[var]
        except KeyError:
            raise UnhousedError(f"no value for variable {var_name(var)}") from None

    def eval(self, phi: mdl.MdlFormula, env: Dict[int, Fraction]) -> bool:
        if isinstance(phi, mdl.Const):
            return phi.value
        if isinstance(phi, mdl.PredAtom):
            try:
                region = self.sets[phi.pred]
            except KeyError:
                raise UnhousedError(f"no set for predicate P{phi.pred}") from None
            return region.contains(self.value(env, phi.var)) != phi.negated
        if isinstance(phi, mdl.Diff):
            return phi.holds(self.value(env, phi.x), self.value(env, phi.y))
        if isinstance(phi, mdl.Not):
            return not self.eval(phi.arg, env)
        if isinstance(phi, mdl.And):
            return self.eval(phi.left, env) and self.eval(phi.right, env)
        if isinstance(phi, mdl.Or):
            return self.eval(phi.left, env) or self.eval(phi.right, env)
        if isinstance(phi, mdl.Quantifier):
            return self.quantify(phi, env)
        raise TypeError(f"not an MDL formula: {phi!r}")

    def quantify(self, phi, env: Dict[int, Fraction]) -> bool:
        free = sorted(self.free(phi))
        key = (id(phi), tuple(self.value(env, v) for v in free))
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        universal = isinstance(phi, mdl.Forall)
        inner = dict(env)
        result = universal
        for candidate in self.candidates(phi, env):
            inner[phi.var] = candidate
            if self.eval(phi.body, inner) != universal:
                result = not universal
                break
        self._memo[key] = result
        return result

    def offsets(self, phi) -> FrozenSet[Fraction]:
        """Walk sums from the base node to the quantified variable"""
        key = id(phi)
        if key in self._offsets:
            return self._offsets[key]
        local = {phi.var} | mdl.bound_vars(phi.body)
        graph: Dict[int, Set[Tuple[int, Fraction]]] = {}

        def node(v: int) -> int:
            return v if v in local else _BASE

        def link(a: int, b: int, weight: Fraction) -> None:
            # breakpoint of b is breakpoint of a plus weight
            graph.setdefault(a, set()).add((b, weight))
            graph.setdefault(b, set()).add((a, -weight))

        for sub in phi.body.walk():
            if isinstance(sub, mdl.Diff):
                x, y = node(sub.x), node(sub.y)
                if x != y:
                    link(y, x, sub.bound.value)
            elif isinstance(sub, mdl.PredAtom) and node(sub.var) != _BASE:
                link(_BASE, sub.var, Fraction(0))
        found: Set[Fraction] = {Fraction(0)}
        frontier = {(_BASE, Fraction(0))}
        for _ in range(len(local)):
            step = set()
            for v, total in frontier:
                for w, weight in graph.get(v, ()):
                    step.add((w, total + weight))
            found |= {total for v, total in step if v == phi.var}
            frontier = step
        result = frozenset(found)
        self._offsets[key] = result
        return result

    def candidates(self, phi, env: Dict[int, Fraction]) -> List[Fraction]:
        bases = {self.value(env, v) for v in self.free(phi)}
        bases |= self._endpoints | {Fraction(0)}
        points = {b + o for b in bases for o in self.offsets(phi)}
        if self.nonnegative:
            points = {p for p in points if p >= 0}
        ordered = sorted(points)
        samples = set(ordered)
        steps = self.refine + 1
        for lo, hi in zip(ordered, ordered[1:]):
            for i in range(1, steps + 1):
                samples.add(lo + (hi - lo) * i / (steps + 1))
        samples.add(ordered[-1] + 1)
        if not self.nonnegative:
            samples.add(ordered[0] - 1)
        guards = self.guards(phi, env)
        return sorted(p for p in samples if all(g(p) for g in guards))

    def guards(self, phi, env: Dict[int, Fraction]) -> List:
        """Tests on the quantified value that every relevant sample passes.

        For an existential these are conjuncts the body cannot do without.
        For a universal they are negated disjuncts, outside of which the body
        holds anyway.
        """
        universal = isinstance(phi, mdl.Forall)
        parts = _flatten(phi.body, mdl.Or if universal else mdl.And, False)
        tests = []
        for atom, refuted in parts:
            if {atom.x, atom.y} - {phi.var} - set(env):
                continue
            if phi.var not in (atom.x, atom.y):
                continue
            keep_when = not refuted if not universal else refuted
            tests.append(_atom_test(atom, phi.var, env, keep_when))
        return tests


def _flatten(
    phi: mdl.MdlFormula, kind, negated: bool
) -> List[Tuple[mdl.Diff, bool]]:
    """Difference atoms among the top-level ``kind`` operands, with polarity"""
    if isinstance(phi, mdl.Not):
        other = mdl.Or if kind is mdl.And else mdl.And
        return _flatten(phi.arg, other, not negated)
    if isinstance(phi, kind):
        return _flatten(phi.left, kind, negated) + _flatten(phi.right, kind, negated)
    if isinstance(phi, mdl.Diff):
        return [(phi, phi.refuted != negated)]
    return []


def _atom_test(atom: mdl.Diff, var: int, env: Dict[int, Fraction], wanted: bool):
    def test(value: Fraction) -> bool:
        x = value if atom.x == var else env[atom.x]
        y = value if atom.y == var else env[atom.y]
        return atom.bound.admits(x - y) == wanted

    return test


def eval_mdl(
    phi: mdl.MdlFormula,
    valuation: Valuation,
    sets: Optional[PredicateSets] = None,
    nonnegative: bool = True,
    refine: int = 0,
) -> bool:
    """Satisfaction of phi under a valuation and predicate sets.

    Variables range over the non-negative reals unless ``nonnegative`` is
    False. ``refine`` adds extra samples between breakpoints.
    """
    evaluator = _Evaluator(sets or {}, nonnegative, refine)
    env = {var: Fraction(value) for var, value in valuation.items()}
    return evaluator.eval(phi, env)
