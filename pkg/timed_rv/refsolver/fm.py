"""
Fourier-Motzkin decision procedure for predicate-free difference formulas
"""

from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from ..core import mdl
from ..core.bounds import Bound, Literal, difference_literal, literal_difference
from ..exceptions import PredicateError

# A conjunction of constraints x - y <= b / x - y < b, tightest per ordered pair.
Conjunction = Dict[Tuple[int, int], Bound]


class DlStatus(Enum):
    VALID = "valid"
    UNSATISFIABLE = "unsatisfiable"
    CONTINGENT = "contingent"


def _eliminate(var: int, conj: Conjunction) -> Optional[Conjunction]:
    uppers = [(y, b) for (x, y), b in conj.items() if x == var]
    lowers = [(x, b) for (x, y), b in conj.items() if y == var]
    result = {pair: b for pair, b in conj.items() if var not in pair}
    for y, upper in uppers:
        for x, lower in lowers:
            combined = upper + lower
            if x == y:
                if not combined.admits(Fraction(0)):
                    return None
            elif (x, y) not in result or combined < result[(x, y)]:
                result[(x, y)] = combined
    return result


def fm_eliminate(
    var: int, literals: Iterable[Literal]
) -> Optional[FrozenSet[Literal]]:
    """Project a conjunction of literals along ``var``.

    Every upper bound on var is paired with every lower bound. Returns None
    when a pairing leaves a false constant comparison.
    """
    conj: Conjunction = {}
    for literal in literals:
        _add(conj, *literal_difference(literal))
    result = _eliminate(var, conj)
    if result is None:
        return None
    return frozenset(difference_literal((x, y, b)) for (x, y), b in result.items())


def _add(conj: Conjunction, x: int, y: int, bound: Bound) -> bool:
    """Conjoin x - y <= bound; False when it is a false constant comparison"""
    if x == y:
        return bound.admits(Fraction(0))
    current = conj.get((x, y))
    if current is None or bound < current:
        conj[(x, y)] = bound
    return True


def _variables(conj: Conjunction) -> Set[int]:
    return {v for pair in conj for v in pair}


def satisfiable(conj: Conjunction) -> bool:
    """Eliminate every variable in turn; feasible iff no contradiction appears"""
    current = dict(conj)
    for var in sorted(_variables(conj)):
        reduced = _eliminate(var, current)
        if reduced is None:
            return False
        current = reduced
    return True


def _key(conj: Conjunction) -> Tuple:
    return tuple(sorted((pair, b.key()) for pair, b in conj.items()))


def _prune(conjs: Iterable[Conjunction]) -> List[Conjunction]:
    seen = set()
    kept = []
    for conj in conjs:
        key = _key(conj)
        if key in seen or not satisfiable(conj):
            continue
        seen.add(key)
        kept.append(conj)
    return kept


def _meet(left: List[Conjunction], right: List[Conjunction]) -> List[Conjunction]:
    out = []
    for a, b in product(left, right):
        merged = dict(a)
        if all(_add(merged, x, y, bound) for (x, y), bound in b.items()):
            out.append(merged)
    return _prune(out)


def _negate(dnf: List[Conjunction]) -> List[Conjunction]:
    """DNF of the negation: one complemented constraint from each disjunct"""
    result: List[Conjunction] = [{}]
    for conj in dnf:
        options = [{(y, x): b.complement()} for (x, y), b in conj.items()]
        result = _meet(result, options)
        if not result:
            break
    return result


def _dnf(phi: mdl.MdlFormula) -> List[Conjunction]:
    """Satisfiable disjuncts of a positive-form formula"""
    if isinstance(phi, mdl.Const):
        return [{}] if phi.value else []
    if isinstance(phi, mdl.Diff):
        if phi.refuted:
            return [{(phi.y, phi.x): phi.bound.complement()}]
        return [{(phi.x, phi.y): phi.bound}]
    if isinstance(phi, mdl.PredAtom):
        raise PredicateError(f"predicate P{phi.pred} in a difference-logic query")
    if isinstance(phi, mdl.Or):
        return _prune(_dnf(phi.left) + _dnf(phi.right))
    if isinstance(phi, mdl.And):
        return _meet(_dnf(phi.left), _dnf(phi.right))
    if isinstance(phi, mdl.Exists):
        projected = (_eliminate(phi.var, conj) for conj in _dnf(phi.body))
        return _prune(c for c in projected if c is not None)
    if isinstance(phi, mdl.Forall):
        counter = mdl.Exists(phi.var, mdl.to_positive_form(phi.body, negate=True))
        return _negate(_dnf(counter))
    raise TypeError(f"not a positive-form formula: {phi!r}")


def dnf(phi: mdl.MdlFormula) -> List[Conjunction]:
    """Quantifier-free DNF of phi over its free variables"""
    return _dnf(mdl.to_positive_form(phi))


def decide_dl(phi: mdl.MdlFormula) -> DlStatus:
    """Exact status of a predicate-free formula over the reals"""
    if mdl.has_predicates(phi):
        raise PredicateError("decide_dl needs a predicate-free formula")
    if not dnf(phi):
        return DlStatus.UNSATISFIABLE
    if not dnf(mdl.Not(phi)):
        return DlStatus.VALID
    return DlStatus.CONTINGENT
