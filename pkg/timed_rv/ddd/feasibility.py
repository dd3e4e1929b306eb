"""
Feasibility of difference-constraint conjunctions
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..core.bounds import (
    Bound,
    Difference,
    Literal,
    format_difference,
    literal_difference,
)

# Edge weights are (value, -strict_count) compared lexicographically, so a cycle
# is negative exactly when it sums below zero or to zero through a strict edge.
Weight = Tuple[Fraction, int]


def _weight(bound: Bound) -> Weight:
    return (bound.value, -1 if bound.strict else 0)


def _add(a: Weight, b: Weight) -> Weight:
    return (a[0] + b[0], a[1] + b[1])


def feasible(differences: Iterable[Difference]) -> bool:
    """Bellman-Ford over the constraint graph: edge y -> x of weight c for x - y <= c"""
    edges: List[Tuple[int, int, Weight]] = []
    nodes = set()
    for x, y, bound in differences:
        if x == y:
            if not bound.admits(Fraction(0)):
                return False
            continue
        edges.append((y, x, _weight(bound)))
        nodes.update((x, y))
    if not edges:
        return True
    distance: Dict[int, Weight] = {node: (Fraction(0), 0) for node in nodes}
    for _ in range(len(nodes) - 1):
        changed = False
        for source, target, weight in edges:
            candidate = _add(distance[source], weight)
            if candidate < distance[target]:
                distance[target] = candidate
                changed = True
        if not changed:
            return True
    return all(
        _add(distance[source], weight) >= distance[target]
        for source, target, weight in edges
    )


@dataclass(frozen=True)
class PathConstraint:
    """The atoms met on one root-to-terminal path, with the branch taken"""

    literals: Tuple[Literal, ...]

    def differences(self) -> List[Difference]:
        return [literal_difference(literal) for literal in self.literals]

    def __str__(self) -> str:
        return " & ".join(format_difference(d) for d in self.differences()) or "true"


def path_feasible(path: PathConstraint) -> bool:
    """Whether some real assignment traverses the path"""
    return feasible(path.differences())


def literals_feasible(literals: Sequence[Literal]) -> bool:
    return feasible(literal_difference(literal) for literal in literals)


def tighten(
    constraints: Tuple[Difference, ...], difference: Difference
) -> Tuple[Difference, ...]:
    """Add a constraint, keeping only the tightest bound per ordered pair"""
    x, y, bound = difference
    kept = []
    for cx, cy, cbound in constraints:
        if (cx, cy) == (x, y):
            if cbound <= bound:
                return constraints
            continue
        kept.append((cx, cy, cbound))
    kept.append(difference)
    return tuple(sorted(kept, key=lambda d: (d[0], d[1], d[2].key())))


def project(var: int, differences: Iterable[Difference]) -> Optional[List[Difference]]:
    """Eliminate ``var`` by pairing its upper and lower bounds.

    Returns None when a pairing yields a contradiction between constants.
    """
    uppers: List[Tuple[int, Bound]] = []  # var - b <= B
    lowers: List[Tuple[int, Bound]] = []  # a - var <= B
    rest: List[Difference] = []
    for x, y, bound in differences:
        if x == var:
            uppers.append((y, bound))
        elif y == var:
            lowers.append((x, bound))
        else:
            rest.append((x, y, bound))
    for b, upper in uppers:
        for a, lower in lowers:
            combined = upper + lower
            if a == b:
                if not combined.admits(Fraction(0)):
                    return None
            else:
                rest.append((a, b, combined))
    return rest
