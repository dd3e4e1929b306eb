"""
Difference decision diagrams and path feasibility
"""

from .feasibility import PathConstraint, feasible, path_feasible
from .manager import AND, FALSE, OR, TRUE, DddManager

__all__ = [
    "DddManager",
    "PathConstraint",
    "feasible",
    "path_feasible",
    "AND",
    "OR",
    "FALSE",
    "TRUE",
]
