"""
Decision backend on difference decision diagrams
"""

import logging

from ..core import mdl
from ..ddd import DddManager
from .base import DecisionBackend

logger = logging.getLogger(__name__)


class DddBackend(DecisionBackend):
    """Builds a diagram per query and searches it for feasible paths.

    The node table is cleared once it grows past ``max_nodes``.
    """

    name = "ddd"

    def __init__(self, max_nodes: int = 200_000):
        self.manager = DddManager()
        self.max_nodes = max_nodes

    def _diagram(self, phi: mdl.MdlFormula) -> int:
        if len(self.manager) > self.max_nodes:
            logger.debug("node table above %d, clearing", self.max_nodes)
            self.manager.clear()
        return self.manager.build(phi, check_closed=True)

    def is_tautology(self, phi: mdl.MdlFormula) -> bool:
        return self.manager.is_taut(self._diagram(phi))

    def is_unsatisfiable(self, phi: mdl.MdlFormula) -> bool:
        return self.manager.is_unsat(self._diagram(phi))

    def dump(self, phi: mdl.MdlFormula) -> str:
        return self.manager.dump(self._diagram(phi))

    def close(self) -> None:
        self.manager.clear()
