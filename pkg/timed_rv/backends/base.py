"""
Abstract base class for decision backends
"""

from abc import ABC, abstractmethod

from ..core import mdl
from ..core.bounds import ZERO_VAR, var_name
from ..exceptions import FreeVariableError


class DecisionBackend(ABC):
    """Decides predicate-free formulas whose only free variable is z"""

    name = "abstract"

    @abstractmethod
    def is_tautology(self, phi: mdl.MdlFormula) -> bool:
        """Whether phi holds for every value of z"""
        pass

    @abstractmethod
    def is_unsatisfiable(self, phi: mdl.MdlFormula) -> bool:
        """Whether phi holds for no value of z"""
        pass

    def dump(self, phi: mdl.MdlFormula) -> str:
        """Diagnostic rendering of what the backend decides on"""
        return mdl.format_mdl(phi)

    def close(self) -> None:
        """Release caches"""
        pass

    @staticmethod
    def check_closed(phi: mdl.MdlFormula) -> None:
        free = mdl.free_vars(phi) - {ZERO_VAR}
        if free:
            names = ", ".join(var_name(v) for v in sorted(free))
            raise FreeVariableError(f"free variables besides z: {names}")
