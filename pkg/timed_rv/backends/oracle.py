"""
Decision backend on the Fourier-Motzkin reference procedure
"""

from ..core import mdl
from ..refsolver.fm import DlStatus, decide_dl
from .base import DecisionBackend


class OracleBackend(DecisionBackend):
    """Exact but exponential; meant for small formulas and cross-checks"""

    name = "oracle"

    def is_tautology(self, phi: mdl.MdlFormula) -> bool:
        self.check_closed(phi)
        return decide_dl(phi) is DlStatus.VALID

    def is_unsatisfiable(self, phi: mdl.MdlFormula) -> bool:
        self.check_closed(phi)
        return decide_dl(phi) is DlStatus.UNSATISFIABLE
