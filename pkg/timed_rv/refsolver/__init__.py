"""
Independent reference oracles: run evaluation, MDL evaluation and a
Fourier-Motzkin decision procedure for difference logic
"""

from .evaluator import eval_mdl
from .fm import DlStatus, decide_dl, fm_eliminate
from .runs import ThreeValued, eval_btl, monadic_sets, truth_sets

__all__ = [
    "eval_mdl",
    "eval_btl",
    "monadic_sets",
    "truth_sets",
    "ThreeValued",
    "fm_eliminate",
    "decide_dl",
    "DlStatus",
]
