"""
Translation of bounded temporal logic into monadic difference logic
"""

from fractions import Fraction
from typing import Optional

from . import btl
from . import mdl
from .bounds import ZERO_VAR


def _at_or_after(x: int, y: int) -> mdl.MdlFormula:
    """0 <= y - x"""
    return mdl.diff(x, y, Fraction(0))


def _within(x: int, y: int, c: Fraction, strict: bool = False) -> mdl.MdlFormula:
    """y - x <= c, or y - x < c"""
    return mdl.diff(y, x, c, strict)


def _from(x: int, y: int, c: Fraction) -> mdl.MdlFormula:
    """c <= y - x"""
    return mdl.diff(x, y, -c)


def _implies(guard: mdl.MdlFormula, body: mdl.MdlFormula) -> mdl.MdlFormula:
    return mdl.Or(mdl.Not(guard), body)


def translate(
    psi: btl.BtlFormula, x: int = ZERO_VAR, fresh: Optional[mdl.VarSupply] = None
) -> mdl.MdlFormula:
    """T(psi) at starting point x.

    Fresh variables are drawn from ``fresh`` left to right in pre-order, so the
    output is deterministic and every quantifier binds its own variable.
    """
    if fresh is None:
        fresh = mdl.VarSupply()

    if isinstance(psi, btl.Prop):
        return mdl.PredAtom(psi.index, x)
    if isinstance(psi, btl.Not):
        return mdl.Not(translate(psi.arg, x, fresh))
    if isinstance(psi, btl.And):
        left = translate(psi.left, x, fresh)
        return mdl.And(left, translate(psi.right, x, fresh))
    if isinstance(psi, btl.Or):
        left = translate(psi.left, x, fresh)
        return mdl.Or(left, translate(psi.right, x, fresh))
    if isinstance(psi, btl.Implies):
        left = translate(psi.left, x, fresh)
        return _implies(left, translate(psi.right, x, fresh))
    if isinstance(psi, btl.Iff):
        # each side occurs twice; the copies get their own variables
        a = translate(psi.left, x, fresh)
        b = translate(psi.right, x, fresh)
        b2 = translate(psi.right, x, fresh)
        a2 = translate(psi.left, x, fresh)
        return mdl.And(_implies(a, b), _implies(b2, a2))

    if isinstance(psi, btl.Always):
        y = fresh.fresh()
        guard = mdl.And(_at_or_after(x, y), _within(x, y, psi.bound))
        return mdl.Forall(y, _implies(guard, translate(psi.arg, y, fresh)))
    if isinstance(psi, btl.Eventually):
        y = fresh.fresh()
        guard = mdl.And(_at_or_after(x, y), _within(x, y, psi.bound))
        return mdl.Exists(y, mdl.And(guard, translate(psi.arg, y, fresh)))
    if isinstance(psi, btl.AlwaysUnbounded):
        y = fresh.fresh()
        body = translate(psi.arg, y, fresh)
        return mdl.Forall(y, _implies(_at_or_after(x, y), body))
    if isinstance(psi, btl.After):
        y = fresh.fresh()
        body = translate(psi.arg, y, fresh)
        return mdl.Exists(y, mdl.And(_from(x, y, psi.bound), body))
    if isinstance(psi, btl.Between):
        y = fresh.fresh()
        guard = mdl.And(_from(x, y, psi.lower), _within(x, y, psi.upper))
        return mdl.Exists(y, mdl.And(guard, translate(psi.arg, y, fresh)))
    if isinstance(psi, btl.UntilExact):
        y = fresh.fresh()
        hold = mdl.And(_at_or_after(x, y), _within(x, y, psi.bound, strict=True))
        left = mdl.Forall(y, _implies(hold, translate(psi.left, y, fresh)))
        u = fresh.fresh()
        at = mdl.And(_within(x, u, psi.bound), _from(x, u, psi.bound))
        right = mdl.Forall(u, _implies(at, translate(psi.right, u, fresh)))
        return mdl.And(left, right)
    if isinstance(psi, btl.Until):
        y = fresh.fresh()
        reach = mdl.And(_at_or_after(x, y), translate(psi.right, y, fresh))
        u = fresh.fresh()
        before = mdl.And(_at_or_after(x, u), mdl.diff(u, y, Fraction(0), strict=True))
        hold = mdl.Forall(u, _implies(before, translate(psi.left, u, fresh)))
        return mdl.Exists(y, mdl.And(reach, hold))
    raise TypeError(f"not a BTL formula: {psi!r}")


def translate_positive(psi: btl.BtlFormula) -> mdl.MdlFormula:
    """Positive form of T(psi) at z"""
    return mdl.to_positive_form(translate(psi, ZERO_VAR, mdl.VarSupply()))
