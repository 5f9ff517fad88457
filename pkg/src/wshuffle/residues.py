"""Simple-pole residues, iterated residue collections and constant terms."""
from __future__ import annotations

from typing import Sequence

from .ratfun import RatFun, var
from .series import laurent_coeffs

__all__ = [
    "PoleOrderError",
    "pole_order",
    "residue_simple",
    "constant_term",
    "constant_term_iterated",
    "iterated_residue_collection",
]


class PoleOrderError(ValueError):
    def __init__(self, locus: str, order: int):
        super().__init__(f"pole of order {order} along {locus}; only simple poles are supported")
        self.locus = locus
        self.order = order


def pole_order(F: RatFun, name: str, value: RatFun) -> int:
    """Order of the pole of ``F`` along ``name = value`` (0 if regular)."""
    lin = var(name) - value
    order = 0
    G = F
    while True:
        try:
            G.subs({name: value})
            return order
        except ZeroDivisionError:
            G = G * lin
            order += 1


def residue_simple(F: RatFun, name: str, value) -> RatFun:
    """``Res_{name=value} F = ((name - value) F)|_{name=value}``; zero when regular."""
    value = RatFun.coerce(value)
    lin = var(name) - value
    try:
        F.subs({name: value})
        return RatFun(0, n=F.n)
    except ZeroDivisionError:
        pass
    G = F * lin
    try:
        return G.subs({name: value})
    except ZeroDivisionError:
        raise PoleOrderError(f"{name} = {value}", pole_order(F, name, value)) from None


def constant_term(F: RatFun, name: str) -> RatFun:
    """Coefficient of ``name**0`` in the expansion of ``F`` around ``name = 0``."""
    return laurent_coeffs(F, name, 0, 0).get(0, RatFun(0, n=F.n))


def constant_term_iterated(F: RatFun, order: Sequence[str]) -> RatFun:
    """Iterated residue at 0 with measure dz/(2 pi i z), first in ``order[0]``.

    Equivalent to the constant term of the expansion in the regime
    |order[0]| << |order[1]| << ... .
    """
    for name in order:
        F = constant_term(F, name)
        if F.is_zero():
            break
    return F


def iterated_residue_collection(
    F: RatFun,
    groups: Sequence[Sequence[str]],
    step,
    out_names: Sequence[str] | None = None,
) -> RatFun:
    """Residues along ``z_{c+i} = z_c * step**i`` inside each group, then
    relabel the group's leading variable as ``y_s``."""
    step = RatFun.coerce(step)
    out_names = list(out_names) if out_names is not None else [f"y{s + 1}" for s in range(len(groups))]
    for grp, yname in zip(groups, out_names):
        lead = var(grp[0])
        for i, name in enumerate(grp[1:], start=1):
            F = residue_simple(F, name, lead * step**i)
        if grp[0] != yname:
            F = F.subs({grp[0]: var(yname)})
    return F
