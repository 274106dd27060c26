"""Totally ordered value groups: Z, and Z x Z with lexicographic order.

Elements carry a distinguished top element (infinity) that exceeds every
finite element and absorbs addition.  Both supported groups are discretely
ordered: every element has an immediate successor, obtained by incrementing
the last coordinate.  This makes "reduce modulo I_gamma" well defined as
"known below succ(gamma)".
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError

LESS, EQUAL, GREATER = -1, 0, 1


@dataclass(frozen=True)
class ValGroupElem:
    coords: tuple[int, ...] = ()
    top: bool = False

    def __post_init__(self):
        if not self.top and not self.coords:
            raise ConfigError("finite value-group element needs coordinates")

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __repr__(self):
        if self.top:
            return "oo"
        if len(self.coords) == 1:
            return str(self.coords[0])
        return repr(self.coords)


def vg(*coords: int) -> ValGroupElem:
    return ValGroupElem(tuple(coords))


VG_TOP = ValGroupElem((), top=True)


def _check_compatible(a: ValGroupElem, b: ValGroupElem):
    if a.top or b.top:
        return
    if len(a.coords) != len(b.coords):
        raise ConfigError(f"mixed value groups: rank {len(a.coords)} vs {len(b.coords)}")


def vg_compare(a: ValGroupElem, b: ValGroupElem) -> int:
    """Total order: lexicographic on coords, with the top element greatest."""
    _check_compatible(a, b)
    if a.top and b.top:
        return EQUAL
    if a.top:
        return GREATER
    if b.top:
        return LESS
    if a.coords < b.coords:
        return LESS
    if a.coords > b.coords:
        return GREATER
    return EQUAL


def vg_lt(a, b):
    return vg_compare(a, b) == LESS


def vg_le(a, b):
    return vg_compare(a, b) != GREATER


def vg_gt(a, b):
    return vg_compare(a, b) == GREATER


def vg_ge(a, b):
    return vg_compare(a, b) != LESS


def vg_eq(a, b):
    return vg_compare(a, b) == EQUAL


def vg_min(a, b):
    return a if vg_le(a, b) else b


def vg_max(a, b):
    return a if vg_ge(a, b) else b


def vg_add(a: ValGroupElem, b: ValGroupElem) -> ValGroupElem:
    _check_compatible(a, b)
    if a.top or b.top:
        return VG_TOP
    return ValGroupElem(tuple(x + y for x, y in zip(a.coords, b.coords)))


def vg_sub(a: ValGroupElem, b: ValGroupElem) -> ValGroupElem:
    """a - b; defined for finite b (oo - finite = oo)."""
    if b.top:
        raise ConfigError("cannot subtract the top element")
    if a.top:
        return VG_TOP
    _check_compatible(a, b)
    return ValGroupElem(tuple(x - y for x, y in zip(a.coords, b.coords)))


def vg_neg(a: ValGroupElem) -> ValGroupElem:
    if a.top:
        raise ConfigError("cannot negate the top element")
    return ValGroupElem(tuple(-x for x in a.coords))


def vg_scale(a: ValGroupElem, n: int) -> ValGroupElem:
    if a.top:
        if n <= 0:
            raise ConfigError("cannot scale the top element by n <= 0")
        return VG_TOP
    return ValGroupElem(tuple(n * x for x in a.coords))


def vg_succ(a: ValGroupElem) -> ValGroupElem:
    """Immediate successor: increment the last coordinate."""
    if a.top:
        return VG_TOP
    return ValGroupElem(a.coords[:-1] + (a.coords[-1] + 1,))


def vg_is_even(a: ValGroupElem) -> bool:
    """Divisibility by 2 in the group (both coords even for rank 2)."""
    if a.top:
        raise ConfigError("parity of the top element is undefined")
    return all(c % 2 == 0 for c in a.coords)


def vg_half(a: ValGroupElem) -> ValGroupElem:
    if not vg_is_even(a):
        raise ConfigError(f"{a} is not divisible by 2 in the value group")
    return ValGroupElem(tuple(c // 2 for c in a.coords))


def vg_zero(rank: int) -> ValGroupElem:
    return ValGroupElem((0,) * rank)
