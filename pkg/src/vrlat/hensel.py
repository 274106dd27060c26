"""2-Henselian root finding.

Square roots of 1+y for v(y) > 2v(2), the dominant-middle-coefficient
quadratic solver, Artin-Schreier equations over residue characteristic 2,
and square-class tests.  Everything certifies its valuation contract and
raises IndeterminateValuation instead of returning an uncertified answer.
"""

from __future__ import annotations

from .errors import DomainError, IndeterminateValuation, NoSolution
from .rings import RingElem
from .valgroup import (ValGroupElem, vg_add, vg_eq, vg_ge, vg_gt, vg_half,
                       vg_is_even, vg_lt, vg_min, vg_scale, vg_sub)

_MAX_NEWTON = 64


def sqrt_one_plus(y: RingElem) -> RingElem:
    """The z with (1+z)^2 = 1+y and v(z) > v(2), for v(y) > 2v(2).

    Newton iteration from 1; the returned precision reflects the achieved
    residual.  v(z) = v(y) - v(2) holds exactly.
    """
    cfg = y.config
    v2 = cfg.v2
    two_v2 = vg_scale(v2, 2)
    if y.is_true_zero:
        return cfg.zero()
    if y.is_capped_zero:
        if vg_gt(y.known, two_v2):
            # root is 0 up to precision known - v(2)
            return RingElem(cfg, cfg.zero().payload, vg_sub(y.known, v2))
        raise IndeterminateValuation("cannot certify v(y) > 2v(2)")
    vy = y.val_exact()
    if not vg_gt(vy, two_v2):
        raise DomainError(f"need v(y) > 2v(2); got v(y) = {vy}")

    one = cfg.one()
    a = one + y
    w = one
    cap = cfg.hensel_target(vy)
    target = vg_add(cap, v2)
    for _ in range(_MAX_NEWTON):
        r = w * w - a
        if r.is_zero_at_precision():
            break
        if vg_ge(r.val_exact(), target):
            break
        w = w - r / (w + w)
    else:
        raise IndeterminateValuation("Newton iteration did not stabilize")

    z = w - one
    r = w * w - a
    if not r.is_true_zero:
        z = z.with_known(vg_min(cap, vg_sub(r.val_lower(), v2)))
    vz = z.val_exact()
    assert vg_gt(vz, v2) and vg_eq(vz, vg_sub(vy, v2)), "square-root valuation contract"
    return z


def solve_quadratic(A: RingElem, B: RingElem, C: RingElem,
                    other_root: bool = False) -> RingElem:
    """Root of A t^2 + B t + C with v(t) = v(C/B), given v(AC) > 2v(B).

    ``other_root=True`` returns instead the root of valuation v(B/A)
    (requires A != 0).  Uses sqrt_one_plus on -4AC/B^2 and the division-safe
    form t = -2C / (B (2+z)).
    """
    cfg = A.config
    if B.is_zero_at_precision():
        if B.is_true_zero and A.is_true_zero:
            raise DomainError("A = B = 0 is not a quadratic equation")
        if B.is_true_zero:
            raise DomainError("dominant-middle-coefficient form needs B != 0")
        raise IndeterminateValuation("cannot certify v(AC) > 2v(B)")
    vB = B.val_exact()
    lowAC = vg_add(A.val_lower(), C.val_lower())
    if not vg_gt(lowAC, vg_scale(vB, 2)):
        if A.is_zero_at_precision() or C.is_zero_at_precision():
            raise IndeterminateValuation("cannot certify v(AC) > 2v(B)")
        raise DomainError(
            f"need v(AC) > 2v(B); got v(AC) = {lowAC}, v(B) = {vB}")

    if C.is_true_zero and not other_root:
        return cfg.zero()
    y = (A * C) * (-4) / (B * B)
    z = sqrt_one_plus(y)
    two = cfg.elem(2)
    if other_root:
        if A.is_zero_at_precision():
            raise DomainError("the large root needs A != 0")
        return -(B * (two + z)) / (A + A)
    return -(C + C) / (B * (two + z))


def artin_schreier_solve(y: RingElem) -> RingElem:
    """Solve x^2 - x = y over residue characteristic 2, v(y) >= 0.

    Fails with NoSolution exactly when residue(y) is outside F_AS
    (for F_2: residue(y) != 0); this is the R_AS membership test.
    """
    cfg = y.config
    if not cfg.residue_char2:
        raise DomainError("Artin-Schreier solving needs residue characteristic 2")
    r = y.residue()  # raises if v(y) < 0 is certain, or precision too low
    p = r.p
    x0_res = None
    for c in range(p):
        if (c * c - c) % p == r.value:
            x0_res = c
            break
    if x0_res is None:
        raise NoSolution(f"residue {r.value} is not in F_AS")
    x0 = cfg.elem(x0_res)
    # substitute t = s + x0 in t^2 - t - y
    A = cfg.one()
    B = x0 + x0 - 1
    C = x0 * x0 - x0 - y
    if C.is_true_zero:
        return x0
    s = solve_quadratic(A, B, C)
    return x0 + s


def is_residual_square(a: RingElem) -> bool:
    """Whether a + I_0 is a nonzero square in the residue field; needs v(a) = 0."""
    va = a.val_exact()
    if not vg_eq(va, a.config.vg_zero):
        raise DomainError(f"residual square test needs v(a) = 0; got {va}")
    return a.residue().is_square()


def is_approximate_square(a: RingElem) -> bool:
    """Whether a = b^2 (mod I_{v(a)}) for some b; needs v(a) finite."""
    va = a.val_exact()
    if va.top:
        raise DomainError("approximate-square test needs v(a) finite")
    if not vg_is_even(va):
        return False
    sigma = a.config.monomial(vg_half(va))
    return is_residual_square(a / (sigma * sigma))


def residue_sqrt_lift(a: RingElem) -> RingElem:
    """An integer lift of a residue-field square root of the unit a."""
    return a.config.elem(a.residue().sqrt().value)


def in_square_class(u: RingElem, threshold: ValGroupElem | None,
                    strict: bool) -> bool:
    """Decide u in (R*)^2 (1 + J) for a unit u.

    J = {v > threshold} when strict, {v >= threshold} otherwise;
    threshold=None means J = {0}, i.e. an exact-square test.  Peels
    approximate square roots off u - 1, following the descriptions of the
    subgroups of approximate squares and of 4 R_AS.
    """
    cfg = u.config
    vu = u.val_exact()
    if not vg_eq(vu, cfg.vg_zero):
        raise DomainError("square-class test needs a unit")
    if threshold is not None and not threshold.top:
        if vg_lt(threshold, cfg.vg_zero):
            return True
        if vg_eq(threshold, cfg.vg_zero) and not strict:
            return True
    if not cfg.residue_char2:
        # odd residue characteristic: a unit is an exact square iff its
        # residue is one (Hensel, v(2) = 0), and 1 + J has residue 1
        return is_residual_square(u)

    v2 = cfg.v2
    two_v2 = vg_scale(v2, 2)
    x = u
    for _ in range(_MAX_NEWTON):
        d = x - 1
        if d.is_true_zero:
            return True
        if d.is_capped_zero:
            k = d.known
            if vg_gt(k, two_v2):
                return True
            if threshold is not None and (vg_gt(k, threshold) or
                                          (not strict and vg_ge(k, threshold))):
                return True
            raise IndeterminateValuation("square-class peeling hit the precision cap")
        dv = d.val_exact()
        if threshold is not None and (vg_gt(dv, threshold) or
                                      (not strict and vg_ge(dv, threshold))):
            return True
        if vg_gt(dv, two_v2):
            return True  # 1 + d is an exact square (quadratic Hensel lemma)
        if vg_eq(dv, two_v2):
            eps = d / cfg.elem(4)
            if not eps.residue().in_artin_schreier_image():
                return False
            r = cfg.elem(eps.residue().artin_schreier_preimage().value)
            h = -(r + r)
        else:
            if not vg_is_even(dv):
                return False
            sigma = cfg.monomial(vg_half(dv))
            w = d / (sigma * sigma)
            if not is_residual_square(w):
                return False
            h = sigma * residue_sqrt_lift(w)
        c = 1 + h
        x = x / (c * c)
    raise IndeterminateValuation("square-class peeling did not terminate")


def is_exact_square_unit(u: RingElem) -> bool:
    return in_square_class(u, None, strict=True)
