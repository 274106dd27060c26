import random

import pytest

from vrlat.errors import DomainError, NoSolution
from vrlat.hensel import (artin_schreier_solve, in_square_class,
                          is_approximate_square, is_exact_square_unit,
                          is_residual_square, solve_quadratic, sqrt_one_plus)
from vrlat.rings import laurent2, padic, ramified2, two_adic
from vrlat.valgroup import vg, vg_eq, vg_gt, vg_scale, vg_sub

BACKENDS = [padic(3), padic(5), two_adic(), ramified2(), laurent2(3)]


def check_root(y, z):
    """(1+z)^2 = 1+y at the returned precision, with the valuation contract."""
    cfg = y.config
    lhs = (1 + z) * (1 + z)
    assert (lhs - (1 + y)).is_zero_at_precision()
    if not y.is_zero_at_precision():
        assert vg_eq(z.val_exact(), vg_sub(y.val_exact(), cfg.v2))
        assert vg_gt(z.val_exact(), cfg.v2)


def test_sqrt_spec_values():
    Z2 = two_adic()
    z = sqrt_one_plus(Z2.elem(16))
    # frozen from the exhaustive odd-squares-mod-2^6 oracle: z = 8 (mod 16)
    assert z.congruent_mod(Z2.elem(8), vg(3))
    assert z.val_exact() == vg(3)

    Z3 = padic(3)
    z = sqrt_one_plus(Z3.elem(3))
    # frozen from the exhaustive squares-mod-3^4 oracle: z = 6 (mod 9)
    assert z.congruent_mod(Z3.elem(6), vg(1))
    assert z.val_exact() == vg(1)

    assert sqrt_one_plus(Z2.zero()).is_true_zero


def test_sqrt_preconditions():
    Z2 = two_adic()
    with pytest.raises(DomainError):
        sqrt_one_plus(Z2.elem(4))  # v = 2 = 2v(2), not strict


def test_solve_quadratic_spec_values():
    Z3 = padic(3)
    t = solve_quadratic(Z3.elem(1), Z3.elem(1), Z3.elem(3))
    # frozen from the exhaustive roots-mod-3^4 oracle: t = 6 (mod 9)
    assert t.congruent_mod(Z3.elem(6), vg(1))
    assert t.val_exact() == vg(1)

    t = solve_quadratic(Z3.elem(0), Z3.elem(1), Z3.elem(-5))
    assert t.eq_at_precision(Z3.elem(5))

    Z2 = two_adic()
    t = solve_quadratic(Z2.elem(1), Z2.elem(-2), Z2.elem(-16))
    # frozen from the exhaustive roots-mod-2^7 oracle: t = 24 (mod 64), v = 3
    assert t.congruent_mod(Z2.elem(24), vg(5))
    assert t.val_exact() == vg(3)
    big = solve_quadratic(Z2.elem(1), Z2.elem(-2), Z2.elem(-16), other_root=True)
    assert big.val_exact() == vg(1)
    assert (big + t).eq_at_precision(Z2.elem(2))  # root sum = -B/A


def test_solve_quadratic_errors():
    Z2 = two_adic()
    with pytest.raises(DomainError):
        solve_quadratic(Z2.zero(), Z2.zero(), Z2.elem(1))
    with pytest.raises(DomainError):
        solve_quadratic(Z2.elem(1), Z2.elem(2), Z2.elem(1))  # v(AC)=0 < 2


def test_artin_schreier():
    Z2 = two_adic()
    x = artin_schreier_solve(Z2.elem(6))
    assert (x * x - x - 6).is_zero_at_precision()
    assert artin_schreier_solve(Z2.zero()).is_zero_at_precision()
    with pytest.raises(NoSolution):
        artin_schreier_solve(Z2.elem(1))
    with pytest.raises(DomainError):
        artin_schreier_solve(padic(3).elem(6))
    with pytest.raises(DomainError):
        artin_schreier_solve(laurent2(3).elem(6))


def test_artin_schreier_depends_only_on_residue():
    # membership is decided by residue(y) alone
    Z2 = two_adic()
    rng = random.Random(5)
    for _ in range(40):
        y = Z2.elem(2 * rng.randrange(-50, 50))
        x = artin_schreier_solve(y)
        assert (x * x - x - y).is_zero_at_precision()
        with pytest.raises(NoSolution):
            artin_schreier_solve(y + 1)


def test_residual_and_approximate_squares():
    Z3 = padic(3)
    assert not is_residual_square(Z3.elem(2))
    assert is_residual_square(Z3.elem(4))
    assert is_residual_square(two_adic().elem(3))
    assert not is_approximate_square(Z3.elem(18))
    assert is_approximate_square(Z3.elem(36))
    assert not is_approximate_square(Z3.elem(3))


def test_sqrt_and_quadratic_randomized_all_backends():
    rng = random.Random(17)
    for cfg in BACKENDS:
        two_v2 = vg_scale(cfg.v2, 2)
        for _ in range(60):
            if cfg.kind == "laurent2":
                y = cfg.from_terms({(rng.randrange(1, 3), rng.randrange(-2, 3)):
                                    rng.randrange(1, cfg.p) for _ in range(2)})
            else:
                shift = cfg.monomial(vg(two_v2.coords[0] + rng.randrange(1, 4)))
                y = shift * cfg.elem(rng.randrange(-30, 31))
            if y.is_zero_at_precision():
                continue
            check_root(y, sqrt_one_plus(y))


def test_exact_square_detection_two_adic():
    Z2 = two_adic()
    # odd squares are exactly 1 mod 8
    for n in range(1, 60, 2):
        expected = n % 8 == 1
        assert is_exact_square_unit(Z2.elem(n)) == expected
    R = ramified2()
    # units of Z_2[pi]: a + b pi with a odd; squares satisfy known congruences
    assert is_exact_square_unit(R.elem(9))
    assert not is_exact_square_unit(R.elem(3))


def test_square_class_thresholds():
    Z2 = two_adic()
    # 5 = 1 * (1 + 4): in (R*)^2 (1 + I_1) but not an exact square
    assert in_square_class(Z2.elem(5), vg(1), strict=True)
    assert not is_exact_square_unit(Z2.elem(5))
    # 3 = 1 + 2: v(d) = 1
    assert in_square_class(Z2.elem(3), vg(1), strict=False)
    assert not in_square_class(Z2.elem(3), vg(1), strict=True)
