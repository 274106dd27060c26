import random
from fractions import Fraction

import pytest

from vrlat.errors import DomainError, IndeterminateValuation
from vrlat.rings import RingElem, decode_elem, laurent2, padic, ramified2, two_adic
from vrlat.valgroup import VG_TOP, vg, vg_add, vg_eq, vg_ge, vg_min

BACKENDS = [padic(3), padic(5), two_adic(), ramified2(), laurent2(3)]


def random_elem(cfg, rng, allow_zero=True):
    if cfg.kind == "laurent2":
        n = rng.randrange(0 if allow_zero else 1, 4)
        terms = {(rng.randrange(-2, 4), rng.randrange(-3, 4)): rng.randrange(1, cfg.p)
                 for _ in range(n)}
        return cfg.from_terms(terms)
    if cfg.kind == "ramified2":
        a = rng.randrange(-40, 41)
        b = rng.randrange(-40, 41)
        if not allow_zero and a == 0 and b == 0:
            a = 1
        return cfg.from_pair(a, b)
    x = rng.randrange(-200, 201)
    if not allow_zero and x == 0:
        x = 1
    return cfg.elem(x)


def test_spec_arithmetic_examples():
    Z2 = two_adic()
    assert (Z2.elem(3) + Z2.elem(5)).eq_at_precision(Z2.elem(8))
    assert (Z2.elem(3) + Z2.elem(5)).val_exact() == vg(3)
    Z3 = padic(3)
    prod = Z3.elem(6) * Z3.elem(9)
    assert prod.val_exact() == vg(3)
    assert (prod / Z3.elem(27)).residue() == 2
    L3 = laurent2(3)
    t = L3.from_terms({(1, 0): 1})
    uinv = L3.from_terms({(0, -1): 1})
    assert (t * uinv).val_exact() == vg(1, -1)


def test_spec_residue_examples():
    assert two_adic().elem(7).residue() == 1
    assert padic(5).elem(10).residue() == 0
    R = ramified2()
    assert R.monomial(vg(1)).residue() == 0


def test_v2_per_backend():
    assert padic(7).v2 == vg(0)
    assert two_adic().v2 == vg(1)
    assert ramified2().v2 == vg(2)
    assert laurent2(5).v2 == vg(0, 0)
    # pi^2 = 2 with v(pi) = 1
    R = ramified2()
    pi = R.monomial(vg(1))
    assert (pi * pi).eq_at_precision(R.elem(2))
    assert R.elem(2).val_exact() == vg(2)


def test_valuation_axioms_randomized():
    rng = random.Random(7)
    for cfg in BACKENDS:
        for _ in range(200):
            x = random_elem(cfg, rng, allow_zero=False)
            y = random_elem(cfg, rng, allow_zero=False)
            vx, vy = x.val_exact(), y.val_exact()
            assert vg_eq((x * y).val_exact(), vg_add(vx, vy))
            s = x + y
            if not s.is_zero_at_precision():
                assert vg_ge(s.val_exact(), vg_min(vx, vy))
            if not vg_eq(vx, vy):
                assert vg_eq(s.val_exact(), vg_min(vx, vy))


def test_residue_is_ring_homomorphism():
    rng = random.Random(11)
    for cfg in BACKENDS:
        for _ in range(150):
            if cfg.kind == "laurent2":
                # build inside the valuation ring
                x = cfg.from_terms({(rng.randrange(0, 3), rng.randrange(0, 4)):
                                    rng.randrange(1, cfg.p) for _ in range(rng.randrange(0, 4))})
                y = cfg.from_terms({(rng.randrange(0, 3), rng.randrange(0, 4)):
                                    rng.randrange(1, cfg.p) for _ in range(rng.randrange(0, 4))})
            else:
                x = random_elem(cfg, rng)
                y = random_elem(cfg, rng)
            assert (x + y).residue() == x.residue() + y.residue()
            assert (x * y).residue() == x.residue() * y.residue()


def test_encode_decode_round_trip():
    rng = random.Random(13)
    for cfg in BACKENDS:
        for _ in range(80):
            x = random_elem(cfg, rng)
            back = decode_elem(cfg, x.encode())
            assert back.payload == x.payload
            assert back.known == x.known
    # inexact round trip keeps the precision
    Z2 = two_adic()
    x = RingElem(Z2, Fraction(5), vg(4))
    back = decode_elem(Z2, x.encode())
    assert back.known == vg(4) and back.payload == x.payload


def test_division_precision_and_errors():
    Z3 = padic(3)
    q = Z3.elem(6) / Z3.elem(2)
    assert q.is_exact and q.eq_at_precision(Z3.elem(3))
    capped = RingElem(Z3, Fraction(0), vg(5))
    with pytest.raises(IndeterminateValuation):
        Z3.elem(1) / capped
    with pytest.raises(DomainError):
        Z3.elem(1) / Z3.zero()
    # fraction-field elements carry negative valuation
    frac = Z3.elem(1) / Z3.elem(9)
    assert frac.val_exact() == vg(-2)


def test_capped_zero_semantics():
    Z2 = two_adic()
    cz = RingElem(Z2, Fraction(16), vg(3))
    assert cz.is_capped_zero
    with pytest.raises(IndeterminateValuation):
        cz.val_exact()
    assert cz.val_lower() == vg(3)
    # congruence at low depth is certified, at high depth indeterminate
    assert cz.congruent_mod(Z2.zero(), vg(1))
    with pytest.raises(IndeterminateValuation):
        cz.congruent_mod(Z2.zero(), vg(4))


def test_known_propagation_minimum():
    Z2 = two_adic()
    x = RingElem(Z2, Fraction(3), vg(6))
    y = RingElem(Z2, Fraction(5), vg(4))
    assert (x + y).known == vg(4)
    # product of units: min(v(x)+N_y, v(y)+N_x) = 4
    assert (x * y).known == vg(4)
    z = Z2.elem(8)  # exact, valuation 3
    assert (x * z).known == vg(9)


def test_laurent_fraction_field_is_exact():
    L = laurent2(3)
    a = L.from_terms({(0, 0): 1, (0, 1): 1})
    inv = L.one() / a
    assert (inv * a - 1).is_true_zero
    assert inv.is_exact
    b = L.from_terms({(0, 0): 2, (1, -2): 1})
    assert ((L.one() / b) * b - 1).is_true_zero
    # exact polynomial division simplifies the fraction away
    t = L.from_terms({(1, 0): 1})
    prod = a * t
    assert (prod / a).payload == t.payload
