"""Valuation-ring backends with precision-tracked exact arithmetic.

Four backends share one element type:

  padic(p)     Z_p for an odd prime p          value group Z,     v(2) = 0
  two_adic     Z_2                             value group Z,     v(2) = 1
  ramified2    Z_2[pi], pi^2 = 2               value group Z,     v(pi) = 1, v(2) = 2
  laurent2(q)  F_q((u))((t)) truncated         value group Z x Z lex,
                                               v(t) = (1,0), v(u) = (0,1), v(2) = 0

Payloads are exact (Fractions, pairs of Fractions, or finite term dicts);
every element additionally carries ``known``, the absolute precision: the
element is determined modulo {v >= known}.  Construction from integers is
exact (known = oo); only division (laurent2 series inversion) and iterative
algorithms introduce finite precision.  An element whose payload vanishes
below its precision is a "capped zero": its valuation is only bounded below,
and any operation that needs the exact valuation raises
IndeterminateValuation instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError, DomainError, IndeterminateValuation
from .valgroup import (VG_TOP, ValGroupElem, vg, vg_add, vg_gt, vg_lt,
                       vg_min, vg_scale, vg_sub)

PADIC = "padic"
TWO_ADIC = "two_adic"
RAMIFIED2 = "ramified2"
LAURENT2 = "laurent2"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class RingConfig:
    kind: str
    p: int                 # p (odd), 2, 2, or q (odd)
    cap: ValGroupElem      # absolute precision target for iterative algorithms

    @property
    def rank(self) -> int:
        return 2 if self.kind == LAURENT2 else 1

    @property
    def v2(self) -> ValGroupElem:
        """Valuation of 2 in this ring."""
        if self.kind == TWO_ADIC:
            return vg(1)
        if self.kind == RAMIFIED2:
            return vg(2)
        return vg(0) if self.kind == PADIC else vg(0, 0)

    @property
    def residue_char2(self) -> bool:
        return self.kind in (TWO_ADIC, RAMIFIED2)

    @property
    def residue_p(self) -> int:
        return 2 if self.kind == RAMIFIED2 else self.p

    @property
    def vg_zero(self) -> ValGroupElem:
        return vg(0) if self.rank == 1 else vg(0, 0)

    def describe(self) -> str:
        if self.kind == PADIC:
            return f"padic({self.p})"
        if self.kind == LAURENT2:
            return f"laurent2({self.p})"
        return self.kind

    # -- element constructors -------------------------------------------

    def elem(self, x) -> "RingElem":
        if isinstance(x, RingElem):
            if x.config != self:
                raise ConfigError("element belongs to a different ring")
            return x
        if self.kind in (PADIC, TWO_ADIC):
            return RingElem(self, Fraction(x), VG_TOP)
        if self.kind == RAMIFIED2:
            return RingElem(self, (Fraction(x), Fraction(0)), VG_TOP)
        if isinstance(x, (int, Fraction)):
            x = Fraction(x)
            if x.denominator != 1 and x.denominator % self.p == 0:
                raise DomainError("p-divisible denominator has no laurent2 image")
            c = (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            num = {(0, 0): c} if c else {}
            return RingElem(self, (num, {(0, 0): 1}), VG_TOP)
        raise ConfigError(f"cannot build a {self.kind} element from {x!r}")

    def from_pair(self, a, b) -> "RingElem":
        if self.kind != RAMIFIED2:
            raise ConfigError("from_pair is only for the ramified2 backend")
        return RingElem(self, (Fraction(a), Fraction(b)), VG_TOP)

    def from_terms(self, terms: dict, den: dict | None = None) -> "RingElem":
        if self.kind != LAURENT2:
            raise ConfigError("from_terms is only for the laurent2 backend")
        clean = {}
        for (i, j), c in terms.items():
            c %= self.p
            if c:
                clean[(int(i), int(j))] = c
        dclean = {(0, 0): 1}
        if den is not None:
            dclean = {}
            for (i, j), c in den.items():
                c %= self.p
                if c:
                    dclean[(int(i), int(j))] = c
        return RingElem(self, (clean, dclean), VG_TOP)

    def zero(self) -> "RingElem":
        return self.elem(0)

    def one(self) -> "RingElem":
        return self.elem(1)

    def monomial(self, v: ValGroupElem) -> "RingElem":
        """The canonical element sigma_v of valuation v (sigma_0 = 1)."""
        if v.top:
            return self.zero()
        if self.kind in (PADIC, TWO_ADIC):
            return RingElem(self, Fraction(self.p) ** v.coords[0], VG_TOP)
        if self.kind == RAMIFIED2:
            n = v.coords[0]
            half, odd = divmod(n, 2)
            two = Fraction(2) ** half
            return RingElem(self, (Fraction(0), two) if odd else (two, Fraction(0)), VG_TOP)
        return RingElem(self, ({(v.coords[0], v.coords[1]): 1}, {(0, 0): 1}), VG_TOP)

    def hensel_target(self, vy: ValGroupElem) -> ValGroupElem:
        """Residual valuation at which Newton iterations may stop.

        Over the rank-2 value group, convergence starting at t-level 0 never
        leaves that level, so the target stays inside it.
        """
        if self.rank == 1:
            return self.cap
        if vy.top or vy.coords[0] >= 1:
            return self.cap
        return ValGroupElem((0, self.cap.coords[1]))


def padic(p: int, cap: int = 24) -> RingConfig:
    if p == 2 or not _is_prime(p):
        raise ConfigError("padic backend needs an odd prime")
    return RingConfig(PADIC, p, vg(cap))


def two_adic(cap: int = 24) -> RingConfig:
    return RingConfig(TWO_ADIC, 2, vg(cap))


def ramified2(cap: int = 48) -> RingConfig:
    # cap counts pi-adic digits, i.e. v(2) = 2 units per power of 2
    return RingConfig(RAMIFIED2, 2, vg(cap))


def laurent2(q: int, t_cap: int = 8, u_cap: int = 16) -> RingConfig:
    if q == 2 or not _is_prime(q):
        raise ConfigError("laurent2 backend needs an odd prime residue field")
    return RingConfig(LAURENT2, q, vg(t_cap, u_cap))


# -- payload helpers ------------------------------------------------------

def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _frac_val(x: Fraction, p: int):
    if x == 0:
        return None
    return _vp(x.numerator, p) - _vp(x.denominator, p)


def _frac_mod(x: Fraction, p: int, k: int) -> int:
    """x mod p^k for x with p-free denominator."""
    m = p ** k
    den = x.denominator % m
    return (x.numerator * pow(den, -1, m)) % m


def _reduce_frac(x: Fraction, p: int, known_digits: int) -> Fraction:
    """Canonical representative of x modulo p^known_digits."""
    if x == 0:
        return x
    v = _frac_val(x, p)
    if v >= known_digits:
        return Fraction(0)
    unit = x / Fraction(p) ** v
    r = _frac_mod(unit, p, known_digits - v)
    return Fraction(r) * Fraction(p) ** v


def _ram_val(a: Fraction, b: Fraction):
    """pi-adic valuation of a + b*pi; the two parts never collide (parity)."""
    va = None if a == 0 else 2 * _frac_val(a, 2)
    vb = None if b == 0 else 1 + 2 * _frac_val(b, 2)
    if va is None:
        return vb
    if vb is None:
        return va
    return min(va, vb)


# laurent2 payloads are fractions (num, den) of finite Laurent-term dicts
# {(t_exp, u_exp): coeff in F_q}; den is canonicalized to leading term 1 at
# (0,0).  Field operations stay exact; exact polynomial division simplifies
# fractions back to polynomials whenever the divisor truly divides.

def _pmul(a: dict, b: dict, q: int) -> dict:
    out = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            k = (i1 + i2, j1 + j2)
            out[k] = (out.get(k, 0) + c1 * c2) % q
    return {k: c for k, c in out.items() if c}


def _padd(a: dict, b: dict, q: int) -> dict:
    out = dict(a)
    for k, c in b.items():
        out[k] = (out.get(k, 0) + c) % q
    return {k: c for k, c in out.items() if c}


def _pshift(a: dict, dt: int, du: int) -> dict:
    return {(i + dt, j + du): c for (i, j), c in a.items()}


def _pscale(a: dict, c: int, q: int) -> dict:
    return {k: (v * c) % q for k, v in a.items() if (v * c) % q}


def _pdiv_exact(num: dict, den: dict, q: int, max_steps: int = 400):
    """Quotient num/den when den divides num exactly, else None.

    Long division by the lex-leading (minimal-valuation) term.  An exact
    quotient's support stays inside a box derived from the operands, so any
    quotient term escaping the box aborts the attempt early."""
    if not num:
        return {}
    lead = min(den)
    c_inv = pow(den[lead], -1, q)
    ts = [k[0] for k in num]
    us = [k[1] for k in num]
    du = [k[1] for k in den]
    span_u = max(du) - min(du)
    t_hi = max(ts) - lead[0]
    u_lo = min(us) - lead[1] - 2 * span_u - 8
    u_hi = max(us) - lead[1] + 2 * span_u + 8
    rem = dict(num)
    quo = {}
    for _ in range(max_steps):
        if not rem:
            return quo
        rl = min(rem)
        qt = (rl[0] - lead[0], rl[1] - lead[1])
        if qt[0] > t_hi or not (u_lo <= qt[1] <= u_hi):
            return None
        qc = (rem[rl] * c_inv) % q
        quo[qt] = qc
        for (i, j), c in den.items():
            k = (i + qt[0], j + qt[1])
            v = (rem.get(k, 0) - qc * c) % q
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return None


def _lau_canon(num: dict, den: dict, q: int):
    num = {k: c % q for k, c in num.items() if c % q}
    den = {k: c % q for k, c in den.items() if c % q}
    if not den:
        raise DomainError("laurent2 fraction with zero denominator")
    if not num:
        return {}, {(0, 0): 1}
    lead = min(den)
    if lead != (0, 0):
        den = _pshift(den, -lead[0], -lead[1])
        num = _pshift(num, -lead[0], -lead[1])
    c0 = den[(0, 0)]
    if c0 != 1:
        inv = pow(c0, -1, q)
        den = _pscale(den, inv, q)
        num = _pscale(num, inv, q)
    if len(den) > 1 and len(num) <= 80 and len(den) <= 80:
        quo = _pdiv_exact(num, den, q)
        if quo is not None:
            return quo, {(0, 0): 1}
    return num, den


class RingElem:
    __slots__ = ("config", "payload", "known", "_pv")

    def __init__(self, config: RingConfig, payload, known: ValGroupElem, _raw=False):
        self.config = config
        self.payload = payload
        self.known = known
        self._pv = False  # lazily cached payload valuation
        if not _raw:
            self._normalize()

    # -- normalization ----------------------------------------------------

    def _normalize(self):
        cfg, known = self.config, self.known
        if cfg.kind in (PADIC, TWO_ADIC):
            if not known.top:
                self.payload = _reduce_frac(self.payload, cfg.p, known.coords[0])
        elif cfg.kind == RAMIFIED2:
            a, b = self.payload
            if not known.top:
                n = known.coords[0]
                a = _reduce_frac(a, 2, (n + 1) // 2)
                b = _reduce_frac(b, 2, n // 2)
            self.payload = (a, b)
        else:
            num, den = self.payload
            num, den = _lau_canon(num, den, cfg.p)
            if not known.top and len(den) == 1 and num:
                # polynomial payloads truncate at the known bound
                num = {k: c for k, c in num.items() if k < known.coords}
            self.payload = (num, den)

    # -- structure queries --------------------------------------------------

    def _payload_val(self):
        if self._pv is not False:
            return self._pv
        cfg = self.config
        if cfg.kind in (PADIC, TWO_ADIC):
            v = _frac_val(self.payload, cfg.p)
            pv = None if v is None else vg(v)
        elif cfg.kind == RAMIFIED2:
            v = _ram_val(*self.payload)
            pv = None if v is None else vg(v)
        else:
            num, _den = self.payload
            # canonical den has valuation (0,0)
            pv = ValGroupElem(min(num)) if num else None
        self._pv = pv
        return pv

    def _visible_val(self):
        """Payload valuation when it is below the precision bound, else None.

        A payload whose valuation reaches ``known`` is indistinguishable
        from 0 at the working precision."""
        pv = self._payload_val()
        if pv is None:
            return None
        if not self.known.top and not vg_lt(pv, self.known):
            return None
        return pv

    @property
    def is_exact(self) -> bool:
        return self.known.top

    @property
    def is_true_zero(self) -> bool:
        return self._payload_val() is None and self.known.top

    @property
    def is_capped_zero(self) -> bool:
        return self._visible_val() is None and not self.known.top

    def is_zero_at_precision(self) -> bool:
        return self._visible_val() is None

    def val_exact(self) -> ValGroupElem:
        """The valuation; oo for true zero; raises when capped at zero."""
        pv = self._visible_val()
        if pv is not None:
            return pv
        if self.known.top:
            return VG_TOP
        raise IndeterminateValuation(
            f"valuation only bounded below by {self.known} at current precision")

    def val_lower(self) -> ValGroupElem:
        pv = self._visible_val()
        return pv if pv is not None else self.known

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RingElem):
            if other.config != self.config:
                raise ConfigError("ring mismatch")
            return other
        return self.config.elem(other)

    def __add__(self, other):
        other = self._coerce(other)
        cfg = self.config
        known = vg_min(self.known, other.known)
        if cfg.kind in (PADIC, TWO_ADIC):
            payload = self.payload + other.payload
        elif cfg.kind == RAMIFIED2:
            payload = (self.payload[0] + other.payload[0],
                       self.payload[1] + other.payload[1])
        else:
            n1, d1 = self.payload
            n2, d2 = other.payload
            payload = (_padd(_pmul(n1, d2, cfg.p), _pmul(n2, d1, cfg.p), cfg.p),
                       _pmul(d1, d2, cfg.p))
        return RingElem(cfg, payload, known)

    __radd__ = __add__

    def __neg__(self):
        cfg = self.config
        if cfg.kind in (PADIC, TWO_ADIC):
            payload = -self.payload
        elif cfg.kind == RAMIFIED2:
            payload = (-self.payload[0], -self.payload[1])
        else:
            num, den = self.payload
            payload = (_pscale(num, -1, cfg.p), den)
        return RingElem(cfg, payload, self.known)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def _mul_known(self, other):
        if self.known.top and other.known.top:
            return VG_TOP
        return vg_min(vg_add(self.val_lower(), other.known),
                      vg_add(other.val_lower(), self.known))

    def __mul__(self, other):
        other = self._coerce(other)
        cfg = self.config
        known = self._mul_known(other)
        if cfg.kind in (PADIC, TWO_ADIC):
            payload = self.payload * other.payload
        elif cfg.kind == RAMIFIED2:
            a, b = self.payload
            c, d = other.payload
            payload = (a * c + 2 * b * d, a * d + b * c)
        else:
            n1, d1 = self.payload
            n2, d2 = other.payload
            payload = (_pmul(n1, n2, cfg.p), _pmul(d1, d2, cfg.p))
        return RingElem(cfg, payload, known)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.config.one() / self ** (-n)
        out = self.config.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __truediv__(self, other):
        other = self._coerce(other)
        cfg = self.config
        if other.is_zero_at_precision():
            if other.is_true_zero:
                raise DomainError("division by zero")
            raise IndeterminateValuation("division by an element capped at 0")
        vy = other.val_exact()
        known = vg_sub(self._mul_known(other), vg_scale(vy, 2))
        if cfg.kind in (PADIC, TWO_ADIC):
            return RingElem(cfg, self.payload / other.payload, known)
        if cfg.kind == RAMIFIED2:
            a, b = self.payload
            c, d = other.payload
            nrm = c * c - 2 * d * d
            payload = ((a * c - 2 * b * d) / nrm, (b * c - a * d) / nrm)
            return RingElem(cfg, payload, known)
        n1, d1 = self.payload
        n2, d2 = other.payload
        return RingElem(cfg, (_pmul(n1, d2, cfg.p), _pmul(d1, n2, cfg.p)), known)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    # -- residue field --------------------------------------------------------

    def residue(self) -> "ResidueElem":
        """Image in the residue field F; requires v >= 0."""
        cfg = self.config
        pv = self._visible_val()
        zero_v = cfg.vg_zero
        if pv is None:
            if self.known.top or vg_gt(self.known, zero_v):
                return ResidueElem(cfg.residue_p, 0)
            raise IndeterminateValuation("residue unknown at current precision")
        if vg_lt(pv, zero_v):
            raise DomainError("element is not in the valuation ring")
        if vg_gt(pv, zero_v):
            return ResidueElem(cfg.residue_p, 0)
        if cfg.kind in (PADIC, TWO_ADIC):
            return ResidueElem(cfg.p, _frac_mod(self.payload, cfg.p, 1))
        if cfg.kind == RAMIFIED2:
            return ResidueElem(2, _frac_mod(self.payload[0], 2, 1))
        # canonical den is 1 + (terms of positive valuation), so its residue is 1
        return ResidueElem(cfg.p, self.payload[0][(0, 0)] % cfg.p)

    # -- comparisons ------------------------------------------------------------

    def congruent_mod(self, other, gamma: ValGroupElem) -> bool:
        """Certified test of x = y (mod I_gamma), i.e. v(x - y) > gamma."""
        diff = self - self._coerce(other)
        pv = diff._visible_val()
        if pv is not None:
            return vg_gt(pv, gamma)
        if diff.known.top or vg_gt(diff.known, gamma):
            return True
        raise IndeterminateValuation(
            f"congruence mod I_{gamma} undecidable at precision {diff.known}")

    def eq_at_precision(self, other) -> bool:
        """True when the difference vanishes at its working precision."""
        return (self - self._coerce(other)).is_zero_at_precision()

    def with_known(self, known: ValGroupElem) -> "RingElem":
        return RingElem(self.config, self.payload, vg_min(self.known, known))

    # -- display / serialization -------------------------------------------------

    def __repr__(self):
        cfg = self.config
        if cfg.kind in (PADIC, TWO_ADIC):
            body = str(self.payload)
        elif cfg.kind == RAMIFIED2:
            body = f"{self.payload[0]}+{self.payload[1]}*pi"
        else:
            num, den = self.payload
            body = _lau_str(num)
            if den != {(0, 0): 1}:
                body = f"({body})/({_lau_str(den)})"
        tail = "" if self.known.top else f" (mod v>={self.known})"
        return f"<{cfg.describe()}: {body}{tail}>"

    def encode(self):
        cfg = self.config
        if cfg.kind in (PADIC, TWO_ADIC):
            if self.is_exact and self.payload.denominator == 1:
                return int(self.payload)
            out = {"num": str(self.payload.numerator), "den": str(self.payload.denominator)}
            if not self.known.top:
                out["known"] = list(self.known.coords)
            return out
        if cfg.kind == RAMIFIED2:
            a, b = self.payload
            if self.is_exact and a.denominator == 1 and b.denominator == 1:
                return [int(a), int(b)]
            out = {"a": str(a), "b": str(b)}
            if not self.known.top:
                out["known"] = list(self.known.coords)
            return out
        num, den = self.payload
        if self.known.top and den == {(0, 0): 1}:
            return _lau_terms_json(num)
        out = {"num": _lau_terms_json(num), "den": _lau_terms_json(den)}
        if not self.known.top:
            out["known"] = list(self.known.coords)
        return out


def _lau_str(terms):
    if not terms:
        return "0"
    return " + ".join(f"{c}*t^{i}*u^{j}" for (i, j), c in sorted(terms.items()))


def _lau_terms_json(terms):
    out = {}
    for (i, j), c in sorted(terms.items()):
        out.setdefault(str(i), {})[str(j)] = c
    return out


def decode_elem(config: RingConfig, obj) -> RingElem:
    """Inverse of RingElem.encode, also accepting plain integer entries."""
    if isinstance(obj, RingElem):
        return config.elem(obj)
    if config.kind in (PADIC, TWO_ADIC):
        if isinstance(obj, (int, str)):
            return config.elem(Fraction(obj))
        fr = Fraction(int(obj["num"]), int(obj["den"]))
        known = vg(*obj["known"]) if "known" in obj else VG_TOP
        return RingElem(config, fr, known)
    if config.kind == RAMIFIED2:
        if isinstance(obj, (int, str)):
            return config.elem(Fraction(obj))
        if isinstance(obj, (list, tuple)):
            return config.from_pair(Fraction(obj[0]), Fraction(obj[1]))
        known = vg(*obj["known"]) if "known" in obj else VG_TOP
        return RingElem(config, (Fraction(obj["a"]), Fraction(obj["b"])), known)
    if isinstance(obj, (int, str)):
        return config.elem(Fraction(obj))
    known = VG_TOP
    den = {(0, 0): 1}
    terms = obj
    if isinstance(obj, dict) and ("num" in obj or "known" in obj):
        known = vg(*obj["known"]) if "known" in obj else VG_TOP
        terms = obj.get("num", obj.get("terms"))
        if "den" in obj:
            den = {(int(i), int(j)): int(c)
                   for i, row in obj["den"].items() for j, c in row.items()}
    payload = {}
    for i, row in terms.items():
        for j, c in row.items():
            payload[(int(i), int(j))] = int(c)
    return RingElem(config, (payload, den), known)


# -- residue field ------------------------------------------------------------


@dataclass(frozen=True)
class ResidueElem:
    p: int
    value: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _co(self, other):
        if isinstance(other, ResidueElem):
            if other.p != self.p:
                raise ConfigError("residue field mismatch")
            return other.value
        return other % self.p

    def __add__(self, other):
        return ResidueElem(self.p, self.value + self._co(other))

    def __sub__(self, other):
        return ResidueElem(self.p, self.value - self._co(other))

    def __mul__(self, other):
        return ResidueElem(self.p, self.value * self._co(other))

    def __truediv__(self, other):
        o = self._co(other)
        if o == 0:
            raise DomainError("residue division by zero")
        return ResidueElem(self.p, self.value * pow(o, -1, self.p))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.p
        return isinstance(other, ResidueElem) and (self.p, self.value) == (other.p, other.value)

    def __hash__(self):
        return hash((self.p, self.value))

    def __repr__(self):
        return f"{self.value} (mod {self.p})"

    @property
    def is_zero(self):
        return self.value == 0

    def is_square(self) -> bool:
        """Nonzero square test in F_p (Euler criterion; F_2* = {1})."""
        if self.value == 0:
            return False
        if self.p == 2:
            return True
        return pow(self.value, (self.p - 1) // 2, self.p) == 1

    def sqrt(self) -> "ResidueElem":
        if not self.is_square():
            raise DomainError(f"{self} is not a square in F_{self.p}")
        # p is tiny here; scan
        for r in range(1, self.p):
            if (r * r) % self.p == self.value:
                return ResidueElem(self.p, r)
        raise AssertionError

    def in_artin_schreier_image(self) -> bool:
        """Membership in F_AS = {x^2 - x}; only meaningful in char 2."""
        if self.p != 2:
            raise DomainError("Artin-Schreier image is a characteristic-2 notion")
        return self.value == 0

    def artin_schreier_preimage(self) -> "ResidueElem":
        if not self.in_artin_schreier_image():
            raise DomainError(f"{self} is not in F_AS")
        return ResidueElem(self.p, 0)
