"""Gram-matrix lattices and basic form-theoretic queries."""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import matrixops as mx
from .errors import ConfigError, DomainError, IndeterminateValuation
from .rings import RingConfig, RingElem, decode_elem, laurent2, padic, ramified2, two_adic
from .valgroup import ValGroupElem, vg, vg_add, vg_eq, vg_lt, vg_min


@dataclass
class GramLattice:
    """A free lattice presented by a symmetric Gram matrix over one backend."""

    ring: RingConfig
    gram: list  # n x n RingElem

    def __post_init__(self):
        n = len(self.gram)
        fixed = []
        for i, row in enumerate(self.gram):
            if len(row) != n:
                raise ConfigError("Gram matrix must be square")
            fixed.append([self.ring.elem(e) for e in row])
        self.gram = fixed
        for i in range(n):
            for j in range(i + 1, n):
                if not self.gram[i][j].eq_at_precision(self.gram[j][i]):
                    raise ConfigError("Gram matrix must be symmetric")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def entry(self, i: int, j: int) -> RingElem:
        return self.gram[i][j]

    def det(self) -> RingElem:
        if self.rank == 0:
            return self.ring.one()
        return mx.det(self.gram)

    def pairing(self, x, y) -> RingElem:
        return mx.pairing(self.gram, x, y)

    def norm(self, x) -> RingElem:
        return self.pairing(x, x)

    def check_nondegenerate(self):
        d = self.det()
        if d.is_true_zero:
            raise DomainError("degenerate Gram matrix")
        if d.is_capped_zero:
            raise IndeterminateValuation(
                "determinant vanishes at working precision; raise the cap")
        return d

    def __repr__(self):
        return f"GramLattice({self.ring.describe()}, {self.gram})"


def lattice_valuation(M: GramLattice) -> ValGroupElem:
    """min v over Gram entries (the entries generate the value set)."""
    entries = [((i, j), e) for i, row in enumerate(M.gram) for j, e in enumerate(row)]
    key, val = mx.argmin_valuation(entries)
    if key is None:
        if any(not e.is_true_zero for _, e in entries):
            raise IndeterminateValuation("all Gram entries capped at 0")
        raise DomainError("zero lattice has no valuation")
    return val


def is_unimodular(M: GramLattice) -> bool:
    d = M.check_nondegenerate()
    return vg_eq(d.val_exact(), M.ring.vg_zero)


def rescale(M: GramLattice, a) -> GramLattice:
    a = M.ring.elem(a)
    if a.is_zero_at_precision():
        raise DomainError("rescaling factor must be nonzero")
    return GramLattice(M.ring, [[e * a for e in row] for row in M.gram])


def direct_sum(M: GramLattice, N: GramLattice) -> GramLattice:
    if M.ring != N.ring:
        raise ConfigError("direct sum needs both lattices over the same ring")
    n, m = M.rank, N.rank
    z = M.ring.zero()
    gram = [[M.gram[i][j] if j < n else z for j in range(n + m)] for i in range(n)]
    gram += [[z if j < n else N.gram[i - n][j - n] for j in range(n + m)]
             for i in range(n, n + m)]
    return GramLattice(M.ring, gram)


def change_basis(M: GramLattice, T) -> GramLattice:
    """Gram -> T^t Gram T for T invertible over R; isometric by construction."""
    T = [[M.ring.elem(e) for e in row] for row in T]
    d = mx.det(T)
    if d.is_zero_at_precision() or not vg_eq(d.val_exact(), M.ring.vg_zero):
        raise DomainError("basis change must have unit determinant")
    return GramLattice(M.ring, mx.gram_transform(M.gram, T))


# -- JSON interchange -------------------------------------------------------


def ring_to_json(cfg: RingConfig) -> dict:
    if cfg.kind == "padic":
        return {"kind": "padic", "p": cfg.p, "precision": cfg.cap.coords[0]}
    if cfg.kind == "two_adic":
        return {"kind": "two_adic", "precision": cfg.cap.coords[0]}
    if cfg.kind == "ramified2":
        return {"kind": "ramified2", "precision": cfg.cap.coords[0]}
    return {"kind": "laurent2", "q": cfg.p, "precision": list(cfg.cap.coords)}


def ring_from_json(obj: dict, precision=None) -> RingConfig:
    kind = obj["kind"]
    prec = precision if precision is not None else obj.get("precision")
    if kind == "padic":
        return padic(obj["p"], prec) if prec else padic(obj["p"])
    if kind == "two_adic":
        return two_adic(prec) if prec else two_adic()
    if kind == "ramified2":
        return ramified2(prec) if prec else ramified2()
    if kind == "laurent2":
        if prec:
            if isinstance(prec, int):
                prec = [prec, 2 * prec]
            return laurent2(obj["q"], prec[0], prec[1])
        return laurent2(obj["q"])
    raise ConfigError(f"unknown ring kind {kind!r}")


def lattice_to_json(M: GramLattice) -> dict:
    return {"ring": ring_to_json(M.ring),
            "gram": [[e.encode() for e in row] for row in M.gram]}


def lattice_from_json(obj: dict, precision=None) -> GramLattice:
    cfg = ring_from_json(obj["ring"], precision)
    gram = [[decode_elem(cfg, e) for e in row] for row in obj["gram"]]
    return GramLattice(cfg, gram)


def load_lattice(path: str, precision=None) -> GramLattice:
    with open(path) as fh:
        return lattice_from_json(json.load(fh), precision)


def save_lattice(M: GramLattice, path: str):
    with open(path, "w") as fh:
        json.dump(lattice_to_json(M), fh, indent=1)
