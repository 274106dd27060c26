"""Shared helpers for building random test lattices."""

import random

from vrlat.lattice import GramLattice
from vrlat.valgroup import vg


def random_unit(cfg, rng):
    if cfg.kind == "laurent2":
        terms = {(0, 0): rng.randrange(1, cfg.p)}
        for _ in range(rng.randrange(0, 2)):
            terms[(rng.randrange(0, 2), rng.randrange(0, 3))] = rng.randrange(1, cfg.p)
        terms[(0, 0)] = terms.get((0, 0), 1) or 1
        return cfg.from_terms(terms)
    if cfg.kind == "ramified2":
        return cfg.from_pair(2 * rng.randrange(-8, 8) + 1, rng.randrange(-8, 9))
    u = rng.randrange(1, 30)
    while u % cfg.p == 0:
        u += 1
    return cfg.elem(u * rng.choice([1, -1]))


def random_entry(cfg, rng, max_val=3, allow_zero=True):
    if allow_zero and rng.random() < 0.15:
        return cfg.zero()
    v = rng.randrange(0, max_val + 1)
    if cfg.kind == "laurent2":
        sigma = cfg.monomial(vg(rng.randrange(0, 2), rng.randrange(0, 3)))
    else:
        sigma = cfg.monomial(vg(v))
    return sigma * random_unit(cfg, rng)


def random_lattice(cfg, rng, rank=None, max_val=3):
    """A random non-degenerate symmetric Gram matrix; retries until the
    determinant is certifiably nonzero."""
    rank = rank if rank is not None else rng.randrange(1, 5)
    for _ in range(60):
        g = [[None] * rank for _ in range(rank)]
        for i in range(rank):
            for j in range(i, rank):
                e = random_entry(cfg, rng, max_val)
                g[i][j] = e
                g[j][i] = e
        M = GramLattice(cfg, g)
        d = M.det()
        if not d.is_zero_at_precision():
            return M
    raise AssertionError("could not build a non-degenerate lattice")


def random_unit_matrix(cfg, rng, n):
    """A random matrix with unit determinant: unit-triangular times a
    permutation, with small integral perturbations."""
    import vrlat.matrixops as mx
    from vrlat.valgroup import vg_eq
    for _ in range(50):
        T = mx.identity(cfg, n)
        for _ in range(2 * n):
            i, j = rng.randrange(n), rng.randrange(n)
            if i == j:
                continue
            c = random_entry(cfg, rng, max_val=1)
            for t in range(n):
                T[t][j] = T[t][j] + c * T[t][i]
        if rng.random() < 0.5:
            i, j = rng.randrange(n), rng.randrange(n)
            T[i], T[j] = T[j], T[i]
        d = mx.det(T)
        if not d.is_zero_at_precision() and vg_eq(d.val_exact(), cfg.vg_zero):
            return T
    raise AssertionError("could not build a unit-determinant matrix")
