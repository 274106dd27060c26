"""Constructive Jordan splitting and component diagonalization.

The greedy decomposition follows the existence proof: split off a rank-1
sublattice spanned by a vector whose norm attains the minimal valuation,
or, when only off-diagonal entries attain it, the rank-2 sublattice spanned
by the minimizing pair (its 2x2 determinant then has the strictly minimal
valuation).  Complements come from Cramer's formula, so the accumulated
transition matrix is explicit and exactly block-diagonalizes the Gram.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import matrixops as mx
from .errors import DomainError, IndeterminateValuation, SplitError
from .lattice import GramLattice, rescale
from .valgroup import ValGroupElem, vg_eq, vg_gt, vg_lt


@dataclass
class JordanBlock:
    scale_valuation: ValGroupElem
    unimodular_gram: GramLattice
    vectors: list  # block basis, as columns in the ambient lattice's coordinates

    @property
    def rank(self):
        return self.unimodular_gram.rank

    def ambient_gram(self) -> GramLattice:
        sigma = self.unimodular_gram.ring.monomial(self.scale_valuation)
        return rescale(self.unimodular_gram, sigma)


@dataclass
class JordanDecomposition:
    ambient: GramLattice
    blocks: list = field(default_factory=list)

    @property
    def transition(self):
        cols = [v for b in self.blocks for v in b.vectors]
        return [[col[i] for col in cols] for i in range(self.ambient.rank)]

    def block_diagonal_gram(self):
        from .lattice import direct_sum
        out = None
        for b in self.blocks:
            g = b.ambient_gram()
            out = g if out is None else direct_sum(out, g)
        return out

    @property
    def last_valuation(self) -> ValGroupElem:
        return self.blocks[-1].scale_valuation


def _submatrix(gram, idx):
    return [[gram[i][j] for j in idx] for i in idx]


def can_split(M: GramLattice, idx) -> bool:
    """Cramer divisibility: det A divides every det A_{i,x} over R."""
    idx = list(idx)
    A = _submatrix(M.gram, idx)
    dA = mx.det(A)
    if dA.is_zero_at_precision():
        if dA.is_true_zero:
            raise DomainError("selected sublattice is degenerate")
        raise IndeterminateValuation("sublattice determinant capped at zero")
    vA = dA.val_exact()
    for x in range(M.rank):
        if x in idx:
            continue
        for i in range(len(idx)):
            Ai = [row[:] for row in A]
            Ai[i] = [M.gram[x][j] for j in idx]
            dAi = mx.det(Ai)
            if dAi.is_zero_at_precision():
                if not dAi.is_true_zero and vg_gt(vA, dAi.known):
                    raise IndeterminateValuation("replacement determinant capped")
                continue
            if vg_gt(vA, dAi.val_exact()):
                return False
    return True


def _complement_vectors(gram, vecs, drop, cfg):
    """Complete ``vecs`` to a basis: for each coordinate not in ``drop``,
    return e_m minus its Cramer projection onto span(vecs)."""
    n = len(gram)
    A = [[mx.pairing(gram, v, w) for w in vecs] for v in vecs]
    dA = mx.det(A)
    out = []
    for m in range(n):
        if m in drop:
            continue
        em = [cfg.one() if t == m else cfg.zero() for t in range(n)]
        coeffs = []
        for i in range(len(vecs)):
            Ai = [row[:] for row in A]
            Ai[i] = [mx.pairing(gram, em, w) for w in vecs]
            coeffs.append(mx.det(Ai) / dA)
        vec = list(em)
        for a, v in zip(coeffs, vecs):
            vec = [c - a * vc for c, vc in zip(vec, v)]
        out.append(vec)
    return out


def _unit_coordinate(vec):
    for i, c in enumerate(vec):
        if not c.is_zero_at_precision() and vg_eq(c.val_exact(), c.config.vg_zero):
            return i
    raise SplitError("sublattice basis vector has no unit coordinate")


def split_off(M: GramLattice, idx):
    """Split M as N + N^perp along the coordinate sublattice ``idx``.

    Returns (N, Nperp, T) where T's columns are the chosen basis of N
    followed by the complement basis, so T^t G T is block diagonal.
    """
    idx = list(idx)
    if not can_split(M, idx):
        raise SplitError(f"sublattice {idx} does not split off")
    cfg = M.ring
    n = M.rank
    vecs = [[cfg.one() if t == i else cfg.zero() for t in range(n)] for i in idx]
    comp = _complement_vectors(M.gram, vecs, set(idx), cfg)
    cols = vecs + comp
    T = [[col[i] for col in cols] for i in range(n)]
    full = mx.gram_transform(M.gram, T)
    r = len(idx)
    N = GramLattice(cfg, [row[:r] for row in full[:r]])
    Nperp = GramLattice(cfg, [row[r:] for row in full[r:]]) if n > r else GramLattice(cfg, [])
    return N, Nperp, T


def _min_entry(gram):
    """Position and valuation of a minimal-valuation entry; diagonal entries
    are listed first, so ties prefer the diagonal, then the lowest index."""
    n = len(gram)
    entries = [((i, i), gram[i][i]) for i in range(n)]
    entries += [((i, j), gram[i][j]) for i in range(n) for j in range(i + 1, n)]
    key, val = mx.argmin_valuation(entries)
    if key is None:
        raise IndeterminateValuation("all entries capped at zero")
    return key, val


def _decompose_pieces(M: GramLattice, ambient_vectors, force_diagonal):
    """Greedy splitting; returns a list of (valuation, gram, vectors) pieces
    with nondecreasing valuations.  ``ambient_vectors`` expresses the current
    basis in the original coordinates."""
    cfg = M.ring
    if M.rank == 0:
        return []
    if M.rank == 1:
        e = M.gram[0][0]
        if e.is_zero_at_precision():
            raise IndeterminateValuation("rank-1 norm capped at zero")
        return [(e.val_exact(), M.gram, [ambient_vectors[0]])]
    (i, j), val = _min_entry(M.gram)
    if i == j:
        idx_vecs = [[cfg.one() if t == i else cfg.zero() for t in range(M.rank)]]
        drop = {i}
    elif force_diagonal:
        # (x+y)^2 = x^2 + y^2 + 2(x,y) attains the minimum when 2 is a unit
        v = [cfg.zero()] * M.rank
        v[i], v[j] = cfg.one(), cfg.one()
        idx_vecs = [v]
        drop = {i}
    else:
        idx_vecs = [[cfg.one() if t == i else cfg.zero() for t in range(M.rank)],
                    [cfg.one() if t == j else cfg.zero() for t in range(M.rank)]]
        drop = {i, j}
    comp = _complement_vectors(M.gram, idx_vecs, drop, cfg)
    block_gram = [[mx.pairing(M.gram, a, b) for b in idx_vecs] for a in idx_vecs]
    to_ambient = lambda local: [
        sum((c * av[t] for c, av in zip(local, ambient_vectors)), start=cfg.zero())
        for t in range(len(ambient_vectors[0]))]
    piece = (val, block_gram, [to_ambient(v) for v in idx_vecs])
    if not comp:
        return [piece]
    perp_gram = [[mx.pairing(M.gram, a, b) for b in comp] for a in comp]
    rest = _decompose_pieces(GramLattice(cfg, perp_gram),
                             [to_ambient(v) for v in comp], force_diagonal)
    return [piece] + rest


def jordan_decompose(M: GramLattice) -> JordanDecomposition:
    """Orthogonal splitting into uni-valued blocks of strictly increasing
    valuation; equal-valuation pieces merge in discovery order."""
    M.check_nondegenerate()
    cfg = M.ring
    n = M.rank
    start = [[cfg.one() if t == i else cfg.zero() for t in range(n)] for i in range(n)]
    pieces = _decompose_pieces(M, start, force_diagonal=False)
    dec = JordanDecomposition(M)
    for val, gram, vectors in pieces:
        if dec.blocks and vg_eq(dec.blocks[-1].scale_valuation, val):
            blk = dec.blocks[-1]
            old = blk.ambient_gram().gram
            merged = _merge_grams(old, gram, cfg)
            sigma_inv = cfg.one() / cfg.monomial(val)
            blk.unimodular_gram = GramLattice(cfg, [[e * sigma_inv for e in row] for row in merged])
            blk.vectors = blk.vectors + vectors
        else:
            if dec.blocks and not vg_lt(dec.blocks[-1].scale_valuation, val):
                raise AssertionError("pieces arrived out of order")
            sigma_inv = cfg.one() / cfg.monomial(val)
            uni = GramLattice(cfg, [[e * sigma_inv for e in row] for row in gram])
            dec.blocks.append(JordanBlock(val, uni, list(vectors)))
    return dec


def _merge_grams(A, B, cfg):
    na, nb = len(A), len(B)
    z = cfg.zero()
    out = [[A[i][j] if j < na else z for j in range(na + nb)] for i in range(na)]
    out += [[z if j < na else B[i - na][j - na] for j in range(na + nb)]
            for i in range(na, na + nb)]
    return out


def diagonalize_component(B: JordanBlock) -> JordanBlock:
    """Orthogonal basis for a uni-valued block when one exists.

    With 2 invertible the output is always diagonal.  In residue
    characteristic 2 the block splits into rank-1 and rank-2 pieces; as long
    as both kinds are present, a rank-2 piece {x, y} and a rank-1 piece {z}
    of the same valuation are merged into three orthogonal vectors
    (the explicit 3-vector basis with t = 1).
    """
    cfg = B.unimodular_gram.ring
    U = B.unimodular_gram
    two_unit = vg_eq(cfg.v2, cfg.vg_zero)
    local = [[cfg.one() if t == i else cfg.zero() for t in range(U.rank)]
             for i in range(U.rank)]
    pieces = _decompose_pieces(U, local, force_diagonal=two_unit)
    rank1 = [(g, v[0]) for (_val, g, v) in pieces if len(v) == 1]
    rank2 = [(g, v) for (_val, g, v) in pieces if len(v) == 2]
    while rank1 and rank2 and not two_unit:
        (g2, (x, y)) = rank2.pop(0)
        (g1, z) = rank1.pop(0)
        x2, y2, xy, z2 = g2[0][0], g2[1][1], g2[0][1], g1[0][0]
        t = cfg.one()
        w1 = [xi * t + zi for xi, zi in zip(x, z)]
        w2 = [z2 * yi - t * xy * zi for yi, zi in zip(y, z)]
        c_x = y2 * z2 + t * t * xy * xy
        c_y = xy * (t * t * x2 + z2)
        c_z = t * (x2 * y2 - xy * xy)
        w3 = [c_x * xi - c_y * yi - c_z * zi for xi, yi, zi in zip(x, y, z)]
        for w in (w1, w2, w3):
            norm = mx.pairing(U.gram, w, w)
            rank1.append(([[norm]], w))
    cols = [v for g, v in rank1] + [v for g, vv in rank2 for v in vv]
    newU = [[mx.pairing(U.gram, a, b) for b in cols] for a in cols]
    # push the local change of basis through to ambient coordinates
    amb = []
    for col in cols:
        amb.append([sum((c * bv[t] for c, bv in zip(col, B.vectors)), start=cfg.zero())
                    for t in range(len(B.vectors[0]))])
    return JordanBlock(B.scale_valuation, GramLattice(cfg, newU), amb)
