"""Small exact matrix helpers over RingElem entries.

Determinants use fraction-free (Bareiss) elimination with valuation pivoting:
the pivot is an entry of minimal certified valuation, so no step divides by
an element of higher valuation than necessary and precision loss is bounded.
"""

from __future__ import annotations

from .errors import DomainError, IndeterminateValuation
from .rings import RingConfig, RingElem
from .valgroup import vg_eq, vg_le, vg_lt

Matrix = list  # list[list[RingElem]]


def identity(cfg: RingConfig, n: int) -> Matrix:
    one, zero = cfg.one(), cfg.zero()
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(cfg: RingConfig, rows: int, cols: int) -> Matrix:
    z = cfg.zero()
    return [[z for _ in range(cols)] for _ in range(rows)]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    n, m, k = len(A), len(B[0]), len(B)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = A[i][0] * B[0][j]
            for t in range(1, k):
                acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(A: Matrix, v: list) -> list:
    return [_dotrow(row, v) for row in A]


def _dotrow(row, v):
    acc = row[0] * v[0]
    for a, b in zip(row[1:], v[1:]):
        acc = acc + a * b
    return acc


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)]


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A: Matrix, c) -> Matrix:
    return [[a * c for a in row] for row in A]


def gram_transform(G: Matrix, T: Matrix) -> Matrix:
    """T^t G T."""
    return mat_mul(transpose(T), mat_mul(G, T))


def pairing(G: Matrix, x: list, y: list) -> RingElem:
    return _dotrow(mat_vec(G, y), x)


def argmin_valuation(entries):
    """Index of an entry of minimal certified valuation.

    ``entries`` is a list of (key, RingElem).  Entries that vanish at their
    precision are skipped; if one of them could still undercut the winner,
    the minimum is not certified and IndeterminateValuation is raised.
    Returns (key, valuation) or (None, None) when every entry vanishes.
    """
    best_key, best_val = None, None
    capped = []
    for key, e in entries:
        if e.is_zero_at_precision():
            if not e.is_true_zero:
                capped.append(e.known)
            continue
        v = e.val_exact()
        if best_val is None or vg_lt(v, best_val):
            best_key, best_val = key, v
    if best_val is not None:
        for k in capped:
            if not vg_le(best_val, k):
                raise IndeterminateValuation(
                    "minimal valuation tied with an entry capped at zero")
    return best_key, best_val


def det(A: Matrix) -> RingElem:
    """Determinant by fraction-free elimination with valuation pivoting."""
    n = len(A)
    cfg = A[0][0].config
    if n == 0:
        return cfg.one()
    M = [row[:] for row in A]
    sign = 1
    prev = cfg.one()
    for k in range(n - 1):
        entries = [((i, j), M[i][j]) for i in range(k, n) for j in range(k, n)]
        (pos, _v) = argmin_valuation(entries)
        if pos is None:
            # the whole remaining block vanishes at precision
            rem = M[k][k]
            for i in range(k, n):
                for j in range(k, n):
                    rem = rem * M[i][j]
            return rem  # zero (possibly capped) with propagated precision
        pi, pj = pos
        if pi != k:
            M[k], M[pi] = M[pi], M[k]
            sign = -sign
        if pj != k:
            for row in M:
                row[k], row[pj] = row[pj], row[k]
            sign = -sign
        piv = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * piv - M[i][k] * M[k][j]) / prev
        prev = piv
    result = M[n - 1][n - 1]
    return result if sign == 1 else -result


def invert(A: Matrix) -> Matrix:
    """Inverse of a matrix with unit determinant, by Gauss-Jordan with
    valuation pivoting (partial, rows only)."""
    n = len(A)
    cfg = A[0][0].config
    M = [row[:] + irow[:] for row, irow in zip(A, identity(cfg, n))]
    for k in range(n):
        (pos, _v) = argmin_valuation([(i, M[i][k]) for i in range(k, n)])
        if pos is None:
            raise DomainError("matrix is singular at working precision")
        if pos != k:
            M[k], M[pos] = M[pos], M[k]
        piv = M[k][k]
        M[k] = [e / piv for e in M[k]]
        for i in range(n):
            if i != k and not M[i][k].is_zero_at_precision():
                f = M[i][k]
                M[i] = [a - f * b for a, b in zip(M[i], M[k])]
    return [row[n:] for row in M]


def mat_eq_at_precision(A: Matrix, B: Matrix) -> bool:
    return all(a.eq_at_precision(b) for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def mat_congruent(A: Matrix, B: Matrix, gamma) -> bool:
    return all(a.congruent_mod(b, gamma) for ra, rb in zip(A, B) for a, b in zip(ra, rb))
