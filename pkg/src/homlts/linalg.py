"""Deterministic exact linear algebra over a :class:`~homlts.field.Field`.

Matrices are 2-D numpy arrays in the field's storage (see ``field.py``).
Vectors are 1-D arrays; lists of vectors are 2-D arrays with one vector
per row.  Every routine is a pure function of its inputs.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .field import Field, FieldError

__all__ = [
    "NotASubspaceError",
    "rref",
    "rank",
    "kernel_basis",
    "solve",
    "in_span",
    "row_basis",
    "quotient_dim",
    "pivot_columns",
    "complete_basis",
]


class NotASubspaceError(ValueError):
    """Raised by :func:`quotient_dim` when W does not lie inside U."""


def _as_matrix(field: Field, M) -> np.ndarray:
    M = np.asarray(M)
    if M.ndim != 2:
        raise FieldError(f"expected a matrix, got shape {M.shape}")
    return field.check(M)


def _denominator(x):
    return x.denominator if isinstance(x, Fraction) else 1


_denominators = np.frompyfunc(_denominator, 1, 1)


def _rref_prime(field: Field, M: np.ndarray):
    p = field.characteristic
    R = field.reduce(M.copy())
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        inv = pow(int(R[r, c]), -1, p)
        R[r] = (R[r] * inv) % p
        col = R[:, c].copy()
        col[r] = 0
        targets = np.flatnonzero(col)
        if targets.size:
            R[targets] = (R[targets] - np.outer(col[targets], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def _rref_rational(M: np.ndarray):
    # Fraction-free Gauss-Jordan on integer rows; content is divided out
    # after every elimination step to keep entries small.
    rows, cols = M.shape
    R = np.empty((rows, cols), dtype=object)
    for i in range(rows):
        row = M[i]
        scale = int(np.lcm.reduce(_denominators(row).astype(object))) if cols else 1
        R[i] = [int(x * scale) for x in row]
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = [i for i in range(r, rows) if R[i, c] != 0]
        if not nz:
            continue
        i = nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        a = R[r, c]
        col = R[:, c].copy()
        col[r] = 0
        targets = np.flatnonzero(col != 0)
        if targets.size:
            block = R[targets] * a - np.outer(col[targets], R[r])
            g = np.gcd.reduce(block, axis=1)
            g[g == 0] = 1
            R[targets] = block // g[:, None]
        pivots.append(c)
        r += 1
    out = np.empty((rows, cols), dtype=object)
    out.fill(0)
    for i, c in enumerate(pivots):
        a = R[i, c]
        out[i] = [x if x == 0 else _norm(Fraction(x, a)) for x in R[i]]
    return out, pivots


def _norm(x: Fraction):
    return x.numerator if x.denominator == 1 else x


def rref(field: Field, M):
    """Reduced row echelon form.

    Returns ``(R, rank, pivots)``; ``R`` has the same shape as ``M`` and
    ``pivots`` lists the pivot column of each nonzero row of ``R``.
    """
    M = _as_matrix(field, M)
    if field.is_rational:
        R, pivots = _rref_rational(M)
    else:
        R, pivots = _rref_prime(field, M)
    return R, len(pivots), pivots


def rank(field: Field, M) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return rref(field, M)[1]


def pivot_columns(field: Field, M) -> list[int]:
    return rref(field, M)[2]


def kernel_basis(field: Field, M) -> np.ndarray:
    """Basis of the right null space, one vector per row.

    Free columns are taken in increasing order and each basis vector has a
    1 in its own free slot.
    """
    M = _as_matrix(field, M)
    rows, cols = M.shape
    R, rk, pivots = rref(field, M)
    free = [c for c in range(cols) if c not in set(pivots)]
    K = field.zeros((len(free), cols))
    for t, f in enumerate(free):
        K[t, f] = 1
        for i, pc in enumerate(pivots):
            if R[i, f] != 0:
                K[t, pc] = -R[i, f]
    return field.normalize(field.reduce(K))


def solve(field: Field, M, b):
    """Particular solution of ``M x = b`` with every free variable set to 0.

    Returns ``None`` when the system is inconsistent.
    """
    M = _as_matrix(field, M)
    b = field.check(np.asarray(b))
    if b.ndim != 1 or b.shape[0] != M.shape[0]:
        raise ValueError(f"dimension mismatch: matrix {M.shape}, right-hand side {b.shape}")
    aug = np.concatenate([M, b[:, None]], axis=1)
    R, rk, pivots = rref(field, aug)
    cols = M.shape[1]
    if pivots and pivots[-1] == cols:
        return None
    x = field.zeros(cols)
    for i, pc in enumerate(pivots):
        x[pc] = R[i, cols]
    return field.normalize(x)


def in_span(field: Field, v, B):
    """Coordinates ``c`` with ``sum(c[i] * B[i]) == v``, or ``None``."""
    v = field.check(np.asarray(v))
    B = np.asarray(B)
    if B.size == 0:
        B = field.zeros((0, v.shape[0]))
    if B.ndim != 2 or B.shape[1] != v.shape[0]:
        raise ValueError(f"dimension mismatch: vector of length {v.shape[0]}, basis {B.shape}")
    if B.shape[0] == 0:
        return field.zeros(0) if field.is_zero(v) else None
    return solve(field, B.T, v)


def row_basis(field: Field, vectors) -> np.ndarray:
    """Canonical basis (nonzero RREF rows) of the span of ``vectors``."""
    V = np.asarray(vectors)
    if V.shape[0] == 0:
        return V
    R, rk, _ = rref(field, V)
    return R[:rk]


def complete_basis(field: Field, base, candidates) -> list[int]:
    """Indices of the candidates that extend span(base), chosen greedily in order."""
    base = np.asarray(base)
    candidates = np.asarray(candidates)
    if candidates.shape[0] == 0:
        return []
    nb = base.shape[0] if base.size else 0
    stacked = candidates if nb == 0 else np.concatenate([base, candidates], axis=0)
    # pivot columns of [base | candidates] are exactly the greedy picks
    pivots = pivot_columns(field, stacked.T)
    return [c - nb for c in pivots if c >= nb]


def quotient_dim(field: Field, U, W) -> int:
    """``dim span(U) - dim span(W)``, after checking ``span(W) <= span(U)``."""
    U = np.asarray(U)
    W = np.asarray(W)
    rU = rank(field, U) if U.size else 0
    rW = rank(field, W) if W.size else 0
    if rW:
        both = W if not U.size else np.concatenate([U, W], axis=0)
        if rank(field, both) != rU:
            raise NotASubspaceError("span(W) is not contained in span(U)")
    return rU - rW
