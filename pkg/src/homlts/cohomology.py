"""Hom-cochains, the coboundary operator, and cohomology spaces.

A degree-n cochain with values in a module V of dimension m is stored as an
array of shape ``(d,) * n + (m,)``: ``values[i1, ..., in]`` is
``f(e_i1, ..., e_in)``.  Batches of cochains carry one extra leading axis.

Two complexes (odd and even degrees) are interleaved, since the coboundary
raises the degree by two.  Degrees 1 and 2 are cut out by twist-equivariance
alone and have no coboundaries.
"""

from __future__ import annotations

import os
import string
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg
from .field import Field, FieldMismatchError
from .representation import Representation, d_tensor

__all__ = [
    "Cochain",
    "CochainSpace",
    "CohomologyResult",
    "NotACochainError",
    "CochainTooLargeError",
    "DEFAULT_MAX_COEFFS",
    "max_coeffs",
    "twist_power",
    "cochain_violations",
    "is_cochain",
    "cochain_space",
    "coboundary",
    "coboundary_values",
    "coboundary_matrix",
    "cocycles",
    "coboundaries",
    "cohomology",
    "verify_complex",
    "twist_slots",
]

DEFAULT_MAX_COEFFS = 10 ** 6


class NotACochainError(ValueError):
    pass


class CochainTooLargeError(MemoryError):
    pass


def max_coeffs() -> int:
    raw = os.environ.get("HOMLTS_MAX_COEFFS")
    return int(raw) if raw else DEFAULT_MAX_COEFFS


def _guard(R: Representation, degree: int):
    count = R.mdim * R.base.dim ** degree
    if count > max_coeffs():
        raise CochainTooLargeError(
            f"degree {degree} needs {count} coefficients (limit {max_coeffs()}; "
            "raise HOMLTS_MAX_COEFFS to allow it)"
        )


@dataclass(frozen=True, eq=False)
class Cochain:
    rep: Representation
    values: np.ndarray

    def __post_init__(self):
        F = self.rep.field
        vals = F.normalize(F.check(np.asarray(self.values)))
        d, m = self.rep.base.dim, self.rep.mdim
        n = vals.ndim - 1
        if n < 1 or vals.shape != (d,) * n + (m,):
            raise ValueError(f"cochain values must have shape (d,)*n + (m,), got {vals.shape}")
        vals = np.array(vals, copy=True)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def degree(self) -> int:
        return self.values.ndim - 1

    @property
    def field(self) -> Field:
        return self.rep.field

    def flat(self) -> np.ndarray:
        return self.values.reshape(-1)

    def is_zero(self) -> bool:
        return self.field.is_zero(self.values)

    def __add__(self, other: "Cochain") -> "Cochain":
        _same_space(self, other)
        return Cochain(self.rep, self.field.reduce(self.values + other.values))

    def __sub__(self, other: "Cochain") -> "Cochain":
        _same_space(self, other)
        return Cochain(self.rep, self.field.reduce(self.values - other.values))

    def __neg__(self) -> "Cochain":
        return Cochain(self.rep, self.field.reduce(-self.values))

    def scale(self, s) -> "Cochain":
        return Cochain(self.rep, self.field.reduce(self.values * self.field.scalar(s)))

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.rep is other.rep and self.field.equal(self.values, other.values)

    __hash__ = None

    def __repr__(self):
        nnz = int(np.count_nonzero(self.values != 0))
        return f"Cochain(degree={self.degree}, field={self.field}, nonzero={nnz})"


def _same_space(f: Cochain, g: Cochain):
    if f.field != g.field:
        raise FieldMismatchError(f"field mismatch: {f.field} vs {g.field}")
    if f.values.shape != g.values.shape:
        raise ValueError("cochains of different degree or module")


@dataclass(frozen=True, eq=False)
class CochainSpace:
    """A subspace of degree-n cochains; ``basis`` has shape ``(k,) + (d,)*n + (m,)``."""

    rep: Representation
    degree: int
    basis: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def matrix(self) -> np.ndarray:
        """Basis as a ``k x (m d^n)`` matrix, one flattened cochain per row."""
        return self.basis.reshape(self.dim, int(np.prod(self.basis.shape[1:])))

    def cochains(self) -> list:
        return [Cochain(self.rep, b) for b in self.basis]

    def combine(self, coeffs) -> Cochain:
        F = self.rep.field
        coeffs = np.asarray(coeffs)
        if self.dim == 0:
            return Cochain(self.rep, F.zeros(self.basis.shape[1:]))
        vals = F.einsum("k,k...->...", coeffs, self.basis)
        return Cochain(self.rep, vals)


@dataclass(frozen=True)
class CohomologyResult:
    degree: int
    dim: int
    cochain_dim: int
    cocycle_dim: int
    coboundary_dim: int
    representatives: tuple


def _frozen_space(R, n, basis) -> CochainSpace:
    basis = np.array(basis, copy=True)
    basis.setflags(write=False)
    return CochainSpace(R, n, basis)


# -- slot-wise twisting -----------------------------------------------------

def twist_slots(F: Field, arr: np.ndarray, M: np.ndarray, axes) -> np.ndarray:
    """Replace the argument at each axis in ``axes`` by ``M`` applied to it."""
    out = arr
    for ax in axes:
        out = F.reduce(np.moveaxis(np.tensordot(out, M, axes=([ax], [0])), -1, ax))
    return out


def twist_power(degree: int) -> int:
    """Power of the twist applied to the module-action arguments by the coboundary of this degree."""
    if degree % 2:
        return (degree - 1) // 2
    return degree // 2


# -- cochain conditions -----------------------------------------------------

def _equivariance_residual(R: Representation, vals: np.ndarray, batch: bool) -> np.ndarray:
    F = R.field
    off = 1 if batch else 0
    n = vals.ndim - 1 - off
    Af = F.reduce(np.tensordot(vals, R.A, axes=([vals.ndim - 1], [1])))
    fa = twist_slots(F, vals, R.base.alpha, range(off, off + n))
    return F.reduce(Af - fa)


def _alternation_residuals(F: Field, vals: np.ndarray, batch: bool):
    off = 1 if batch else 0
    n = vals.ndim - 1 - off
    s, t = off + n - 3, off + n - 2
    diag = np.diagonal(vals, axis1=s, axis2=t)
    antisym = F.reduce(vals + np.swapaxes(vals, s, t))
    return diag, antisym


def _cyclic_residual(F: Field, vals: np.ndarray, batch: bool) -> np.ndarray:
    off = 1 if batch else 0
    n = vals.ndim - 1 - off
    a, b, c = off + n - 3, off + n - 2, off + n - 1
    perm = list(range(vals.ndim))
    # f(.., y, z, x) and f(.., z, x, y) as arrays indexed by (.., x, y, z)
    p1 = perm.copy()
    p1[a], p1[b], p1[c] = b, c, a
    p2 = perm.copy()
    p2[a], p2[b], p2[c] = c, a, b
    return F.reduce(vals + np.transpose(vals, p1) + np.transpose(vals, p2))


def cochain_violations(R: Representation, values) -> list:
    """Names of the cochain conditions that ``values`` fails (empty if it is a cochain)."""
    F = R.field
    vals = np.asarray(values)
    n = vals.ndim - 1
    bad = []
    if not F.is_zero(_equivariance_residual(R, vals, False)):
        bad.append("equivariance")
    if n >= 3:
        diag, antisym = _alternation_residuals(F, vals, False)
        if not (F.is_zero(diag) and F.is_zero(antisym)):
            bad.append("alternation")
        if not F.is_zero(_cyclic_residual(F, vals, False)):
            bad.append("cyclic")
    return bad


def is_cochain(R: Representation, values) -> bool:
    return not cochain_violations(R, values)


def _batch_is_cochain(R: Representation, vals: np.ndarray) -> bool:
    F = R.field
    n = vals.ndim - 2
    if not F.is_zero(_equivariance_residual(R, vals, True)):
        return False
    if n >= 3:
        diag, antisym = _alternation_residuals(F, vals, True)
        if not (F.is_zero(diag) and F.is_zero(antisym)):
            return False
        if not F.is_zero(_cyclic_residual(F, vals, True)):
            return False
    return True


# -- cochain spaces ---------------------------------------------------------

@lru_cache(maxsize=32)
def _lts_forms(F: Field, d: int):
    """Trilinear forms with g(x, x, z) = 0 and vanishing cyclic sum.

    Returns ``(basis, free)`` where ``basis`` has shape ``(k, d, d, d)`` and
    ``free`` lists each basis vector's free coordinate (flat index).
    """
    idx = lambda a, b, c: (a * d + b) * d + c  # noqa: E731
    rows = []
    for a in range(d):
        for b in range(a, d):
            for c in range(d):
                row = [0] * d ** 3
                if a == b:
                    row[idx(a, a, c)] = 1
                else:
                    row[idx(a, b, c)] += 1
                    row[idx(b, a, c)] += 1
                rows.append(row)
    for a in range(d):
        for b in range(d):
            for c in range(d):
                row = [0] * d ** 3
                for t in (idx(a, b, c), idx(b, c, a), idx(c, a, b)):
                    row[t] += 1
                rows.append(row)
    K = linalg.kernel_basis(F, F.array(rows))
    free = [int(np.flatnonzero(K[t] != 0)[-1]) for t in range(K.shape[0])]
    return K.reshape((-1, d, d, d)), free


def _kron_power(F: Field, M: np.ndarray, k: int) -> np.ndarray:
    out = F.eye(1)
    for _ in range(k):
        out = F.reduce(np.kron(out, M))
    return out


def _canonical(F: Field, vectors: np.ndarray) -> np.ndarray:
    """The basis ``kernel_basis`` returns for any system whose solution set is span(vectors)."""
    if vectors.shape[0] == 0:
        return vectors
    R, rk, pivots = linalg.rref(F, vectors[:, ::-1])
    rows = R[:rk, ::-1]
    order = np.argsort([vectors.shape[1] - 1 - p for p in pivots], kind="stable")
    return F.normalize(rows[order])


@lru_cache(maxsize=64)
def cochain_space(R: Representation, n: int) -> CochainSpace:
    """Basis of the degree-n Hom-cochains, in ``kernel_basis`` order on the full coefficient space."""
    if n < 1:
        raise ValueError("cochain degree must be >= 1")
    _guard(R, n)
    F = R.field
    d, m = R.base.dim, R.mdim
    alpha, A = R.base.alpha, R.A
    if n <= 2:
        P = _kron_power(F, alpha.T, n)
        Phi = F.reduce(np.kron(F.eye(d ** n), A) - np.kron(P, F.eye(m)))
        K = linalg.kernel_basis(F, Phi)
        return _frozen_space(R, n, K.reshape((-1,) + (d,) * n + (m,)))
    forms, free = _lts_forms(F, d)
    k = forms.shape[0]
    # twisting all three slots of a form, in form coordinates (read off free slots)
    tw = twist_slots(F, forms, alpha, (1, 2, 3)).reshape(k, -1)
    Lam = tw[:, free].T
    P = _kron_power(F, alpha.T, n - 3)
    Phi = F.reduce(
        np.kron(F.eye(d ** (n - 3) * k), A) - np.kron(np.kron(P, Lam), F.eye(m))
    )
    K = linalg.kernel_basis(F, Phi)
    K = K.reshape((K.shape[0], d ** (n - 3), k, m))
    full = F.einsum("zitv,tabc->ziabcv", K, forms)
    full = full.reshape(K.shape[0], d ** n * m)
    basis = _canonical(F, full)
    return _frozen_space(R, n, basis.reshape((-1,) + (d,) * n + (m,)))


# -- the coboundary ---------------------------------------------------------

_ARGS = string.ascii_lowercase


def coboundary_values(R: Representation, vals: np.ndarray) -> np.ndarray:
    """Coboundary of a batch of cochains (leading batch axis); no input validation.

    For odd degree ``2n-1`` the module action is evaluated at ``alpha^(n-1)``
    of its arguments; for even degree ``2n`` (leading passive argument ``y``)
    at ``alpha^n``.
    """
    F = R.field
    deg = vals.ndim - 2
    _guard(R, deg + 2)
    alpha = R.base.alpha
    c = R.base.bracket
    passive = 1 if deg % 2 == 0 else 0
    n = deg // 2 if passive else (deg + 1) // 2
    ap = F.matpow(alpha, twist_power(deg))
    th = F.einsum("pa,qb,pqvw->abvw", ap, ap, R.theta)
    D = F.einsum("pa,qb,pqvw->abvw", ap, ap, d_tensor(R))

    out = _ARGS[: deg + 2]
    ys = out[:passive]
    xs = out[passive:]  # xs[i] labels x_{i+1}
    x = lambda i: xs[i - 1]  # noqa: E731
    target = "Z" + out + "V"
    result = F.zeros((vals.shape[0],) + (R.base.dim,) * (deg + 2) + (R.mdim,))

    def add(sign, sub, *ops):
        nonlocal result
        term = F.einsum(sub, *ops)
        result = F.reduce(result + term if sign > 0 else result - term)

    N = 2 * n + 1
    # theta terms
    args = ys + "".join(x(i) for i in range(1, N - 1))
    add(+1, f"Z{args}W,{x(N - 1)}{x(N)}VW->{target}", vals, th)
    args = ys + "".join(x(i) for i in range(1, N - 2)) + x(N - 1)
    add(-1, f"Z{args}W,{x(N - 2)}{x(N)}VW->{target}", vals, th)
    # D terms
    for k in range(1, n + 1):
        args = ys + "".join(x(i) for i in range(1, N + 1) if i not in (2 * k - 1, 2 * k))
        add((-1) ** (n + k), f"Z{args}W,{x(2 * k - 1)}{x(2 * k)}VW->{target}", vals, D)
    # bracket terms: every argument twisted once except the bracketed one
    n_slots = deg
    untwisted_at = {}
    for s in range(n_slots):
        others = [1 + t for t in range(n_slots) if t != s]
        untwisted_at[s] = twist_slots(F, vals, alpha, others)
    for k in range(1, n + 1):
        remaining = [i for i in range(1, N + 1) if i not in (2 * k - 1, 2 * k)]
        for j in range(2 * k + 1, N + 1):
            slot = passive + remaining.index(j)
            labels = list(ys) + [x(i) for i in remaining]
            labels[slot] = "R"
            sub = f"Z{''.join(labels)}V,{x(2 * k - 1)}{x(2 * k)}{x(j)}R->{target}"
            add((-1) ** (n + k + 1), sub, untwisted_at[slot], c)
    return result


def coboundary(f: Cochain, check: bool = True) -> Cochain:
    """Apply the coboundary to a cochain, raising the degree by two."""
    R = f.rep
    if check:
        bad = cochain_violations(R, f.values)
        if bad:
            raise NotACochainError(f"input violates {', '.join(bad)}")
    out = coboundary_values(R, f.values[None])[0]
    if check:
        bad = cochain_violations(R, out)
        if bad:
            raise AssertionError(f"coboundary output violates {', '.join(bad)}")
    return Cochain(R, out)


@lru_cache(maxsize=64)
def coboundary_matrix(R: Representation, n: int) -> np.ndarray:
    """Matrix of the coboundary from ``cochain_space(R, n)`` coordinates to flat degree-(n+2) values."""
    C = cochain_space(R, n)
    F = R.field
    rows = R.mdim * R.base.dim ** (n + 2)
    if C.dim == 0:
        return F.zeros((rows, 0))
    imgs = coboundary_values(R, C.basis)
    M = np.ascontiguousarray(imgs.reshape(C.dim, -1).T)
    M.setflags(write=False)
    return M


def _prune_rows(F: Field, M: np.ndarray) -> np.ndarray:
    """Drop zero rows and rows proportional to an earlier row (the null space is unchanged)."""
    M = M[np.any(M != 0, axis=1)]
    if M.shape[0] == 0:
        return M
    lead = M[np.arange(M.shape[0]), np.argmax(M != 0, axis=1)]
    if F.is_rational:
        normed = np.array([[x / l for x in row] for row, l in zip(M, lead)], dtype=object)
        normed = F.normalize(normed)
        seen, keep = set(), []
        for i, row in enumerate(normed):
            key = tuple(row)
            if key not in seen:
                seen.add(key)
                keep.append(i)
        return M[keep]
    p = F.characteristic
    inv = np.array([pow(int(x), -1, p) for x in lead], dtype=M.dtype)
    normed = (M * inv[:, None]) % p
    _, keep = np.unique(normed, axis=0, return_index=True)
    return M[np.sort(keep)]


@lru_cache(maxsize=64)
def cocycles(R: Representation, n: int) -> CochainSpace:
    """Cocycles: the kernel of the coboundary on ``cochain_space(R, n)``."""
    F = R.field
    C = cochain_space(R, n)
    if C.dim == 0:
        return C
    M = _prune_rows(F, coboundary_matrix(R, n))
    coords = linalg.kernel_basis(F, M) if M.shape[0] else F.eye(C.dim)
    if coords.shape[0] == 0:
        return _frozen_space(R, n, F.zeros((0,) + C.basis.shape[1:]))
    vecs = F.matmul(coords, C.matrix())
    return _frozen_space(R, n, _canonical(F, vecs).reshape((-1,) + C.basis.shape[1:]))


@lru_cache(maxsize=64)
def coboundaries(R: Representation, n: int) -> CochainSpace:
    """Image of the coboundary from degree ``n - 2``; zero for degrees 1 and 2."""
    F = R.field
    d, m = R.base.dim, R.mdim
    shape = (d,) * n + (m,)
    if n < 1:
        raise ValueError("cochain degree must be >= 1")
    if n <= 2:
        return _frozen_space(R, n, F.zeros((0,) + shape))
    M = coboundary_matrix(R, n - 2)
    if M.shape[1] == 0:
        return _frozen_space(R, n, F.zeros((0,) + shape))
    basis = _canonical(F, linalg.row_basis(F, M.T))
    return _frozen_space(R, n, basis.reshape((-1,) + shape))


@lru_cache(maxsize=64)
def cohomology(R: Representation, n: int) -> CohomologyResult:
    """``H^n = Z^n / B^n`` with representative cocycles completing ``B^n`` to ``Z^n``."""
    F = R.field
    C = cochain_space(R, n)
    Z = cocycles(R, n)
    B = coboundaries(R, n)
    dim = linalg.quotient_dim(F, Z.matrix(), B.matrix())
    picks = linalg.complete_basis(F, B.matrix(), Z.matrix())
    if len(picks) != dim:
        raise AssertionError("representative count disagrees with the quotient dimension")
    reps = tuple(Cochain(R, Z.basis[i]) for i in picks)
    return CohomologyResult(
        degree=n,
        dim=dim,
        cochain_dim=C.dim,
        cocycle_dim=Z.dim,
        coboundary_dim=B.dim,
        representatives=reps,
    )


def verify_complex(R: Representation, n: int, chunk: int = 64) -> bool:
    """True iff the coboundary squared vanishes on every basis cochain of degree n."""
    F = R.field
    C = cochain_space(R, n)
    _guard(R, n + 4)
    for start in range(0, C.dim, chunk):
        once = coboundary_values(R, C.basis[start:start + chunk])
        twice = coboundary_values(R, once)
        if not F.is_zero(twice):
            return False
    return True
