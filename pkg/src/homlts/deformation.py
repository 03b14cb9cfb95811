"""Truncated one-parameter formal deformations of the bracket.

A deformation ``d_t = d_0 + d_1 t + ... + d_N t^N`` keeps the twist fixed and
deforms only the bracket ``d_0``.  Every jet ``d_i`` is a degree-3 cochain of
the adjoint representation, stored like the bracket itself: ``d_i[i, j, k, l]``
is the ``e_l`` coefficient of ``d_i(e_i, e_j, e_k)``.
"""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import HomTripleSystem
from .cohomology import (
    Cochain,
    NotACochainError,
    _prune_rows,
    coboundaries,
    coboundary_matrix,
    coboundary_values,
    cochain_space,
    cochain_violations,
    cohomology,
    twist_slots,
)
from .representation import Representation, adjoint_rep

__all__ = [
    "MultilinearMap",
    "FiveLinearMap",
    "TruncatedDeformation",
    "FormalIsomorphism",
    "DeformationError",
    "PreconditionError",
    "ObstructionError",
    "circ_alpha",
    "check_deformation",
    "infinitesimal_is_cocycle",
    "obstruction",
    "integrate_step",
    "integrate",
    "check_equivalence",
    "push_forward",
    "infinitesimals_cohomologous",
    "bullet_hg",
    "bullet_fh",
    "bullet_compositions",
]


class DeformationError(ValueError):
    pass


class PreconditionError(DeformationError):
    pass


class ObstructionError(DeformationError):
    """No next jet exists; ``coords`` are the coordinates of the obstruction class in H^5."""

    def __init__(self, order: int, coords):
        self.order = order
        self.coords = tuple(coords)
        super().__init__(f"obstructed at order {order}; class coordinates {list(self.coords)}")


@dataclass(frozen=True, eq=False)
class MultilinearMap:
    """Values of a multilinear map on basis tuples, last axis indexing the output."""

    field: object
    values: np.ndarray

    @property
    def arity(self) -> int:
        return self.values.ndim - 1

    def is_zero(self) -> bool:
        return self.field.is_zero(self.values)

    def nonzero(self) -> list:
        """Basis tuples where the map is nonzero."""
        return [tuple(int(i) for i in idx) for idx in np.argwhere(np.any(self.values != 0, axis=-1))]

    def as_cochain(self, rep: Representation) -> Cochain:
        return Cochain(rep, self.values)


FiveLinearMap = MultilinearMap


def _is_adjoint(R: Representation) -> bool:
    F = R.field
    T = R.base
    return F.equal(R.A, T.alpha) and F.equal(R.theta, np.einsum("zabl->ablz", T.bracket))


def _jet_values(R: Representation, jet) -> np.ndarray:
    if isinstance(jet, Cochain):
        if jet.rep is not R and not (_is_adjoint(jet.rep) and jet.rep.base == R.base):
            raise DeformationError("jet is not a cochain of the adjoint representation of the base")
        vals = jet.values
    else:
        vals = R.field.normalize(R.field.check(np.asarray(jet)))
    d = R.base.dim
    if vals.shape != (d,) * 4:
        raise DeformationError(f"a jet must be a degree-3 cochain, got shape {vals.shape}")
    return vals


@dataclass(frozen=True, eq=False)
class TruncatedDeformation:
    """``d_0 + d_1 t + ... + d_N t^N`` with ``d_0`` the bracket of ``base``."""

    base: HomTripleSystem
    jets: tuple
    rep: Representation = None

    def __post_init__(self):
        R = self.rep if self.rep is not None else adjoint_rep(self.base)
        if not _is_adjoint(R) or R.base != self.base:
            raise DeformationError("rep must be the adjoint representation of base")
        object.__setattr__(self, "rep", R)
        jets = []
        for i, jet in enumerate(self.jets, start=1):
            vals = _jet_values(R, jet)
            bad = cochain_violations(R, vals)
            if bad:
                raise NotACochainError(f"jet d_{i} violates {', '.join(bad)}")
            jets.append(Cochain(R, vals))
        object.__setattr__(self, "jets", tuple(jets))

    @property
    def order(self) -> int:
        return len(self.jets)

    @property
    def field(self):
        return self.base.field

    def component(self, i: int) -> np.ndarray:
        """``d_i`` as an array; ``d_0`` is the bracket and jets past the order are zero."""
        if i == 0:
            return self.base.bracket
        if i <= self.order:
            return self.jets[i - 1].values
        return self.field.zeros((self.base.dim,) * 4)

    def extend(self, jet) -> "TruncatedDeformation":
        return TruncatedDeformation(self.base, self.jets + (jet,), self.rep)

    @classmethod
    def null(cls, T: HomTripleSystem, order: int = 0) -> "TruncatedDeformation":
        zero = T.field.zeros((T.dim,) * 4)
        return cls(T, (zero,) * order)


@dataclass(frozen=True, eq=False)
class FormalIsomorphism:
    """``id + phi_1 t + ... + phi_N t^N``; each ``phi_i`` is a d x d matrix acting on columns."""

    field: object
    jets: tuple

    def __post_init__(self):
        F = self.field
        mats = []
        for phi in self.jets:
            phi = F.normalize(F.check(np.asarray(phi))) if isinstance(phi, np.ndarray) else F.array(phi)
            if phi.ndim != 2 or phi.shape[0] != phi.shape[1]:
                raise ValueError("isomorphism jets must be square matrices")
            phi = np.array(phi, copy=True)
            phi.setflags(write=False)
            mats.append(phi)
        object.__setattr__(self, "jets", tuple(mats))

    @property
    def order(self) -> int:
        return len(self.jets)

    def component(self, i: int, d: int) -> np.ndarray:
        if i == 0:
            return self.field.eye(d)
        if i <= self.order:
            return self.jets[i - 1]
        return self.field.zeros((d, d))

    def commutation_residuals(self, alpha) -> list:
        """``phi_i alpha - alpha phi_i`` for each jet."""
        F = self.field
        return [F.reduce(F.matmul(p, alpha) - F.matmul(alpha, p)) for p in self.jets]


# -- compositions -----------------------------------------------------------

def _circ(F, f: np.ndarray, g: np.ndarray, a: np.ndarray) -> np.ndarray:
    t1 = F.einsum("uvxr,py,qz,rpql->uvxyzl", g, a, a, f)
    t2 = F.einsum("px,uvyr,qz,prql->uvxyzl", a, g, a, f)
    t3 = F.einsum("px,qy,uvzr,pqrl->uvxyzl", a, a, g, f)
    t4 = F.einsum("pu,qv,xyzr,pqrl->uvxyzl", a, a, g, f)
    return F.reduce(t1 + t2 + t3 - t4)


def _values3(x, d: int, F) -> np.ndarray:
    vals = x.values if isinstance(x, Cochain) else F.check(np.asarray(x))
    if vals.shape != (d,) * 4:
        raise DeformationError(f"expected a trilinear map T^3 -> T, got shape {vals.shape}")
    return vals


def circ_alpha(T: HomTripleSystem, f, g) -> MultilinearMap:
    """``f o g (u,v,x,y,z)``: the five-linear pairing that encodes the deformation equation."""
    F = T.field
    f = _values3(f, T.dim, F)
    g = _values3(g, T.dim, F)
    return MultilinearMap(F, _circ(F, f, g, T.alpha))


def check_deformation(D: TruncatedDeformation) -> list:
    """Residual ``sum_{i+j=n} d_i o d_j`` for n = 1..N (zero iff the order-n equation holds)."""
    F = D.field
    a = D.base.alpha
    out = []
    for n in range(1, D.order + 1):
        acc = F.zeros((D.base.dim,) * 6)
        for i in range(n + 1):
            acc = F.reduce(acc + _circ(F, D.component(i), D.component(n - i), a))
        out.append(MultilinearMap(F, acc))
    return out


def infinitesimal_is_cocycle(D: TruncatedDeformation) -> bool:
    if D.order < 1:
        raise PreconditionError("the deformation has no infinitesimal (order 0)")
    return D.field.is_zero(coboundary_values(D.rep, D.jets[0].values[None]))


def _higher_sum(D: TruncatedDeformation, n: int) -> np.ndarray:
    F = D.field
    acc = F.zeros((D.base.dim,) * 6)
    for i in range(1, n):
        acc = F.reduce(acc + _circ(F, D.component(i), D.component(n - i), D.base.alpha))
    return acc


def obstruction(D: TruncatedDeformation, n: int | None = None) -> MultilinearMap:
    """``sum_{i+j=n+1, i,j>=1} d_i o d_j``, checked to be a degree-5 cocycle."""
    n = D.order if n is None else n
    if not 0 <= n <= D.order:
        raise PreconditionError(f"order {n} outside 0..{D.order}")
    for k, res in enumerate(check_deformation(D)[:n], start=1):
        if not res.is_zero():
            raise PreconditionError(f"deformation equation fails at order {k}")
    R = D.rep
    dt = _higher_sum(D, n + 1)
    bad = cochain_violations(R, dt)
    if bad:
        raise AssertionError(f"obstruction is not a 5-cochain ({', '.join(bad)})")
    if not D.field.is_zero(coboundary_values(R, dt[None])):
        raise AssertionError("obstruction is not a 5-cocycle")
    return MultilinearMap(D.field, dt)


def _h5_coords(R: Representation, dt: np.ndarray) -> tuple:
    F = R.field
    H = cohomology(R, 5)
    B = coboundaries(R, 5)
    reps = [r.flat() for r in H.representatives]
    stacked = np.array(list(B.matrix()) + reps, dtype=B.matrix().dtype).reshape(-1, dt.size)
    coords = linalg.in_span(F, dt.reshape(-1), stacked)
    if coords is None:
        raise AssertionError("obstruction is not in the span of the cocycles")
    return tuple(F.format(x) for x in coords[B.dim:])


def integrate_step(D: TruncatedDeformation) -> TruncatedDeformation:
    """Append ``d_{N+1}`` solving ``delta^3 x = -obstruction`` (free variables set to zero).

    Raises :class:`ObstructionError` with the class coordinates in H^5 when no solution exists.
    """
    F = D.field
    R = D.rep
    dt = obstruction(D).values
    M = coboundary_matrix(R, 3)
    rhs = F.reduce(-dt.reshape(-1))
    aug = _prune_rows(F, np.concatenate([M, rhs[:, None]], axis=1))
    C = cochain_space(R, 3)
    if C.dim == 0:
        x = F.zeros(0) if F.is_zero(rhs) else None
    else:
        x = linalg.solve(F, aug[:, :-1], aug[:, -1]) if aug.shape[0] else F.zeros(C.dim)
    if x is None:
        raise ObstructionError(D.order + 1, _h5_coords(R, dt))
    return D.extend(C.combine(x))


def integrate(T: HomTripleSystem, d1, N: int = 4) -> TruncatedDeformation:
    """Extend an infinitesimal ``d1`` to a deformation of order N, one jet at a time."""
    if N < 1:
        raise ValueError("order must be >= 1")
    D = TruncatedDeformation(T, (d1,))
    if not infinitesimal_is_cocycle(D):
        raise PreconditionError("d1 is not a 3-cocycle of the adjoint representation")
    while D.order < N:
        D = integrate_step(D)
    return D


# -- equivalence ------------------------------------------------------------

def _transport(F, dp: np.ndarray, pk, pl, pm) -> np.ndarray:
    return F.einsum("pqrs,px,qy,rz->xyzs", dp, pk, pl, pm)


def _compositions(n: int, parts: int):
    for combo in itertools.product(range(n + 1), repeat=parts):
        if sum(combo) == n:
            yield combo


def check_equivalence(D: TruncatedDeformation, D2: TruncatedDeformation, phi: FormalIsomorphism) -> dict:
    """Order-by-order residuals of ``phi_t d_t = d'_t(phi_t, phi_t, phi_t)``.

    Returns ``{"orders": [...], "commutation": [...]}``: the order-n residual
    for n = 1..N (as trilinear maps) and ``phi_i alpha - alpha phi_i`` per jet.
    """
    if D.base != D2.base:
        raise DeformationError("deformations over different base systems")
    if not (D.order == D2.order == phi.order):
        raise DeformationError(f"order mismatch: {D.order}, {D2.order}, {phi.order}")
    F = D.field
    d = D.base.dim
    P = lambda i: phi.component(i, d)  # noqa: E731
    orders = []
    for n in range(1, D.order + 1):
        acc = F.zeros((d,) * 4)
        for i in range(n + 1):
            acc = F.reduce(acc + F.einsum("xyzr,lr->xyzl", D.component(n - i), P(i)))
        for i, k, l, m in _compositions(n, 4):
            acc = F.reduce(acc - _transport(F, D2.component(i), P(k), P(l), P(m)))
        orders.append(MultilinearMap(F, acc))
    return {"orders": orders, "commutation": phi.commutation_residuals(D.base.alpha)}


def push_forward(D: TruncatedDeformation, phi: FormalIsomorphism) -> TruncatedDeformation:
    """The deformation ``d'_t`` making ``phi_t`` an equivalence from ``d_t``, solved order by order."""
    F = D.field
    d = D.base.dim
    if phi.order != D.order:
        raise DeformationError(f"order mismatch: {D.order} vs {phi.order}")
    if any(not F.is_zero(r) for r in phi.commutation_residuals(D.base.alpha)):
        raise DeformationError("isomorphism jets must commute with the twist")
    P = lambda i: phi.component(i, d)  # noqa: E731
    out = [D.base.bracket]
    for n in range(1, D.order + 1):
        acc = F.zeros((d,) * 4)
        for i in range(n + 1):
            acc = F.reduce(acc + F.einsum("xyzr,lr->xyzl", D.component(n - i), P(i)))
        for i, k, l, m in _compositions(n, 4):
            if i < n:
                acc = F.reduce(acc - _transport(F, out[i], P(k), P(l), P(m)))
        out.append(acc)
    return TruncatedDeformation(D.base, tuple(out[1:]), D.rep)


def infinitesimals_cohomologous(D: TruncatedDeformation, D2: TruncatedDeformation):
    """A 1-cochain ``phi_1`` with ``d_1 - d'_1 = delta^1 phi_1``, or ``None`` for distinct classes."""
    if D.order < 1 or D2.order < 1:
        raise PreconditionError("both deformations need order >= 1")
    if D.base != D2.base:
        raise DeformationError("deformations over different base systems")
    F = D.field
    R = D.rep
    diff = F.reduce(D.jets[0].values - D2.jets[0].values).reshape(-1)
    C = cochain_space(R, 1)
    if C.dim == 0:
        return Cochain(R, F.zeros((R.base.dim, R.mdim))) if F.is_zero(diff) else None
    M = coboundary_matrix(R, 1)
    aug = _prune_rows(F, np.concatenate([M, diff[:, None]], axis=1))
    if aug.shape[0] == 0:
        return C.combine(F.zeros(C.dim))
    x = linalg.solve(F, aug[:, :-1], aug[:, -1])
    return None if x is None else C.combine(x)


# -- the bullet pairings and the five-to-seven identity ---------------------

_L = string.ascii_lowercase


def bullet_hg(T: HomTripleSystem, h: np.ndarray, g: np.ndarray) -> np.ndarray:
    """``h . g`` for a five-linear ``h`` and trilinear ``g`` (a seven-linear map)."""
    F = T.field
    a = T.alpha
    x = lambda i: _L[i - 1]  # noqa: E731
    out = _L[:7] + "V"
    tw = {s: twist_slots(F, h, a, [t for t in range(5) if t != s]) for s in range(5)}
    acc = F.zeros((T.dim,) * 8)
    for k in range(1, 4):
        rest = [i for i in range(1, 8) if i not in (2 * k - 1, 2 * k)]
        for j in range(2 * k + 1, 8):
            s = rest.index(j)
            labels = [x(i) for i in rest]
            labels[s] = "R"
            term = F.einsum(
                f"{''.join(labels)}V,{x(2 * k - 1)}{x(2 * k)}{x(j)}R->{out}", tw[s], g
            )
            acc = F.reduce(acc + term if k % 2 else acc - term)
    return acc


def bullet_fh(T: HomTripleSystem, f: np.ndarray, h: np.ndarray) -> np.ndarray:
    """``f . h`` for a trilinear ``f`` and five-linear ``h`` (a seven-linear map)."""
    F = T.field
    a2 = F.matmul(T.alpha, T.alpha)
    x = lambda i: _L[i - 1]  # noqa: E731
    out = _L[:7] + "V"
    tw = {s: twist_slots(F, f, a2, [t for t in range(3) if t != s]) for s in range(3)}
    acc = F.zeros((T.dim,) * 8)
    for k in (1, 2):
        for l in range(k + 1, 4):
            gone = (2 * k - 1, 2 * k, 2 * l - 1, 2 * l)
            rest = [i for i in range(1, 8) if i not in gone]
            for j in range(2 * l + 1, 8):
                s = rest.index(j)
                labels = [x(i) for i in rest]
                labels[s] = "R"
                hl = "".join(x(i) for i in gone) + x(j)
                term = F.einsum(f"{''.join(labels)}V,{hl}R->{out}", tw[s], h)
                acc = F.reduce(acc + term if (k + l) % 2 == 0 else acc - term)
    return acc


# Correction terms: sign, then the three bracket entries.  ("f", (1,2,3)) is
# f(x1,x2,x3); ("a", 4) is alpha(x4).
_CORRECTIONS = (
    (-1, ("f", (1, 2, 3)), ("a", 4), ("g", (5, 6, 7))),
    (+1, ("g", (1, 2, 3)), ("a", 4), ("f", (5, 6, 7))),
    (-1, ("a", 3), ("f", (1, 2, 4)), ("g", (5, 6, 7))),
    (+1, ("a", 3), ("g", (1, 2, 4)), ("f", (5, 6, 7))),
    (+1, ("f", (1, 2, 5)), ("a", 6), ("g", (3, 4, 7))),
    (-1, ("g", (1, 2, 5)), ("a", 6), ("f", (3, 4, 7))),
    (+1, ("f", (1, 2, 5)), ("g", (3, 4, 6)), ("a", 7)),
    (-1, ("g", (1, 2, 5)), ("f", (3, 4, 6)), ("a", 7)),
    (-1, ("f", (1, 2, 6)), ("a", 5), ("g", (3, 4, 7))),
    (+1, ("g", (1, 2, 6)), ("a", 5), ("f", (3, 4, 7))),
    (-1, ("f", (1, 2, 6)), ("g", (3, 4, 5)), ("a", 7)),
    (+1, ("g", (1, 2, 6)), ("f", (3, 4, 5)), ("a", 7)),
    (-1, ("f", (3, 4, 5)), ("a", 6), ("g", (1, 2, 7))),
    (+1, ("g", (3, 4, 5)), ("a", 6), ("f", (1, 2, 7))),
    (-1, ("a", 5), ("f", (3, 4, 6)), ("g", (1, 2, 7))),
    (+1, ("a", 5), ("g", (3, 4, 6)), ("f", (1, 2, 7))),
)


def _correction(T: HomTripleSystem, f, g, entries) -> np.ndarray:
    F = T.field
    x = lambda i: _L[i - 1]  # noqa: E731
    slots = "PQR"
    specs, ops = [], []
    for slot, (kind, arg) in zip(slots, entries):
        if kind == "a":
            specs.append(slot + x(arg))
            ops.append(T.alpha)
        else:
            specs.append("".join(x(i) for i in arg) + slot)
            ops.append(f if kind == "f" else g)
    # contract the bracket early to keep intermediates small
    sub = f"{specs[0]},PQRS,{specs[1]},{specs[2]},VS->{_L[:7]}V"
    return F.einsum(sub, ops[0], T.bracket, ops[1], ops[2], T.alpha)


def bullet_compositions(T: HomTripleSystem, f, g) -> MultilinearMap:
    """Residual of the expansion of ``delta^5 (f o g)`` through the bullet pairings.

    The right side is ``delta^3 f . g + f . delta^3 g`` plus sixteen twisted
    bracket terms; the returned seven-linear map is left side minus right side.
    """
    F = T.field
    R = adjoint_rep(T)
    f = _values3(f, T.dim, F)
    g = _values3(g, T.dim, F)
    for name, v in (("f", f), ("g", g)):
        bad = cochain_violations(R, v)
        if bad:
            raise NotACochainError(f"{name} violates {', '.join(bad)}")
    fg = _circ(F, f, g, T.alpha)
    lhs = coboundary_values(R, fg[None])[0]
    df = coboundary_values(R, f[None])[0]
    dg = coboundary_values(R, g[None])[0]
    rhs = F.reduce(bullet_hg(T, df, g) + bullet_fh(T, f, dg))
    for sign, *entries in _CORRECTIONS:
        term = _correction(T, f, g, entries)
        rhs = F.reduce(rhs + term if sign > 0 else rhs - term)
    return MultilinearMap(F, F.reduce(lhs - rhs))
