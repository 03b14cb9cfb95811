"""Representations (modules) of multiplicative Hom-Lie triple systems."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import GeneralHomTripleSystem, HomTripleSystem, _collect
from .field import FieldMismatchError

__all__ = [
    "Representation",
    "RepReport",
    "RepresentationError",
    "REP_IDENTITIES",
    "d_operator",
    "d_tensor",
    "check_representation",
    "adjoint_rep",
    "trivial_rep",
    "semidirect_product",
]

REP_IDENTITIES = ("twist", "theta-theta", "theta-d", "d-d")


class RepresentationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Representation:
    """``theta[a, b]`` is the m x m matrix of ``theta(e_a, e_b)``; ``A`` twists the module."""

    base: HomTripleSystem
    theta: np.ndarray
    A: np.ndarray

    def __post_init__(self):
        if isinstance(self.base, GeneralHomTripleSystem) or not self.base.multiplicative:
            raise RepresentationError("representations are defined for multiplicative systems only")
        F = self.base.field
        theta = F.normalize(F.check(np.asarray(self.theta)))
        A = F.normalize(F.check(np.asarray(self.A)))
        d = self.base.dim
        m = A.shape[0] if A.ndim == 2 else -1
        if A.shape != (m, m):
            raise ValueError(f"A must be square, got shape {A.shape}")
        if theta.shape != (d, d, m, m):
            raise ValueError(f"theta must have shape {(d, d, m, m)}, got {theta.shape}")
        for name, arr in (("theta", theta), ("A", A)):
            arr = np.array(arr, copy=True)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def field(self):
        return self.base.field

    @property
    def mdim(self) -> int:
        return self.A.shape[0]

    @property
    def is_trivial(self) -> bool:
        return self.field.is_zero(self.theta)

    def __repr__(self):
        return f"Representation(base={self.base!r}, mdim={self.mdim}, trivial={self.is_trivial})"


@dataclass(frozen=True)
class RepReport:
    status: dict
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def d_tensor(R: Representation) -> np.ndarray:
    """``D[a, b] = theta(e_b, e_a) - theta(e_a, e_b)``."""
    return R.field.reduce(np.einsum("bavw->abvw", R.theta) - R.theta)


def d_operator(R: Representation, a: int, b: int) -> np.ndarray:
    d = R.base.dim
    if not (0 <= a < d and 0 <= b < d):
        raise IndexError(f"basis index out of range for dimension {d}")
    return R.field.reduce(R.theta[b, a] - R.theta[a, b])


def _collect_blocks(F, name, residual):
    # residual[..., v, w]: flatten each block so _collect sees one vector per index tuple
    shape = residual.shape
    return _collect(F, name, residual.reshape(shape[:-2] + (shape[-2] * shape[-1],)))


def check_representation(R: Representation) -> RepReport:
    """Check the three module identities and the derived identity for ``D`` on all basis tuples."""
    F = R.field
    c = R.base.bracket
    al = R.base.alpha
    A = R.A
    th = R.theta
    D = d_tensor(R)

    # theta and D with both arguments twisted once
    th_a = F.einsum("pa,qb,pqvw->abvw", al, al, th)
    D_a = F.einsum("pa,qb,pqvw->abvw", al, al, D)
    # theta(alpha a, [b c d]) and theta([a b c], alpha d), likewise for D
    th_a_br = F.einsum("pa,bcdq,pqvw->abcdvw", al, c, th)
    th_br_a = F.einsum("abcp,qd,pqvw->abcdvw", c, al, th)
    D_br_a = F.einsum("abcp,qd,pqvw->abcdvw", c, al, D)
    D_a_br = F.einsum("pc,abdq,pqvw->abcdvw", al, c, D)
    th_c_abd = F.einsum("pc,abdq,pqvw->abcdvw", al, c, th)

    tw = F.reduce(F.einsum("abvu,uw->abvw", th_a, A) - F.einsum("vu,abuw->abvw", A, th))

    tt = F.reduce(
        F.einsum("cdvu,abuw->abcdvw", th_a, th)
        - F.einsum("bdvu,acuw->abcdvw", th_a, th)
        - F.einsum("abcdvu,uw->abcdvw", th_a_br, A)
        + F.einsum("bcvu,aduw->abcdvw", D_a, th)
    )
    td = F.reduce(
        F.einsum("cdvu,abuw->abcdvw", th_a, D)
        - F.einsum("abvu,cduw->abcdvw", D_a, th)
        + F.einsum("abcdvu,uw->abcdvw", th_br_a, A)
        + F.einsum("abcdvu,uw->abcdvw", th_c_abd, A)
    )
    dd = F.reduce(
        F.einsum("cdvu,abuw->abcdvw", D_a, D)
        - F.einsum("abvu,cduw->abcdvw", D_a, D)
        + F.einsum("abcdvu,uw->abcdvw", D_br_a, A)
        + F.einsum("abcdvu,uw->abcdvw", D_a_br, A)
    )
    status, violations = {}, []
    for name, res in zip(REP_IDENTITIES, (tw, tt, td, dd)):
        v = _collect_blocks(F, name, res)
        status[name] = not v
        violations += v
    return RepReport(status=status, violations=tuple(violations))


def adjoint_rep(T: HomTripleSystem) -> Representation:
    """``theta(x, y)(z) = [z x y]`` with module twist ``alpha``."""
    if isinstance(T, GeneralHomTripleSystem) or not T.multiplicative:
        raise RepresentationError("the adjoint representation needs a multiplicative system")
    theta = np.einsum("zabl->ablz", T.bracket)
    return Representation(T, theta, T.alpha)


def trivial_rep(T: HomTripleSystem, mdim: int, A=None) -> Representation:
    F = T.field
    A = F.eye(mdim) if A is None else (A if isinstance(A, np.ndarray) else F.array(A))
    return Representation(T, F.zeros((T.dim, T.dim, mdim, mdim)), A)


def semidirect_product(T: HomTripleSystem, R: Representation) -> HomTripleSystem:
    """``T + V`` with ``[(x,a),(y,b),(z,c)] = ([xyz], theta(y,z)a - theta(x,z)b + D(x,y)c)``."""
    if R.base is not T and R.base != T:
        if R.base.field != T.field:
            raise FieldMismatchError(f"field mismatch: {T.field} vs {R.base.field}")
        raise RepresentationError("representation is over a different base system")
    report = check_representation(R)
    if not report.ok:
        raise RepresentationError(
            "representation check failed: " + ", ".join(k for k, v in report.status.items() if not v)
        )
    F = T.field
    d, m = T.dim, R.mdim
    n = d + m
    c = F.zeros((n,) * 4)
    t, v = slice(0, d), slice(d, n)
    c[t, t, t, t] = T.bracket
    D = d_tensor(R)
    # module slot s, result component l
    c[v, t, t, v] = np.einsum("yzls->syzl", R.theta)
    c[t, v, t, v] = F.reduce(-np.einsum("xzls->xszl", R.theta))
    c[t, t, v, v] = np.einsum("xyls->xysl", D)
    a = F.zeros((n, n))
    a[t, t] = T.alpha
    a[v, v] = R.A
    return HomTripleSystem(F, c, a, multiplicative=True)
