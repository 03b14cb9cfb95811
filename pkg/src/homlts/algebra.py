"""Hom-Lie triple systems given by structure constants and a twist matrix."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg
from .field import Field, FieldMismatchError

__all__ = [
    "HomTripleSystem",
    "GeneralHomTripleSystem",
    "AxiomReport",
    "Violation",
    "AXIOMS",
    "bracket_eval",
    "check_axioms",
    "center",
    "direct_sum",
    "hom_nambu_residual",
]

AXIOMS = ("alternating", "ternary-cyclic", "hom-nambu", "multiplicativity")


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class HomTripleSystem:
    """``(T, [.,.,.], alpha)`` on the basis ``e_0 .. e_{d-1}``.

    ``bracket[i, j, k, l]`` is the coefficient of ``e_l`` in ``[e_i e_j e_k]``
    and ``alpha`` acts on column vectors, so ``alpha[:, i]`` is ``alpha(e_i)``.
    """

    field: Field
    bracket: np.ndarray
    alpha: np.ndarray
    multiplicative: bool = True

    def __post_init__(self):
        c = self.field.normalize(self.field.check(np.asarray(self.bracket)))
        a = self.field.normalize(self.field.check(np.asarray(self.alpha)))
        d = a.shape[0] if a.ndim == 2 else -1
        if a.ndim != 2 or a.shape != (d, d):
            raise ValueError(f"alpha must be square, got shape {a.shape}")
        if c.shape != (d, d, d, d):
            raise ValueError(f"bracket must have shape {(d,) * 4}, got {c.shape}")
        object.__setattr__(self, "bracket", _frozen(c))
        object.__setattr__(self, "alpha", _frozen(a))

    @property
    def dim(self) -> int:
        return self.alpha.shape[0]

    @property
    def alphas(self):
        return self.alpha, self.alpha

    def __eq__(self, other):
        if not isinstance(other, HomTripleSystem):
            return NotImplemented
        return (
            self.field == other.field
            and self.multiplicative == other.multiplicative
            and self.field.equal(self.alpha, other.alpha)
            and self.field.equal(self.bracket, other.bracket)
        )

    __hash__ = None

    def __repr__(self):
        nnz = int(np.count_nonzero(self.bracket != 0))
        return f"HomTripleSystem(field={self.field}, dim={self.dim}, nonzero_constants={nnz})"

    def vector(self, data) -> np.ndarray:
        v = self.field.array(data)
        if v.shape != (self.dim,):
            raise ValueError(f"expected a vector of length {self.dim}, got shape {v.shape}")
        return v

    def twist(self, x) -> np.ndarray:
        return self.field.matmul(self.alpha, self.vector(x))


@dataclass(frozen=True, eq=False)
class GeneralHomTripleSystem:
    """A Hom-LTS with a pair of twists ``(alpha1, alpha2)``; only axiom checking is supported."""

    field: Field
    bracket: np.ndarray
    alpha1: np.ndarray
    alpha2: np.ndarray
    multiplicative: bool = dc_field(default=False, init=False)

    def __post_init__(self):
        for name in ("bracket", "alpha1", "alpha2"):
            arr = self.field.normalize(self.field.check(np.asarray(getattr(self, name))))
            object.__setattr__(self, name, _frozen(arr))
        d = self.alpha1.shape[0]
        if self.alpha1.shape != (d, d) or self.alpha2.shape != (d, d):
            raise ValueError("twists must be square matrices of the same size")
        if self.bracket.shape != (d, d, d, d):
            raise ValueError(f"bracket must have shape {(d,) * 4}")

    @property
    def dim(self) -> int:
        return self.alpha1.shape[0]

    @property
    def alphas(self):
        return self.alpha1, self.alpha2


@dataclass(frozen=True)
class Violation:
    axiom: str
    indices: tuple
    residual: tuple

    def __str__(self):
        return f"{self.axiom} violated at {self.indices}: residual {list(self.residual)}"


@dataclass(frozen=True)
class AxiomReport:
    status: dict
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def failed(self) -> list:
        return [name for name, passed in self.status.items() if passed is False]


def bracket_eval(T, x, y, z) -> np.ndarray:
    """``[x y z]`` for coordinate vectors, by trilinear extension."""
    F = T.field
    vs = []
    for v in (x, y, z):
        v = F.array(v) if not isinstance(v, np.ndarray) else F.check(v)
        if v.shape != (T.dim,):
            raise ValueError(f"expected a vector of length {T.dim}, got shape {v.shape}")
        vs.append(v)
    return F.einsum("ijkl,i,j,k->l", T.bracket, *vs)


def _collect(F: Field, name: str, residual: np.ndarray, keep=None) -> list:
    out = []
    nz = np.argwhere(np.any(residual != 0, axis=-1))
    for idx in nz:
        idx = tuple(int(i) for i in idx)
        if keep is not None and not keep(idx):
            continue
        vec = tuple(F.format(x) for x in F.normalize(residual[idx]))
        out.append(Violation(name, idx, vec))
    return out


def hom_nambu_residual(F: Field, c: np.ndarray, a1: np.ndarray, a2: np.ndarray) -> np.ndarray:
    """``[a1 u, a2 v, [x y z]] - [[u v x] a1 y a2 z] - [a1 x [u v y] a2 z] - [a1 x a2 y [u v z]]``.

    Indexed ``[u, v, x, y, z, l]``.
    """
    lhs = F.einsum("pu,qv,pqrl,xyzr->uvxyzl", a1, a2, c, c)
    t1 = F.einsum("uvxr,py,qz,rpql->uvxyzl", c, a1, a2, c)
    t2 = F.einsum("px,uvyr,qz,prql->uvxyzl", a1, c, a2, c)
    t3 = F.einsum("px,qy,uvzr,pqrl->uvxyzl", a1, a2, c, c)
    return F.reduce(lhs - t1 - t2 - t3)


def check_axioms(T) -> AxiomReport:
    """Exhaustive basis-level check of the Hom-LTS axioms.

    Alternation is checked in polarized form (``[e_i e_i e_k] = 0`` and
    ``[e_i e_j e_k] + [e_j e_i e_k] = 0``), which is complete by multilinearity.
    """
    F = T.field
    c = T.bracket
    a1, a2 = T.alphas
    violations = []

    diag = np.einsum("iikl->ikl", c)
    alt = _collect(F, "alternating", diag.reshape(diag.shape[0], diag.shape[1], -1))
    alt = [Violation(v.axiom, (v.indices[0], v.indices[0], v.indices[1]), v.residual) for v in alt]
    sym = F.reduce(c + np.einsum("jikl->ijkl", c))
    alt += _collect(F, "alternating", sym, keep=lambda idx: idx[0] < idx[1])
    violations += alt

    cyc = F.reduce(c + np.einsum("jkil->ijkl", c) + np.einsum("kijl->ijkl", c))
    cyc_v = _collect(F, "ternary-cyclic", cyc)
    violations += cyc_v

    nambu_v = _collect(F, "hom-nambu", hom_nambu_residual(F, c, a1, a2))
    violations += nambu_v

    status = {
        "alternating": not alt,
        "ternary-cyclic": not cyc_v,
        "hom-nambu": not nambu_v,
        "multiplicativity": None,
    }
    if T.multiplicative:
        a = a1
        if not F.equal(a1, a2):
            mult_v = [Violation("multiplicativity", (), ("alpha1 != alpha2",))]
        else:
            lhs = F.einsum("ijkr,lr->ijkl", c, a)
            rhs = F.einsum("pi,qj,sk,pqsl->ijkl", a, a, a, c)
            mult_v = _collect(F, "multiplicativity", F.reduce(lhs - rhs))
        violations += mult_v
        status["multiplicativity"] = not mult_v
    return AxiomReport(status=status, violations=tuple(violations))


def center(T: HomTripleSystem) -> np.ndarray:
    """Basis (rows) of ``{x : [x, T, T] = 0}``."""
    d = T.dim
    # row (j, k, l), column i: coefficient of e_l in [e_i e_j e_k]
    M = np.ascontiguousarray(np.einsum("ijkl->jkli", T.bracket)).reshape(d ** 3, d)
    return linalg.kernel_basis(T.field, M)


def direct_sum(*systems: HomTripleSystem) -> HomTripleSystem:
    """Block direct sum; brackets mixing different summands vanish."""
    F = systems[0].field
    for S in systems[1:]:
        if S.field != F:
            raise FieldMismatchError(f"field mismatch: {F} vs {S.field}")
    d = sum(S.dim for S in systems)
    c = F.zeros((d,) * 4)
    a = F.zeros((d, d))
    off = 0
    for S in systems:
        sl = slice(off, off + S.dim)
        c[sl, sl, sl, sl] = S.bracket
        a[sl, sl] = S.alpha
        off += S.dim
    return HomTripleSystem(F, c, a, multiplicative=all(S.multiplicative for S in systems))
