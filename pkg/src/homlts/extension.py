"""Central extensions by a trivial module, and their classification by H^3.

Extensions live on ``T (+) V`` in block coordinates (T first).  The canonical
maps are ``iota(a) = (0, a)``, ``pi(x, a) = x`` and ``s(x) = (x, 0)``; a
different section may be supplied as long as it commutes with the twists.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import HomTripleSystem, check_axioms
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
)
from .representation import Representation

__all__ = [
    "CentralExtension",
    "EquivalenceWitness",
    "Inequivalent",
    "ExtensionError",
    "build_extension",
    "extension_violations",
    "extract_cocycle",
    "are_equivalent",
    "witness_violations",
    "classify",
    "Classification",
]


class ExtensionError(ValueError):
    pass


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class CentralExtension:
    total: HomTripleSystem
    base: HomTripleSystem
    fiber: Representation
    iota: np.ndarray
    pi: np.ndarray
    section: np.ndarray

    def __post_init__(self):
        F = self.base.field
        for name in ("iota", "pi", "section"):
            object.__setattr__(self, name, _frozen(F.normalize(F.check(np.asarray(getattr(self, name))))))
        d, m, n = self.base.dim, self.fiber.mdim, self.total.dim
        if n != d + m:
            raise ExtensionError(f"total dimension {n} != {d} + {m}")
        shapes = {"iota": (n, m), "pi": (d, n), "section": (n, d)}
        for name, shape in shapes.items():
            if getattr(self, name).shape != shape:
                raise ExtensionError(f"{name} must have shape {shape}")

    def with_section(self, section) -> "CentralExtension":
        F = self.base.field
        section = section if isinstance(section, np.ndarray) else F.array(section)
        return CentralExtension(self.total, self.base, self.fiber, self.iota, self.pi, section)


def _require_trivial(T: HomTripleSystem, fiber: Representation):
    if not fiber.is_trivial:
        raise ExtensionError("the fiber must be a trivial module (theta = 0)")
    if fiber.base is not T and fiber.base != T:
        raise ExtensionError("the fiber is a module over a different system")


def _require_cocycle(R: Representation, g, name="g") -> np.ndarray:
    vals = g.values if isinstance(g, Cochain) else R.field.check(np.asarray(g))
    d, m = R.base.dim, R.mdim
    if vals.shape != (d, d, d, m):
        raise ExtensionError(f"{name} must be a degree-3 cochain of shape {(d, d, d, m)}")
    bad = cochain_violations(R, vals)
    if bad:
        raise NotACochainError(f"{name} violates {', '.join(bad)}")
    if not R.field.is_zero(coboundary_values(R, vals[None])):
        raise NotACochainError(f"{name} is not a 3-cocycle")
    return vals


def _bracket_on(F, c, X, Y, Z):
    """Structure constants of ``[X e_x, Y e_y, Z e_z]`` for column-embedding matrices."""
    return F.einsum("pqrl,px,qy,rz->xyzl", c, X, Y, Z)


def build_extension(T: HomTripleSystem, fiber: Representation, g) -> CentralExtension:
    """The extension ``[(x,a),(y,b),(z,c)] = ([xyz], g(x,y,z))`` twisted by ``alpha (+) alpha_V``."""
    _require_trivial(T, fiber)
    R = fiber
    g = _require_cocycle(R, g)
    F = T.field
    d, m = T.dim, R.mdim
    n = d + m
    c = F.zeros((n,) * 4)
    c[:d, :d, :d, :d] = T.bracket
    c[:d, :d, :d, d:] = g
    a = F.zeros((n, n))
    a[:d, :d] = T.alpha
    a[d:, d:] = R.A
    total = HomTripleSystem(F, c, a, multiplicative=True)
    iota = F.zeros((n, m))
    iota[d:, :] = F.eye(m)
    pi = F.zeros((d, n))
    pi[:, :d] = F.eye(d)
    s = F.zeros((n, d))
    s[:d, :] = F.eye(d)
    E = CentralExtension(total, T, R, iota, pi, s)
    bad = extension_violations(E)
    if bad:
        raise AssertionError(f"built extension fails: {', '.join(bad)}")
    return E


def extension_violations(E: CentralExtension) -> list:
    """Names of the failed extension invariants (empty when all hold)."""
    F = E.base.field
    T, C = E.base, E.total
    d, m = T.dim, E.fiber.mdim
    bad = []
    if not check_axioms(C).ok:
        bad.append("axioms")
    if not F.is_zero(F.matmul(E.pi, E.iota)):
        bad.append("pi iota = 0")
    if not F.equal(F.matmul(E.pi, E.section), F.eye(d)):
        bad.append("pi s = id")
    if linalg.rank(F, E.iota) != m:
        bad.append("iota injective")
    if linalg.rank(F, E.pi) != d:
        bad.append("pi surjective")
    elif not _exact(F, E):
        bad.append("exactness")
    if not F.equal(F.matmul(C.alpha, E.iota), F.matmul(E.iota, E.fiber.A)):
        bad.append("alpha_C iota = iota alpha_V")
    if not F.equal(F.matmul(T.alpha, E.pi), F.matmul(E.pi, C.alpha)):
        bad.append("alpha pi = pi alpha_C")
    if not F.equal(F.matmul(C.alpha, E.section), F.matmul(E.section, T.alpha)):
        bad.append("alpha_C s = s alpha")
    # iota(V) central: [iota(a), u, v] = 0 for all u, v
    I = F.eye(C.dim)
    if not F.is_zero(_bracket_on(F, C.bracket, E.iota, I, I)):
        bad.append("central")
    # pi must be a morphism of the brackets
    lhs = F.einsum("xyzr,lr->xyzl", C.bracket, E.pi)
    rhs = _bracket_on(F, T.bracket, E.pi, E.pi, E.pi)
    if not F.equal(lhs, rhs):
        bad.append("pi morphism")
    return bad


def _exact(F, E: CentralExtension) -> bool:
    # image of iota equals kernel of pi (dimensions match and pi iota = 0)
    return E.total.dim - linalg.rank(F, E.pi) == linalg.rank(F, E.iota)


def _left_solve(F, iota: np.ndarray, vecs: np.ndarray):
    """Coordinates ``a`` with ``iota a = v`` for each row ``v``; ``None`` if some v is outside the image."""
    rows = linalg.pivot_columns(F, iota.T)
    sub = iota[rows]
    inv = _inverse(F, sub)
    coords = F.matmul(vecs[:, rows], inv.T)
    if not F.equal(F.matmul(coords, iota.T), vecs):
        return None
    return coords


def _inverse(F, M):
    k = M.shape[0]
    R, rk, _ = linalg.rref(F, np.concatenate([M, F.eye(k)], axis=1))
    return R[:, k:]


def extract_cocycle(E: CentralExtension) -> Cochain:
    """The 3-cocycle ``g`` with ``iota g(x,y,z) = [s x, s y, s z] - s [x y z]``."""
    bad = extension_violations(E)
    if bad:
        raise ExtensionError(f"not a central extension: {', '.join(bad)}")
    F = E.base.field
    d, m = E.base.dim, E.fiber.mdim
    S = E.section
    defect = F.reduce(
        _bracket_on(F, E.total.bracket, S, S, S) - F.einsum("xyzr,lr->xyzl", E.base.bracket, S)
    )
    coords = _left_solve(F, E.iota, defect.reshape(-1, E.total.dim))
    if coords is None:
        raise ExtensionError("bracket defect of the section leaves the image of iota")
    g = coords.reshape(d, d, d, m)
    _require_cocycle(E.fiber, g)
    return Cochain(E.fiber, g)


@dataclass(frozen=True, eq=False)
class EquivalenceWitness:
    """``phi(x, a) = (x, a - f(x))`` carrying the first extension onto the second."""

    f: Cochain
    phi: np.ndarray

    equivalent = True


@dataclass(frozen=True)
class Inequivalent:
    """Coordinates of ``g2 - g`` on the H^3 representatives (not all zero)."""

    coords: tuple

    equivalent = False


def witness_violations(E1: CentralExtension, E2: CentralExtension, phi: np.ndarray) -> list:
    F = E1.base.field
    C1, C2 = E1.total, E2.total
    bad = []
    if linalg.rank(F, phi) != C1.dim:
        bad.append("invertible")
    if not F.equal(F.matmul(phi, E1.iota), E2.iota):
        bad.append("phi iota = iota'")
    if not F.equal(F.matmul(E2.pi, phi), E1.pi):
        bad.append("pi' phi = pi")
    if not F.equal(F.matmul(phi, C1.alpha), F.matmul(C2.alpha, phi)):
        bad.append("phi alpha_C = alpha_C' phi")
    lhs = F.einsum("xyzr,lr->xyzl", C1.bracket, phi)
    rhs = _bracket_on(F, C2.bracket, phi, phi, phi)
    if not F.equal(lhs, rhs):
        bad.append("phi bracket morphism")
    return bad


def _one_cochain_matrix(f: np.ndarray) -> np.ndarray:
    # f.values[x, a] is the a-th coordinate of f(e_x)
    return np.ascontiguousarray(f.T)


def are_equivalent(T: HomTripleSystem, fiber: Representation, g, g2):
    """Witness that the extensions of ``g`` and ``g2`` are equivalent, or :class:`Inequivalent`."""
    _require_trivial(T, fiber)
    R = fiber
    F = T.field
    g = _require_cocycle(R, g, "g")
    g2 = _require_cocycle(R, g2, "g2")
    diff = F.reduce(g2 - g)
    C1 = cochain_space(R, 1)
    x = None
    if C1.dim == 0:
        x = F.zeros(0) if F.is_zero(diff) else None
    else:
        M = coboundary_matrix(R, 1)
        aug = _prune_rows(F, np.concatenate([M, diff.reshape(-1)[:, None]], axis=1))
        x = linalg.solve(F, aug[:, :-1], aug[:, -1]) if aug.shape[0] else F.zeros(C1.dim)
    if x is None:
        H = cohomology(R, 3)
        B = coboundaries(R, 3)
        basis = [b for b in B.matrix()] + [r.flat() for r in H.representatives]
        coords = linalg.in_span(F, diff.reshape(-1), np.array(basis, dtype=diff.dtype).reshape(len(basis), -1))
        return Inequivalent(tuple(F.format(c) for c in coords[B.dim:]))
    f = C1.combine(x)
    d, m = T.dim, R.mdim
    phi = F.eye(d + m)
    phi[d:, :d] = F.reduce(-_one_cochain_matrix(f.values))
    E1 = build_extension(T, R, g)
    E2 = build_extension(T, R, g2)
    bad = witness_violations(E1, E2, phi)
    if bad:
        raise AssertionError(f"equivalence witness fails: {', '.join(bad)}")
    return EquivalenceWitness(f, _frozen(phi))


@dataclass(frozen=True)
class Classification:
    h3dim: int
    representatives: tuple


def classify(T: HomTripleSystem, fiber: Representation) -> Classification:
    """Extension classes up to equivalence: ``H^3`` of the trivial module, with representatives."""
    _require_trivial(T, fiber)
    H = cohomology(fiber, 3)
    return Classification(H.dim, H.representatives)
