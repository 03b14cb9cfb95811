"""Example and random Hom-Lie triple systems used as fixtures."""

from __future__ import annotations

import numpy as np

from . import linalg
from .algebra import HomTripleSystem, check_axioms, direct_sum
from .field import Field, QQ

__all__ = [
    "GeneratorError",
    "FormNotPreservedError",
    "NotOrthogonalError",
    "NotAMorphismError",
    "TwistFailedError",
    "BudgetExhaustedError",
    "gen_bilinear",
    "gen_matrix",
    "twist_by_morphism",
    "random_homlts",
    "b2",
    "zero_bracket",
]


class GeneratorError(ValueError):
    pass


class FormNotPreservedError(GeneratorError):
    pass


class NotOrthogonalError(GeneratorError):
    pass


class NotAMorphismError(GeneratorError):
    pass


class TwistFailedError(GeneratorError):
    pass


class BudgetExhaustedError(GeneratorError):
    pass


def zero_bracket(field: Field, dim: int, alpha=None) -> HomTripleSystem:
    a = field.eye(dim) if alpha is None else field.array(alpha)
    return HomTripleSystem(field, field.zeros((dim,) * 4), a)


def gen_bilinear(form, alpha, lam=1, field: Field = QQ) -> HomTripleSystem:
    """``[x y z] = lam * (<y, z> alpha(x) - <z, x> alpha(y))``.

    ``alpha`` must preserve the symmetric ``form``: ``alpha^T form alpha = form``.
    """
    F = field
    B = F.array(form)
    a = F.array(alpha)
    lam = F.scalar(lam)
    d = B.shape[0]
    if B.shape != (d, d) or a.shape != (d, d):
        raise ValueError("form and alpha must be square of the same size")
    if not F.equal(B, B.T):
        raise GeneratorError("form is not symmetric")
    if not F.equal(F.matmul(F.matmul(a.T, B), a), B):
        raise FormNotPreservedError("alpha does not preserve the form")
    c = F.reduce(
        lam * (np.einsum("jk,li->ijkl", B, a) - np.einsum("ki,lj->ijkl", B, a))
    )
    return HomTripleSystem(F, c, a, multiplicative=True)


def b2(field: Field = QQ) -> HomTripleSystem:
    """The two-dimensional bilinear-form system with form I and twist diag(1, -1)."""
    return gen_bilinear([[1, 0], [0, 1]], [[1, 0], [0, -1]], 1, field)


def _matrix_bracket(F: Field, A, B, C):
    return F.reduce(A @ B.T @ C + C @ B.T @ A - B @ A.T @ C - C @ A.T @ B)


def gen_matrix(m: int, n: int, conjugator=None, field: Field = QQ) -> HomTripleSystem:
    """Triple system on ``m x n`` matrices, twisted by ``A -> g A g^-1`` if ``g`` is given.

    The basis is the matrix units ``E_(a,b)`` ordered row-major (index ``a*n + b``).
    """
    F = field
    dim = m * n
    if conjugator is None:
        conj = lambda X: X  # noqa: E731
        alpha = F.eye(dim)
    else:
        g = F.array(conjugator)
        if m != n or g.shape != (m, m):
            raise NotOrthogonalError("a conjugating twist needs square matrices and an m x m conjugator")
        if not F.equal(F.matmul(g.T, g), F.eye(m)):
            raise NotOrthogonalError("conjugator is not orthogonal (g^T g != I)")
        ginv = g.T
        conj = lambda X: F.matmul(F.matmul(g, X), ginv)  # noqa: E731
        alpha = F.zeros((dim, dim))
        for i in range(dim):
            E = F.zeros(dim)
            E[i] = 1
            alpha[:, i] = conj(E.reshape(m, n)).reshape(dim)
    units = []
    for i in range(dim):
        E = F.zeros(dim)
        E[i] = 1
        units.append(conj(E.reshape(m, n)))
    c = F.zeros((dim,) * 4)
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                c[i, j, k] = _matrix_bracket(F, units[i], units[j], units[k]).reshape(dim)
    return HomTripleSystem(F, c, alpha, multiplicative=True)


def twist_by_morphism(T: HomTripleSystem, sigma) -> HomTripleSystem:
    """Yau twist of an untwisted triple system: bracket ``sigma o [...]``, twist ``sigma``."""
    F = T.field
    s = F.array(sigma) if not isinstance(sigma, np.ndarray) else F.check(sigma)
    if s.shape != (T.dim, T.dim):
        raise ValueError(f"sigma must be {T.dim} x {T.dim}")
    if not F.equal(T.alpha, F.eye(T.dim)):
        raise GeneratorError("twist_by_morphism expects an untwisted system (alpha = id)")
    c = T.bracket
    lhs = F.einsum("ijkr,lr->ijkl", c, s)
    rhs = F.einsum("pi,qj,sk,pqsl->ijkl", s, s, s, c)
    if not F.equal(lhs, rhs):
        raise NotAMorphismError("sigma is not a morphism of the triple system")
    out = HomTripleSystem(F, lhs, s, multiplicative=True)
    if not check_axioms(out).ok:
        raise TwistFailedError("twisted system failed the axiom check")
    return out


# -- random fixtures ------------------------------------------------------

def _random_invertible(F: Field, rng, d: int, bound: int = 2):
    while True:
        P = F.random_array(rng, (d, d), bound)
        if linalg.rank(F, P) == d:
            return P


def _inverse(F: Field, P):
    d = P.shape[0]
    R, rk, _ = linalg.rref(F, np.concatenate([P, F.eye(d)], axis=1))
    if rk < d or not F.equal(R[:, :d], F.eye(d)):
        raise ZeroDivisionError("singular matrix")
    return R[:, d:]


def _random_orthogonal(F: Field, rng, B) -> np.ndarray:
    """A random map preserving the form B: identity, a sign flip, or a Cayley transform."""
    d = B.shape[0]
    kind = int(rng.integers(0, 4))
    if kind == 0:
        return F.eye(d)
    if kind == 1:
        Q = F.zeros((d, d))
        for i in range(d):
            Q[i, i] = F.scalar(int(rng.choice([1, -1])))
        if F.equal(F.matmul(F.matmul(Q.T, B), Q), B):
            return Q
    if d == 1:
        return F.array([[int(rng.choice([1, -1]))]])
    Binv = _inverse(F, B)
    for _ in range(50):
        S = F.random_array(rng, (d, d), 1)
        S = F.reduce(S - S.T)
        K = F.matmul(Binv, S)
        try:
            inv = _inverse(F, F.reduce(F.eye(d) - K))
        except ZeroDivisionError:
            continue
        Q = F.matmul(inv, F.reduce(F.eye(d) + K))
        if rng.integers(0, 2):
            # -Q preserves B as well
            Q = F.reduce(-Q)
        return Q
    return F.eye(d)


def _random_form(F: Field, rng, d: int):
    while True:
        if rng.integers(0, 2):
            diag = [int(rng.choice([1, 2, -1, 3])) for _ in range(d)]
            B = F.zeros((d, d))
            for i, x in enumerate(diag):
                B[i, i] = F.scalar(x)
        else:
            S = F.random_array(rng, (d, d), 2)
            B = F.reduce(S + S.T)
        if linalg.rank(F, B) == d:
            return B


def _change_basis(T: HomTripleSystem, P) -> HomTripleSystem:
    """Isomorphic copy in the basis given by the columns of P."""
    F = T.field
    Pinv = _inverse(F, P)
    c = F.einsum("pi,qj,sk,pqsr,lr->ijkl", P, P, P, T.bracket, Pinv)
    a = F.matmul(F.matmul(Pinv, T.alpha), P)
    return HomTripleSystem(F, c, a, multiplicative=True)


def _bilinear_piece(F: Field, rng, d: int):
    B = _random_form(F, rng, d)
    lam = int(rng.choice([1, 2, -1, 3]))
    base = gen_bilinear(B, F.eye(d), lam, F)
    return base, _random_orthogonal(F, rng, B)


def _matrix_piece(F: Field, rng, d: int):
    shapes = [(m, d // m) for m in range(1, d + 1) if d % m == 0]
    m, n = shapes[int(rng.integers(0, len(shapes)))]
    base = gen_matrix(m, n, field=F)
    g = _random_orthogonal(F, rng, F.eye(m))
    h = _random_orthogonal(F, rng, F.eye(n))
    # sigma(A) = g A h acts on row-major vec(A) as kron(g, h^T)
    return base, F.reduce(np.kron(g, h.T))


def random_homlts(dim: int, field: Field, seed: int, budget: int = 64) -> HomTripleSystem:
    """Seeded random multiplicative Hom-LTS of dimension ``dim <= 4``.

    Draws an untwisted system from the abelian, bilinear-form, or matrix
    families (optionally plus an abelian summand), twists it by a random
    morphism, and applies a random change of basis.  The result has passed
    :func:`check_axioms`.
    """
    if not 1 <= dim <= 4:
        raise ValueError("random_homlts supports 1 <= dim <= 4")
    F = field
    rng = np.random.default_rng(seed)
    for _ in range(budget):
        family = ["abelian", "bilinear", "matrix"][int(rng.integers(0, 3))]
        if dim == 1:
            family = "abelian"
        if family == "abelian":
            if rng.integers(0, 2):
                a = F.random_array(rng, (dim, dim), 2)
            else:
                a = _random_orthogonal(F, rng, F.eye(dim))
            T = HomTripleSystem(F, F.zeros((dim,) * 4), a)
        else:
            core = dim if dim < 3 or rng.integers(0, 2) else dim - 1
            if core < 2:
                core = dim
            piece = _bilinear_piece if family == "bilinear" else _matrix_piece
            base, sigma = piece(F, rng, core)
            if core < dim:
                extra = dim - core
                base = direct_sum(base, zero_bracket(F, extra))
                tail = F.random_array(rng, (extra, extra), 2)
                full = F.zeros((dim, dim))
                full[:core, :core] = sigma
                full[core:, core:] = tail
                sigma = full
            if rng.integers(0, 4) == 0:
                # non-invertible twists are morphisms too: kill the abelian part
                sigma = sigma.copy()
                sigma[core:, core:] = 0
            try:
                T = twist_by_morphism(base, sigma)
            except GeneratorError:
                continue
        if rng.integers(0, 3):
            T = _change_basis(T, _random_invertible(F, rng, dim))
        if check_axioms(T).ok:
            return T
    raise BudgetExhaustedError(f"no verified system found in {budget} attempts")
