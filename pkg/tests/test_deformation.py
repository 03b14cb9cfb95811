from fractions import Fraction

import numpy as np
import pytest

from conftest import F101, corpus_system
from oracles import naive_circ
from homlts.cohomology import NotACochainError, coboundary, cochain_space, cocycles
from homlts.deformation import (
    DeformationError,
    FormalIsomorphism,
    ObstructionError,
    PreconditionError,
    TruncatedDeformation,
    bullet_compositions,
    check_deformation,
    check_equivalence,
    circ_alpha,
    infinitesimal_is_cocycle,
    infinitesimals_cohomologous,
    integrate,
    obstruction,
    push_forward,
)
from homlts.field import QQ
from homlts.generators import b2, gen_bilinear, gen_matrix, zero_bracket
from homlts.representation import adjoint_rep


@pytest.mark.parametrize("seed", [0, 2, 4])
def test_circ_matches_loop_oracle(seed):
    T = corpus_system(seed)
    rng = np.random.default_rng(seed)
    C = cochain_space(adjoint_rep(T), 3)
    f, g = (C.combine(F101.random_array(rng, (C.dim,))) for _ in range(2))
    ours = circ_alpha(T, f, g).values
    theirs = naive_circ(f.values.tolist(), g.values.tolist(), T.alpha.tolist(), 101)
    for idx, vec in theirs.items():
        assert vec == [int(x) for x in ours[idx]]


def test_bracket_composed_with_itself_vanishes(B2):
    assert circ_alpha(B2, B2.bracket, B2.bracket).is_zero()


def test_scaling_deformation_integrates_with_zero_jets(B2):
    D = integrate(B2, B2.bracket, 3)
    assert D.order == 3
    assert (D.component(1) == B2.bracket).all()
    assert D.jets[1].is_zero() and D.jets[2].is_zero()
    assert all(r.is_zero() for r in check_deformation(D))


def test_lie_triple_bracket_as_infinitesimal_of_abelian():
    T = zero_bracket(QQ, 2)
    d1 = gen_bilinear([[1, 0], [0, 1]], [[1, 0], [0, 1]]).bracket
    D = integrate(T, d1, 3)
    assert D.jets[1].is_zero() and D.jets[2].is_zero()


def test_random_infinitesimal_of_abelian_is_obstructed(rng):
    T = zero_bracket(F101, 3)
    C = cochain_space(adjoint_rep(T), 3)
    d1 = C.combine(F101.random_array(rng, (C.dim,)))
    with pytest.raises(ObstructionError) as info:
        integrate(T, d1, 2)
    assert info.value.order == 2
    assert any(c != "0" for c in info.value.coords)
    D = TruncatedDeformation(T, (d1,))
    assert not obstruction(D).is_zero()


def test_non_cocycle_infinitesimal_rejected():
    T = gen_matrix(1, 2)
    R = adjoint_rep(T)
    bad = next(f for f in cochain_space(R, 3).cochains() if not coboundary(f).is_zero())
    D = TruncatedDeformation(T, (bad,))
    assert not infinitesimal_is_cocycle(D)
    assert (check_deformation(D)[0].values == coboundary(bad).values).all()
    with pytest.raises(PreconditionError):
        integrate(T, bad, 2)
    with pytest.raises(PreconditionError):
        obstruction(D)


def test_jets_must_be_cochains(B2):
    vals = QQ.zeros((2,) * 4)
    vals[0, 0, 1, 0] = 1
    with pytest.raises(NotACochainError):
        TruncatedDeformation(B2, (vals,))
    with pytest.raises(DeformationError):
        TruncatedDeformation(B2, (QQ.zeros((2, 2)),))


def test_scaling_is_equivalent_to_null(B2):
    half = [[Fraction(1, 2), 0], [0, Fraction(1, 2)]]
    phi = FormalIsomorphism(QQ, (half,))
    scaling = TruncatedDeformation(B2, (B2.bracket,))
    null = TruncatedDeformation.null(B2, 1)
    rep = check_equivalence(scaling, null, phi)
    assert rep["orders"][0].is_zero()
    w = infinitesimals_cohomologous(scaling, null)
    assert coboundary(w).values.tolist() == B2.bracket.tolist()
    pushed = push_forward(null, phi)
    assert (pushed.component(1) == QQ.reduce(-B2.bracket)).all()


def test_push_forward_gives_equivalent_deformation(rng):
    T = corpus_system(6)
    R = adjoint_rep(T)
    Z = cocycles(R, 3)
    D = integrate(T, Z.combine(F101.random_array(rng, (Z.dim,))), 2)
    phi = FormalIsomorphism(F101, (F101.eye(T.dim) * 3, F101.eye(T.dim) * 5))
    D2 = push_forward(D, phi)
    assert all(r.is_zero() for r in check_deformation(D2))
    assert all(r.is_zero() for r in check_equivalence(D, D2, phi)["orders"])
    assert infinitesimals_cohomologous(D, D2) is not None


def test_push_forward_requires_commuting_jets(B2):
    phi = FormalIsomorphism(QQ, ([[0, 1], [0, 0]],))
    assert not QQ.is_zero(phi.commutation_residuals(B2.alpha)[0])
    with pytest.raises(DeformationError):
        push_forward(TruncatedDeformation.null(B2, 1), phi)


def test_inequivalent_infinitesimals():
    T = zero_bracket(QQ, 2)
    C = cochain_space(adjoint_rep(T), 3)
    D = TruncatedDeformation(T, (C.basis[0],))
    assert infinitesimals_cohomologous(D, TruncatedDeformation.null(T, 1)) is None


def test_bullet_identity_on_b2_pairs(B2):
    C = cochain_space(adjoint_rep(B2), 3)
    for f in C.cochains():
        for g in C.cochains():
            assert bullet_compositions(B2, f, g).is_zero()


def test_multilinear_map_helpers(B2):
    m = circ_alpha(B2, B2.bracket, b2().bracket)
    assert m.arity == 5 and m.nonzero() == []
