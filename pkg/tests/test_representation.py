import numpy as np
import pytest

from conftest import F101, corpus_system
from oracles import naive_axioms
from homlts.algebra import check_axioms
from homlts.field import QQ, FieldMismatchError
from homlts.generators import b2, gen_matrix
from homlts.representation import (
    REP_IDENTITIES,
    Representation,
    RepresentationError,
    adjoint_rep,
    check_representation,
    d_operator,
    d_tensor,
    semidirect_product,
    trivial_rep,
)


def test_adjoint_theta_convention(B2):
    R = adjoint_rep(B2)
    # theta(e_a, e_b) e_z = [e_z e_a e_b]
    for a in range(2):
        for b in range(2):
            for z in range(2):
                assert list(R.theta[a, b][:, z]) == list(B2.bracket[z, a, b])


def test_d_operator(B2):
    R = adjoint_rep(B2)
    D = d_tensor(R)
    assert (d_operator(R, 0, 1) == D[0, 1]).all()
    # D(x, y) z = [x y z] for the adjoint representation
    for x in range(2):
        for y in range(2):
            for z in range(2):
                assert list(D[x, y][:, z]) == list(B2.bracket[x, y, z])
    with pytest.raises(IndexError):
        d_operator(R, 2, 0)


@pytest.mark.parametrize("seed", range(6))
def test_standard_representations_pass(seed):
    T = corpus_system(seed)
    rng = np.random.default_rng(seed)
    for R in (adjoint_rep(T), trivial_rep(T, 2, A=F101.random_array(rng, (2, 2)))):
        rep = check_representation(R)
        assert rep.ok and set(rep.status) == set(REP_IDENTITIES)


def test_semidirect_product_against_oracle():
    T = gen_matrix(1, 2)
    S = semidirect_product(T, adjoint_rep(T))
    assert check_axioms(S).ok
    assert all(naive_axioms(S.bracket.tolist(), S.alpha.tolist()).values())


def test_semidirect_product_of_b2_block_structure(B2):
    S = semidirect_product(B2, trivial_rep(B2, 1, A=[[3]]))
    assert S.dim == 3
    assert (S.bracket[:2, :2, :2, :2] == B2.bracket).all()
    assert not S.bracket[..., 2].any()
    assert S.alpha[2, 2] == 3


def test_broken_representation_rejected(B2):
    th = QQ.zeros((2, 2, 1, 1))
    th[0, 1, 0, 0] = 1
    R = Representation(B2, th, QQ.eye(1))
    rep = check_representation(R)
    assert not rep.ok
    assert rep.violations and rep.violations[0].axiom in REP_IDENTITIES
    with pytest.raises(RepresentationError):
        semidirect_product(B2, R)


def test_twist_must_intertwine(B2):
    R = adjoint_rep(B2)
    bad = Representation(B2, R.theta, QQ.eye(2))
    assert check_representation(bad).status["twist"] is False


def test_mismatched_bases(B2):
    with pytest.raises(RepresentationError):
        semidirect_product(gen_matrix(1, 2), adjoint_rep(B2))
    with pytest.raises(FieldMismatchError):
        semidirect_product(b2(F101), adjoint_rep(B2))
    with pytest.raises(ValueError):
        Representation(B2, QQ.zeros((2, 2, 1, 1)), QQ.eye(2))


def test_adjoint_needs_multiplicative(B2):
    from homlts.algebra import HomTripleSystem

    T = HomTripleSystem(QQ, B2.bracket, B2.alpha, multiplicative=False)
    with pytest.raises(RepresentationError):
        adjoint_rep(T)
