from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import minor_rank, naive_rank
from homlts import linalg
from homlts.field import GF, QQ, FieldError, FieldMismatchError

F7 = GF(7)


@pytest.mark.parametrize("p", [0, 5, 7, 101, 2 ** 61 - 1])
def test_supported_characteristics(p):
    assert GF(p).characteristic == p


@pytest.mark.parametrize("p", [2, 3, 4, 9, -5])
def test_rejected_characteristics(p):
    with pytest.raises(FieldError):
        GF(p)


def test_scalar_coercion():
    assert QQ.scalar("3/6") == Fraction(1, 2)
    assert QQ.scalar(Fraction(4, 2)) == 2
    assert F7.scalar("1/2") == 4
    assert F7.scalar(-1) == 6
    for bad in (0.5, True, "x", "1/0"):
        with pytest.raises(FieldError):
            QQ.scalar(bad)
    with pytest.raises(FieldError):
        F7.scalar(Fraction(1, 7))


def test_format_round_trip():
    for x in (Fraction(-3, 4), 5, 0):
        assert QQ.scalar(QQ.format(x)) == x
    assert F7.format(F7.scalar(-2)) == "5"


def test_float_arrays_rejected():
    with pytest.raises(FieldError):
        QQ.array(np.array([0.5]))
    with pytest.raises(FieldMismatchError):
        F7.check(np.array([1, 2], dtype=object))


def test_large_prime_uses_object_storage():
    p = 2 ** 61 - 1
    F = GF(p)
    a = F.array([[p - 1, 2], [3, 4]])
    sq = F.matmul(a, a)
    assert sq[0, 0] == ((p - 1) ** 2 + 6) % p


def test_einsum_chain_matches_direct():
    rng = np.random.default_rng(0)
    F = GF(101)
    a, b, c = (F.random_array(rng, (3, 3)) for _ in range(3))
    direct = np.einsum("ij,jk,kl->il", a, b, c) % 101
    assert F.equal(F.einsum("ij,jk,kl->il", a, b, c), direct)


small_matrix = st.lists(
    st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=4
)


@settings(max_examples=60, deadline=None)
@given(small_matrix)
def test_rank_matches_minor_oracle_over_q(rows):
    assert linalg.rank(QQ, QQ.array(rows)) == minor_rank(rows)


@settings(max_examples=60, deadline=None)
@given(small_matrix)
def test_kernel_vectors_annihilate(rows):
    for F in (QQ, F7):
        M = F.array(rows)
        K = linalg.kernel_basis(F, M)
        assert K.shape[0] == M.shape[1] - linalg.rank(F, M)
        assert F.is_zero(F.matmul(M, K.T))


@settings(max_examples=60, deadline=None)
@given(small_matrix, st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_solve_is_consistent(rows, x):
    M = QQ.array(rows)
    b = QQ.matmul(M, QQ.array(x))
    sol = linalg.solve(QQ, M, b)
    assert sol is not None
    assert QQ.equal(QQ.matmul(M, sol), b)


def test_solve_inconsistent():
    assert linalg.solve(QQ, QQ.array([[1, 1], [2, 2]]), QQ.array([1, 3])) is None


def test_rref_is_deterministic_and_reduced():
    M = QQ.array([[2, 4, 6], [1, 1, 1], [3, 5, 7]])
    R1, r1, p1 = linalg.rref(QQ, M)
    R2, r2, p2 = linalg.rref(QQ, M.copy())
    assert (R1 == R2).all() and p1 == p2 == [0, 1]
    assert r1 == naive_rank(M.tolist())
    assert R1[0, 0] == 1 and R1[1, 0] == 0


def test_in_span_and_quotient():
    B = QQ.array([[1, 0, 1], [0, 1, 1]])
    c = linalg.in_span(QQ, QQ.array([2, 3, 5]), B)
    assert list(c) == [2, 3]
    assert linalg.in_span(QQ, QQ.array([0, 0, 1]), B) is None
    assert linalg.quotient_dim(QQ, B, B[:1]) == 1
    with pytest.raises(linalg.NotASubspaceError):
        linalg.quotient_dim(QQ, B[:1], QQ.array([[0, 0, 1]]))


def test_complete_basis_greedy():
    base = QQ.array([[1, 0, 0]])
    cands = QQ.array([[2, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]])
    assert linalg.complete_basis(QQ, base, cands) == [1, 3]


def test_is_prime_matches_sympy():
    import sympy

    from homlts.field import is_prime

    for n in list(range(2000)) + [2 ** 61 - 1, 2 ** 61 + 1, 1_000_000_007 * 998_244_353]:
        assert is_prime(n) == sympy.isprime(n), n
