import numpy as np
import pytest

from conftest import F101
from oracles import naive_axioms
from homlts.cohomology import Cochain, NotACochainError, coboundary, cochain_space, cocycles
from homlts.extension import (
    ExtensionError,
    are_equivalent,
    build_extension,
    classify,
    extension_violations,
    extract_cocycle,
    witness_violations,
)
from homlts.field import QQ
from homlts.generators import gen_matrix, zero_bracket
from homlts.representation import adjoint_rep, trivial_rep


def _b2_generator(V):
    return cocycles(V, 3).cochains()[0]


def test_b2_extension_is_a_hom_lts(B2):
    V = trivial_rep(B2, 1)
    g = _b2_generator(V)
    E = build_extension(B2, V, g)
    C = E.total
    assert C.dim == 3
    assert all(naive_axioms(C.bracket.tolist(), C.alpha.tolist()).values())
    assert extension_violations(E) == []
    assert extract_cocycle(E) == g


def test_b2_generator_is_trivial_with_explicit_witness(B2):
    V = trivial_rep(B2, 1)
    g = _b2_generator(V)
    zero = Cochain(V, QQ.zeros(g.values.shape))
    w = are_equivalent(B2, V, zero, g)
    assert w.equivalent
    assert coboundary(w.f) == g
    # g(e1, e0, e1) = 1 = -f([e1 e0 e1]) = f(e0)
    assert w.f.values[0, 0] == 1 and w.f.values[1, 0] == 0
    assert witness_violations(build_extension(B2, V, zero), build_extension(B2, V, g), w.phi) == []


def test_section_change_keeps_the_class(rng):
    T = gen_matrix(1, 2)
    V = trivial_rep(T, 1)
    Z = cocycles(V, 3)
    g = Z.combine(QQ.random_array(rng, (Z.dim,)))
    E = build_extension(T, V, g)
    C1 = cochain_space(V, 1)
    h = C1.combine(QQ.random_array(rng, (C1.dim,)))
    S = E.section.copy()
    S[T.dim:, :] = h.values.T
    g2 = extract_cocycle(E.with_section(S))
    assert g2 - g == coboundary(h)
    assert are_equivalent(T, V, g, g2).equivalent


def test_distinct_classes_are_inequivalent():
    T = zero_bracket(F101, 2)
    V = trivial_rep(T, 1)
    H = classify(T, V)
    assert H.h3dim == cochain_space(V, 3).dim == 2
    zero = Cochain(V, F101.zeros((2, 2, 2, 1)))
    res = are_equivalent(T, V, zero, H.representatives[0])
    assert not res.equivalent
    assert res.coords == ("1", "0")


def test_fiber_must_be_trivial(B2):
    R = adjoint_rep(B2)
    with pytest.raises(ExtensionError):
        build_extension(B2, R, QQ.zeros((2, 2, 2, 2)))


def test_non_cocycle_rejected():
    T = gen_matrix(1, 3)
    V = trivial_rep(T, 1)
    C3 = cochain_space(V, 3)
    assert (C3.dim, cocycles(V, 3).dim) == (8, 3)
    bad = next(f for f in C3.cochains() if not coboundary(f).is_zero())
    with pytest.raises(NotACochainError):
        build_extension(T, V, bad)


def test_broken_structure_maps_reported(B2):
    V = trivial_rep(B2, 1)
    E = build_extension(B2, V, _b2_generator(V))
    assert "pi s = id" in extension_violations(E.with_section(np.zeros((3, 2), dtype=object)))
    with pytest.raises(ExtensionError):
        extract_cocycle(E.with_section(QQ.zeros((3, 2))))
