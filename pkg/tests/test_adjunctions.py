from dataclasses import replace

from hypothesis import given

from catlab.adjunctions import (
    Adjunction, brute_force_right_adjoint, construct_right_adjoint, has_left_adjoint, has_right_adjoint,
    is_equivalence, verify_adjunction,
)
from catlab.core import (
    NatTrans, identity_functor, identity_nat, isomorphism_pair, monoid, point, simplex, terminal, to_terminal,
)
from catlab.generate import exhaustive, functor_list
from catlab.kan import Counit, Unit, OverCategoryObject
from catlab.core import CatDiagram

from conftest import functors


def identity_adjunction(C):
    idC = identity_functor(C)
    return Adjunction(idC, idC, identity_nat(idC), identity_nat(idC))


def test_right_adjoint_examples(d1, d0, d1_end):
    assert has_right_adjoint(identity_functor(d1))
    assert has_right_adjoint(d0)
    assert not has_right_adjoint(d1_end)


def test_construct_right_adjoint_examples(d1, d0, d1_end):
    adj = construct_right_adjoint(identity_functor(d1))
    assert adj.right == identity_functor(d1)
    adj = construct_right_adjoint(d0)
    assert adj.right == to_terminal(d1)
    assert verify_adjunction(adj) == (True, None)
    assert construct_right_adjoint(d1_end) is None


@given(functors())
def test_constructed_adjunctions_verify(u):
    adj = construct_right_adjoint(u)
    assert (adj is not None) == has_right_adjoint(u)
    if adj is not None:
        assert verify_adjunction(adj) == (True, None)


def test_brute_force_agrees_on_small_categories():
    cats = [C for C in exhaustive(2, 4) if C.n_morphisms <= 4]
    n = 0
    for A in cats:
        for B in cats:
            for u in functor_list(A, B):
                assert (brute_force_right_adjoint(u) is not None) == has_right_adjoint(u)
                n += 1
    assert n > 1000


def test_verify_identity_adjunction():
    assert verify_adjunction(identity_adjunction(simplex(2)))[0]


def test_verify_rejects_broken_counit():
    # idempotent monoid {1, m}: replacing the counit component by m breaks a triangle identity
    M = monoid([[0, 1], [1, 1]])
    adj = identity_adjunction(M)
    bad = NatTrans(adj.counit.source, adj.counit.target, [1], check=False)
    ok, msg = verify_adjunction(replace(adj, counit=bad))
    assert not ok and "triangle" in msg


def test_theta_adjunction_instance(d1):
    w = identity_functor(d1)
    F = CatDiagram.constant(d1, d1)
    for i in range(2):
        assert verify_adjunction(Counit(w, F, i).adjunction())[0]
    X = OverCategoryObject(d1, identity_functor(d1))
    assert verify_adjunction(Unit(w, X).adjunction())[0]


def test_left_adjoint_and_equivalence_examples(d1, d0):
    assert is_equivalence(identity_functor(d1))
    assert is_equivalence(point(isomorphism_pair(), isomorphism_pair().objects[0]))
    assert not has_left_adjoint(d0)
    assert not is_equivalence(d0)


@given(functors())
def test_equivalences_have_both_adjoints(u):
    if is_equivalence(u):
        assert has_right_adjoint(u) and has_left_adjoint(u)
