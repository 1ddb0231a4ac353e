import pytest
from hypothesis import given, strategies as st

from catlab.adjunctions import has_right_adjoint, verify_adjunction
from catlab.asphericity import MINIMAL, is_aspheric_functor
from catlab.constructions import IllTyped, grothendieck, pullback
from catlab.core import (
    CatDiagram, identity_functor, point, precompose_diagram, simplex, terminal, to_terminal,
)
from catlab.generate import diagram_morphisms, enumerate_diagrams, exhaustive, functor_list
from catlab.kan import (
    Counit, OverCategoryObject, Square, Unit, epsilon_component, eta_component, first_triangle, kappa, paste,
    second_triangle, shriek, theta, theta_prime, verify_cartint, verify_lemmeclef,
)
from catlab.search import are_isomorphic

INDEX = exhaustive(2, 3)
VALUES = exhaustive(1, 2)


def iso(C, D):
    return are_isomorphic(C, D)[0]


@pytest.fixture
def F01(d1, d0):
    """F(0) = e, F(1) = {0 -> 1}, the arrow sent to the point 0."""
    return CatDiagram.from_maps(d1, {"0": terminal(), "1": d1}, {"0->1": d0})


def over(v):
    return OverCategoryObject(v.source, v)


@st.composite
def index_and_diagram(draw):
    I = draw(st.sampled_from(INDEX))
    Fs = list(enumerate_diagrams(I, VALUES))
    return I, draw(st.sampled_from(Fs))


# -- theta --------------------------------------------------------------------

def test_theta_examples(d1):
    A = simplex(2)
    D = theta(terminal(), over(to_terminal(A)))
    assert iso(D.at_object[0], A)
    D = theta(d1, over(identity_functor(d1)))
    assert iso(D.at_object[0], terminal()) and iso(D.at_object[1], d1)
    k = D.arrow("0->1")
    assert D.at_object[1].objects[k.omap[0]] == "0|0->1"


def test_theta_prime_is_grothendieck(F01):
    X = theta_prime(F01.index, F01)
    G = grothendieck(F01)
    assert X.total == G.category and X.structure == G.projection


# -- counit and unit ----------------------------------------------------------

def test_counit_examples(d1, F01):
    w = identity_functor(d1)
    eps = epsilon_component(w, CatDiagram.constant(d1, terminal()), "1")
    assert eps == to_terminal(eps.source)
    for i in range(2):
        c = Counit(w, F01, i)
        assert verify_adjunction(c.adjunction()) == (True, None)
        assert is_aspheric_functor(MINIMAL, c.functor)


def test_unit_examples(d1):
    e = terminal()
    eta = eta_component(identity_functor(e), over(identity_functor(e)))
    assert len(set(eta.omap)) == eta.target.n_objects == 1
    assert eta.target.n_morphisms == 1
    unit = Unit(identity_functor(d1), over(identity_functor(d1)))
    assert verify_adjunction(unit.adjunction()) == (True, None)


@given(index_and_diagram())
def test_counit_is_minimal_aspheric_and_natural(IF):
    I, F = IF
    w = identity_functor(I)
    for i in range(I.n_objects):
        assert has_right_adjoint(Counit(w, F, i).functor)


@given(st.sampled_from(INDEX), st.sampled_from(VALUES))
def test_unit_is_minimal_aspheric(I, A):
    for v in functor_list(A, I):
        assert has_right_adjoint(Unit(identity_functor(I), over(v)).functor)


@given(index_and_diagram(), st.sampled_from(INDEX))
def test_triangle_identities(IF, J):
    I, F = IF
    for w in functor_list(J, I)[:6]:
        assert first_triangle(w, F)
        for A in VALUES:
            for v in functor_list(A, J)[:4]:
                assert second_triangle(w, over(v))


def test_counit_rejects_foreign_index(d1, F01):
    with pytest.raises(IllTyped):
        Counit(identity_functor(terminal()), F01, 0)


# -- shriek -------------------------------------------------------------------

def test_shriek_examples(d1, d0):
    e = terminal()
    D = shriek(identity_functor(e), CatDiagram.constant(e, e))
    assert iso(D.at_object[0], e)
    D = shriek(d0, CatDiagram.constant(e, e))
    assert [C.n_objects for C in D.at_object] == [1, 1]
    D = shriek(to_terminal(d1), CatDiagram.constant(d1, e))
    assert iso(D.at_object[0], d1)


# -- base change morphism ------------------------------------------------------

def test_kappa_identity_square_is_iso(F01):
    u = identity_functor(F01.index)
    D = pullback(u, identity_functor(u.target))
    for b in range(2):
        k = kappa(D, F01, b)
        assert len(set(k.omap)) == len(k.omap) == k.target.n_objects
        assert len(set(k.mmap)) == len(k.mmap) == k.target.n_morphisms


def test_kappa_point_example(d1, d0):
    D = pullback(identity_functor(d1), d0)
    k = kappa(D, CatDiagram.constant(d1, terminal()), 0)
    assert k.source.n_objects == k.target.n_objects == 1
    assert len(set(k.mmap)) == len(k.mmap) == k.target.n_morphisms


def test_kappa_accepts_commuting_squares(d1, d0):
    sq = Square(identity_functor(d1), d0, identity_functor(terminal()), d0)
    k = kappa(sq, CatDiagram.constant(d1, d1), 0)
    assert k.source.n_objects == 2
    bad = Square(identity_functor(d1), d0, identity_functor(terminal()), point(d1, "1"))
    with pytest.raises(IllTyped):
        kappa(bad, CatDiagram.constant(d1, d1), 0)


def test_kappa_pasting():
    n = 0
    cats = exhaustive(1, 2)
    for A in cats:
        for B in cats:
            for u in functor_list(A, B):
                for B1 in cats:
                    for w1 in functor_list(B1, B):
                        D1 = pullback(u, w1)
                        for B2 in cats:
                            for w2 in functor_list(B2, B1):
                                D2 = pullback(D1.u_prime, w2)
                                P = paste(D1, D2)
                                for F in enumerate_diagrams(A, cats):
                                    F1 = precompose_diagram(F, D1.v)
                                    for b in range(B2.n_objects):
                                        whole = kappa(P, F, b)
                                        assert whole == kappa(D1, F, w2.omap[b]) @ kappa(D2, F1, b)
                                        n += 1
    assert n > 50


def test_kappa_along_fibration_has_right_adjoint():
    from catlab.fibrations import is_fibration
    for A in exhaustive(2, 3)[:8]:
        for B in exhaustive(1, 2):
            for u in functor_list(A, B):
                for B1 in exhaustive(2, 3)[:8]:
                    for w in functor_list(B1, B):
                        if not is_fibration(w):
                            continue
                        D = pullback(u, w)
                        for F in list(enumerate_diagrams(A, VALUES))[:5]:
                            for b in range(B1.n_objects):
                                assert has_right_adjoint(kappa(D, F, b))


# -- componentwise aspheric morphisms -------------------------------------------

def test_lemmeclef_examples(d1, d0):
    e = terminal()
    F = CatDiagram.constant(d1, e)
    rep = verify_lemmeclef(d1, F, F, [identity_functor(e)] * 2)
    assert rep.passed and rep.hypothesis and rep.conclusion
    G = CatDiagram.from_maps(d1, {"0": e, "1": d1}, {"0->1": d0})
    rep = verify_lemmeclef(d1, F, G, [identity_functor(e), d0])
    assert rep.factorization and rep.retraction and rep.adjunction
    assert rep.hypothesis and rep.conclusion


@given(index_and_diagram())
def test_lemmeclef_on_morphisms_into_a_diagram(IF):
    I, G = IF
    for F in list(enumerate_diagrams(I, VALUES))[:6]:
        for u in list(diagram_morphisms(F, G))[:4]:
            rep = verify_lemmeclef(I, F, G, u)
            assert rep.passed, rep


def test_lemmeclef_rejects_non_morphisms(d1, d0):
    e = terminal()
    F = CatDiagram.constant(d1, e)
    G = CatDiagram.constant(d1, d1)
    with pytest.raises(IllTyped):
        verify_lemmeclef(d1, F, G, [d0, point(d1, "1")])


# -- cartesian square of integrals ----------------------------------------------

def test_cartint_examples(d1, d0, F01):
    assert verify_cartint(identity_functor(d1), F01)
    assert verify_cartint(d0, F01)


@given(index_and_diagram(), st.sampled_from(INDEX))
def test_cartint_property(IF, J):
    I, F = IF
    for w in functor_list(J, I)[:6]:
        assert verify_cartint(w, F)
