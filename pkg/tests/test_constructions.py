import pytest
from hypothesis import given

from catlab.constructions import (
    FINAL, FiberMismatch, TargetMismatch, add_final, c0_c1_c2, comma_square, coslice, fiber, grothendieck,
    induced_slice_functor, lift_category, pullback, pullback_to_comma, slice,
)
from catlab.core import (
    CatDiagram, InvalidDiagram, UnknownObject, discrete, empty_category, identity_functor, opposite, opposite_functor, point,
    product, product_projections, simplex, terminal,
)
from catlab.generate import exhaustive, functor_list
from catlab.search import are_isomorphic

from conftest import functors, categories, SMALL


def iso(C, D):
    return are_isomorphic(C, D)[0]


# -- slices ---------------------------------------------------------------

def test_slice_examples(d1, d0, d1_end):
    S = slice(identity_functor(d1), "1")
    assert iso(S.category, d1)
    assert S.category.objects == ("0|0->1", "1|id_1")
    assert S.category.final_objects() == [S.lookup[(1, d1.ident[1])]]
    assert slice(d1_end, "0").category.n_objects == 0


@given(categories())
def test_identity_slice_has_final_object(C):
    for c in range(C.n_objects):
        S = slice(identity_functor(C), c)
        assert S.lookup[(c, C.ident[c])] in S.category.final_objects()


def test_slice_unknown_object(d1):
    with pytest.raises(UnknownObject):
        slice(identity_functor(d1), "7")


def test_coslice_examples(d1, d0):
    T = coslice(identity_functor(d1), "0")
    assert iso(T.category, d1)
    assert T.category.objects[0].startswith("0|")
    assert coslice(d0, "1").category.n_objects == 0


@given(functors())
def test_slice_coslice_duality(u):
    uop = opposite_functor(u)
    for c in range(u.target.n_objects):
        a = slice(u, c).category
        b = opposite(coslice(uop, c).category)
        assert iso(a, b)


# -- fibers ---------------------------------------------------------------

def test_fiber_examples(d1, d1_end):
    assert iso(fiber(identity_functor(d1), "0").category, terminal())
    C = simplex(2)
    p, _ = product_projections(d1, C)
    assert iso(fiber(p, "0").category, C)
    assert fiber(d1_end, "0").category.n_objects == 0


@given(functors())
def test_fiber_is_pullback_along_a_point(u):
    for b in range(u.target.n_objects):
        F = fiber(u, b).category
        P = pullback(u, point(u.target, u.target.objects[b])).apex
        assert iso(F, P)


# -- pullbacks ------------------------------------------------------------

def test_pullback_examples(d1, d0, d1_end):
    u = functor_list(simplex(2), d1)[3]
    assert iso(pullback(u, identity_functor(d1)).apex, u.source)
    p, _ = product_projections(d1, d1)
    assert iso(pullback(p, d0).apex, d1)
    assert pullback(d0, d1_end).apex.n_objects == 0
    with pytest.raises(TargetMismatch):
        pullback(d0, identity_functor(terminal()))


@given(functors())
def test_pullback_square_commutes(u):
    for w in functor_list(SMALL[3], u.target)[:4]:
        sq = pullback(u, w)
        assert u @ sq.v == w @ sq.u_prime
        for x in range(sq.apex.n_objects):
            assert w.omap[sq.u_prime.omap[x]] == u.omap[sq.v.omap[x]]


def test_pullback_universal_property():
    cones = [C for C in exhaustive(2, 3)]
    for u in functor_list(simplex(1), simplex(1)) + functor_list(discrete(2), simplex(1)):
        for w in functor_list(simplex(1), simplex(1)):
            sq = pullback(u, w)
            for X in cones:
                for f in functor_list(X, w.source):
                    for g in functor_list(X, u.source):
                        if w @ f != u @ g:
                            continue
                        hs = [h for h in functor_list(X, sq.apex) if sq.u_prime @ h == f and sq.v @ h == g]
                        assert len(hs) == 1


# -- Grothendieck ---------------------------------------------------------

def test_grothendieck_examples(d1, d0):
    G = grothendieck(CatDiagram.constant(d1, terminal()))
    assert iso(G.category, d1)
    C = simplex(2)
    G = grothendieck(CatDiagram.constant(d1, C))
    assert iso(G.category, product(d1, C))
    F = CatDiagram.from_maps(d1, {"0": terminal(), "1": d1}, {"0->1": d0})
    G = grothendieck(F)
    assert (G.category.n_objects, G.category.n_morphisms) == (3, 6)
    assert G.category.objects == ("0#0", "1#0", "1#1")


def test_grothendieck_of_monoid_counts_pairs():
    monoids = [C for C in exhaustive(1, 3) if C.n_objects == 1]
    for M in monoids:
        for N in monoids:
            for h in functor_list(N, N):
                # a monoid acting on N through powers of h, when it is a diagram
                try:
                    F = CatDiagram(M, [N], [h if not M.is_id[k] else identity_functor(N)
                                            for k in range(M.n_morphisms)])
                except InvalidDiagram:
                    continue
                G = grothendieck(F).category
                assert G.n_objects == 1
                assert G.n_morphisms == M.n_morphisms * N.n_morphisms


# -- final object, comma, lifts -------------------------------------------

def test_add_final_examples(d1):
    assert iso(add_final(empty_category())[0], terminal())
    star, inc = add_final(terminal())
    assert iso(star, d1)
    assert star.objects[-1] == FINAL
    assert star.mor_ids[-1] == "0->⋆"


@given(categories())
def test_add_final_is_full_and_has_final(C):
    star, inc = add_final(C)
    assert star.final_objects()[-1] == star.n_objects - 1
    for x in range(C.n_objects):
        for y in range(C.n_objects):
            assert len(star.hom_i(x, y)) == len(C.hom_i(x, y))
    if not C.has_final_object():
        assert star.final_objects() == [star.n_objects - 1]


def test_comma_square_examples(d0, d1_end):
    e = terminal()
    two = comma_square(identity_functor(e), identity_functor(e))
    assert iso(two.comma, e)
    two = comma_square(d1_end, d0)
    assert iso(two.comma, e)
    assert two.alpha.components == (simplex(1).mor_index("0->1"),)


@given(functors())
def test_pullback_to_comma_is_injective_on_objects(u):
    for w in functor_list(SMALL[4], u.target)[:3]:
        K = pullback_to_comma(pullback(u, w), comma_square(u, w))
        assert len(set(K.omap)) == len(K.omap)


def test_lift_category_examples(d1, d1_end):
    assert iso(lift_category(identity_functor(d1), "0->1", "1"), terminal())
    assert lift_category(d1_end, "0->1", "0").n_objects == 0
    with pytest.raises(FiberMismatch):
        lift_category(identity_functor(d1), "0->1", "0")


def test_lift_category_of_projection_is_a_slice():
    B = simplex(1)
    for C in exhaustive(2, 3):
        p, _ = product_projections(B, C)
        P = p.source
        for c in C.objects:
            a1 = P.obj_index(f"(1,{c})")
            L = lift_category(p, "0->1", a1)
            assert iso(L, slice(identity_functor(C), c).category)


def test_induced_slice_functor_examples(d1, d0):
    S = induced_slice_functor(identity_functor(d1), "1")
    assert S == identity_functor(S.source)
    T = induced_slice_functor(d0, "1")
    assert T.target.objects[T.omap[0]] == "0|0->1"


@given(functors())
def test_induced_slice_functors_compose(u):
    for v in functor_list(u.target, SMALL[5])[:3]:
        for c in range(v.target.n_objects):
            whole = induced_slice_functor(v @ u, c)
            parts = induced_slice_functor(v, c) @ induced_slice_functor(u, c, v)
            assert whole == parts


def test_cleft_triples():
    e = terminal()
    t = c0_c1_c2(identity_functor(e), identity_functor(e), "0", "0", "id_0")
    assert t.isomorphic and iso(t.c0, e)
    d1 = simplex(1)
    t = c0_c1_c2(identity_functor(d1), point(d1, "0"), "0", "1", "0->1")
    assert t.isomorphic


def test_cleft_triples_sweep():
    cats = exhaustive(2, 3)
    n = 0
    for A in cats:
        for B in cats:
            for u in functor_list(A, B)[:4]:
                for B2 in cats[:6]:
                    for w in functor_list(B2, B)[:4]:
                        for b0 in range(B2.n_objects):
                            for a1 in range(A.n_objects):
                                for g in B.hom_i(w.omap[b0], u.omap[a1]):
                                    assert c0_c1_c2(u, w, b0, a1, g).isomorphic
                                    n += 1
    assert n > 100
