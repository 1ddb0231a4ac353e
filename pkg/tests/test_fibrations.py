import pytest
from hypothesis import given

from catlab.asphericity import MINIMAL, NONEMPTY, RouteDisagreement
from catlab.constructions import slice
from catlab.core import (
    identity_functor, product_projections, simplex, simplex_inclusion, terminal, to_terminal, point,
)
from catlab.fibrations import (
    carlisse_conditions, fiber_adjoint_equivalence, is_cartesian, is_cocartesian, is_cofibration,
    is_cofibration_by_hyperlifts, is_fibration, is_fibration_by_hyperlifts, is_hypercocartesian,
    is_local_isomorphism, is_precofibration, is_prefibration, is_smooth, is_smooth_minimal, is_weakly_smooth,
    pulled_back_top, smooth_counterexample, weakly_smooth_conditions,
)
from catlab.asphericity import is_aspheric_functor
from catlab.generate import exhaustive, functor_list

from conftest import functors, SMALL

BOTH = (MINIMAL, NONEMPTY)


@pytest.fixture
def proj():
    D1 = simplex(1)
    return product_projections(D1, D1)[0]


def test_cocartesian_examples(d1, proj):
    for C in SMALL[:6]:
        u = identity_functor(C)
        for f in range(C.n_objects):
            assert is_cocartesian(u, f)
    P = proj.source
    assert is_cocartesian(proj, P.mor_index("(0->1,id_0)"))
    assert is_hypercocartesian(proj, P.mor_index("(0->1,id_0)"))
    assert not is_cocartesian(to_terminal(d1), "0->1")


@given(functors())
def test_hypercocartesian_implies_cocartesian(u):
    for c in range(u.source.n_morphisms):
        if is_hypercocartesian(u, c):
            assert is_cocartesian(u, c)


def test_fibration_examples(d1, d1_end, proj):
    assert is_fibration(proj) and is_cofibration(proj)
    assert not is_prefibration(d1_end)
    for C in SMALL:
        assert is_fibration(identity_functor(C))


@given(functors())
def test_fibration_routes_agree(u):
    assert is_cofibration(u, check=False) == is_cofibration_by_hyperlifts(u)
    assert is_fibration(u, check=False) == is_fibration_by_hyperlifts(u)
    if is_cofibration(u):
        assert is_precofibration(u)


def test_fiber_adjoint_examples(d1, d0, d1_end, proj):
    for b in range(2):
        assert fiber_adjoint_equivalence(identity_functor(d1), b) == (True, True)
    assert fiber_adjoint_equivalence(proj, "0") == (True, True)
    # over 0 both the fiber and the slice of the end point are empty, so the adjoint exists
    assert fiber_adjoint_equivalence(d1_end, "0") == (True, True)
    # empty fiber into a nonempty slice: no adjoint, and 0->1 has no lift
    assert fiber_adjoint_equivalence(d0, "1") == (False, False)


@given(functors())
def test_fiber_adjoint_lemma(u):
    for b in range(u.target.n_objects):
        x, y = fiber_adjoint_equivalence(u, b)
        assert x == y


def test_weakly_smooth_examples(d1_end, proj):
    for S in BOTH:
        assert is_weakly_smooth(S, proj)
        assert is_weakly_smooth(S, identity_functor(simplex(2)))
    assert not is_weakly_smooth(MINIMAL, d1_end)
    assert weakly_smooth_conditions(MINIMAL, d1_end) == dict.fromkeys("abcd", False)


@given(functors())
def test_weak_smoothness_conditions_agree(u):
    for S in BOTH:
        assert len(set(weakly_smooth_conditions(S, u).values())) == 1


@given(functors())
def test_prefibrations_are_weakly_smooth_exactly(u):
    assert is_prefibration(u) == is_weakly_smooth(MINIMAL, u)


def test_smooth_minimal_examples(d1, d1_end, proj):
    assert is_smooth_minimal(proj)
    assert not is_smooth_minimal(d1_end)
    p = slice(identity_functor(d1), "1").projection
    assert is_local_isomorphism(p)
    assert is_smooth_minimal(p)


@given(functors())
def test_minimal_smooth_is_fibration(u):
    assert is_smooth_minimal(u, check=False) == is_fibration(u, check=False)


def test_route_disagreement_is_raised(monkeypatch, d1_end):
    import catlab.fibrations as fib
    monkeypatch.setattr(fib, "smooth_minimal_failure", lambda u: None)
    with pytest.raises(RouteDisagreement):
        fib.is_smooth_minimal(d1_end)


def test_is_smooth_examples(d1, d1_end, proj):
    assert is_smooth(MINIMAL, proj).status == "Proved"
    for S in BOTH:
        assert is_smooth(S, identity_functor(d1)).status == "Proved"
    v = is_smooth(NONEMPTY, d1_end)
    assert v.status == "Refuted"
    # the witness is a base change from e, and is reproducible
    assert v.witness.w.source == terminal()
    top = pulled_back_top(d1_end, v.witness.w, v.witness.base)
    assert top == v.witness.top and not is_aspheric_functor(NONEMPTY, top)
    assert top.source.n_objects == 0 and top.target.n_objects == 1


def test_is_smooth_evidence_for_non_fibrations():
    # nonempty-smooth but not a fibration: only a bounded search is possible
    found = None
    for A in exhaustive(2, 3):
        for B in exhaustive(2, 3):
            for u in functor_list(A, B):
                if not is_fibration(u) and smooth_counterexample(NONEMPTY, u, (1, 2))[0] is None:
                    found = u
                    break
    if found is not None:
        v = is_smooth(NONEMPTY, found, (1, 2))
        assert v.status == "Evidence" and v.checked_bound == (1, 2) and v.instances > 0


@given(functors())
def test_base_change_search_matches_two_arrow_criterion(u):
    witness, _ = smooth_counterexample(MINIMAL, u, (2, 3))
    assert (witness is None) == is_smooth_minimal(u)


@given(functors())
def test_smooth_functors_pass_theorem_conditions(u):
    if not is_fibration(u):
        return
    D1 = simplex(1)
    for base in functor_list(D1, u.target):
        for w in functor_list(terminal(), D1):
            for S in BOTH:
                assert all(carlisse_conditions(S, u, w, base).values())


def test_theorem_conditions_detect_non_smooth(d1_end):
    D1 = simplex(1)
    base = identity_functor(D1)
    w = point(D1, "0")
    c = carlisse_conditions(MINIMAL, d1_end, w, base)
    assert not c["b"]


def test_local_isomorphisms_are_smooth():
    n = 0
    for A in exhaustive(2, 3):
        for B in exhaustive(2, 3):
            for u in functor_list(A, B):
                if is_local_isomorphism(u):
                    n += 1
                    assert is_smooth_minimal(u)
    assert n > 0


def test_fibration_is_cartesian_dual(d1, proj):
    P = proj.source
    assert is_cartesian(proj, P.mor_index("(0->1,id_1)"))
    assert is_fibration(simplex_inclusion(1, 2))
    assert not is_cofibration(simplex_inclusion(1, 2))
