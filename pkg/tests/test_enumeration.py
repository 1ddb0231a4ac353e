import itertools
import random

from hypothesis import given, settings, strategies as st

from catlab.adjunctions import has_right_adjoint
from catlab.asphericity import NONEMPTY, is_aspheric_functor
from catlab.core import FinCat, empty_category, simplex, terminal
from catlab.enumeration import enumerate_categories
from catlab.fibrations import _inclusion, pulled_back_top, smooth_minimal_failure, weakly_smooth_c
from catlab.generate import (
    Corpus, curated, enumerate_base_change_diagrams, exhaustive, functor_list, random_category, random_diagram,
    random_functor, shell_tuples,
)
from catlab.oracle import code_of, oracle_classes, oracle_count
from catlab.search import are_isomorphic

from conftest import functors


def test_trivial_bounds():
    assert list(enumerate_categories(0, 0)) == [empty_category()]
    cats = list(enumerate_categories(1, 1))
    assert len(cats) == 2 and are_isomorphic(cats[1], terminal())[0]
    assert [C.n_objects for C in cats] == [0, 1]


def test_monoids_of_order_at_most_three_match_the_oracle():
    cats = exhaustive(1, 3)
    assert len(cats) == oracle_count(1, 3) == 11
    # by order: the empty category, then 1, 2 and 7 monoids
    assert [C.n_morphisms for C in cats].count(2) == 2
    assert [C.n_morphisms for C in cats].count(3) == 7


def test_iso_classes_match_unconstrained_tables():
    for bounds in [(1, 3), (2, 3), (2, 4)]:
        ours = {code_of(C) for C in exhaustive(*bounds)}
        assert len(ours) == len(exhaustive(*bounds))
        assert ours == oracle_classes(*bounds)


def test_frozen_counts():
    assert [len(exhaustive(*b)) for b in [(1, 1), (1, 2), (2, 2), (2, 3), (2, 4)]] == [2, 4, 5, 15, 66]


def test_order_is_deterministic():
    a = [C.cm for C in enumerate_categories(2, 4)]
    b = [C.cm for C in enumerate_categories(2, 4)]
    assert a == b
    sizes = [(C.n_objects, C.n_morphisms) for C in exhaustive(3, 5)]
    assert sizes == sorted(sizes)


def test_corpus_parts():
    cor = Corpus(2, 3, seed=5, samples=4)
    assert cor.exhaustive == exhaustive(2, 3)
    assert {"e", "empty", "simplex3", "parallel_pair", "square"} <= set(cor.curated)
    assert [C.cm for C in cor.random()] == [C.cm for C in Corpus(2, 3, seed=5, samples=4).random()]


def test_shell_order():
    seen = list(shell_tuples(3, 2))
    assert len(seen) == 9 and len({t for _, t in seen}) == 9
    shells = [k for k, _ in seen]
    assert shells == sorted(shells)
    assert all(max(t) == k for k, t in seen)


# -- base change diagrams ----------------------------------------------------

def _count_functors(A: FinCat, B: FinCat) -> int:
    """Direct count over all object and morphism maps."""
    n = 0
    for om in itertools.product(range(B.n_objects), repeat=A.n_objects):
        cands = [[h for h in range(B.n_morphisms) if B.src[h] == om[A.src[f]] and B.tgt[h] == om[A.tgt[f]]]
                 for f in range(A.n_morphisms)]
        for mm in itertools.product(*cands):
            if any(mm[x] != B.ident[om[x]] for x in range(A.n_objects)):
                continue
            if all(A.cm[g][f] < 0 or B.cm[mm[g]][mm[f]] == mm[A.cm[g][f]]
                   for g in range(A.n_morphisms) for f in range(A.n_morphisms)):
                n += 1
    return n


def test_base_change_stream_length_recount():
    B = simplex(1)
    corpus = exhaustive(2, 4)
    down = [_count_functors(B1, B) for B1 in corpus]
    expected = sum(down[i] * _count_functors(B2, B1) for i, B1 in enumerate(corpus) for B2 in corpus)
    got = sum(1 for _ in enumerate_base_change_diagrams(B, (2, 4)))
    assert got == expected == 41447


@given(functors())
@settings(max_examples=25)
def test_point_into_arrow_specializes_to_weak_smoothness(u):
    incl = _inclusion(0, 1)
    inst = [(w, b) for w, b in enumerate_base_change_diagrams(u.target, None, shapes=(terminal(), simplex(1)))
            if w == incl]
    assert len(inst) == len(functor_list(incl.target, u.target))
    verdict = all(is_aspheric_functor(NONEMPTY, pulled_back_top(u, w, b)) for w, b in inst)
    assert verdict == weakly_smooth_c(NONEMPTY, u)


@given(functors())
@settings(max_examples=25)
def test_arrow_into_two_simplex_specializes_to_two_arrow_criterion(u):
    incl = _inclusion(1, 2)
    inst = [(w, b) for w, b in enumerate_base_change_diagrams(u.target, None, shapes=(simplex(1), simplex(2)))
            if w == incl]
    assert len(inst) == len(functor_list(incl.target, u.target))
    verdict = all(has_right_adjoint(pulled_back_top(u, w, b)) for w, b in inst)
    assert verdict == (smooth_minimal_failure(u) is None)


# -- random generation -------------------------------------------------------

@given(st.integers(0, 10 ** 6))
@settings(max_examples=20)
def test_random_generators_are_seeded(seed):
    def draw():
        rng = random.Random(seed)
        C = random_category(rng, 4, 10)
        D = random_diagram(rng, simplex(1), (2, 3))
        u = random_functor(rng, C, simplex(1))
        return C.cm, [X.cm for X in D.at_object], None if u is None else u.omap
    first = draw()
    assert first == draw()
    assert len(first[0]) <= 10


def test_curated_names():
    cur = curated()
    assert cur["e"] == terminal()
    assert cur["simplex1xsimplex1"].n_morphisms == 9
