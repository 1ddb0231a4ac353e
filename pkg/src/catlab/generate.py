"""Instance generation: corpora, functor streams, diagrams, base changes, random samples."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .constructions import add_final
from .core import (
    BudgetExceeded, CatDiagram, FinCat, FinFunctor, assemble, discrete, empty_category, identity_functor,
    parallel_pair, product, simplex, terminal,
)
from .enumeration import enumerate_categories
from .search import iter_functor_maps

FUNCTOR_CAP = 10 ** 5


@lru_cache(maxsize=None)
def exhaustive(max_objects: int, max_morphisms: int) -> tuple[FinCat, ...]:
    return tuple(enumerate_categories(max_objects, max_morphisms))


def curated() -> dict[str, FinCat]:
    D1 = simplex(1)
    base = {
        "empty": empty_category(), "e": terminal(), "simplex1": D1, "simplex2": simplex(2),
        "simplex3": simplex(3), "discrete2": discrete(2), "discrete3": discrete(3),
        "parallel_pair": parallel_pair(), "square": product(D1, D1),
    }
    out = dict(base)
    small = ["e", "simplex1", "discrete2", "parallel_pair"]
    for a, b in itertools.combinations_with_replacement(small, 2):
        out[f"{a}x{b}"] = product(base[a], base[b])
    return out


@dataclass
class Corpus:
    """Exhaustive categories within bounds, a curated list, and seeded random samples."""

    max_objects: int = 3
    max_morphisms: int = 6
    seed: int = 0
    samples: int = 0
    random_bounds: tuple[int, int] = (4, 10)
    curated: dict = field(default_factory=curated)

    @property
    def exhaustive(self) -> tuple[FinCat, ...]:
        return exhaustive(self.max_objects, self.max_morphisms)

    def random(self) -> list[FinCat]:
        rng = random.Random(self.seed)
        return [random_category(rng, *self.random_bounds) for _ in range(self.samples)]


# ---------------------------------------------------------------------------
# tuples in shell order

def shell_tuples(n: int, r: int) -> Iterator[tuple[int, tuple[int, ...]]]:
    """All ``r``-tuples over ``range(n)`` ordered by their largest entry.

    Yields ``(shell, tuple)``; every tuple with entries below ``k`` comes
    before any tuple containing ``k``.
    """
    for k in range(n):
        for t in itertools.product(range(k + 1), repeat=r):
            if k in t:
                yield k, t


def functors(A: FinCat, B: FinCat, cap: int = FUNCTOR_CAP) -> Iterator[FinFunctor]:
    """All functors ``A -> B``; raises ``BudgetExceeded`` past ``cap``."""
    for n, (om, mm) in enumerate(iter_functor_maps(A, B)):
        if n >= cap:
            raise BudgetExceeded(f"more than {cap} functors {A!r} -> {B!r}")
        yield FinFunctor(A, B, om, mm)


@lru_cache(maxsize=4096)
def functor_list(A: FinCat, B: FinCat) -> tuple[FinFunctor, ...]:
    return tuple(functors(A, B))


# ---------------------------------------------------------------------------
# diagrams

def enumerate_diagrams(I: FinCat, values: Sequence[FinCat], cap: int = 10 ** 6) -> Iterator[CatDiagram]:
    """Every strict diagram ``I -> Cat`` whose values are drawn from ``values``."""
    nonid = [k for k in range(I.n_morphisms) if not I.is_id[k]]
    pos = {k: t for t, k in enumerate(nonid)}
    # composite constraints checked once all three arrows are placed
    checks: list[list[tuple[int, int, int]]] = [[] for _ in nonid]
    for g, f in I.composable_pairs():
        h = I.cm[g][f]
        parts = [x for x in (g, f, h) if not I.is_id[x]]
        if not parts:
            continue
        last = max(pos[x] for x in parts)
        checks[last].append((g, f, h))
    count = 0
    for objs in itertools.product(values, repeat=I.n_objects):
        ident = [identity_functor(C) for C in objs]
        assigned: list = [None] * I.n_morphisms
        for x in range(I.n_objects):
            assigned[I.ident[x]] = ident[x]

        def place(t):
            nonlocal count
            if t == len(nonid):
                count += 1
                if count > cap:
                    raise BudgetExceeded(f"more than {cap} diagrams")
                yield CatDiagram(I, objs, list(assigned), check=False)
                return
            k = nonid[t]
            for F in functor_list(objs[I.src[k]], objs[I.tgt[k]]):
                assigned[k] = F
                if all(assigned[h] == assigned[g] @ assigned[f] for g, f, h in checks[t]):
                    yield from place(t + 1)
            assigned[k] = None

        yield from place(0)


def diagram_morphisms(F: CatDiagram, G: CatDiagram) -> Iterator[list[FinFunctor]]:
    """Every strict morphism ``F -> G`` as a list of components."""
    I = F.index
    n = I.n_objects
    comps: list = [None] * n
    arrows = [[] for _ in range(n)]
    for k in range(I.n_morphisms):
        if not I.is_id[k]:
            arrows[max(I.src[k], I.tgt[k])].append(k)

    def rec(i):
        if i == n:
            yield list(comps)
            return
        for u in functor_list(F.at_object[i], G.at_object[i]):
            comps[i] = u
            if all(G.at_arrow[k] @ comps[I.src[k]] == comps[I.tgt[k]] @ F.at_arrow[k] for k in arrows[i]):
                yield from rec(i + 1)
        comps[i] = None

    yield from rec(0)


# ---------------------------------------------------------------------------
# base changes

def final_object_shapes(bounds: tuple[int, int]) -> list[FinCat]:
    """Corpus categories with a final object, by increasing morphism count."""
    return sorted((C for C in exhaustive(*bounds) if C.has_final_object()), key=lambda C: C.n_morphisms)


def enumerate_base_change_diagrams(B: FinCat, bounds: tuple[int, int] | None,
                                   cap: int = FUNCTOR_CAP,
                                   shapes: Sequence[FinCat] | None = None) -> Iterator[tuple[FinFunctor, FinFunctor]]:
    """Every composable ``B'' -w-> B' -base-> B`` with ``B''`` and ``B'`` in the corpus.

    ``shapes`` replaces the exhaustive corpus, e.g. to restrict to a single shape.
    """
    corpus = exhaustive(*bounds) if shapes is None else tuple(shapes)
    for B1 in corpus:
        downs = tuple(functors(B1, B, cap))
        if not downs:
            continue
        for B2 in corpus:
            for w in functors(B2, B1, cap):
                for base in downs:
                    yield w, base


# ---------------------------------------------------------------------------
# random samples

def random_poset(rng: random.Random, n: int, density: float = 0.5) -> FinCat:
    """A random partial order on ``n`` objects (as a thin category)."""
    order = list(range(n))
    rng.shuffle(order)
    rel = {(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < density}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    names = [str(i) for i in range(n)]
    arrows = sorted(rel)
    lookup = {(a, b): n + t for t, (a, b) in enumerate(arrows)}
    for x in range(n):
        lookup[(x, x)] = x
    src = list(range(n)) + [a for a, _ in arrows]
    tgt = list(range(n)) + [b for _, b in arrows]
    return assemble(names, [f"id_{x}" for x in names], [(f"{names[a]}->{names[b]}", a, b) for a, b in arrows],
                    lambda g, f: lookup[(src[f], tgt[g])])


def random_category(rng: random.Random, max_objects: int = 4, max_morphisms: int = 10) -> FinCat:
    """A seeded random category within bounds: a poset, a corpus product, or a final-object completion."""
    small = exhaustive(2, 3)
    for _ in range(100):
        kind = rng.randrange(3)
        if kind == 0:
            C = random_poset(rng, rng.randint(1, max_objects))
        elif kind == 1:
            C = product(rng.choice(small), rng.choice(small))
        else:
            C, _ = add_final(rng.choice(exhaustive(3, 6)))
        if C.n_objects <= max_objects and C.n_morphisms <= max_morphisms:
            return C
    return terminal()


def random_functor(rng: random.Random, A: FinCat, B: FinCat, cap: int = 2000) -> FinFunctor | None:
    """A functor chosen uniformly among the first ``cap`` enumerated ones."""
    pool = []
    for n, (om, mm) in enumerate(iter_functor_maps(A, B)):
        if n >= cap:
            break
        pool.append((om, mm))
    if not pool:
        return None
    om, mm = rng.choice(pool)
    return FinFunctor(A, B, om, mm)


def random_diagram(rng: random.Random, I: FinCat, bounds: tuple[int, int] = (3, 5)) -> CatDiagram:
    """``i -> A/i`` for a random ``v : A -> I``; falls back to a constant diagram."""
    for _ in range(20):
        A = rng.choice(exhaustive(*bounds))
        v = random_functor(rng, A, I)
        if v is not None:
            from .kan import Theta
            return Theta(v).diagram
    return CatDiagram.constant(I, terminal())
