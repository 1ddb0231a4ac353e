"""Right and left adjoints of functors between finite categories."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .core import (
    FinFunctor, NatTrans, compose_functors, identity_functor, naturality_violation, opposite_functor,
)
from .search import iter_functor_maps


@dataclass(frozen=True, eq=False)
class Adjunction:
    """``left -| right`` with ``unit : 1 => right.left`` and ``counit : left.right => 1``."""

    left: FinFunctor
    right: FinFunctor
    unit: NatTrans
    counit: NatTrans


def _final_in_slice(u: FinFunctor, b: int, a: int, p: int) -> bool:
    """Whether ``(a, p)`` is final in ``A/b``: ``f -> p . u(f)`` is a bijection
    ``Hom(x, a) -> Hom(u(x), b)`` for every ``x``."""
    A, B = u.source, u.target
    cmp = B.cm[p]
    for x in range(A.n_objects):
        hx = A.homs.get((x, a), ())
        if len(hx) != len(B.homs.get((u.omap[x], b), ())):
            return False
        seen = set()
        for f in hx:
            seen.add(cmp[u.mmap[f]])
        if len(seen) != len(hx):
            return False
    return True


def slice_final_objects(u: FinFunctor, b: int) -> list[tuple[int, int]]:
    """Final objects ``(a, p)`` of ``A/b`` found without building the slice."""
    A, B = u.source, u.target
    return [(a, p) for a in range(A.n_objects) for p in B.homs.get((u.omap[a], b), ())
            if _final_in_slice(u, b, a, p)]


def has_right_adjoint(u: FinFunctor) -> bool:
    """True iff every slice ``A/b`` has a final object."""
    A, B = u.source, u.target
    for b in range(B.n_objects):
        if not any(_final_in_slice(u, b, a, p)
                   for a in range(A.n_objects) for p in B.homs.get((u.omap[a], b), ())):
            return False
    return True


def has_left_adjoint(u: FinFunctor) -> bool:
    return has_right_adjoint(opposite_functor(u))


def _unique_factor(u: FinFunctor, x: int, a: int, p: int, q: int) -> int:
    """The unique ``f : x -> a`` with ``p . u(f) = q``."""
    A, B = u.source, u.target
    found = [f for f in A.homs.get((x, a), ()) if B.cm[p][u.mmap[f]] == q]
    assert len(found) == 1
    return found[0]


def construct_right_adjoint(u: FinFunctor) -> Adjunction | None:
    """The right adjoint built from chosen final objects of the slices.

    Among several final objects of ``A/b`` the one with the least identifier
    ``a|p`` wins.  Returns None when some slice has no final object.
    """
    A, B = u.source, u.target
    choice = []
    for b in range(B.n_objects):
        finals = slice_final_objects(u, b)
        if not finals:
            return None
        choice.append(min(finals, key=lambda ap: f"{A.objects[ap[0]]}|{B.mor_ids[ap[1]]}"))
    omap = [a for a, _ in choice]
    mmap = []
    for q in range(B.n_morphisms):
        b, b2 = B.src[q], B.tgt[q]
        (a, p), (a2, p2) = choice[b], choice[b2]
        mmap.append(_unique_factor(u, a, a2, p2, B.cm[q][p]))
    v = FinFunctor(B, A, omap, mmap)
    counit = NatTrans(u @ v, identity_functor(B), [p for _, p in choice], check=False)
    unit_c = []
    for a in range(A.n_objects):
        b = u.omap[a]
        a2, p2 = choice[b]
        unit_c.append(_unique_factor(u, a, a2, p2, B.ident[b]))
    unit = NatTrans(identity_functor(A), v @ u, unit_c, check=False)
    return Adjunction(u, v, unit, counit)


def verify_adjunction(adj: Adjunction) -> tuple[bool, str | None]:
    """Check both transformations are natural and both triangle identities hold."""
    u, v = adj.left, adj.right
    A, B = u.source, u.target
    if v.source != B or v.target != A:
        return False, "functors are not opposed"
    if adj.unit.source != identity_functor(A) or adj.unit.target != compose_functors(v, u):
        return False, "unit has the wrong source or target"
    if adj.counit.source != compose_functors(u, v) or adj.counit.target != identity_functor(B):
        return False, "counit has the wrong source or target"
    for name, t in (("unit", adj.unit), ("counit", adj.counit)):
        problem = naturality_violation(t)
        if problem:
            return False, f"{name}: {problem}"
    eta, eps = adj.unit.components, adj.counit.components
    for a in range(A.n_objects):
        # counit at u(a) after u(unit at a) is the identity of u(a)
        if B.cm[eps[u.omap[a]]][u.mmap[eta[a]]] != B.ident[u.omap[a]]:
            return False, f"first triangle identity fails at {A.objects[a]!r}"
    for b in range(B.n_objects):
        if A.cm[v.mmap[eps[b]]][eta[v.omap[b]]] != A.ident[v.omap[b]]:
            return False, f"second triangle identity fails at {B.objects[b]!r}"
    return True, None


def is_fully_faithful(u: FinFunctor) -> bool:
    A, B = u.source, u.target
    for x in range(A.n_objects):
        for y in range(A.n_objects):
            h = A.homs.get((x, y), ())
            image = {u.mmap[f] for f in h}
            if len(image) != len(h) or len(h) != len(B.homs.get((u.omap[x], u.omap[y]), ())):
                return False
    return True


def _isomorphic_objects(B, x: int, y: int) -> bool:
    for f in B.homs.get((x, y), ()):
        for g in B.homs.get((y, x), ()):
            if B.cm[g][f] == B.ident[x] and B.cm[f][g] == B.ident[y]:
                return True
    return False


def is_equivalence(u: FinFunctor) -> bool:
    """Fully faithful and essentially surjective."""
    B = u.target
    if not is_fully_faithful(u):
        return False
    image = set(u.omap)
    return all(any(_isomorphic_objects(B, y, b) for y in image) for b in range(B.n_objects))


# ---------------------------------------------------------------------------
# brute force

def iter_natural_transformations(F: FinFunctor, G: FinFunctor) -> Iterator[tuple[int, ...]]:
    """Component tuples of every natural transformation ``F => G``."""
    A, B = F.source, F.target
    n = A.n_objects
    comps = [0] * n
    arrows = [[] for _ in range(n)]
    for k in range(A.n_morphisms):
        x, y = A.src[k], A.tgt[k]
        arrows[max(x, y)].append(k)

    def rec(x):
        if x == n:
            yield tuple(comps)
            return
        for m in B.homs.get((F.omap[x], G.omap[x]), ()):
            comps[x] = m
            if all(B.cm[comps[A.tgt[k]]][F.mmap[k]] == B.cm[G.mmap[k]][comps[A.src[k]]]
                   for k in arrows[x]):
                yield from rec(x + 1)

    yield from rec(0)


def brute_force_right_adjoint(u: FinFunctor) -> Adjunction | None:
    """Search all functors ``v : B -> A`` and all unit/counit pairs for an adjunction."""
    A, B = u.source, u.target
    idA, idB = identity_functor(A), identity_functor(B)
    for omap, mmap in iter_functor_maps(B, A):
        v = FinFunctor(B, A, omap, mmap)
        vu, uv = v @ u, u @ v
        counits = list(iter_natural_transformations(uv, idB))
        if not counits:
            continue
        for eta in iter_natural_transformations(idA, vu):
            for eps in counits:
                adj = Adjunction(u, v, NatTrans(idA, vu, eta, check=False), NatTrans(uv, idB, eps, check=False))
                if verify_adjunction(adj)[0]:
                    return adj
    return None
