"""Backtracking search for functors and isomorphisms between finite categories."""
from __future__ import annotations

from typing import Iterator

from .core import BudgetExceeded, FinCat, FinFunctor


def _object_signature(C: FinCat, x: int) -> tuple[int, int, int]:
    endo = len(C.homs.get((x, x), ()))
    return (len(C.out[x]) - endo, len(C.inc[x]) - endo, endo)


def _constraints(A: FinCat, order: list[int]) -> list[list[tuple[int, int, int]]]:
    """Composition constraints bucketed by the step at which they become checkable."""
    pos = {m: i for i, m in enumerate(order)}
    steps: list[list[tuple[int, int, int]]] = [[] for _ in order]
    for g, f in A.composable_pairs():
        if A.is_id[g] or A.is_id[f]:
            continue
        h = A.cm[g][f]
        last = max(pos[g], pos[f], pos.get(h, -1))
        steps[last].append((g, f, h))
    return steps


def iter_functor_maps(A: FinCat, B: FinCat, iso: bool = False) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Yield ``(object_map, morphism_map)`` index tuples of every functor ``A -> B``.

    Order is lexicographic in the object images, then the morphism images.
    With ``iso=True`` only isomorphisms are produced.
    """
    nA, nB = A.n_objects, B.n_objects
    if iso and (nA != nB or A.n_morphisms != B.n_morphisms):
        return
    if nA == 0:
        yield (), ()
        return
    if nB == 0:
        return
    order = [m for m in range(A.n_morphisms) if not A.is_id[m]]
    steps = _constraints(A, order)
    Bhoms, Bcm, Bident = B.homs, B.cm, B.ident
    Ahoms = A.homs
    if iso:
        candidates = [[y for y in range(nB) if _object_signature(B, y) == _object_signature(A, x)]
                      for x in range(nA)]
    else:
        candidates = [list(range(nB))] * nA
    omap = [0] * nA
    used = [False] * nB
    mmap = [-1] * A.n_morphisms
    mused: dict[int, bool] = {}
    n_order = len(order)
    srcs = [A.src[m] for m in order]
    tgts = [A.tgt[m] for m in order]

    def assign_morphisms(k):
        if k == n_order:
            yield tuple(omap), tuple(mmap)
            return
        m = order[k]
        dom = Bhoms.get((omap[srcs[k]], omap[tgts[k]]), ())
        checks = steps[k]
        for img in dom:
            if iso and mused.get(img):
                continue
            mmap[m] = img
            ok = True
            for g, f, h in checks:
                if mmap[h] != Bcm[mmap[g]][mmap[f]]:
                    ok = False
                    break
            if not ok:
                continue
            if iso:
                mused[img] = True
            yield from assign_morphisms(k + 1)
            if iso:
                mused[img] = False
        mmap[m] = -1

    def assign_objects(x):
        if x == nA:
            for z in range(nA):
                mmap[A.ident[z]] = Bident[omap[z]]
                if iso:
                    mused[Bident[omap[z]]] = True
            yield from assign_morphisms(0)
            if iso:
                mused.clear()
            return
        for y in candidates[x]:
            if iso and used[y]:
                continue
            omap[x] = y
            ok = True
            for z in range(x + 1):
                for a, b in ((z, x), (x, z)):
                    na = len(Ahoms.get((a, b), ()))
                    nb = len(Bhoms.get((omap[a], omap[b]), ()))
                    if (iso and na != nb) or (na and not nb):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            used[y] = True
            yield from assign_objects(x + 1)
            used[y] = False

    yield from assign_objects(0)


def enumerate_functors(A: FinCat, B: FinCat, cap: int | None = None) -> list[FinFunctor]:
    """All functors ``A -> B`` in a deterministic order.

    Raises :class:`BudgetExceeded` as soon as more than ``cap`` are found.
    """
    out = []
    for omap, mmap in iter_functor_maps(A, B):
        if cap is not None and len(out) >= cap:
            raise BudgetExceeded(f"more than {cap} functors")
        out.append(FinFunctor(A, B, omap, mmap))
    return out


def count_functors(A: FinCat, B: FinCat, cap: int | None = None) -> int:
    n = 0
    for _ in iter_functor_maps(A, B):
        n += 1
        if cap is not None and n > cap:
            raise BudgetExceeded(f"more than {cap} functors")
    return n


def find_isomorphism(C: FinCat, D: FinCat) -> FinFunctor | None:
    if C.n_objects != D.n_objects or C.n_morphisms != D.n_morphisms:
        return None
    if sorted(_object_signature(C, x) for x in range(C.n_objects)) != \
            sorted(_object_signature(D, x) for x in range(D.n_objects)):
        return None
    for omap, mmap in iter_functor_maps(C, D, iso=True):
        return FinFunctor(C, D, omap, mmap)
    return None


def are_isomorphic(C: FinCat, D: FinCat) -> tuple[bool, FinFunctor | None]:
    """``(True, witness)`` when an invertible functor ``C -> D`` exists."""
    F = find_isomorphism(C, D)
    return F is not None, F


def inverse_functor(F: FinFunctor) -> FinFunctor:
    omap = [0] * F.target.n_objects
    mmap = [0] * F.target.n_morphisms
    for x, y in enumerate(F.omap):
        omap[y] = x
    for f, g in enumerate(F.mmap):
        mmap[g] = f
    return FinFunctor(F.target, F.source, omap, mmap)
