"""(Co)cartesian arrows, (pre)(co)fibrations, weakly smooth and smooth functors."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .adjunctions import has_left_adjoint, has_right_adjoint
from .asphericity import MINIMAL, AsphericityStructure, RouteDisagreement, is_aspheric_functor
from .constructions import (
    Coslice, Fiber, LiftCategory, Slice, _mor, _obj, add_final, local_slice_functor, pullback, square_slice_functor,
)
from .core import BudgetExceeded, FinCat, FinFunctor, chain_functor_i, opposite_functor, simplex
from .core import simplex_inclusion as _simplex_inclusion
from .search import iter_functor_maps


@lru_cache(maxsize=None)
def _simplex(n: int) -> FinCat:
    return simplex(n)


@lru_cache(maxsize=None)
def _inclusion(n: int, m: int) -> FinFunctor:
    return _simplex_inclusion(n, m)


# ---------------------------------------------------------------------------
# arrows

def _cocartesian(u: FinFunctor, c: int) -> bool:
    A, B = u.source, u.target
    a, a1 = A.src[c], A.tgt[c]
    uc = u.mmap[c]
    vert = B.ident[u.omap[a1]]
    for f in A.out[a]:
        if u.mmap[f] != uc:
            continue
        n = 0
        for g in A.homs.get((a1, A.tgt[f]), ()):
            if u.mmap[g] == vert and A.cm[g][c] == f:
                n += 1
        if n != 1:
            return False
    return True


def _hypercocartesian(u: FinFunctor, c: int) -> bool:
    A, B = u.source, u.target
    a, a1 = A.src[c], A.tgt[c]
    uc = u.mmap[c]
    b1 = u.omap[a1]
    for f in A.out[a]:
        a2 = A.tgt[f]
        uf = u.mmap[f]
        for h in B.homs.get((b1, u.omap[a2]), ()):
            if B.cm[h][uc] != uf:
                continue
            n = 0
            for g in A.homs.get((a1, a2), ()):
                if u.mmap[g] == h and A.cm[g][c] == f:
                    n += 1
            if n != 1:
                return False
    return True


def is_cocartesian(u: FinFunctor, c) -> bool:
    """Every ``f`` with ``u(f) = u(c)`` factors as ``g c`` with ``g`` vertical, uniquely."""
    return _cocartesian(u, _mor(u.source, c))


def is_hypercocartesian(u: FinFunctor, c) -> bool:
    """Every ``f`` and ``h`` with ``u(f) = h u(c)`` give a unique ``g`` over ``h`` with ``f = g c``."""
    return _hypercocartesian(u, _mor(u.source, c))


def is_cartesian(u: FinFunctor, c) -> bool:
    return is_cocartesian(opposite_functor(u), c)


def is_hypercartesian(u: FinFunctor, c) -> bool:
    return is_hypercocartesian(opposite_functor(u), c)


# ---------------------------------------------------------------------------
# functors

def _lifts_exist(u: FinFunctor, flags, arrows: Iterable[int] | None = None) -> bool:
    A, B = u.source, u.target
    over: dict[int, list[int]] = {}
    for a in range(A.n_objects):
        over.setdefault(u.omap[a], []).append(a)
    for p in (range(B.n_morphisms) if arrows is None else arrows):
        for a in over.get(B.src[p], ()):
            if not any(u.mmap[c] == p and flags[c] for c in A.out[a]):
                return False
    return True


def cocartesian_flags(u: FinFunctor) -> list[bool]:
    return [_cocartesian(u, c) for c in range(u.source.n_morphisms)]


def is_precofibration(u: FinFunctor) -> bool:
    """Every arrow ``p`` of ``B`` has a cocartesian lift at every object over its source."""
    return _lifts_exist(u, cocartesian_flags(u))


def _agree(name: str, u: FinFunctor, values: dict) -> bool:
    first = next(iter(values.values()))
    if any(v != first for v in values.values()):
        raise RouteDisagreement(f"{name}: {values} for {u!r}")
    return first


def is_cofibration(u: FinFunctor, check: bool = True) -> bool:
    """Precofibration whose cocartesian arrows are closed under composition.

    With ``check`` the hypercocartesian-lift form is evaluated too and must agree.
    """
    direct = _is_cofibration_by_closure(u)
    if not check:
        return direct
    return _agree("cofibration", u, {"closure": direct, "hyperlifts": is_cofibration_by_hyperlifts(u)})


def _is_cofibration_by_closure(u: FinFunctor) -> bool:
    flags = cocartesian_flags(u)
    if not _lifts_exist(u, flags):
        return False
    A = u.source
    for g, f in A.composable_pairs():
        if flags[g] and flags[f] and not flags[A.cm[g][f]]:
            return False
    return True


def is_cofibration_by_hyperlifts(u: FinFunctor) -> bool:
    """Equivalent form: hypercocartesian lifts exist for every arrow and object."""
    return _lifts_exist(u, [_hypercocartesian(u, c) for c in range(u.source.n_morphisms)])


def is_prefibration(u: FinFunctor) -> bool:
    return is_precofibration(opposite_functor(u))


def is_fibration(u: FinFunctor, check: bool = True) -> bool:
    return is_cofibration(opposite_functor(u), check)


def is_fibration_by_hyperlifts(u: FinFunctor) -> bool:
    return is_cofibration_by_hyperlifts(opposite_functor(u))


def fiber_to_slice(u: FinFunctor, b) -> FinFunctor:
    """``A_b -> A/b``, ``a -> (a, 1_b)``."""
    bi = _obj(u.target, b)
    Fb, S = Fiber(u, bi), Slice(u, bi)
    idb = u.target.ident[bi]
    omap = [S.lookup[(a, idb)] for a in Fb.objects]
    mmap = [S.mor_lookup[(f, omap[Fb.category.tgt[m]])] for m, f in enumerate(Fb.arrows)]
    return FinFunctor(Fb.category, S.category, omap, mmap)


def fiber_to_coslice(u: FinFunctor, b) -> FinFunctor:
    """``j_b : A_b -> b\\A``, ``a -> (a, 1_b)``."""
    bi = _obj(u.target, b)
    Fb, S = Fiber(u, bi), Coslice(u, bi)
    idb = u.target.ident[bi]
    omap = [S.lookup[(a, idb)] for a in Fb.objects]
    mmap = [S.mor_lookup[(f, omap[Fb.category.src[m]])] for m, f in enumerate(Fb.arrows)]
    return FinFunctor(Fb.category, S.category, omap, mmap)


def fiber_adjoint_equivalence(u: FinFunctor, b) -> tuple[bool, bool]:
    """``(precofibration at b, A_b -> A/b has a left adjoint)``.

    Precofibration at ``b`` means: every arrow into ``b`` has a cocartesian
    lift at every object over its source.
    """
    bi = _obj(u.target, b)
    B = u.target
    local = _lifts_exist(u, cocartesian_flags(u), [p for p in range(B.n_morphisms) if B.tgt[p] == bi])
    return local, has_left_adjoint(fiber_to_slice(u, bi))


# ---------------------------------------------------------------------------
# weak smoothness

def weakly_smooth_a(S: AsphericityStructure, u: FinFunctor) -> bool:
    """Every ``j_b : A_b -> b\\A`` is aspheric."""
    return all(is_aspheric_functor(S, fiber_to_coslice(u, b)) for b in range(u.target.n_objects))


def weakly_smooth_b(S: AsphericityStructure, u: FinFunctor) -> bool:
    """The fibers of every induced ``A/a -> B/u(a)`` are aspheric."""
    for a in range(u.source.n_objects):
        ind = local_slice_functor(u, a)
        for x in range(ind.target.n_objects):
            if not S.member(Fiber(ind, x).category):
                return False
    return True


def weakly_smooth_c(S: AsphericityStructure, u: FinFunctor) -> bool:
    """Pulling back along every arrow ``g`` and then along ``{0} -> {0 -> 1}`` gives an aspheric functor."""
    B = u.target
    D1 = _simplex(1)
    incl = _inclusion(0, 1)
    for g in range(B.n_morphisms):
        first = pullback(u, chain_functor_i(B, [g], D1))
        second = pullback(first.u_prime, incl)
        if not is_aspheric_functor(S, second.v):
            return False
    return True


def weakly_smooth_d(S: AsphericityStructure, u: FinFunctor) -> bool:
    """Every lift category ``A(a1, g)`` is aspheric."""
    A, B = u.source, u.target
    for g in range(B.n_morphisms):
        for a1 in range(A.n_objects):
            if u.omap[a1] == B.tgt[g] and not S.member(LiftCategory(u, g, a1).category):
                return False
    return True


def is_weakly_smooth(S: AsphericityStructure, u: FinFunctor, check: bool = True) -> bool:
    """Every ``j_b : A_b -> b\\A`` is aspheric; with ``check`` the three other
    characterizations are evaluated and must agree."""
    if not check:
        return weakly_smooth_a(S, u)
    return _agree("weakly smooth", u, weakly_smooth_conditions(S, u))


def weakly_smooth_conditions(S: AsphericityStructure, u: FinFunctor) -> dict[str, bool]:
    return {"a": weakly_smooth_a(S, u), "b": weakly_smooth_b(S, u),
            "c": weakly_smooth_c(S, u), "d": weakly_smooth_d(S, u)}


# ---------------------------------------------------------------------------
# smoothness

def smooth_minimal_failure(u: FinFunctor) -> tuple[int, int] | None:
    """A composable pair ``(g0, g1)`` of ``B`` whose pulled-back ``{0->1} -> {0->1->2}``
    has no right adjoint, or None."""
    B = u.target
    D2 = _simplex(2)
    incl = _inclusion(1, 2)
    for g0 in range(B.n_morphisms):
        for g1 in B.out[B.tgt[g0]]:
            first = pullback(u, chain_functor_i(B, [g0, g1], D2))
            second = pullback(first.u_prime, incl)
            if not has_right_adjoint(second.v):
                return g0, g1
    return None


def is_smooth_minimal(u: FinFunctor, check: bool = True) -> bool:
    """Smoothness for the minimal structure, decided by the two-arrow criterion.

    With ``check`` the answer must match ``is_fibration``.
    """
    direct = smooth_minimal_failure(u) is None
    if not check:
        return direct
    return _agree("minimal smoothness", u, {"two-arrow": direct, "fibration": is_fibration(u, check=False)})


@dataclass(frozen=True, eq=False)
class SmoothWitness:
    """A base change ``B'' -> B' -> B`` whose pulled-back ``A'' -> A'`` is not aspheric.

    ``w`` is ``B'' -> B'`` and ``base`` is ``B' -> B``; ``top`` is the offending functor.
    """

    w: FinFunctor
    base: FinFunctor
    top: FinFunctor


@dataclass(frozen=True, eq=False)
class SmoothVerdict:
    status: str                     # "Proved", "Refuted" or "Evidence"
    witness: SmoothWitness | tuple | None = None
    checked_bound: tuple[int, int] | None = None
    instances: int = 0


def pulled_back_top(u: FinFunctor, w: FinFunctor, base: FinFunctor) -> FinFunctor:
    """``A'' -> A'`` in the diagram of cartesian squares over ``B'' -> B' -> B``."""
    first = pullback(u, base)
    return pullback(first.u_prime, w).v


def smooth_counterexample(S: AsphericityStructure, u: FinFunctor, bounds: tuple[int, int] = (2, 4),
                          functor_cap: int = 10 ** 5) -> tuple[SmoothWitness | None, int]:
    """Search base changes ``B'' -> B''* -> B`` for a non-aspheric pulled-back functor.

    ``B''`` runs over corpus categories with a final object by increasing
    morphism count, so ``B'' = e`` (the weak smoothness instances) comes first
    and ``B'' = {0 -> 1}`` covers the two-arrow criterion.  Returns the first
    witness (or None) and the number of instances tried.
    """
    from .generate import final_object_shapes
    B = u.target
    n = 0
    for B2 in final_object_shapes(bounds):
        star, w = add_final(B2)
        count = 0
        for omap, mmap in iter_functor_maps(star, B):
            count += 1
            if count > functor_cap:
                raise BudgetExceeded(f"more than {functor_cap} functors")
            base = FinFunctor(star, B, omap, mmap)
            n += 1
            top = pulled_back_top(u, w, base)
            if not is_aspheric_functor(S, top):
                return SmoothWitness(w, base, top), n
    return None, n


def is_smooth(S: AsphericityStructure, u: FinFunctor, bounds: tuple[int, int] = (2, 4),
              functor_cap: int = 10 ** 5) -> SmoothVerdict:
    """Decide (minimal structure) or semi-decide smoothness.

    A fibration is Proved smooth for every structure; otherwise the
    final-object completions within ``bounds`` are searched for a witness.
    """
    if S.name == MINIMAL.name:
        fail = smooth_minimal_failure(u)
        return SmoothVerdict("Proved") if fail is None else SmoothVerdict("Refuted", fail)
    if is_fibration(u, check=False):
        return SmoothVerdict("Proved")
    witness, n = smooth_counterexample(S, u, bounds, functor_cap)
    if witness is not None:
        return SmoothVerdict("Refuted", witness, bounds, n)
    return SmoothVerdict("Evidence", None, bounds, n)


def is_local_isomorphism(u: FinFunctor) -> bool:
    """Every induced ``A/a -> B/u(a)`` is an isomorphism."""
    for a in range(u.source.n_objects):
        if not _bijective(local_slice_functor(u, a)):
            return False
    return True


def _bijective(F: FinFunctor) -> bool:
    return (len(set(F.omap)) == len(F.omap) == F.target.n_objects
            and len(set(F.mmap)) == len(F.mmap) == F.target.n_morphisms)


def carlisse_conditions(S: AsphericityStructure, u: FinFunctor, w: FinFunctor, base: FinFunctor) -> dict[str, bool]:
    """Conditions of the smoothness theorem at one base change ``B'' -w-> B' -base-> B``.

    ``b``: ``w`` has a right adjoint implies ``A'' -> A'`` aspheric;
    ``c``: the same when ``w`` is a final-object completion (checked by the caller's shape);
    ``d``: every induced ``A''/a' -> B''/u'(a')`` is aspheric.
    """
    first = pullback(u, base)
    second = pullback(first.u_prime, w)
    top = second.v
    asph = is_aspheric_functor(S, top)
    out = {"b": (not has_right_adjoint(w)) or asph}
    out["c"] = asph if _is_final_completion(w) else True
    d = True
    for x in range(first.apex.n_objects):
        if not is_aspheric_functor(S, square_slice_functor(top, second.u_prime, first.u_prime, w, x)):
            d = False
            break
    out["d"] = d
    return out


def _is_final_completion(w: FinFunctor) -> bool:
    """``w`` is the inclusion of a category with a final object into its completion by ``⋆``."""
    T = w.target
    return (T.n_objects >= 1 and T.objects[-1] == "⋆" and w.source.has_final_object()
            and w.source.n_objects == T.n_objects - 1 and T.final_objects() == [T.n_objects - 1]
            and list(w.omap) == list(range(T.n_objects - 1)))
