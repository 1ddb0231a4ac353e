"""Slices, coslices, fibers, pullbacks, the Grothendieck construction and friends.

Every construction mints identifiers from a fixed grammar so that its output
is reproducible byte for byte:

* slice and coslice objects ``a|p``; slice morphisms ``f|p'`` (``p'`` the
  structure arrow of the target), coslice morphisms ``f|p`` (``p`` that of the
  source), so that a coslice of an opposite functor is the opposite of the
  slice;
* pullback objects and morphisms ``(x,y)``;
* Grothendieck objects ``i#a`` and morphisms ``k#a#f``;
* the freely added final object ``⋆`` with arrows ``x->⋆``;
* comma objects ``(b',a,g)`` and morphisms ``(g',f,g0,g1)``;
* lift-category objects are the lifting arrows themselves, morphisms ``h|f'``.

Identities are always ``id_<object>``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .core import (
    CatDiagram, FinCat, FinFunctor, NatTrans, SourceTargetMismatch, UnknownMorphism, UnknownObject,
    CatlabError, assemble, identity_functor, identity_name, pair_name,
)
from .search import find_isomorphism

FINAL = "⋆"


class TargetMismatch(SourceTargetMismatch):
    pass


class FiberMismatch(CatlabError):
    pass


class IllTyped(CatlabError):
    pass


def _obj(C: FinCat, c) -> int:
    if isinstance(c, int):
        if not 0 <= c < C.n_objects:
            raise UnknownObject(c)
        return c
    return C.obj_index(c)


def _mor(C: FinCat, f) -> int:
    if isinstance(f, int):
        if not 0 <= f < C.n_morphisms:
            raise UnknownMorphism(f)
        return f
    return C.mor_index(f)


def _build(names: Sequence[str], keys: list, nonid: list[tuple[object, int, int, str]], ident_key, comp_key):
    """Assemble a category whose morphisms are labelled by hashable keys.

    ``ident_key(x)`` is the key of the identity of object ``x``;
    ``comp_key(gk, fk)`` composes keys.  Returns the category and the list of
    morphism keys in index order.
    """
    n = len(names)
    mkeys = [ident_key(x) for x in range(n)] + [k for k, _, _, _ in nonid]
    index = {k: i for i, k in enumerate(mkeys)}
    src = list(range(n)) + [s for _, s, _, _ in nonid]
    tgt = list(range(n)) + [t for _, _, t, _ in nonid]
    M = len(mkeys)
    out: list[list[int]] = [[] for _ in range(n)]
    for m in range(n, M):
        out[src[m]].append(m)
    # same table as assemble() builds, without a callback per composable pair
    cm = [[-1] * M for _ in range(M)]
    for f in range(M):
        t = tgt[f]
        cm[t][f] = f
        if f < n:
            for g in out[t]:
                cm[g][f] = g
        else:
            kf = mkeys[f]
            for g in out[t]:
                cm[g][f] = index[comp_key(mkeys[g], kf)]
    C = FinCat(names, [identity_name(x) for x in names] + [name for _, _, _, name in nonid], src, tgt, range(n), cm)
    return C, mkeys


# ---------------------------------------------------------------------------
# slices and coslices

class Slice:
    """``A/c`` for a functor ``u : A -> C``.

    ``pairs[x]`` is ``(a, p)`` for object ``x``; ``arrows[m]`` is the
    underlying arrow of ``A``.  ``lookup`` and ``mor_lookup`` invert them
    (the latter keyed by ``(f, target object)``).
    """

    def __init__(self, u: FinFunctor, c):
        A, C = u.source, u.target
        ci = _obj(C, c)
        self.functor, self.c = u, ci
        pairs = [(a, p) for a in range(A.n_objects) for p in C.hom_i(u.omap[a], ci)]
        lookup = {pr: i for i, pr in enumerate(pairs)}
        names = [f"{A.objects[a]}|{C.mor_ids[p]}" for a, p in pairs]
        nonid = []
        for f in range(A.n_objects, A.n_morphisms):
            s, t = A.src[f], A.tgt[f]
            uf = u.mmap[f]
            for p2 in C.hom_i(u.omap[t], ci):
                x, y = lookup[(s, C.cm[p2][uf])], lookup[(t, p2)]
                nonid.append(((f, y), x, y, f"{A.mor_ids[f]}|{C.mor_ids[p2]}"))
        # key of a morphism: (arrow of A, target object)
        cat, mkeys = _build(names, pairs, nonid,
                            lambda x: (A.ident[pairs[x][0]], x),
                            lambda gk, fk: (A.cm[gk[0]][fk[0]], gk[1]))
        self.category = cat
        self.pairs = tuple(pairs)
        self.lookup = lookup
        self.arrows = tuple(k[0] for k in mkeys)
        self.mor_lookup = {k: i for i, k in enumerate(mkeys)}
        self.projection = FinFunctor(cat, A, [a for a, _ in pairs], self.arrows)

    @cached_property
    def structural(self) -> FinFunctor:
        """``A/c -> C/c``, ``(a, p) -> (u(a), p)``."""
        u = self.functor
        base = Slice(identity_functor(u.target), self.c)
        return self.induced(u, base)

    def induced(self, u: FinFunctor, other: "Slice") -> FinFunctor:
        """The functor to ``other`` (a slice of ``v`` over the same object)
        with ``(a, p) -> (u(a), p)``; requires ``v . u`` to be this slice's functor."""
        S = self.category
        omap = [other.lookup[(u.omap[a], p)] for a, p in self.pairs]
        mmap = [other.mor_lookup[(u.mmap[f], omap[S.tgt[m]])] for m, f in enumerate(self.arrows)]
        return FinFunctor(S, other.category, omap, mmap)

    def __iter__(self):
        yield self.category
        yield self.projection
        yield self.structural


def slice(u: FinFunctor, c) -> Slice:
    """``A/c``: objects ``(a, p : u(a) -> c)``, morphisms ``f`` with ``p = p' . u(f)``.

    Unpacks as ``(category, projection, structural)``.
    """
    return Slice(u, c)


def slice_category(u: FinFunctor, c) -> FinCat:
    return Slice(u, c).category


class Coslice:
    """``c\\A`` for ``u : A -> C``; ``mor_lookup`` is keyed by ``(f, source object)``."""

    def __init__(self, u: FinFunctor, c):
        A, C = u.source, u.target
        ci = _obj(C, c)
        self.functor, self.c = u, ci
        pairs = [(a, p) for a in range(A.n_objects) for p in C.hom_i(ci, u.omap[a])]
        lookup = {pr: i for i, pr in enumerate(pairs)}
        names = [f"{A.objects[a]}|{C.mor_ids[p]}" for a, p in pairs]
        nonid = []
        for f in range(A.n_objects, A.n_morphisms):
            s, t = A.src[f], A.tgt[f]
            uf = u.mmap[f]
            for p in C.hom_i(ci, u.omap[s]):
                x, y = lookup[(s, p)], lookup[(t, C.cm[uf][p])]
                nonid.append(((f, x), x, y, f"{A.mor_ids[f]}|{C.mor_ids[p]}"))
        cat, mkeys = _build(names, pairs, nonid,
                            lambda x: (A.ident[pairs[x][0]], x),
                            lambda gk, fk: (A.cm[gk[0]][fk[0]], fk[1]))
        self.category = cat
        self.pairs = tuple(pairs)
        self.lookup = lookup
        self.arrows = tuple(k[0] for k in mkeys)
        self.mor_lookup = {k: i for i, k in enumerate(mkeys)}
        self.projection = FinFunctor(cat, A, [a for a, _ in pairs], self.arrows)

    def __iter__(self):
        yield self.category
        yield self.projection


def coslice(u: FinFunctor, c) -> Coslice:
    """``c\\A``: objects ``(a, p : c -> u(a))``; unpacks as ``(category, projection)``."""
    return Coslice(u, c)


def induced_slice_functor(u: FinFunctor, c, v: FinFunctor | None = None) -> FinFunctor:
    """``u/c : A/c -> B/c`` for a triangle ``u : A -> B`` over ``v : B -> C``.

    Without ``v`` the triangle is ``u`` over ``1_B``.
    """
    if v is None:
        v = identity_functor(u.target)
    if u.target != v.source:
        raise SourceTargetMismatch("u does not land in the source of v")
    return Slice(v @ u, c).induced(u, Slice(v, c))


def local_slice_functor(u: FinFunctor, a) -> FinFunctor:
    """``A/a -> B/u(a)``, ``(x, p) -> (u(x), u(p))``."""
    A, B = u.source, u.target
    ai = _obj(A, a)
    src = Slice(identity_functor(A), ai)
    dst = Slice(identity_functor(B), u.omap[ai])
    S = src.category
    omap = [dst.lookup[(u.omap[x], u.mmap[p])] for x, p in src.pairs]
    mmap = [dst.mor_lookup[(u.mmap[f], omap[S.tgt[m]])] for m, f in enumerate(src.arrows)]
    return FinFunctor(S, dst.category, omap, mmap)


def square_slice_functor(top: FinFunctor, side: FinFunctor, down: FinFunctor, w: FinFunctor, x) -> FinFunctor:
    """For a commuting square ``down . top = w . side``: ``A''/x -> B''/down(x)``,
    ``(a'', p) -> (side(a''), down(p))``, slices taken along ``top`` and ``w``."""
    xi = _obj(top.target, x)
    src = Slice(top, xi)
    dst = Slice(w, down.omap[xi])
    C = src.category
    omap = [dst.lookup[(side.omap[a], down.mmap[p])] for a, p in src.pairs]
    mmap = [dst.mor_lookup[(side.mmap[f], omap[C.tgt[m]])] for m, f in enumerate(src.arrows)]
    return FinFunctor(C, dst.category, omap, mmap)


# ---------------------------------------------------------------------------
# fibers and pullbacks

class Fiber:
    """``A_b``: objects over ``b``, morphisms over ``1_b`` (names kept)."""

    def __init__(self, u: FinFunctor, b):
        A, B = u.source, u.target
        bi = _obj(B, b)
        objs = [a for a in range(A.n_objects) if u.omap[a] == bi]
        pos = {a: i for i, a in enumerate(objs)}
        idb = B.ident[bi]
        mors = [f for f in range(A.n_objects, A.n_morphisms) if u.mmap[f] == idb]
        arrows = [A.ident[a] for a in objs] + mors
        mpos = {f: i for i, f in enumerate(arrows)}
        self.category = assemble([A.objects[a] for a in objs], [A.mor_ids[A.ident[a]] for a in objs],
                                 [(A.mor_ids[f], pos[A.src[f]], pos[A.tgt[f]]) for f in mors],
                                 lambda g, f: mpos[A.cm[arrows[g]][arrows[f]]])
        self.objects = tuple(objs)
        self.arrows = tuple(arrows)
        self.inclusion = FinFunctor(self.category, A, objs, arrows)

    def __iter__(self):
        yield self.category
        yield self.inclusion


def fiber(u: FinFunctor, b) -> Fiber:
    """Unpacks as ``(category, inclusion)``."""
    return Fiber(u, b)


@dataclass(frozen=True, eq=False)
class CartesianSquare:
    """``apex = B' x_B A`` with projections ``u_prime`` to ``B'`` and ``v`` to ``A``."""

    u: FinFunctor
    w: FinFunctor
    apex: FinCat
    u_prime: FinFunctor
    v: FinFunctor

    def commutes(self) -> bool:
        return (self.u @ self.v) == (self.w @ self.u_prime)


def pullback(u: FinFunctor, w: FinFunctor) -> CartesianSquare:
    """Strict pullback of ``u : A -> B`` along ``w : B' -> B``."""
    if u.target != w.target:
        raise TargetMismatch("u and w have different targets")
    A, B2 = u.source, w.source
    by_obj: dict[int, list[int]] = {}
    for a in range(A.n_objects):
        by_obj.setdefault(u.omap[a], []).append(a)
    pairs = [(b, a) for b in range(B2.n_objects) for a in by_obj.get(w.omap[b], ())]
    lookup = {pr: i for i, pr in enumerate(pairs)}
    names = [pair_name(B2.objects[b], A.objects[a]) for b, a in pairs]
    by_mor: dict[int, list[int]] = {}
    for f in range(A.n_morphisms):
        by_mor.setdefault(u.mmap[f], []).append(f)
    nonid = []
    for g in range(B2.n_morphisms):
        for f in by_mor.get(w.mmap[g], ()):
            if B2.is_id[g] and A.is_id[f]:
                continue
            nonid.append(((g, f), lookup[(B2.src[g], A.src[f])], lookup[(B2.tgt[g], A.tgt[f])],
                          pair_name(B2.mor_ids[g], A.mor_ids[f])))
    apex, mkeys = _build(names, pairs, nonid,
                         lambda x: (B2.ident[pairs[x][0]], A.ident[pairs[x][1]]),
                         lambda gk, fk: (B2.cm[gk[0]][fk[0]], A.cm[gk[1]][fk[1]]))
    up = FinFunctor(apex, B2, [b for b, _ in pairs], [k[0] for k in mkeys])
    v = FinFunctor(apex, A, [a for _, a in pairs], [k[1] for k in mkeys])
    return CartesianSquare(u, w, apex, up, v)


# ---------------------------------------------------------------------------
# Grothendieck construction

class Grothendieck:
    """``∫F`` for a diagram ``F : I -> Cat``, with its projection to ``I``.

    ``pairs[x] = (i, a)``; ``keys[m] = (k, a, f)`` where ``(k, f)`` is a
    morphism out of ``(i, a)``.
    """

    def __init__(self, F: CatDiagram):
        I = F.index
        cats = F.at_object
        pairs = [(i, a) for i in range(I.n_objects) for a in range(cats[i].n_objects)]
        lookup = {pr: x for x, pr in enumerate(pairs)}
        n = len(pairs)
        names = [f"{I.objects[i]}#{cats[i].objects[a]}" for i, a in pairs]
        # position of each arrow among the arrows out of its source
        pos = []
        for C in cats:
            p = [0] * C.n_morphisms
            for row in C.out:
                for t, f in enumerate(row):
                    p[f] = t
            pos.append(p)
        # every (k, a, f) gets a slot base[k][a] + pos[f]; slot -> morphism index
        base = []
        slot_mor: list[int] = []
        keys = [None] * n
        mor_names, src, tgt = [], list(range(n)), list(range(n))
        for k in range(I.n_morphisms):
            i, j = I.src[k], I.tgt[k]
            Fk = F.at_arrow[k]
            Fi, Fj = cats[i], cats[j]
            row = []
            for a in range(Fi.n_objects):
                row.append(len(slot_mor))
                x = lookup[(i, a)]
                for f in Fj.out[Fk.omap[a]]:
                    if I.is_id[k] and Fj.is_id[f]:
                        slot_mor.append(x)
                        keys[x] = (k, a, f)
                        continue
                    slot_mor.append(len(keys))
                    keys.append((k, a, f))
                    src.append(x)
                    tgt.append(lookup[(j, Fj.tgt[f])])
                    mor_names.append(f"{I.mor_ids[k]}#{Fi.objects[a]}#{Fj.mor_ids[f]}")
            base.append(row)
        M = len(keys)
        out: list[list[int]] = [[] for _ in range(n)]
        for m in range(n, M):
            out[src[m]].append(m)
        Icm = I.cm
        tgt_cm = [cats[I.tgt[k]].cm for k in range(I.n_morphisms)]
        tgt_pos = [pos[I.tgt[k]] for k in range(I.n_morphisms)]
        mmaps = [F.at_arrow[k].mmap for k in range(I.n_morphisms)]
        cm = [[-1] * M for _ in range(M)]
        for f in range(M):
            t = tgt[f]
            cm[t][f] = f
            if f < n:
                for g in out[t]:
                    cm[g][f] = g
                continue
            k1, a1, f1 = keys[f]
            Icol = [r[k1] for r in Icm]
            for g in out[t]:
                k2, _, f2 = keys[g]
                k = Icol[k2]
                h = tgt_cm[k2][f2][mmaps[k2][f1]]
                cm[g][f] = slot_mor[base[k][a1] + tgt_pos[k2][h]]
        ident_names = [identity_name(x) for x in names]
        cat = FinCat(names, ident_names + mor_names, src, tgt, range(n), cm)
        mkeys = keys
        self.diagram = F
        self.category = cat
        self.pairs = tuple(pairs)
        self.lookup = lookup
        self.keys = tuple(mkeys)
        self.mor_lookup = {k: m for m, k in enumerate(mkeys)}
        self.projection = FinFunctor(cat, I, [i for i, _ in pairs], [k[0] for k in mkeys])

    def __iter__(self):
        yield self.category
        yield self.projection


def grothendieck(F: CatDiagram) -> Grothendieck:
    """Unpacks as ``(total category, projection)``."""
    return Grothendieck(F)


# ---------------------------------------------------------------------------
# final object, comma square, lift category

def add_final(C: FinCat) -> tuple[FinCat, FinFunctor]:
    """``C*``: a new final object ``⋆`` with one arrow ``x->⋆`` per object."""
    if FINAL in C.oidx:
        raise IllTyped(f"object {FINAL!r} already present")
    n = C.n_objects
    objects = list(C.objects) + [FINAL]
    mors = [(C.mor_ids[f], C.src[f], C.tgt[f]) for f in range(n, C.n_morphisms)]
    mors += [(f"{x}->{FINAL}", i, n) for i, x in enumerate(C.objects)]
    Mc = C.n_morphisms
    # indices: 0..n identities (n+1 of them), then C's non-identities, then arrows to ⋆
    def old(m):
        return m if m < n else m + 1

    def new(m):
        return m if m < n else m - 1

    to_star = lambda x: Mc + 1 + x  # noqa: E731
    src = list(range(n + 1)) + [s for _, s, _ in mors]

    def comp(g, f):
        if g >= Mc + 1:
            return to_star(src[f])
        return old(C.cm[new(g)][new(f)])

    star = assemble(objects, [identity_name(x) for x in objects], mors, comp)
    incl = FinFunctor(C, star, range(n), [old(m) for m in range(Mc)])
    return star, incl


@dataclass(frozen=True, eq=False)
class TwoSquare:
    """Comma category ``A'_0`` of ``w`` over ``u`` with ``alpha : w u0 => u v0``."""

    u: FinFunctor
    w: FinFunctor
    comma: FinCat
    u0: FinFunctor
    v0: FinFunctor
    alpha: NatTrans
    triples: tuple = field(repr=False, default=())


def comma_square(u: FinFunctor, w: FinFunctor) -> TwoSquare:
    if u.target != w.target:
        raise TargetMismatch("u and w have different targets")
    A, B2, B = u.source, w.source, u.target
    triples = [(b, a, g) for b in range(B2.n_objects) for a in range(A.n_objects)
               for g in B.hom_i(w.omap[b], u.omap[a])]
    names = [f"({B2.objects[b]},{A.objects[a]},{B.mor_ids[g]})" for b, a, g in triples]
    by_src: dict[tuple[int, int], list[int]] = {}
    for x, (b, a, _) in enumerate(triples):
        by_src.setdefault((b, a), []).append(x)
    nonid = []
    for x0, (b0, a0, g0) in enumerate(triples):
        for gp in B2.out[b0]:
            wg = w.mmap[gp]
            for f in A.out[a0]:
                uf = u.mmap[f]
                lhs_f = B.cm[uf][g0]
                for x1 in by_src.get((B2.tgt[gp], A.tgt[f]), ()):
                    g1 = triples[x1][2]
                    if B.cm[g1][wg] != lhs_f:
                        continue
                    if x0 == x1 and B2.is_id[gp] and A.is_id[f]:
                        continue
                    nonid.append(((gp, f, x0, x1), x0, x1,
                                  f"({B2.mor_ids[gp]},{A.mor_ids[f]},{B.mor_ids[g0]},{B.mor_ids[g1]})"))
    cat, mkeys = _build(names, triples, nonid,
                        lambda x: (B2.ident[triples[x][0]], A.ident[triples[x][1]], x, x),
                        lambda gk, fk: (B2.cm[gk[0]][fk[0]], A.cm[gk[1]][fk[1]], fk[2], gk[3]))
    u0 = FinFunctor(cat, B2, [b for b, _, _ in triples], [k[0] for k in mkeys])
    v0 = FinFunctor(cat, A, [a for _, a, _ in triples], [k[1] for k in mkeys])
    alpha = NatTrans(w @ u0, u @ v0, [g for _, _, g in triples])
    return TwoSquare(u, w, cat, u0, v0, alpha, tuple(triples))


def pullback_to_comma(sq: CartesianSquare, two: TwoSquare) -> FinFunctor:
    """``(b', a) -> (b', a, 1_{u(a)})``."""
    u, B = sq.u, sq.u.target
    lookup = {t: i for i, t in enumerate(two.triples)}
    P = sq.apex
    omap = [lookup[(sq.u_prime.omap[x], sq.v.omap[x], B.ident[u.omap[sq.v.omap[x]]])]
            for x in range(P.n_objects)]
    C = two.comma
    key_index = {}
    for m in range(C.n_morphisms):
        key_index[(two.u0.mmap[m], two.v0.mmap[m], C.src[m], C.tgt[m])] = m
    mmap = [key_index[(sq.u_prime.mmap[m], sq.v.mmap[m], omap[P.src[m]], omap[P.tgt[m]])]
            for m in range(P.n_morphisms)]
    return FinFunctor(P, C, omap, mmap)


class LiftCategory:
    """``A(a1, g)``: arrows ``f : a -> a1`` over ``g``, morphisms vertical ``h``
    with ``f = f' h``."""

    def __init__(self, u: FinFunctor, g, a1):
        A, B = u.source, u.target
        gi = _mor(B, g)
        ai = _obj(A, a1)
        if u.omap[ai] != B.tgt[gi]:
            raise FiberMismatch(f"{A.objects[ai]!r} does not lie over the target of {B.mor_ids[gi]!r}")
        b0 = B.src[gi]
        idb0 = B.ident[b0]
        lifts = [f for f in A.inc[ai] if u.mmap[f] == gi]
        lookup = {f: i for i, f in enumerate(lifts)}
        names = [A.mor_ids[f] for f in lifts]
        nonid = []
        for y, f2 in enumerate(lifts):
            for h in A.inc[A.src[f2]]:
                if A.is_id[h] or u.mmap[h] != idb0:
                    continue
                x = lookup[A.cm[f2][h]]
                nonid.append(((h, y), x, y, f"{A.mor_ids[h]}|{A.mor_ids[f2]}"))
        cat, mkeys = _build(names, lifts, nonid,
                            lambda x: (A.ident[A.src[lifts[x]]], x),
                            lambda gk, fk: (A.cm[gk[0]][fk[0]], gk[1]))
        self.category = cat
        self.lifts = tuple(lifts)


def lift_category(u: FinFunctor, g, a1) -> FinCat:
    return LiftCategory(u, g, a1).category


# ---------------------------------------------------------------------------
# the three isomorphic categories attached to a comma triple

@dataclass(frozen=True, eq=False)
class CleftTriple:
    c0: FinCat
    c1: FinCat
    c2: FinCat
    iso01: FinFunctor | None
    iso12: FinFunctor | None

    @property
    def isomorphic(self) -> bool:
        return self.iso01 is not None and self.iso12 is not None


def star_functor(w: FinFunctor, b0p, g) -> tuple[FinCat, FinFunctor, FinFunctor]:
    """``(B'/b'0)* -> B``: the inclusion of ``B'/b'0`` followed by ``w``,
    sending ``⋆`` to the target of ``g`` and ``x->⋆`` to ``g . w(p)``.

    Returns ``(B'/b'0, the star category, the functor)``.
    """
    B2, B = w.source, w.target
    gi = _mor(B, g)
    bi = _obj(B2, b0p)
    if w.omap[bi] != B.src[gi]:
        raise IllTyped("g does not start at w(b'0)")
    S = Slice(identity_functor(B2), bi)
    C = S.category
    star, _ = add_final(C)
    n = C.n_objects
    b1 = B.tgt[gi]
    omap = [w.omap[S.pairs[x][0]] for x in range(n)] + [b1]
    mmap = [0] * star.n_morphisms
    for m in range(C.n_morphisms):
        mm = m if m < n else m + 1
        mmap[mm] = w.mmap[S.arrows[m]]
    mmap[n] = B.ident[b1]
    for x in range(n):
        p = S.pairs[x][1]
        mmap[C.n_morphisms + 1 + x] = B.cm[gi][w.mmap[p]]
    return C, star, FinFunctor(star, B, omap, mmap)


def c0_c1_c2(u: FinFunctor, w: FinFunctor, b0p, a1, g) -> CleftTriple:
    """Build ``C0 = A'/(b'0, a1, g)``, ``C1 = (A'/a1)/(b'0, g)`` and
    ``C2 = A''/a'1`` and search for isomorphisms ``C0 -> C1 -> C2``."""
    A, B2, B = u.source, w.source, u.target
    bi, ai, gi = _obj(B2, b0p), _obj(A, a1), _mor(B, g)
    if B.src[gi] != w.omap[bi] or B.tgt[gi] != u.omap[ai]:
        raise IllTyped("g is not an arrow w(b'0) -> u(a1)")
    sq = pullback(u, w)
    two = comma_square(u, w)
    K = pullback_to_comma(sq, two)
    c0 = Slice(K, two.triples.index((bi, ai, gi))).category

    base = Slice(w, u.omap[ai])                             # B'/b1
    to_base = square_slice_functor(sq.v, sq.u_prime, u, w, ai)   # A'/a1 -> B'/b1
    c1 = Slice(to_base, base.lookup[(bi, gi)]).category

    _, star, W = star_functor(w, bi, gi)
    bar = pullback(u, W)                                    # A-bar' = (B'/b'0)* x_B A
    inner = pullback(bar.u_prime, add_final_inclusion(star))
    fin = star.n_objects - 1
    a1p = [x for x in range(bar.apex.n_objects)
           if bar.u_prime.omap[x] == fin and bar.v.omap[x] == ai][0]
    c2 = Slice(inner.v, a1p).category
    return CleftTriple(c0, c1, c2, find_isomorphism(c0, c1), find_isomorphism(c1, c2))


def add_final_inclusion(star: FinCat) -> FinFunctor:
    """The inclusion ``C -> C*`` recovered from ``C*`` itself."""
    n = star.n_objects - 1
    objects = list(star.objects[:n])
    inner = [m for m in range(star.n_objects, star.n_morphisms) if star.tgt[m] != n]
    pos = {m: i + n for i, m in enumerate(inner)}
    for x in range(n):
        pos[x] = x
    back = {v: k for k, v in pos.items()}
    C = assemble(objects, [star.mor_ids[x] for x in range(n)],
                 [(star.mor_ids[m], star.src[m], star.tgt[m]) for m in inner],
                 lambda g, f: pos[star.cm[back[g]][back[f]]])
    return FinFunctor(C, star, range(n), [back[m] for m in range(C.n_morphisms)])
