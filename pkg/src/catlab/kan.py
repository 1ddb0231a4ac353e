"""Diagrams versus categories over a base: Θ, Θ′, ε, η, w_!, κ and friends."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .adjunctions import Adjunction, has_right_adjoint, verify_adjunction
from .constructions import Grothendieck, IllTyped, Slice, _obj
from .core import (
    CatDiagram, FinCat, FinFunctor, NatTrans, identity_functor, identity_name, is_diagram_morphism,
    pair_name, precompose_diagram,
)


@dataclass(frozen=True, eq=False)
class OverCategoryObject:
    """An object ``(A, A -> I)`` of ``Cat/I``."""

    total: FinCat
    structure: FinFunctor

    def __post_init__(self):
        if self.structure.source != self.total:
            raise IllTyped("structure functor does not start at the total category")

    @property
    def base(self) -> FinCat:
        return self.structure.target


class Theta:
    """``i -> A/i`` for ``v : A -> I``, keeping the slices for lookups."""

    def __init__(self, v: FinFunctor):
        I = v.target
        self.structure = v
        self.slices = tuple(Slice(v, i) for i in range(I.n_objects))
        arrows = []
        for k in range(I.n_morphisms):
            S, T = self.slices[I.src[k]], self.slices[I.tgt[k]]
            arrows.append(_postcompose(S, T, I.cm[k]))
        self.diagram = CatDiagram(I, [S.category for S in self.slices], arrows, check=False)


def _postcompose(S: Slice, T: Slice, row) -> FinFunctor:
    """``A/i -> A/i'``, ``(a, p) -> (a, k p)`` with ``row = cm[k]``."""
    C = S.category
    omap = [T.lookup[(a, row[p])] for a, p in S.pairs]
    mmap = [T.mor_lookup[(f, omap[C.tgt[m]])] for m, f in enumerate(S.arrows)]
    return FinFunctor(C, T.category, omap, mmap)


def theta(I: FinCat, X: OverCategoryObject) -> CatDiagram:
    """``(A, v) -> (i -> A/i)``, arrows acting by postcomposition."""
    if X.base != I:
        raise IllTyped("object is not over I")
    return Theta(X.structure).diagram


def theta_prime(I: FinCat, F: CatDiagram) -> OverCategoryObject:
    """``F -> (∫F, ∫F -> I)``."""
    if F.index != I:
        raise IllTyped("diagram is not indexed by I")
    G = Grothendieck(F)
    return OverCategoryObject(G.category, G.projection)


def grothendieck_functor(F: CatDiagram, G: CatDiagram, u: Sequence[FinFunctor],
                         GF: Grothendieck | None = None, GG: Grothendieck | None = None) -> FinFunctor:
    """``∫u : ∫F -> ∫G`` for a strict morphism of diagrams, ``(i, a) -> (i, u_i(a))``."""
    if not is_diagram_morphism(F, G, u):
        raise IllTyped("not a morphism of diagrams")
    GF = GF or Grothendieck(F)
    GG = GG or Grothendieck(G)
    I = F.index
    omap = [GG.lookup[(i, u[i].omap[a])] for i, a in GF.pairs]
    mmap = [GG.mor_lookup[(k, u[I.src[k]].omap[a], u[I.tgt[k]].mmap[f])] for k, a, f in GF.keys]
    return FinFunctor(GF.category, GG.category, omap, mmap)


# ---------------------------------------------------------------------------
# counit

class Counit:
    """``ε_{F,i} : (∫Fw)/i -> F(i)``, ``((j, a), p) -> F(p)(a)``."""

    def __init__(self, w: FinFunctor, F: CatDiagram, i, total: Grothendieck | None = None):
        if w.target != F.index:
            raise IllTyped("w does not land in the index of F")
        I = F.index
        self.w = w
        self.i = _obj(I, i)
        self.total = total or Grothendieck(precompose_diagram(F, w))
        self.over = w @ self.total.projection
        self.slice = Slice(self.over, self.i)
        S, T = self.slice, self.total
        omap = [F.at_arrow[p].omap[T.pairs[x][1]] for x, p in S.pairs]
        mmap = []
        for m, g in enumerate(S.arrows):
            _, p2 = S.pairs[S.category.tgt[m]]
            mmap.append(F.at_arrow[p2].mmap[T.keys[g][2]])
        self.functor = FinFunctor(S.category, F.at_object[self.i], omap, mmap)

    def adjunction(self) -> Adjunction:
        """For ``w`` an identity: ``ε ⊣ ι`` with ``ι(a) = ((i, a), 1_i)``."""
        if self.w != identity_functor(self.w.source):
            raise IllTyped("explicit adjoint needs w to be an identity")
        I, S, T = self.w.target, self.slice, self.total
        i, eps = self.i, self.functor
        Fi = eps.target
        idi = I.ident[i]
        iota_o = [S.lookup[(T.lookup[(i, a)], idi)] for a in range(Fi.n_objects)]
        iota_m = [S.mor_lookup[(T.mor_lookup[(idi, Fi.src[f], f)], iota_o[Fi.tgt[f]])]
                  for f in range(Fi.n_morphisms)]
        iota = FinFunctor(Fi, S.category, iota_o, iota_m)
        unit = []
        for x, (g, p) in enumerate(S.pairs):
            j, a = T.pairs[g]
            b = eps.omap[x]
            arrow = T.mor_lookup[(p, a, Fi.ident[b])]
            unit.append(S.mor_lookup[(arrow, iota_o[b])])
        return Adjunction(eps, iota, NatTrans(identity_functor(S.category), iota @ eps, unit, check=False),
                          NatTrans(eps @ iota, identity_functor(Fi), list(Fi.ident), check=False))


def epsilon_component(w: FinFunctor, F: CatDiagram, i) -> FinFunctor:
    return Counit(w, F, i).functor


# ---------------------------------------------------------------------------
# unit

class Unit:
    """``η_X : A -> ∫(j -> A/w(j))``, ``a -> (v(a), (a, 1))``."""

    def __init__(self, w: FinFunctor, X: OverCategoryObject):
        if X.base != w.source:
            raise IllTyped("X is not over the source of w")
        A, v = X.total, X.structure
        self.w, self.X = w, X
        self.theta = Theta(w @ v)
        self.total = Grothendieck(precompose_diagram(self.theta.diagram, w))
        T = self.total
        I = w.target
        omap, lk = [], []
        for a in range(A.n_objects):
            j = v.omap[a]
            x = self.theta.slices[w.omap[j]].lookup[(a, I.ident[w.omap[j]])]
            lk.append(x)
            omap.append(T.lookup[(j, x)])
        mmap = []
        for f in range(A.n_morphisms):
            j2 = v.omap[A.tgt[f]]
            S2 = self.theta.slices[w.omap[j2]]
            phi = S2.mor_lookup[(f, lk[A.tgt[f]])]
            mmap.append(T.mor_lookup[(v.mmap[f], lk[A.src[f]], phi)])
        self.functor = FinFunctor(A, T.category, omap, mmap)

    def adjunction(self) -> Adjunction:
        """For ``w`` an identity: ``η ⊣ ρ`` with ``ρ(i, (a, p)) = a``."""
        w, T, A = self.w, self.total, self.X.total
        if w != identity_functor(w.source):
            raise IllTyped("explicit adjoint needs w to be an identity")
        eta = self.functor
        slices = self.theta.slices
        rho_o = [slices[i].pairs[x][0] for i, x in T.pairs]
        rho_m = [slices[T.pairs[T.category.tgt[m]][0]].arrows[phi] for m, (k, x, phi) in enumerate(T.keys)]
        rho = FinFunctor(T.category, A, rho_o, rho_m)
        counit = []
        for y, (i, x) in enumerate(T.pairs):
            a, p = slices[i].pairs[x]
            src = slices[self.X.structure.omap[a]].lookup[(a, w.target.ident[self.X.structure.omap[a]])]
            counit.append(T.mor_lookup[(p, src, slices[i].mor_lookup[(A.ident[a], x)])])
        return Adjunction(eta, rho, NatTrans(identity_functor(A), rho @ eta, list(A.ident), check=False),
                          NatTrans(eta @ rho, identity_functor(T.category), counit, check=False))


def eta_component(w: FinFunctor, X: OverCategoryObject) -> FinFunctor:
    return Unit(w, X).functor


# ---------------------------------------------------------------------------
# triangle identities

def first_triangle(w: FinFunctor, F: CatDiagram) -> bool:
    """``∫(w* ε_F) . η_{Θ'_J w* F} = 1`` on ``∫Fw``."""
    Fw = precompose_diagram(F, w)
    total = Grothendieck(Fw)
    X = OverCategoryObject(total.category, total.projection)
    unit = Unit(w, X)
    LRF = unit.theta.diagram                            # i -> (∫Fw)/i
    counits = [Counit(w, F, i, total) for i in range(F.index.n_objects)]
    if any(c.slice.category != LRF.at_object[i] for i, c in enumerate(counits)):
        return False
    source = precompose_diagram(LRF, w)
    comps = [counits[w.omap[j]].functor for j in range(w.source.n_objects)]
    back = grothendieck_functor(source, Fw, comps, GF=unit.total, GG=total)
    return back @ unit.functor == identity_functor(total.category)


def second_triangle(w: FinFunctor, X: OverCategoryObject) -> bool:
    """``ε_{Θ_I(w v)} . Θ_I(η_X) = 1`` at every object of ``I``."""
    unit = Unit(w, X)
    I = w.target
    LX = unit.theta.diagram                             # i -> A/i over w v
    over = w @ unit.total.projection
    eta = unit.functor
    for i in range(I.n_objects):
        src = unit.theta.slices[i]
        counit = Counit(w, LX, i, unit.total)
        if counit.over != over:
            return False
        tgt = counit.slice
        S = src.category
        omap = [tgt.lookup[(eta.omap[a], p)] for a, p in src.pairs]
        mmap = [tgt.mor_lookup[(eta.mmap[f], omap[S.tgt[m]])] for m, f in enumerate(src.arrows)]
        induced = FinFunctor(S, tgt.category, omap, mmap)
        if counit.functor @ induced != identity_functor(S):
            return False
    return True


# ---------------------------------------------------------------------------
# homotopical left extension and base change

def shriek(w: FinFunctor, F: CatDiagram) -> CatDiagram:
    """``w_! F = Θ_I(∫F, w P_F)``."""
    if F.index != w.source:
        raise IllTyped("F is not indexed by the source of w")
    G = Grothendieck(F)
    return Theta(w @ G.projection).diagram


def grothendieck_base_change(top: FinFunctor, F: CatDiagram,
                             small: Grothendieck | None = None,
                             big: Grothendieck | None = None) -> FinFunctor:
    """``∫(F top) -> ∫F``, ``(j, a) -> (top(j), a)``."""
    small = small or Grothendieck(precompose_diagram(F, top))
    big = big or Grothendieck(F)
    omap = [big.lookup[(top.omap[j], a)] for j, a in small.pairs]
    mmap = [big.mor_lookup[(top.mmap[l], a, f)] for l, a, f in small.keys]
    return FinFunctor(small.category, big.category, omap, mmap)


def kappa(D, F: CatDiagram, b) -> FinFunctor:
    """``(∫F v)/b' -> (∫F)/w(b')`` for a commuting square ``u v = w u'``.

    ``D`` needs attributes ``u : A -> B``, ``w : B' -> B``, ``u_prime : A' -> B'``
    and ``v : A' -> A`` (a ``CartesianSquare`` qualifies).
    """
    if F.index != D.u.source:
        raise IllTyped("F is not indexed by the source of u")
    if D.u @ D.v != D.w @ D.u_prime:
        raise IllTyped("square does not commute")
    bi = _obj(D.w.source, b)
    small = Grothendieck(precompose_diagram(F, D.v))
    big = Grothendieck(F)
    iota = grothendieck_base_change(D.v, F, small, big)
    S = Slice(D.u_prime @ small.projection, bi)
    T = Slice(D.u @ big.projection, D.w.omap[bi])
    C = S.category
    omap = [T.lookup[(iota.omap[x], D.w.mmap[p])] for x, p in S.pairs]
    mmap = [T.mor_lookup[(iota.mmap[g], omap[C.tgt[m]])] for m, g in enumerate(S.arrows)]
    return FinFunctor(C, T.category, omap, mmap)


@dataclass(frozen=True, eq=False)
class Square:
    """A commuting square ``u v = w u'`` that need not be cartesian."""

    u: FinFunctor
    w: FinFunctor
    u_prime: FinFunctor
    v: FinFunctor


def paste(right, left) -> Square:
    """Horizontal pasting: ``left`` sits over ``B'' -> B'``, ``right`` over ``B' -> B``."""
    if left.u != right.u_prime:
        raise IllTyped("squares do not share an edge")
    return Square(right.u, right.w @ left.w, left.u_prime, right.v @ left.v)


# ---------------------------------------------------------------------------
# componentwise aspheric morphisms of diagrams

@dataclass
class LemmeclefReport:
    """Outcome of the factorization ``∫u = P_H S`` with ``S ⊣ R``."""

    factorization: bool = False
    retraction: bool = False
    adjunction: bool = False
    adjunction_problem: str | None = None
    hypothesis: bool = False
    conclusion: bool = False
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (self.factorization and self.retraction and self.adjunction
                and (self.conclusion or not self.hypothesis))


class Lemmeclef:
    """``H : ∫G -> Cat``, ``(i, b) -> F(i)/b``, with ``S``, ``R`` and ``ε : SR -> 1``."""

    def __init__(self, I: FinCat, F: CatDiagram, G: CatDiagram, u: Sequence[FinFunctor]):
        if F.index != I or G.index != I or not is_diagram_morphism(F, G, u):
            raise IllTyped("u is not a morphism of diagrams F -> G over I")
        self.F, self.G, self.u = F, G, tuple(u)
        self.int_F = Grothendieck(F)
        self.int_G = Grothendieck(G)
        gG = self.int_G
        slices = [Slice(u[i], b) for i, b in gG.pairs]
        arrows = []
        for k, b, g in gG.keys:
            i, i2 = I.src[k], I.tgt[k]
            src = slices[gG.lookup[(i, b)]]
            b2 = G.at_object[i2].tgt[g]
            tgt = slices[gG.lookup[(i2, b2)]]
            Fk, Gk = F.at_arrow[k], G.at_arrow[k]
            row = G.at_object[i2].cm[g]
            C = src.category
            omap = [tgt.lookup[(Fk.omap[a], row[Gk.mmap[p]])] for a, p in src.pairs]
            mmap = [tgt.mor_lookup[(Fk.mmap[f], omap[C.tgt[m]])] for m, f in enumerate(src.arrows)]
            arrows.append(FinFunctor(C, tgt.category, omap, mmap))
        self.slices = tuple(slices)
        self.H = CatDiagram(gG.category, [s.category for s in slices], arrows, check=False)
        self.int_H = Grothendieck(self.H)

    def S(self) -> FinFunctor:
        I, F, u = self.F.index, self.F, self.u
        gF, gG, gH = self.int_F, self.int_G, self.int_H
        omap, unit_pos = [], []
        for i, a in gF.pairs:
            ua = u[i].omap[a]
            y = gG.lookup[(i, ua)]
            x = self.slices[y].lookup[(a, self.G.at_object[i].ident[ua])]
            unit_pos.append((y, x))
            omap.append(gH.lookup[(y, x)])
        mmap = []
        for k, a, f in gF.keys:
            i, i2 = I.src[k], I.tgt[k]
            a2 = F.at_object[i2].tgt[f]
            src_y, src_x = unit_pos[gF.lookup[(i, a)]]
            tgt_y, tgt_x = unit_pos[gF.lookup[(i2, a2)]]
            K = gG.mor_lookup[(k, u[i].omap[a], u[i2].mmap[f])]
            phi = self.slices[tgt_y].mor_lookup[(f, tgt_x)]
            mmap.append(gH.mor_lookup[(K, src_x, phi)])
        return FinFunctor(gF.category, gH.category, omap, mmap)

    def R(self) -> FinFunctor:
        gF, gG, gH = self.int_F, self.int_G, self.int_H
        omap = []
        for y, x in gH.pairs:
            i = gG.pairs[y][0]
            omap.append(gF.lookup[(i, self.slices[y].pairs[x][0])])
        mmap = []
        for m, (K, x, phi) in enumerate(gH.keys):
            k, b, g = gG.keys[K]
            y = gH.pairs[gH.category.src[m]][0]
            y2 = gH.pairs[gH.category.tgt[m]][0]
            a = self.slices[y].pairs[x][0]
            mmap.append(gF.mor_lookup[(k, a, self.slices[y2].arrows[phi])])
        return FinFunctor(gH.category, gF.category, omap, mmap)

    def counit(self, S: FinFunctor, R: FinFunctor) -> NatTrans:
        """``ε_{(i,b,a,p)} = (1_i, p, 1_a) : SR(i,b,a,p) -> (i,b,a,p)``."""
        I = self.F.index
        gG, gH = self.int_G, self.int_H
        comps = []
        for z, (y, x) in enumerate(gH.pairs):
            i, b = gG.pairs[y]
            a, p = self.slices[y].pairs[x]
            K = gG.mor_lookup[(I.ident[i], self.u[i].omap[a], p)]
            src_x = gH.pairs[S.omap[R.omap[z]]][1]
            phi = self.slices[y].mor_lookup[(self.F.at_object[i].ident[a], x)]
            comps.append(gH.mor_lookup[(K, src_x, phi)])
        return NatTrans(S @ R, identity_functor(gH.category), comps, check=False)

    def integral(self) -> FinFunctor:
        return grothendieck_functor(self.F, self.G, self.u, self.int_F, self.int_G)


def verify_lemmeclef(I: FinCat, F: CatDiagram, G: CatDiagram, u: Sequence[FinFunctor]) -> LemmeclefReport:
    """Build ``H``, ``∫H``, ``S``, ``R`` and ``ε`` and check each claim."""
    L = Lemmeclef(I, F, G, u)
    S, R = L.S(), L.R()
    int_u = L.integral()
    rep = LemmeclefReport()
    rep.factorization = L.int_H.projection @ S == int_u
    rep.retraction = R @ S == identity_functor(L.int_F.category)
    adj = Adjunction(S, R, NatTrans(identity_functor(S.source), R @ S, list(S.source.ident), check=False),
                     L.counit(S, R))
    rep.adjunction, rep.adjunction_problem = verify_adjunction(adj)
    rep.hypothesis = all(has_right_adjoint(ui) for ui in u)
    rep.conclusion = has_right_adjoint(int_u)
    return rep


def verify_cartint(w: FinFunctor, F: CatDiagram) -> bool:
    """``∫(Fw)`` equals the pullback of ``P_F`` along ``w`` after renaming
    ``j#a`` to ``(j,w(j)#a)`` and ``l#a#f`` to ``(l,w(l)#a#f)``."""
    if w.target != F.index:
        raise IllTyped("w does not land in the index of F")
    from .constructions import pullback
    small = Grothendieck(precompose_diagram(F, w))
    big = Grothendieck(F)
    iota = grothendieck_base_change(w, F, small, big)
    C = small.category
    J = w.source
    objects = [pair_name(J.objects[j], big.category.objects[iota.omap[x]]) for x, (j, _) in enumerate(small.pairs)]
    mors = []
    for m, (l, _, _) in enumerate(small.keys):
        if C.is_id[m]:
            mors.append(identity_name(objects[C.src[m]]))
        else:
            mors.append(pair_name(J.mor_ids[l], big.category.mor_ids[iota.mmap[m]]))
    renamed = FinCat(objects, mors, C.src, C.tgt, C.ident, C.cm)
    sq = pullback(big.projection, w)
    return renamed.same_data(sq.apex)
