"""Named verification suites: each binds one or more theorems to an exhaustive sweep."""
from __future__ import annotations

import json
import multiprocessing
import os
import random
import time
from dataclasses import asdict, dataclass, field
from importlib import resources
from typing import Callable, Iterator

from . import io
from .adjunctions import has_right_adjoint, is_equivalence
from .asphericity import MINIMAL, NONEMPTY, AsphericityStructure, is_aspheric_functor, \
    is_locally_aspheric_by_slices, locally_aspheric_witness
from .constructions import Fiber, induced_slice_functor, local_slice_functor, pullback
from .core import (
    BudgetExceeded, CatDiagram, CatlabError, FinCat, FinFunctor, identity_functor, precompose_diagram, product,
    product_functor,
)
from .fibrations import (
    carlisse_conditions, fiber_adjoint_equivalence, is_cofibration, is_cofibration_by_hyperlifts, is_fibration,
    is_fibration_by_hyperlifts, is_local_isomorphism, is_precofibration, is_prefibration, smooth_counterexample,
    smooth_minimal_failure, weakly_smooth_a, weakly_smooth_conditions,
)
from .generate import (
    Corpus, diagram_morphisms, enumerate_base_change_diagrams, enumerate_diagrams, exhaustive, functors,
    random_category, random_diagram, random_functor, shell_tuples,
)
from .kan import (
    Counit, OverCategoryObject, Unit, _postcompose, first_triangle, kappa, paste, second_triangle,
    verify_cartint, verify_lemmeclef,
)

STRUCTURES = (MINIMAL, NONEMPTY)


class UnknownSuite(CatlabError, KeyError):
    pass


@dataclass
class SuiteReport:
    name: str
    bounds: tuple
    seed: int
    samples: int = 0
    instances: int = 0
    failures: list = field(default_factory=list)
    wall: float = 0.0
    complete: bool = True
    coverage: str = "complete"
    skipped: list = field(default_factory=list)
    invariants: tuple = ()

    @property
    def passed(self) -> bool:
        return self.complete and not self.failures

    def to_dict(self) -> dict:
        d = asdict(self)
        d["bounds"] = list(self.bounds)
        d["invariants"] = list(self.invariants)
        d["passed"] = self.passed
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def line(self) -> str:
        state = "PASS" if self.passed else "FAIL"
        extra = "" if self.complete else f", incomplete: {self.coverage}"
        return (f"{state} {self.name}: {self.instances} instances, {len(self.failures)} failures, "
                f"{self.wall:.1f}s{extra}")


class Context:
    """Run-time state handed to instance generators."""

    def __init__(self, bounds, seed, samples, options):
        self.bounds = tuple(bounds)
        self.seed = seed
        self.samples = samples
        self.options = options
        self.coverage = "nothing finished"
        self.skipped: list = []

    @property
    def corpus(self) -> tuple[FinCat, ...]:
        return exhaustive(*self.bounds)

    @property
    def values(self) -> tuple[FinCat, ...]:
        return exhaustive(*self.options.get("values", (1, 2)))

    def structures(self) -> tuple[AsphericityStructure, ...]:
        return tuple(self.options.get("structures", STRUCTURES))


@dataclass(frozen=True)
class Suite:
    name: str
    invariants: tuple
    summary: str
    instances: Callable[[Context], Iterator[dict]]
    check: Callable[[dict, Context], list]
    default_bounds: tuple = (3, 6)


REGISTRY: dict[str, Suite] = {}


def suite(name: str, invariants: tuple, summary: str, default_bounds=(3, 6)):
    def register(pair):
        gen, chk = pair
        REGISTRY[name] = Suite(name, invariants, summary, gen, chk, default_bounds)
        return pair
    return register


# ---------------------------------------------------------------------------
# witnesses

def _encode(value):
    if isinstance(value, FinCat):
        return {"category": io.category_data(value)}
    if isinstance(value, FinFunctor):
        return {"functor": io.functor_data(value)}
    if isinstance(value, CatDiagram):
        return {"diagram": io.diagram_data(value)}
    if isinstance(value, (list, tuple)):
        return {"list": [_encode(v) for v in value]}
    return {"value": value}


def _decode(data):
    (tag, body), = data.items()
    if tag == "list":
        return [_decode(v) for v in body]
    if tag == "value":
        return body
    return io.parse(io.dumps(body)).payload


def encode_instance(inst: dict) -> dict:
    return {k: _encode(v) for k, v in inst.items()}


def decode_instance(data: dict) -> dict:
    return {k: _decode(v) for k, v in data.items()}


def replay(name: str, failure: dict, **options) -> list[str]:
    """Re-run the check of suite ``name`` on a failure's embedded witness."""
    s = _get(name)
    ctx = Context(tuple(failure.get("bounds", s.default_bounds)), 0, 0, options)
    return s.check(decode_instance(failure["witness"]), ctx)


# ---------------------------------------------------------------------------
# instance streams

def _shells(ctx: Context, r: int, source=None) -> Iterator[tuple[FinCat, ...]]:
    cats = ctx.corpus if source is None else source
    n = len(cats)
    done = -1
    for k, t in shell_tuples(n, r):
        if k > done + 1:
            done = k - 1
            ctx.coverage = f"all {r}-tuples over the first {done + 1} of {n} corpus categories"
        yield tuple(cats[i] for i in t)
    ctx.coverage = "complete"


def _functors(ctx: Context, A: FinCat, B: FinCat) -> list[FinFunctor]:
    try:
        return list(functors(A, B))
    except BudgetExceeded as exc:
        ctx.skipped.append(str(exc))
        return []


def functor_stream(ctx: Context) -> Iterator[dict]:
    for A, B in _shells(ctx, 2):
        for u in _functors(ctx, A, B):
            yield {"u": u}


def composable_stream(ctx: Context) -> Iterator[dict]:
    for A, B, C in _shells(ctx, 3):
        us = _functors(ctx, A, B)
        if not us:
            continue
        vs = _functors(ctx, B, C)
        for u in us:
            for v in vs:
                yield {"u": u, "v": v}


def cospan_stream(ctx: Context) -> Iterator[dict]:
    for A, B, B1 in _shells(ctx, 3):
        us = _functors(ctx, A, B)
        if not us:
            continue
        ws = _functors(ctx, B1, B)
        for u in us:
            for w in ws:
                yield {"u": u, "w": w}


def category_stream(ctx: Context) -> Iterator[dict]:
    for (C,) in _shells(ctx, 1):
        yield {"C": C}


def pair_stream(ctx: Context) -> Iterator[dict]:
    for A, B in _shells(ctx, 2):
        yield {"A": A, "B": B}


def functor_pair_stream(ctx: Context) -> Iterator[dict]:
    for A, B, A1, B1 in _shells(ctx, 4):
        us = _functors(ctx, A, B)
        if not us:
            continue
        u1s = _functors(ctx, A1, B1)
        for u in us:
            for u1 in u1s:
                yield {"u": u, "u1": u1}


# ---------------------------------------------------------------------------
# asphericity

def _axioms(inst, ctx):
    out = []
    pred = ctx.options.get("predicate")
    structures = [pred] if pred is not None else ctx.structures()
    for S in structures:
        if "C" in inst:
            C = inst["C"]
            if C.has_final_object() and not S.member(C):
                out.append(f"{S.name}: As1 fails")
        else:
            u = inst["u"]
            if S.member(u.target) and not S.member(u.source) and is_aspheric_functor(S, u):
                out.append(f"{S.name}: As2 fails")
    return out


def _axioms_stream(ctx):
    yield from category_stream(ctx)
    if not ctx.options.get("categories_only"):
        yield from functor_stream(ctx)


suite("structure-axioms", ("as1", "as2"), "As1 and As2 hold for the built-in structures")((_axioms_stream, _axioms))


def _demo_stream(ctx):
    yield from category_stream(ctx)


def _demo_check(inst, ctx):
    S = ctx.options.get("predicate") or AsphericityStructure("at-least-two-objects", lambda C: C.n_objects >= 2)
    C = inst["C"]
    return ["As1 fails"] if C.has_final_object() and not S.member(C) else []


suite("as1-violation-demo", (), "a planted As1 violation: the predicate 'at least two objects'")((_demo_stream, _demo_check))


def _prodcat(inst, ctx):
    A, B = inst["A"], inst["B"]
    P = None
    out = []
    for S in ctx.structures():
        if S.member(A) and S.member(B):
            P = P or product(A, B)
            if not S.member(P):
                out.append(f"{S.name}: product of aspheric categories is not aspheric")
    return out


suite("prodcatasph", ("prodcatasph",), "products of aspheric categories are aspheric")((pair_stream, _prodcat))


def _prodfonct(inst, ctx):
    u, u1 = inst["u"], inst["u1"]
    out = []
    for S in ctx.structures():
        if is_aspheric_functor(S, u) and is_aspheric_functor(S, u1):
            if not is_aspheric_functor(S, product_functor(u, u1)):
                out.append(f"{S.name}: product of aspheric functors is not aspheric")
    return out


suite("prodfonctasph", ("prodfonctasph",), "products of aspheric functors are aspheric")(
    (functor_pair_stream, _prodfonct))


def _asphlocbase(inst, ctx):
    u, v = inst["u"], inst["v"]
    out = []
    for S in ctx.structures():
        whole = is_aspheric_functor(S, u)
        parts = all(is_aspheric_functor(S, induced_slice_functor(u, c, v)) for c in range(v.target.n_objects))
        if whole != parts:
            out.append(f"{S.name}: aspheric={whole} but all u/c aspheric={parts}")
    return out


suite("asphlocbase", ("asphlocbase",), "a functor over C is aspheric iff every induced u/c is")(
    (composable_stream, _asphlocbase))


def _compfonct(inst, ctx):
    u, v = inst["u"], inst["v"]
    out = []
    for S in ctx.structures():
        if is_aspheric_functor(S, u) and is_aspheric_functor(S, v) and not is_aspheric_functor(S, v @ u):
            out.append(f"{S.name}: composite of aspheric functors is not aspheric")
    return out


suite("compfonctasph", ("compfonctasph",), "aspheric functors compose")((composable_stream, _compfonct))


def _adjg(inst, ctx):
    u = inst["u"]
    if not has_right_adjoint(u):
        return []
    return [f"{S.name}: right adjoint but not aspheric" for S in ctx.structures() if not is_aspheric_functor(S, u)]


suite("adjgasph", ("adjgasph",), "functors with a right adjoint are aspheric")((functor_stream, _adjg))


def _eqcat(inst, ctx):
    u = inst["u"]
    if not is_equivalence(u):
        return []
    return [f"{S.name}: equivalence but not aspheric" for S in ctx.structures() if not is_aspheric_functor(S, u)]


suite("eqcatasph", ("eqcatasph",), "equivalences are aspheric")((functor_stream, _eqcat))


def _precoffib(inst, ctx):
    u = inst["u"]
    if not is_precofibration(u):
        return []
    out = []
    for S in ctx.structures():
        fibers = all(S.member(Fiber(u, b).category) for b in range(u.target.n_objects))
        if fibers and not is_aspheric_functor(S, u):
            out.append(f"{S.name}: precofibration with aspheric fibers is not aspheric")
    return out


suite("precoffibasph", ("precoffibasph",), "precofibrations with aspheric fibers are aspheric")(
    (functor_stream, _precoffib))


def _locasph(inst, ctx):
    u, v = inst["u"], inst["v"]
    out = []
    for S in ctx.structures():
        lu = locally_aspheric_witness(S, u) is None
        lv = locally_aspheric_witness(S, v) is None
        for name, f, val in (("u", u, lu), ("v", v, lv)):
            if val != is_locally_aspheric_by_slices(S, f):
                out.append(f"{S.name}: slice-wise test disagrees on {name}")
        if lu and lv:
            if locally_aspheric_witness(S, v @ u) is not None:
                out.append(f"{S.name}: composite of locally aspheric functors is not locally aspheric")
            if locally_aspheric_witness(S, product_functor(u, v)) is not None:
                out.append(f"{S.name}: product of locally aspheric functors is not locally aspheric")
    return out


suite("locally-aspheric-stability", ("prop1fonctlocasph",),
      "locally aspheric functors: slice-wise test, composition, products")((composable_stream, _locasph))


def _minchar(inst, ctx):
    u = inst["u"]
    a, b = is_aspheric_functor(MINIMAL, u), has_right_adjoint(u)
    return [] if a == b else [f"minimal-aspheric={a} but right adjoint={b}"]


suite("minimal-aspheric-adjoint", ("carfonctasphmin",), "minimal-aspheric iff right adjoint")(
    (functor_stream, _minchar))


# ---------------------------------------------------------------------------
# fibrations and smoothness

def _carflisse(inst, ctx):
    u = inst["u"]
    out = []
    for S in ctx.structures():
        c = weakly_smooth_conditions(S, u)
        if len(set(c.values())) > 1:
            out.append(f"{S.name}: conditions disagree {c}")
    return out


suite("carflisse-equivalence", ("carflisse",), "the four weak smoothness conditions agree")(
    (functor_stream, _carflisse))


def _carfibr(inst, ctx):
    u = inst["u"]
    fib = is_fibration(u, check=False)
    two_arrow = smooth_minimal_failure(u) is None
    witness, _ = smooth_counterexample(MINIMAL, u, ctx.options.get("shape_bounds", (2, 3)))
    searched = witness is None
    if fib == two_arrow == searched:
        return []
    return [f"fibration={fib}, two-arrow criterion={two_arrow}, no base-change counterexample={searched}"]


suite("carfibr-equivalence", ("carfibr",),
      "fibration iff minimal-smooth (base-change search) iff the two-arrow criterion")((functor_stream, _carfibr))


def _exflisse(inst, ctx):
    u = inst["u"]
    a, b = is_prefibration(u), weakly_smooth_a(MINIMAL, u)
    return [] if a == b else [f"prefibration={a} but minimal weakly smooth={b}"]


suite("exflisse-prefibration", ("exflisse",), "prefibrations are exactly the minimal weakly smooth functors")(
    (functor_stream, _exflisse))


def _lisseflisse(inst, ctx):
    u = inst["u"]
    out = []
    if smooth_minimal_failure(u) is None and not weakly_smooth_a(MINIMAL, u):
        out.append("minimal: smooth but not weakly smooth")
    if is_fibration(u, check=False):
        for S in ctx.structures():
            if not weakly_smooth_a(S, u):
                out.append(f"{S.name}: proved smooth but not weakly smooth")
    return out


suite("lisseflisse", ("lisseflisse",), "smooth functors are weakly smooth")((functor_stream, _lisseflisse))


def _stchbase(inst, ctx):
    u, w = inst["u"], inst["w"]
    out = []
    up = None
    for S in ctx.structures():
        if weakly_smooth_a(S, u):
            up = up or pullback(u, w).u_prime
            if not weakly_smooth_a(S, up):
                out.append(f"{S.name}: pullback of a weakly smooth functor is not weakly smooth")
    return out


suite("stchbaseflisse", ("stchbaseflisse",), "weak smoothness is stable under base change")(
    (cospan_stream, _stchbase))


def _sorlisse_stream(ctx):
    for A, B, C in _shells(ctx, 3):
        us = _functors(ctx, A, B)
        if not us:
            continue
        vs = _functors(ctx, B, C)
        ws = _functors(ctx, C, B)
        for u in us:
            for v in vs:
                yield {"u": u, "v": v}
            for w in ws:
                yield {"u": u, "w": w}


def _sorlisse(inst, ctx):
    u = inst["u"]
    if smooth_minimal_failure(u) is not None:
        return []
    if "v" in inst:
        v = inst["v"]
        if smooth_minimal_failure(v) is None and smooth_minimal_failure(v @ u) is not None:
            return ["composite of minimal-smooth functors is not smooth"]
        return []
    if smooth_minimal_failure(pullback(u, inst["w"]).u_prime) is not None:
        return ["pullback of a minimal-smooth functor is not smooth"]
    return []


suite("sorlisse", ("sorlisse",), "minimal-smooth functors are stable under composition and base change")(
    (_sorlisse_stream, _sorlisse))


def _localized(inst, ctx):
    u = inst["u"]
    out = []
    locals_ = [local_slice_functor(u, a) for a in range(u.source.n_objects)]
    for S in ctx.structures():
        whole = weakly_smooth_a(S, u)
        parts = all(weakly_smooth_a(S, f) for f in locals_)
        if whole != parts:
            out.append(f"{S.name}: weakly smooth={whole} but all A/a -> B/u(a) weakly smooth={parts}")
    whole = smooth_minimal_failure(u) is None
    parts = all(smooth_minimal_failure(f) is None for f in locals_)
    if whole != parts:
        out.append(f"minimal: smooth={whole} but all A/a -> B/u(a) smooth={parts}")
    return out


suite("flisseloc-loclisse", ("flisseloc-loclisse",),
      "(weak) smoothness is local on the source")((functor_stream, _localized))


def _isoloc(inst, ctx):
    u = inst["u"]
    if not is_local_isomorphism(u):
        return []
    out = []
    if smooth_minimal_failure(u) is not None:
        out.append("local isomorphism is not minimal-smooth")
    for S in ctx.structures():
        if not weakly_smooth_a(S, u):
            out.append(f"{S.name}: local isomorphism is not weakly smooth")
    return out


suite("isoloclisse", ("isoloclisse",), "local isomorphisms are smooth")((functor_stream, _isoloc))


def _lisselocasph(inst, ctx):
    u = inst["u"]
    if smooth_minimal_failure(u) is None and locally_aspheric_witness(MINIMAL, u) is not None:
        return ["minimal-smooth functor is not locally aspheric"]
    return []


suite("lisselocasph", ("lisselocasph",), "smooth functors are locally aspheric")((functor_stream, _lisselocasph))


def _smooth_base_change(inst, ctx):
    u, w = inst["u"], inst["w"]
    if smooth_minimal_failure(u) is not None or locally_aspheric_witness(MINIMAL, w) is not None:
        return []
    if locally_aspheric_witness(MINIMAL, pullback(u, w).v) is not None:
        return ["pullback of a locally aspheric functor along a smooth one is not locally aspheric"]
    return []


suite("smooth-base-change-locally-aspheric", ("loclisse-corollary",),
      "locally aspheric functors are stable under smooth base change")((cospan_stream, _smooth_base_change))


def _carlisse_stream(ctx):
    shape = ctx.options.get("shape_bounds", (1, 2))
    for A, B in _shells(ctx, 2):
        for u in _functors(ctx, A, B):
            if not is_fibration(u, check=False):
                continue
            try:
                for w, base in enumerate_base_change_diagrams(B, shape):
                    yield {"u": u, "w": w, "base": base}
            except BudgetExceeded as exc:
                ctx.skipped.append(str(exc))


def _carlisse(inst, ctx):
    u, w, base = inst["u"], inst["w"], inst["base"]
    out = []
    for S in ctx.structures():
        c = carlisse_conditions(S, u, w, base)
        bad = [k for k, ok in c.items() if not ok]
        if bad:
            out.append(f"{S.name}: smooth functor fails conditions {bad}")
    return out


suite("carlisse-necessary", ("carlisse",),
      "smooth functors satisfy the base-change conditions of the smoothness theorem")((_carlisse_stream, _carlisse))


def _carprecof(inst, ctx):
    u = inst["u"]
    out = []
    for b in range(u.target.n_objects):
        x, y = fiber_adjoint_equivalence(u, b)
        if x != y:
            out.append(f"at {u.target.objects[b]!r}: precofibration at b={x}, left adjoint={y}")
    return out


suite("carprecof", ("carprecof",), "precofibration at b iff A_b -> A/b has a left adjoint")(
    (functor_stream, _carprecof))


def _routes(inst, ctx):
    u = inst["u"]
    out = []
    if is_cofibration(u, check=False) != is_cofibration_by_hyperlifts(u):
        out.append("cofibration routes disagree")
    if is_fibration(u, check=False) != is_fibration_by_hyperlifts(u):
        out.append("fibration routes disagree")
    return out


suite("cofibration-routes", ("cofibration-hyperlifts",),
      "cocartesian closure and hypercocartesian lifts define the same (co)fibrations")((functor_stream, _routes))


# ---------------------------------------------------------------------------
# Kan extensions

def _index_pairs(ctx):
    for I, J in _shells(ctx, 2):
        yield I, J


def _triangles_stream(ctx):
    vals = ctx.values
    for I, J in _index_pairs(ctx):
        for w in _functors(ctx, J, I):
            for F in enumerate_diagrams(I, vals):
                yield {"w": w, "F": F}
            for A in vals:
                for v in _functors(ctx, A, J):
                    yield {"w": w, "v": v}


def _triangles(inst, ctx):
    w = inst["w"]
    if "F" in inst:
        return [] if first_triangle(w, inst["F"]) else ["first triangle identity fails"]
    X = OverCategoryObject(inst["v"].source, inst["v"])
    return [] if second_triangle(w, X) else ["second triangle identity fails"]


suite("theta-triangles", ("theta-triangles",), "triangle identities of the diagrams/categories-over adjunction",
      (2, 4))((_triangles_stream, _triangles))


def _theq_stream(ctx):
    vals = ctx.values
    for (I,) in _shells(ctx, 1):
        for F in enumerate_diagrams(I, vals):
            yield {"F": F}
        for A in vals:
            for v in _functors(ctx, A, I):
                yield {"v": v}


def _theq(inst, ctx):
    from .adjunctions import verify_adjunction
    out = []
    if "F" in inst:
        F = inst["F"]
        I = F.index
        w = identity_functor(I)
        counits = [Counit(w, F, i) for i in range(I.n_objects)]
        for i, c in enumerate(counits):
            ok, msg = verify_adjunction(c.adjunction())
            if not ok:
                out.append(f"counit at {I.objects[i]!r}: explicit adjunction fails: {msg}")
            if not is_aspheric_functor(MINIMAL, c.functor):
                out.append(f"counit at {I.objects[i]!r} is not minimal-aspheric")
        for k in range(I.n_morphisms):
            i, j = I.src[k], I.tgt[k]
            step = _postcompose(counits[i].slice, counits[j].slice, I.cm[k])
            if F.at_arrow[k] @ counits[i].functor != counits[j].functor @ step:
                out.append(f"counit is not natural at {I.mor_ids[k]!r}")
        return out
    v = inst["v"]
    unit = Unit(identity_functor(v.target), OverCategoryObject(v.source, v))
    ok, msg = verify_adjunction(unit.adjunction())
    if not ok:
        out.append(f"unit: explicit adjunction fails: {msg}")
    if not is_aspheric_functor(MINIMAL, unit.functor):
        out.append("unit is not minimal-aspheric")
    if unit.total.projection @ unit.functor != v:
        out.append("unit is not a functor over the base")
    return out


suite("theqcatgr", ("theqcatgr",), "counit componentwise and unit minimal-aspheric via explicit adjoints",
      (2, 4))((_theq_stream, _theq))


def _kappa_stream(ctx):
    vals = ctx.values
    for A, B, B1, B2 in _shells(ctx, 4):
        us = _functors(ctx, A, B)
        if not us:
            continue
        w1s = _functors(ctx, B1, B)
        w2s = _functors(ctx, B2, B1)
        for u in us:
            Fs = list(enumerate_diagrams(A, vals))
            for F in Fs:
                yield {"u": u, "F": F}
            for w1 in w1s:
                for w2 in w2s:
                    for F in Fs:
                        yield {"u": u, "w1": w1, "w2": w2, "F": F}


def _kappa(inst, ctx):
    u, F = inst["u"], inst["F"]
    if "w1" not in inst:
        D = pullback(u, identity_functor(u.target))
        out = []
        for b in range(u.target.n_objects):
            k = kappa(D, F, b)
            if not (len(set(k.omap)) == k.target.n_objects == len(k.omap)
                    and len(set(k.mmap)) == k.target.n_morphisms == len(k.mmap)):
                out.append(f"identity square: kappa at {u.target.objects[b]!r} is not an isomorphism")
        return out
    w1, w2 = inst["w1"], inst["w2"]
    D1 = pullback(u, w1)
    D2 = pullback(D1.u_prime, w2)
    pasted = paste(D1, D2)
    F1 = precompose_diagram(F, D1.v)
    out = []
    for b in range(w2.source.n_objects):
        whole = kappa(pasted, F, b)
        parts = kappa(D1, F, w2.omap[b]) @ kappa(D2, F1, b)
        if whole != parts:
            out.append(f"pasting fails at {w2.source.objects[b]!r}")
    return out


suite("kappa-pasting", ("kappa-identity-pasting",),
      "base change morphism: identity squares give isomorphisms, horizontal pasting composes", (1, 2))(
    (_kappa_stream, _kappa))


def _lemmeclef_stream(ctx):
    vals = ctx.values
    for (I,) in _shells(ctx, 1):
        diagrams = list(enumerate_diagrams(I, vals))
        for F in diagrams:
            for G in diagrams:
                for u in diagram_morphisms(F, G):
                    yield {"F": F, "G": G, "u": u}


def _lemmeclef(inst, ctx):
    F, G, u = inst["F"], inst["G"], inst["u"]
    rep = verify_lemmeclef(F.index, F, G, u)
    out = []
    if not rep.factorization:
        out.append("P_H S differs from the integral of u")
    if not rep.retraction:
        out.append("RS is not the identity")
    if not rep.adjunction:
        out.append(f"S -| R fails: {rep.adjunction_problem}")
    if rep.hypothesis and not rep.conclusion:
        out.append("componentwise right adjoints but the integral has none")
    return out


suite("lemmeclef", ("lemmeclef",), "integral of a componentwise aspheric morphism factors as P_H S with S -| R",
      (2, 4))((_lemmeclef_stream, _lemmeclef))


def _cartint_stream(ctx):
    vals = ctx.values
    for I, J in _index_pairs(ctx):
        ws = _functors(ctx, J, I)
        if not ws:
            continue
        Fs = list(enumerate_diagrams(I, vals))
        for w in ws:
            for F in Fs:
                yield {"w": w, "F": F}
    rng = random.Random(ctx.seed)
    for t in range(ctx.samples):
        I = random_category(rng, 4, 10)
        J = random_category(rng, 4, 10)
        w = random_functor(rng, J, I)
        if w is None:
            w = random_functor(rng, I, I)
        F = random_diagram(rng, w.target)
        yield {"w": w, "F": F}
        ctx.coverage = f"exhaustive part and {t + 1} of {ctx.samples} random samples"
    ctx.coverage = "complete"


def _cartint(inst, ctx):
    return [] if verify_cartint(inst["w"], inst["F"]) else ["integral of F w differs from the pullback"]


suite("cartint", ("cartint",), "the integral of F w is the pullback of P_F along w", (2, 4))(
    (_cartint_stream, _cartint))


def _chbase_stream(ctx):
    vals = ctx.values
    for A, B, B1 in _shells(ctx, 3):
        us = _functors(ctx, A, B)
        if not us:
            continue
        vs = [v for v in _functors(ctx, B1, B) if is_fibration(v, check=False)]
        if not vs:
            continue
        Fs = list(enumerate_diagrams(A, vals))
        for u in us:
            for v in vs:
                for F in Fs:
                    yield {"u": u, "v": v, "F": F}


def _chbase(inst, ctx):
    u, v, F = inst["u"], inst["v"], inst["F"]
    D = pullback(u, v)
    return [f"kappa at {v.source.objects[b]!r} is not minimal-aspheric"
            for b in range(v.source.n_objects) if not has_right_adjoint(kappa(D, F, b))]


suite("chbaselisse", ("chbaselisse",), "base change along a fibration is componentwise aspheric", (2, 3))(
    (_chbase_stream, _chbase))


# ---------------------------------------------------------------------------
# enumeration

def _enum_stream(ctx):
    yield {"bounds": list(ctx.bounds)}
    ctx.coverage = "complete"


def _enum(inst, ctx):
    from .oracle import code_of, oracle_classes
    b = tuple(inst["bounds"])
    cats = exhaustive(*b)
    fast = {code_of(C) for C in cats}
    slow = oracle_classes(*b)
    out = []
    if len(fast) != len(cats):
        out.append("generator repeats an isomorphism class")
    if fast != slow:
        out.append(f"generator gives {len(fast)} classes, oracle {len(slow)}")
    return out


suite("enumeration-complete", ("enumeration-complete",),
      "the category generator matches unconstrained table enumeration", (2, 4))((_enum_stream, _enum))


# ---------------------------------------------------------------------------
# runner

def _get(name: str) -> Suite:
    try:
        return REGISTRY[name]
    except KeyError:
        raise UnknownSuite(name) from None


def registered_invariants() -> dict[str, str]:
    """Invariant id -> suite name."""
    out = {}
    for s in REGISTRY.values():
        for inv in s.invariants:
            out[inv] = s.name
    return out


def invariant_catalogue() -> list[dict]:
    text = resources.files("catlab").joinpath("data/invariants.json").read_text(encoding="utf-8")
    return json.loads(text)["invariants"]


def worker_count() -> int:
    raw = os.environ.get("CATLAB_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        n = 1
    return max(1, os.cpu_count() or 1) if n <= 0 else n


def _run_slice(name, bounds, seed, samples, deadline, options, part, parts):
    s = _get(name)
    ctx = Context(bounds, seed, samples, options)
    n = 0
    failures = []
    complete = True
    for idx, inst in enumerate(s.instances(ctx)):
        if deadline is not None and time.monotonic() > deadline:
            complete = False
            break
        if idx % parts != part:
            continue
        n += 1
        msgs = s.check(inst, ctx)
        if msgs:
            failures.append({"index": idx, "messages": msgs, "bounds": list(bounds),
                             "witness": encode_instance(inst)})
    coverage = "complete" if complete else ctx.coverage
    return n, failures, complete, coverage, ctx.skipped


def _run_slice_star(args):
    return _run_slice(*args)


def run_suite(name: str, bounds: tuple[int, int] | None = None, seed: int = 0, samples: int = 200,
              time_budget: float | None = None, workers: int | None = None, **options) -> SuiteReport:
    """Run a named suite over the corpus within ``bounds``.

    ``time_budget`` (seconds) stops the sweep early; the report is then
    marked incomplete with a coverage statement.  Options: ``values`` (bounds
    of diagram values), ``structures``, ``predicate``, ``shape_bounds``.
    """
    s = _get(name)
    bounds = tuple(bounds or s.default_bounds)
    workers = workers or worker_count()
    start = time.monotonic()
    deadline = None if time_budget is None else start + time_budget
    args = [(name, bounds, seed, samples, deadline, options, p, workers) for p in range(workers)]
    if workers == 1:
        parts = [_run_slice(*args[0])]
    else:
        with multiprocessing.get_context("fork").Pool(workers) as pool:
            parts = pool.map(_run_slice_star, args)
    report = SuiteReport(name, bounds, seed, samples, invariants=s.invariants)
    for n, failures, complete, coverage, skipped in parts:
        report.instances += n
        report.failures.extend(failures)
        report.skipped.extend(skipped)
        if not complete:
            report.complete = False
            report.coverage = coverage
    report.failures.sort(key=lambda f: f["index"])
    report.skipped = sorted(set(report.skipped))
    report.wall = time.monotonic() - start
    return report


def corpus(bounds=(3, 6), seed=0, samples=0) -> Corpus:
    return Corpus(bounds[0], bounds[1], seed, samples)
