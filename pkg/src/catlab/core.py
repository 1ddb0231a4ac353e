"""Finite categories, functors, natural transformations and diagrams.

Everything here is immutable once built.  Public methods speak in terms of
the string identifiers of objects and morphisms; the algorithms in the rest
of the package work on the integer indices stored alongside them
(``src``, ``tgt``, ``ident``, ``cm``).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence


class CatlabError(Exception):
    """Base class for every error raised by the library."""


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: tuple
    message: str

    def __str__(self):
        return f"{self.kind}: {self.message}"


class InvalidCategory(CatlabError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations[:5]))

    @property
    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


class NotAFunctor(CatlabError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations[:5]))


class NotNatural(CatlabError):
    pass


class InvalidDiagram(CatlabError):
    pass


class SourceTargetMismatch(CatlabError):
    pass


class BudgetExceeded(CatlabError):
    pass


class UnknownObject(CatlabError, KeyError):
    pass


class UnknownMorphism(CatlabError, KeyError):
    pass


class Morphism(NamedTuple):
    id: str
    src: str
    tgt: str


def identity_name(obj: str) -> str:
    return "id_" + obj


class FinCat:
    """A finite category.

    Morphisms are ordered identities first (in object order), then the
    non-identity morphisms.  ``cm[g][f]`` is the index of ``g . f`` or -1
    when ``tgt(f) != src(g)``.
    """

    __slots__ = (
        "objects", "mor_ids", "src", "tgt", "ident", "cm", "is_id",
        "oidx", "midx", "homs", "out", "inc", "_key", "_hash",
    )

    def __init__(self, objects, mor_ids, src, tgt, ident, cm):
        self.objects = tuple(objects)
        self.mor_ids = tuple(mor_ids)
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.ident = tuple(ident)
        self.cm = tuple(tuple(row) for row in cm)
        self.oidx = {x: i for i, x in enumerate(self.objects)}
        self.midx = {f: i for i, f in enumerate(self.mor_ids)}
        if len(self.oidx) != len(self.objects):
            raise InvalidCategory([Violation("DuplicateId", (), "duplicate object identifier")])
        if len(self.midx) != len(self.mor_ids):
            raise InvalidCategory([Violation("DuplicateId", (), "duplicate morphism identifier")])
        is_id = [False] * len(self.mor_ids)
        for m in self.ident:
            is_id[m] = True
        self.is_id = tuple(is_id)
        n = len(self.objects)
        homs: dict[tuple[int, int], list[int]] = {}
        out: list[list[int]] = [[] for _ in range(n)]
        inc: list[list[int]] = [[] for _ in range(n)]
        for m, (s, t) in enumerate(zip(self.src, self.tgt)):
            homs.setdefault((s, t), []).append(m)
            out[s].append(m)
            inc[t].append(m)
        self.homs = {k: tuple(v) for k, v in homs.items()}
        self.out = tuple(tuple(v) for v in out)
        self.inc = tuple(tuple(v) for v in inc)
        self._key = None
        self._hash = None

    # -- name level ------------------------------------------------------
    @property
    def morphisms(self) -> tuple[Morphism, ...]:
        o = self.objects
        return tuple(Morphism(m, o[s], o[t]) for m, s, t in zip(self.mor_ids, self.src, self.tgt))

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.mor_ids)

    def obj_index(self, x: str) -> int:
        try:
            return self.oidx[x]
        except KeyError:
            raise UnknownObject(x) from None

    def mor_index(self, f: str) -> int:
        try:
            return self.midx[f]
        except KeyError:
            raise UnknownMorphism(f) from None

    def identity(self, x: str) -> str:
        return self.mor_ids[self.ident[self.obj_index(x)]]

    def source_of(self, f: str) -> str:
        return self.objects[self.src[self.mor_index(f)]]

    def target_of(self, f: str) -> str:
        return self.objects[self.tgt[self.mor_index(f)]]

    def compose(self, g: str, f: str) -> str:
        """``g`` after ``f``."""
        h = self.cm[self.mor_index(g)][self.mor_index(f)]
        if h < 0:
            raise SourceTargetMismatch(f"{g} . {f} is not composable")
        return self.mor_ids[h]

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        key = (self.obj_index(x), self.obj_index(y))
        return tuple(self.mor_ids[m] for m in self.homs.get(key, ()))

    # -- index level -----------------------------------------------------
    def hom_i(self, x: int, y: int) -> tuple[int, ...]:
        return self.homs.get((x, y), ())

    def composable_pairs(self) -> Iterator[tuple[int, int]]:
        """All ``(g, f)`` with ``tgt(f) == src(g)``."""
        for f in range(len(self.mor_ids)):
            for g in self.out[self.tgt[f]]:
                yield g, f

    def final_objects(self) -> list[int]:
        n = len(self.objects)
        return [y for y in range(n) if all(len(self.homs.get((x, y), ())) == 1 for x in range(n))]

    def initial_objects(self) -> list[int]:
        n = len(self.objects)
        return [x for x in range(n) if all(len(self.homs.get((x, y), ())) == 1 for y in range(n))]

    def has_final_object(self) -> bool:
        n = len(self.objects)
        return any(all(len(self.homs.get((x, y), ())) == 1 for x in range(n)) for y in range(n))

    # -- equality ----------------------------------------------------------
    def key(self):
        if self._key is None:
            self._key = (self.objects, self.mor_ids, self.src, self.tgt, self.ident, self.cm)
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinCat):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def same_data(self, other: "FinCat") -> bool:
        """Equality of the underlying data, ignoring declaration order."""
        return _unordered_data(self) == _unordered_data(other)

    def __repr__(self):
        return f"FinCat({len(self.objects)} objects, {len(self.mor_ids)} morphisms)"

    def to_raw(self) -> dict:
        """Explicit description accepted back by :func:`validate_category`."""
        o, m = self.objects, self.mor_ids
        return {
            "objects": list(o),
            "morphisms": [{"id": m[i], "src": o[s], "tgt": o[t]}
                          for i, (s, t) in enumerate(zip(self.src, self.tgt))],
            "identity": {o[x]: m[i] for x, i in enumerate(self.ident)},
            "compose": [{"after": m[g], "before": m[f], "equals": m[self.cm[g][f]]}
                        for g, f in sorted(self.composable_pairs())],
        }


def _unordered_data(C: FinCat):
    o, m = C.objects, C.mor_ids
    return (
        frozenset(o),
        frozenset((m[i], o[s], o[t]) for i, (s, t) in enumerate(zip(C.src, C.tgt))),
        frozenset((o[x], m[i]) for x, i in enumerate(C.ident)),
        frozenset((m[g], m[f], m[C.cm[g][f]]) for g, f in C.composable_pairs()),
    )


def assemble(objects: Sequence[str], ident_names: Sequence[str],
             morphisms: Sequence[tuple[str, int, int]],
             compose: Callable[[int, int], int]) -> FinCat:
    """Build a category from trusted data.

    ``morphisms`` lists the non-identity morphisms as ``(name, src, tgt)``;
    indices passed to and returned by ``compose`` count the identities first.
    """
    n = len(objects)
    names = list(ident_names) + [name for name, _, _ in morphisms]
    src = list(range(n)) + [s for _, s, _ in morphisms]
    tgt = list(range(n)) + [t for _, _, t in morphisms]
    M = len(names)
    out: list[list[int]] = [[] for _ in range(n)]
    for m in range(M):
        out[src[m]].append(m)
    cm = [[-1] * M for _ in range(M)]
    for f in range(M):
        t = tgt[f]
        for g in out[t]:
            if g < n:
                cm[g][f] = f
            elif f < n:
                cm[g][f] = g
            else:
                cm[g][f] = compose(g, f)
    return FinCat(objects, names, src, tgt, range(n), cm)


# ---------------------------------------------------------------------------
# validation of raw descriptions

def _field(entry, name, pos):
    if isinstance(entry, dict):
        return entry[name]
    return entry[pos]


def category_violations(raw: dict) -> tuple[FinCat | None, list[Violation]]:
    """Check a raw description and return ``(category or None, violations)``."""
    V: list[Violation] = []
    objects = [str(x) for x in raw.get("objects", [])]
    seen: set[str] = set()
    for x in objects:
        if x in seen:
            V.append(Violation("DuplicateId", (x,), f"object {x!r} declared twice"))
        seen.add(x)
    oset = set(objects)
    explicit = "identity" in raw
    mors: list[tuple[str, str, str]] = []
    mseen: set[str] = set()
    for e in raw.get("morphisms", []):
        mid, s, t = (str(_field(e, k, i)) for i, k in enumerate(("id", "src", "tgt")))
        if mid in mseen:
            V.append(Violation("DuplicateId", (mid,), f"morphism {mid!r} declared twice"))
            continue
        mseen.add(mid)
        for end in (s, t):
            if end not in oset:
                V.append(Violation("DanglingReference", (mid, end), f"morphism {mid!r} refers to unknown object {end!r}"))
        mors.append((mid, s, t))
    if explicit:
        identity = {str(k): str(v) for k, v in raw["identity"].items()}
        for x in objects:
            if x not in identity:
                V.append(Violation("IdentityViolation", (x,), f"object {x!r} has no identity"))
        for x, i in identity.items():
            if x not in oset:
                V.append(Violation("DanglingReference", (x,), f"identity given for unknown object {x!r}"))
            elif i not in mseen:
                V.append(Violation("DanglingReference", (i,), f"identity of {x!r} is unknown morphism {i!r}"))
    else:
        identity = {}
        declared = {m[0]: m for m in mors}
        for x in objects:
            name = identity_name(x)
            identity[x] = name
            if name not in declared:
                mors.append((name, x, x))
                mseen.add(name)
    if V:
        return None, V
    info = {m[0]: m for m in mors}
    for x, i in identity.items():
        _, s, t = info[i]
        if s != x or t != x:
            V.append(Violation("IdentityViolation", (i,), f"identity {i!r} of {x!r} is not an endomorphism of {x!r}"))
    if V:
        return None, V
    id_set = set(identity.values())
    table: dict[tuple[str, str], str] = {}
    for e in raw.get("compose", []):
        g, f, h = (str(_field(e, k, i)) for i, k in enumerate(("after", "before", "equals")))
        missing = [n for n in (g, f, h) if n not in mseen]
        if missing:
            V.append(Violation("DanglingReference", (g, f, h), f"composite entry refers to unknown morphism {missing[0]!r}"))
            continue
        if info[f][2] != info[g][1]:
            V.append(Violation("IllTypedComposite", (g, f), f"{g!r} . {f!r} is not composable"))
            continue
        if info[h][1] != info[f][1] or info[h][2] != info[g][2]:
            V.append(Violation("IllTypedComposite", (g, f, h), f"{g!r} . {f!r} = {h!r} has the wrong source or target"))
            continue
        if (g, f) in table and table[(g, f)] != h:
            V.append(Violation("ConflictingComposite", (g, f), f"{g!r} . {f!r} given twice with different values"))
            continue
        table[(g, f)] = h
    if not explicit:
        for g, f in list(table):
            if g in id_set or f in id_set:
                expect = f if g in id_set else g
                if table[(g, f)] != expect:
                    V.append(Violation("IdentityViolation", (g, f), f"{g!r} . {f!r} should be {expect!r}"))
        for m, s, t in mors:
            table.setdefault((identity[t], m), m)
            table.setdefault((m, identity[s]), m)
    # order: identities first (object order), then the rest in declaration order
    order = [identity[x] for x in objects] + [m for m, _, _ in mors if m not in id_set]
    pos = {m: i for i, m in enumerate(order)}
    oi = {x: i for i, x in enumerate(objects)}
    M = len(order)
    out: dict[str, list[str]] = {x: [] for x in objects}
    for m in order:
        out[info[m][1]].append(m)
    for f in order:
        for g in out[info[f][2]]:
            if (g, f) not in table:
                V.append(Violation("MissingComposite", (g, f), f"no composite given for {g!r} . {f!r}"))
    if V:
        return None, V
    for m in order:
        s, t = info[m][1], info[m][2]
        if table[(identity[t], m)] != m or table[(m, identity[s])] != m:
            V.append(Violation("IdentityViolation", (m,), f"identity law fails at {m!r}"))
    if V:
        return None, V
    cm = [[-1] * M for _ in range(M)]
    for (g, f), h in table.items():
        cm[pos[g]][pos[f]] = pos[h]
    for f in range(M):
        for g in out[info[order[f]][2]]:
            gi = pos[g]
            gf = cm[gi][f]
            for h in out[info[g][2]]:
                hi = pos[h]
                if cm[hi][gf] != cm[cm[hi][gi]][f]:
                    V.append(Violation("AssociativityViolation", (h, g, order[f]),
                                       f"({h} . {g}) . {order[f]} != {h} . ({g} . {order[f]})"))
    if V:
        return None, V
    src = [oi[info[m][1]] for m in order]
    tgt = [oi[info[m][2]] for m in order]
    ident = [pos[identity[x]] for x in objects]
    return FinCat(objects, order, src, tgt, ident, cm), []


def validate_category(raw: dict) -> FinCat:
    """Validate a raw category description.

    ``raw`` has keys ``objects``, ``morphisms`` (``{id, src, tgt}``) and
    ``compose`` (``{after, before, equals}``).  Without an ``identity`` key the
    identities are named ``id_<object>`` and their composites are filled in;
    with one, every composable pair must be listed.
    """
    C, violations = category_violations(raw)
    if violations:
        raise InvalidCategory(violations)
    return C


# ---------------------------------------------------------------------------
# functors

class FinFunctor:
    __slots__ = ("source", "target", "omap", "mmap", "_hash")

    def __init__(self, source: FinCat, target: FinCat, omap, mmap):
        self.source = source
        self.target = target
        self.omap = tuple(omap)
        self.mmap = tuple(mmap)
        self._hash = None

    def obj(self, x: str) -> str:
        return self.target.objects[self.omap[self.source.obj_index(x)]]

    def mor(self, f: str) -> str:
        return self.target.mor_ids[self.mmap[self.source.mor_index(f)]]

    @property
    def object_map(self) -> dict[str, str]:
        o = self.target.objects
        return {x: o[y] for x, y in zip(self.source.objects, self.omap)}

    @property
    def morphism_map(self) -> dict[str, str]:
        m = self.target.mor_ids
        return {f: m[g] for f, g in zip(self.source.mor_ids, self.mmap)}

    def __eq__(self, other):
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return (self.omap == other.omap and self.mmap == other.mmap
                and self.source == other.source and self.target == other.target)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.omap, self.mmap, self.source, self.target))
        return self._hash

    def __repr__(self):
        return f"FinFunctor({self.source!r} -> {self.target!r}, {self.object_map})"

    def __matmul__(self, other: "FinFunctor") -> "FinFunctor":
        return compose_functors(self, other)


def functor_violations(F: FinFunctor) -> list[Violation]:
    A, B = F.source, F.target
    V = []
    om, mm = F.omap, F.mmap
    for f in range(A.n_morphisms):
        g = mm[f]
        if B.src[g] != om[A.src[f]] or B.tgt[g] != om[A.tgt[f]]:
            V.append(Violation("NotAFunctor", (A.mor_ids[f],),
                               f"image of {A.mor_ids[f]!r} has the wrong source or target"))
    if V:
        return V
    for x in range(A.n_objects):
        if mm[A.ident[x]] != B.ident[om[x]]:
            V.append(Violation("NotAFunctor", (A.mor_ids[A.ident[x]],), f"identity of {A.objects[x]!r} not preserved"))
    for g, f in A.composable_pairs():
        if mm[A.cm[g][f]] != B.cm[mm[g]][mm[f]]:
            V.append(Violation("NotAFunctor", (A.mor_ids[g], A.mor_ids[f]),
                               f"composite {A.mor_ids[g]!r} . {A.mor_ids[f]!r} not preserved"))
    return V


def validate_functor(raw: dict, source: FinCat, target: FinCat) -> FinFunctor:
    """Validate ``{"object_map": ..., "morphism_map": ...}``.

    Images of identities may be omitted and are filled in.
    """
    V = []
    om_raw = {str(k): str(v) for k, v in raw.get("object_map", {}).items()}
    mm_raw = {str(k): str(v) for k, v in raw.get("morphism_map", {}).items()}
    omap = []
    for x in source.objects:
        y = om_raw.get(x)
        if y is None:
            V.append(Violation("NotAFunctor", (x,), f"object {x!r} has no image"))
        elif y not in target.oidx:
            V.append(Violation("DanglingReference", (x, y), f"image {y!r} of {x!r} is not an object of the target"))
        else:
            omap.append(target.oidx[y])
    for k in om_raw:
        if k not in source.oidx:
            V.append(Violation("DanglingReference", (k,), f"{k!r} is not an object of the source"))
    for k in mm_raw:
        if k not in source.midx:
            V.append(Violation("DanglingReference", (k,), f"{k!r} is not a morphism of the source"))
    if V:
        raise NotAFunctor(V)
    mmap = []
    for f, name in enumerate(source.mor_ids):
        g = mm_raw.get(name)
        if g is None:
            if source.is_id[f]:
                mmap.append(target.ident[omap[source.src[f]]])
                continue
            V.append(Violation("NotAFunctor", (name,), f"morphism {name!r} has no image"))
        elif g not in target.midx:
            V.append(Violation("DanglingReference", (name, g), f"image {g!r} of {name!r} is not a morphism of the target"))
        else:
            mmap.append(target.midx[g])
    if V:
        raise NotAFunctor(V)
    F = FinFunctor(source, target, omap, mmap)
    V = functor_violations(F)
    if V:
        raise NotAFunctor(V)
    return F


def identity_functor(C: FinCat) -> FinFunctor:
    return FinFunctor(C, C, range(C.n_objects), range(C.n_morphisms))


def constant_functor(C: FinCat, D: FinCat, d: str) -> FinFunctor:
    y = D.obj_index(d)
    return FinFunctor(C, D, [y] * C.n_objects, [D.ident[y]] * C.n_morphisms)


def to_terminal(C: FinCat) -> FinFunctor:
    return constant_functor(C, terminal(), "0")


def compose_functors(g: FinFunctor, f: FinFunctor) -> FinFunctor:
    """``g . f``."""
    if f.target != g.source:
        raise SourceTargetMismatch("target of the first functor is not the source of the second")
    return FinFunctor(f.source, g.target, [g.omap[y] for y in f.omap], [g.mmap[m] for m in f.mmap])


def opposite(C: FinCat) -> FinCat:
    M = C.n_morphisms
    cm = [[C.cm[f][g] for f in range(M)] for g in range(M)]
    return FinCat(C.objects, C.mor_ids, C.tgt, C.src, C.ident, cm)


def opposite_functor(F: FinFunctor, source_op: FinCat | None = None, target_op: FinCat | None = None) -> FinFunctor:
    return FinFunctor(source_op or opposite(F.source), target_op or opposite(F.target), F.omap, F.mmap)


def pair_name(x: str, y: str) -> str:
    return f"({x},{y})"


def product(C: FinCat, D: FinCat) -> FinCat:
    """Product category; objects and morphisms are named ``(x,y)``."""
    nD = D.n_objects
    objects = [pair_name(x, y) for x in C.objects for y in D.objects]
    idents = [identity_name(o) for o in objects]
    keys = [(C.ident[x], D.ident[y]) for x in range(C.n_objects) for y in range(nD)]
    mors = []
    for f in range(C.n_morphisms):
        for g in range(D.n_morphisms):
            if C.is_id[f] and D.is_id[g]:
                continue
            keys.append((f, g))
            mors.append((pair_name(C.mor_ids[f], D.mor_ids[g]),
                         C.src[f] * nD + D.src[g], C.tgt[f] * nD + D.tgt[g]))
    index = {k: i for i, k in enumerate(keys)}

    def comp(a, b):
        (f1, g1), (f0, g0) = keys[a], keys[b]
        return index[(C.cm[f1][f0], D.cm[g1][g0])]

    return assemble(objects, idents, mors, comp)


def product_projections(C: FinCat, D: FinCat, P: FinCat | None = None) -> tuple[FinFunctor, FinFunctor]:
    P = P or product(C, D)
    nD = D.n_objects
    omap1 = [i // nD for i in range(P.n_objects)]
    omap2 = [i % nD for i in range(P.n_objects)]
    mm1, mm2 = [], []
    for f in range(C.n_morphisms):
        for g in range(D.n_morphisms):
            if C.is_id[f] and D.is_id[g]:
                continue
            mm1.append(f)
            mm2.append(g)
    mm1 = [C.ident[x] for x in omap1] + mm1
    mm2 = [D.ident[y] for y in omap2] + mm2
    return FinFunctor(P, C, omap1, mm1), FinFunctor(P, D, omap2, mm2)


def product_functor(u: FinFunctor, v: FinFunctor) -> FinFunctor:
    """``u x v : A x A' -> B x B'``."""
    A, A2, B, B2 = u.source, v.source, u.target, v.target
    P, Q = product(A, A2), product(B, B2)
    nA2, nB2 = A2.n_objects, B2.n_objects
    omap = [u.omap[i // nA2] * nB2 + v.omap[i % nA2] for i in range(P.n_objects)]
    qkeys = {}
    for x in range(B.n_objects):
        for y in range(nB2):
            qkeys[(B.ident[x], B2.ident[y])] = x * nB2 + y
    i = Q.n_objects
    for f in range(B.n_morphisms):
        for g in range(B2.n_morphisms):
            if B.is_id[f] and B2.is_id[g]:
                continue
            qkeys[(f, g)] = i
            i += 1
    mmap = [Q.ident[o] for o in omap]
    for f in range(A.n_morphisms):
        for g in range(A2.n_morphisms):
            if A.is_id[f] and A2.is_id[g]:
                continue
            mmap.append(qkeys[(u.mmap[f], v.mmap[g])])
    return FinFunctor(P, Q, omap, mmap)


# ---------------------------------------------------------------------------
# natural transformations and diagrams

class NatTrans:
    """A natural transformation ``source => target`` between parallel functors."""

    __slots__ = ("source", "target", "components")

    def __init__(self, source: FinFunctor, target: FinFunctor, components, check: bool = True):
        self.source = source
        self.target = target
        self.components = tuple(components)
        if check:
            problem = naturality_violation(self)
            if problem is not None:
                raise NotNatural(problem)

    def at(self, x: str) -> str:
        return self.source.target.mor_ids[self.components[self.source.source.obj_index(x)]]

    def __eq__(self, other):
        if not isinstance(other, NatTrans):
            return NotImplemented
        return (self.components == other.components and self.source == other.source
                and self.target == other.target)

    def __hash__(self):
        return hash(self.components)


def naturality_violation(t: NatTrans) -> str | None:
    F, G = t.source, t.target
    A, B = F.source, F.target
    if G.source != A or G.target != B:
        return "functors are not parallel"
    c = t.components
    for x in range(A.n_objects):
        m = c[x]
        if B.src[m] != F.omap[x] or B.tgt[m] != G.omap[x]:
            return f"component at {A.objects[x]!r} has the wrong source or target"
    for k in range(A.n_morphisms):
        x, y = A.src[k], A.tgt[k]
        if B.cm[c[y]][F.mmap[k]] != B.cm[G.mmap[k]][c[x]]:
            return f"naturality square fails at {A.mor_ids[k]!r}"
    return None


def identity_nat(F: FinFunctor) -> NatTrans:
    B = F.target
    return NatTrans(F, F, [B.ident[y] for y in F.omap], check=False)


class CatDiagram:
    """A strict functor from ``index`` to finite categories."""

    __slots__ = ("index", "at_object", "at_arrow")

    def __init__(self, index: FinCat, at_object: Sequence[FinCat], at_arrow: Sequence[FinFunctor],
                 check: bool = True):
        self.index = index
        self.at_object = tuple(at_object)
        self.at_arrow = tuple(at_arrow)
        if check:
            problem = diagram_violation(self)
            if problem is not None:
                raise InvalidDiagram(problem)

    @classmethod
    def from_maps(cls, index: FinCat, objects: dict[str, FinCat], arrows: dict[str, FinFunctor]):
        """Identity arrows may be omitted from ``arrows``."""
        at_object = [objects[x] for x in index.objects]
        at_arrow = []
        for k, name in enumerate(index.mor_ids):
            if name in arrows:
                at_arrow.append(arrows[name])
            elif index.is_id[k]:
                at_arrow.append(identity_functor(at_object[index.src[k]]))
            else:
                raise InvalidDiagram(f"no functor given for arrow {name!r}")
        return cls(index, at_object, at_arrow)

    @classmethod
    def constant(cls, index: FinCat, C: FinCat) -> "CatDiagram":
        idC = identity_functor(C)
        return cls(index, [C] * index.n_objects, [idC] * index.n_morphisms, check=False)

    def obj(self, i: str) -> FinCat:
        return self.at_object[self.index.obj_index(i)]

    def arrow(self, k: str) -> FinFunctor:
        return self.at_arrow[self.index.mor_index(k)]

    def __eq__(self, other):
        if not isinstance(other, CatDiagram):
            return NotImplemented
        return (self.index == other.index and self.at_object == other.at_object
                and self.at_arrow == other.at_arrow)

    def __hash__(self):
        return hash((self.index, self.at_object))


def diagram_violation(D: CatDiagram) -> str | None:
    I = D.index
    if len(D.at_object) != I.n_objects or len(D.at_arrow) != I.n_morphisms:
        return "diagram data does not match the index category"
    for k in range(I.n_morphisms):
        Fk = D.at_arrow[k]
        if Fk.source != D.at_object[I.src[k]] or Fk.target != D.at_object[I.tgt[k]]:
            return f"functor at {I.mor_ids[k]!r} has the wrong source or target"
    for x in range(I.n_objects):
        if D.at_arrow[I.ident[x]] != identity_functor(D.at_object[x]):
            return f"identity of {I.objects[x]!r} is not sent to an identity functor"
    for g, f in I.composable_pairs():
        Fg, Ff, Fgf = D.at_arrow[g], D.at_arrow[f], D.at_arrow[I.cm[g][f]]
        if Fgf.omap != tuple(Fg.omap[y] for y in Ff.omap) or Fgf.mmap != tuple(Fg.mmap[m] for m in Ff.mmap):
            return f"not strictly functorial at {I.mor_ids[g]!r} . {I.mor_ids[f]!r}"
    return None


def precompose_diagram(F: CatDiagram, w: FinFunctor) -> CatDiagram:
    """``F . w`` for ``w : J -> I``."""
    if w.target != F.index:
        raise SourceTargetMismatch("functor does not land in the index of the diagram")
    return CatDiagram(w.source, [F.at_object[i] for i in w.omap], [F.at_arrow[k] for k in w.mmap], check=False)


def is_diagram_morphism(F: CatDiagram, G: CatDiagram, u: Sequence[FinFunctor]) -> bool:
    """Strict naturality ``G(k) . u_i = u_j . F(k)``."""
    I = F.index
    if G.index != I or len(u) != I.n_objects:
        return False
    for i in range(I.n_objects):
        if u[i].source != F.at_object[i] or u[i].target != G.at_object[i]:
            return False
    for k in range(I.n_morphisms):
        i, j = I.src[k], I.tgt[k]
        Gk, Fk = G.at_arrow[k], F.at_arrow[k]
        if tuple(Gk.omap[y] for y in u[i].omap) != tuple(u[j].omap[y] for y in Fk.omap):
            return False
        if tuple(Gk.mmap[m] for m in u[i].mmap) != tuple(u[j].mmap[m] for m in Fk.mmap):
            return False
    return True


# ---------------------------------------------------------------------------
# standard categories

def empty_category() -> FinCat:
    return FinCat((), (), (), (), (), ())


def terminal() -> FinCat:
    """The final category ``e`` with single object ``0``."""
    return assemble(["0"], ["id_0"], [], None)


def discrete(n: int) -> FinCat:
    objects = [str(i) for i in range(n)]
    return assemble(objects, [identity_name(x) for x in objects], [], None)


def simplex(n: int) -> FinCat:
    """The ordinal ``0 -> 1 -> ... -> n``."""
    objects = [str(i) for i in range(n + 1)]
    keys = [(i, i) for i in range(n + 1)]
    mors = []
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            keys.append((i, j))
            mors.append((f"{i}->{j}", i, j))
    index = {k: i for i, k in enumerate(keys)}
    return assemble(objects, [identity_name(x) for x in objects], mors,
                    lambda g, f: index[(keys[f][0], keys[g][1])])


def parallel_pair() -> FinCat:
    return validate_category({"objects": ["0", "1"],
                              "morphisms": [{"id": "a", "src": "0", "tgt": "1"},
                                            {"id": "b", "src": "0", "tgt": "1"}]})


def isomorphism_pair() -> FinCat:
    """Two objects and a unique isomorphism between them."""
    return validate_category({
        "objects": ["0", "1"],
        "morphisms": [{"id": "s", "src": "0", "tgt": "1"}, {"id": "t", "src": "1", "tgt": "0"}],
        "compose": [{"after": "t", "before": "s", "equals": "id_0"},
                    {"after": "s", "before": "t", "equals": "id_1"}],
    })


def monoid(table: Sequence[Sequence[int]], names: Sequence[str] | None = None) -> FinCat:
    """One-object category from a multiplication table with identity element 0.

    ``table[g][f]`` is ``g . f``.
    """
    n = len(table)
    names = list(names) if names else ["id_0"] + [f"m{i}" for i in range(1, n)]
    return assemble(["0"], [names[0]], [(names[i], 0, 0) for i in range(1, n)],
                    lambda g, f: table[g][f])


def point(B: FinCat, b: str) -> FinFunctor:
    """The functor ``e -> B`` picking out ``b``."""
    y = B.obj_index(b)
    return FinFunctor(terminal(), B, [y], [B.ident[y]])


def arrow_functor(B: FinCat, g: str) -> FinFunctor:
    """``simplex(1) -> B`` sending ``0->1`` to ``g``."""
    return chain_functor(B, [g])


def chain_functor(B: FinCat, arrows: Sequence[str]) -> FinFunctor:
    """``simplex(n) -> B`` for a composable chain ``g_0, ..., g_{n-1}``."""
    idx = [B.mor_index(g) for g in arrows]
    for a, b in zip(idx, idx[1:]):
        if B.tgt[a] != B.src[b]:
            raise SourceTargetMismatch("arrows are not composable")
    return chain_functor_i(B, idx)


def chain_functor_i(B: FinCat, idx: Sequence[int], S: FinCat | None = None) -> FinFunctor:
    n = len(idx)
    S = S or simplex(n)
    objs = [B.src[idx[0]]] + [B.tgt[m] for m in idx] if idx else []
    mmap = [B.ident[y] for y in objs]
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            m = idx[i]
            for k in range(i + 1, j):
                m = B.cm[idx[k]][m]
            mmap.append(m)
    return FinFunctor(S, B, objs, mmap)


def simplex_inclusion(n: int, m: int) -> FinFunctor:
    """The initial-segment inclusion ``simplex(n) -> simplex(m)``."""
    S, T = simplex(n), simplex(m)
    mmap = [T.midx[identity_name(x)] for x in S.objects]
    mmap += [T.midx[name] for name in S.mor_ids[S.n_objects:]]
    return FinFunctor(S, T, range(n + 1), mmap)
