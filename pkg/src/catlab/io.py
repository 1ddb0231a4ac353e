"""JSON documents for categories, functors, diagrams, squares and natural transformations."""
from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from typing import Any

from .core import (
    CatDiagram, CatlabError, FinCat, FinFunctor, NatTrans, identity_name, validate_category, validate_functor,
)

FORMAT_VERSION = 1
KINDS = ("category", "functor", "diagram", "square", "nat-trans")


class DocumentSyntaxError(CatlabError, SyntaxError):
    """Malformed document; carries 1-based ``line``/``column`` and the expected tokens."""

    def __init__(self, message: str, line: int = 0, column: int = 0, expected: frozenset = frozenset()):
        super().__init__(f"{message} (line {line}, column {column})")
        self.msg_text = message
        self.line = line
        self.column = column
        self.expected = frozenset(expected)


class UnknownKind(CatlabError):
    pass


class VersionUnsupported(CatlabError):
    pass


@dataclass
class DocumentEnvelope:
    kind: str
    format_version: int
    payload: Any
    refs: dict = field(default_factory=dict, compare=False)   # file references kept for re-serialization


@dataclass(frozen=True, eq=False)
class SquareDoc:
    """A commuting square ``u v = w u'`` as read from a document."""

    u: FinFunctor
    w: FinFunctor
    u_prime: FinFunctor
    v: FinFunctor

    def __eq__(self, other):
        return isinstance(other, SquareDoc) and (self.u, self.w, self.u_prime, self.v) == (
            other.u, other.w, other.u_prime, other.v)


# ---------------------------------------------------------------------------
# parsing

_EXPECT = {
    "Expecting ',' delimiter": {","},
    "Expecting ':' delimiter": {":"},
    "Expecting value": {"value"},
    "Expecting property name enclosed in double quotes": {"string"},
    "Extra data": {"end of input"},
    "Unterminated string starting at": {'"'},
}


def _position(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


class _Dup(Exception):
    def __init__(self, key):
        self.key = key


def _no_dup_pairs(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise _Dup(k)
        out[k] = v
    return out


def _load(text: str) -> dict:
    try:
        data = json.loads(text, object_pairs_hook=_no_dup_pairs)
    except json.JSONDecodeError as exc:
        expected = next((v for k, v in _EXPECT.items() if exc.msg.startswith(k)), set())
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno, frozenset(expected)) from None
    except _Dup as dup:
        line, col = _locate(text, f'"{dup.key}"', 2)
        raise DocumentSyntaxError(f"duplicate key {dup.key!r}", line, col, frozenset({"new key"})) from None
    if not isinstance(data, dict):
        raise DocumentSyntaxError("document must be a JSON object", 1, 1, frozenset({"{"}))
    return data


def _locate(text: str, needle: str, occurrence: int) -> tuple[int, int]:
    pos = -1
    for _ in range(occurrence):
        pos = text.find(needle, pos + 1)
        if pos < 0:
            return 0, 0
    return _position(text, pos)


def _check_duplicates(text: str, data: dict) -> None:
    """Duplicate object or morphism identifiers are reported as syntax errors."""
    seen: set = set()
    for x in data.get("objects", []):
        if x in seen:
            pattern = re.compile(r'"%s"' % re.escape(str(x)))
            hits = [m.start() for m in pattern.finditer(text)]
            line, col = _position(text, hits[1]) if len(hits) > 1 else (0, 0)
            raise DocumentSyntaxError(f"duplicate object id {x!r}", line, col, frozenset({"unique id"}))
        seen.add(x)
    seen = set()
    for e in data.get("morphisms", []):
        mid = e.get("id") if isinstance(e, dict) else None
        if mid in seen:
            pattern = re.compile(r'"id"\s*:\s*"%s"' % re.escape(str(mid)))
            hits = [m.start() for m in pattern.finditer(text)]
            line, col = _position(text, hits[1]) if len(hits) > 1 else (0, 0)
            raise DocumentSyntaxError(f"duplicate morphism id {mid!r}", line, col, frozenset({"unique id"}))
        seen.add(mid)


def _header(data: dict, want: str | None = None) -> str:
    kind = data.get("kind")
    if kind not in KINDS:
        raise UnknownKind(f"unknown document kind {kind!r}")
    if want is not None and kind != want:
        raise UnknownKind(f"expected a {want} document, got {kind!r}")
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise VersionUnsupported(f"format_version {version!r} is not supported")
    return kind


class _Reader:
    def __init__(self, base_dir: str | None):
        self.base_dir = base_dir or "."
        self.refs: dict = {}

    def category_ref(self, ref, slot: str) -> FinCat:
        if isinstance(ref, str):
            path = os.path.join(self.base_dir, ref)
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
            self.refs[slot] = ref
            return parse(text, os.path.dirname(path)).payload
        if not isinstance(ref, dict):
            raise DocumentSyntaxError(f"{slot} must be a path or a category document", 0, 0,
                                      frozenset({"string", "object"}))
        _header(ref, "category")
        return category_from_data(ref)

    def functor(self, data: dict, slot: str, source: FinCat | None = None,
                target: FinCat | None = None) -> FinFunctor:
        if source is None:
            source = self.category_ref(data.get("source"), f"{slot}.source")
        if target is None:
            target = self.category_ref(data.get("target"), f"{slot}.target")
        return validate_functor(data, source, target)


def category_from_data(data: dict) -> FinCat:
    return validate_category({k: data[k] for k in ("objects", "morphisms", "compose", "identity") if k in data})


def parse(text: str, base_dir: str | None = None) -> DocumentEnvelope:
    """Parse and validate one document; functor documents may name category
    files relative to ``base_dir``."""
    data = _load(text)
    kind = _header(data)
    _check_duplicates(text, data)
    reader = _Reader(base_dir)
    if kind == "category":
        payload: Any = category_from_data(data)
    elif kind == "functor":
        payload = reader.functor(data, "functor")
    elif kind == "nat-trans":
        F = reader.functor(data["source"], "source")
        G = reader.functor(data["target"], "target", F.source, F.target)
        comps = {str(k): str(v) for k, v in data.get("components", {}).items()}
        B = F.target
        payload = NatTrans(F, G, [B.mor_index(comps[x]) for x in F.source.objects])
    elif kind == "diagram":
        index = reader.category_ref(data.get("index"), "index")
        objects = {x: reader.category_ref(c, f"objects.{x}") for x, c in data.get("objects", {}).items()}
        arrows = {}
        for k, doc in data.get("arrows", {}).items():
            m = index.mor_index(k)
            arrows[k] = validate_functor(doc, objects[index.objects[index.src[m]]],
                                         objects[index.objects[index.tgt[m]]])
        payload = CatDiagram.from_maps(index, objects, arrows)
    else:
        parts = {name: reader.functor(data[name], name) for name in ("u", "w", "u_prime", "v")}
        payload = SquareDoc(**parts)
        if payload.u @ payload.v != payload.w @ payload.u_prime:
            raise CatlabError("square does not commute")
    return DocumentEnvelope(kind, data["format_version"], payload, reader.refs)


def read(path: str) -> DocumentEnvelope:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), os.path.dirname(os.path.abspath(path)))


# ---------------------------------------------------------------------------
# serialization

def _canonical_identities(C: FinCat) -> bool:
    return all(C.mor_ids[C.ident[x]] == identity_name(o) for x, o in enumerate(C.objects))


def category_data(C: FinCat) -> dict:
    o, m = C.objects, C.mor_ids
    canonical = _canonical_identities(C)
    keep = [f for f in range(C.n_morphisms) if not (canonical and C.is_id[f])]
    data: dict = {
        "kind": "category",
        "format_version": FORMAT_VERSION,
        "objects": list(o),
        "morphisms": [{"id": m[f], "src": o[C.src[f]], "tgt": o[C.tgt[f]]} for f in keep],
    }
    compose = []
    for f in keep:
        for g in C.out[C.tgt[f]]:
            if canonical and C.is_id[g]:
                continue
            compose.append({"after": m[g], "before": m[f], "equals": m[C.cm[g][f]]})
    data["compose"] = compose
    if not canonical:
        data["identity"] = {o[x]: m[C.ident[x]] for x in range(C.n_objects)}
    return data


def _maps(F: FinFunctor) -> dict:
    A, B = F.source, F.target
    return {
        "object_map": {A.objects[x]: B.objects[y] for x, y in enumerate(F.omap)},
        "morphism_map": {A.mor_ids[f]: B.mor_ids[g] for f, g in enumerate(F.mmap) if not A.is_id[f]},
    }


def functor_data(F: FinFunctor, refs: dict | None = None, slot: str = "functor") -> dict:
    refs = refs or {}
    data = {"kind": "functor", "format_version": FORMAT_VERSION}
    for end, C in (("source", F.source), ("target", F.target)):
        data[end] = refs.get(f"{slot}.{end}") or category_data(C)
    data.update(_maps(F))
    return data


def diagram_data(D: CatDiagram, refs: dict | None = None) -> dict:
    refs = refs or {}
    I = D.index
    return {
        "kind": "diagram",
        "format_version": FORMAT_VERSION,
        "index": refs.get("index") or category_data(I),
        "objects": {x: refs.get(f"objects.{x}") or category_data(D.at_object[i]) for i, x in enumerate(I.objects)},
        "arrows": {I.mor_ids[k]: _maps(D.at_arrow[k]) for k in range(I.n_morphisms) if not I.is_id[k]},
    }


def _to_data(kind: str, payload, refs: dict) -> dict:
    if kind == "category":
        return category_data(payload)
    if kind == "functor":
        return functor_data(payload, refs)
    if kind == "diagram":
        return diagram_data(payload, refs)
    if kind == "nat-trans":
        B = payload.source.target
        return {"kind": kind, "format_version": FORMAT_VERSION,
                "source": functor_data(payload.source, refs, "source"),
                "target": functor_data(payload.target, refs, "target"),
                "components": {x: B.mor_ids[c] for x, c in zip(payload.source.source.objects, payload.components)}}
    if kind == "square":
        out = {"kind": kind, "format_version": FORMAT_VERSION}
        for name in ("u", "w", "u_prime", "v"):
            out[name] = functor_data(getattr(payload, name), refs, name)
        return out
    raise UnknownKind(kind)


def kind_of(obj) -> str:
    if isinstance(obj, FinCat):
        return "category"
    if isinstance(obj, FinFunctor):
        return "functor"
    if isinstance(obj, CatDiagram):
        return "diagram"
    if isinstance(obj, NatTrans):
        return "nat-trans"
    if all(hasattr(obj, a) for a in ("u", "w", "u_prime", "v")):
        return "square"
    raise UnknownKind(type(obj).__name__)


def dumps(data: dict) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def serialize(doc) -> str:
    """Canonical text: sorted keys, two-space indent, UTF-8, LF, trailing newline.

    Accepts an envelope or a bare payload.
    """
    if isinstance(doc, DocumentEnvelope):
        return dumps(_to_data(doc.kind, doc.payload, doc.refs))
    return dumps(_to_data(kind_of(doc), doc, {}))


def write(path: str, doc) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(doc))


def envelope(obj) -> DocumentEnvelope:
    return DocumentEnvelope(kind_of(obj), FORMAT_VERSION, obj)
