"""Slow, independent enumeration of small categories used to cross-check the generator.

Every (src, tgt) assignment and every composition table is tried; tables
that are unital and associative are kept and reduced to a brute-force
canonical form (minimum over all object and morphism relabellings).
Nothing here shares code with the fast generator.
"""
from __future__ import annotations

import itertools
from typing import Iterator

from .core import FinCat


def _tables(n: int, m: int) -> Iterator[tuple[list[int], list[int], dict]]:
    """Unital associative tables with identities ``0..n-1`` and ``m`` morphisms in all."""
    extra = m - n
    for ends in itertools.product(range(n * n), repeat=extra):
        src = list(range(n)) + [e // n for e in ends]
        tgt = list(range(n)) + [e % n for e in ends]
        hom: dict = {}
        for f in range(m):
            hom.setdefault((src[f], tgt[f]), []).append(f)
        free = [(g, f) for f in range(n, m) for g in range(n, m) if tgt[f] == src[g]]
        choices = [hom[(src[f], tgt[g])] for g, f in free]
        for values in itertools.product(*choices):
            comp = {}
            for f in range(m):
                for g in range(m):
                    if tgt[f] == src[g]:
                        if g < n:
                            comp[(g, f)] = f
                        elif f < n:
                            comp[(g, f)] = g
            comp.update(zip(free, values))
            if _associative(comp, src, tgt, m):
                yield src, tgt, comp


def _associative(comp, src, tgt, m) -> bool:
    for (g, f), gf in comp.items():
        for h in range(m):
            if src[h] == tgt[g] and comp[(h, gf)] != comp[(comp[(h, g)], f)]:
                return False
    return True


def oracle_code(n: int, src, tgt, comp) -> tuple:
    """Lexicographically least relabelled table over all object/morphism bijections."""
    m = len(src)
    best = None
    for sigma in itertools.permutations(range(n)):
        s2 = [sigma[x] for x in src]
        t2 = [sigma[x] for x in tgt]
        for pi in itertools.permutations(range(m)):
            # pi sends old morphism index to new index
            key_s = [0] * m
            key_t = [0] * m
            for f in range(m):
                key_s[pi[f]] = s2[f]
                key_t[pi[f]] = t2[f]
            table = [[-1] * m for _ in range(m)]
            for (g, f), h in comp.items():
                table[pi[g]][pi[f]] = pi[h]
            code = (n, m, tuple(key_s), tuple(key_t), tuple(map(tuple, table)))
            if best is None or code < best:
                best = code
    return best


def code_of(C: FinCat) -> tuple:
    comp = {(g, f): C.cm[g][f] for g in range(C.n_morphisms) for f in range(C.n_morphisms) if C.cm[g][f] >= 0}
    return oracle_code(C.n_objects, C.src, C.tgt, comp)


def oracle_classes(max_objects: int, max_morphisms: int) -> set[tuple]:
    """Iso classes of categories within bounds, by exhaustive table search."""
    out = {(0, 0, (), (), ())}
    for n in range(1, max_objects + 1):
        for m in range(n, max_morphisms + 1):
            for src, tgt, comp in _tables(n, m):
                out.add(oracle_code(n, src, tgt, comp))
    return out


def oracle_count(max_objects: int, max_morphisms: int) -> int:
    return len(oracle_classes(max_objects, max_morphisms))
