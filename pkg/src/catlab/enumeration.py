"""Exhaustive generation of finite categories up to isomorphism."""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product as iproduct
from typing import Iterator

import numpy as np
from numba import njit

from .core import BudgetExceeded, FinCat, assemble, identity_name


def hom_size_matrices(n: int, max_morphisms: int) -> list[tuple[tuple[int, ...], ...]]:
    """Hom-set size matrices for ``n`` objects, one per orbit under relabelling.

    Only matrices compatible with composition are kept: a nonempty ``x -> y``
    and ``y -> z`` force a nonempty ``x -> z``.
    """
    if n == 0:
        return [()] if max_morphisms >= 0 else []
    cells = [(x, y) for x in range(n) for y in range(n)]
    budget = max_morphisms - n
    if budget < 0:
        return []
    found = set()
    perms = list(permutations(range(n)))

    def rec(i, left, H):
        if i == len(cells):
            M = [[H[x * n + y] + (1 if x == y else 0) for y in range(n)] for x in range(n)]
            for x, y, z in iproduct(range(n), repeat=3):
                if M[x][y] and M[y][z] and not M[x][z]:
                    return
            canon = min(tuple(tuple(M[p[x]][p[y]] for y in range(n)) for x in range(n)) for p in perms)
            found.add(canon)
            return
        for k in range(left + 1):
            H.append(k)
            rec(i + 1, left - k, H)
            H.pop()

    rec(0, budget, [])
    return sorted(found)


class _Layout:
    """Morphism layout for a fixed hom-size matrix."""

    def __init__(self, H):
        n = len(H)
        self.n = n
        self.H = H
        src = list(range(n))
        tgt = list(range(n))
        blocks = {}
        for x in range(n):
            for y in range(n):
                k = H[x][y] - (1 if x == y else 0)
                blocks[(x, y)] = list(range(len(src), len(src) + k))
                src += [x] * k
                tgt += [y] * k
        self.src, self.tgt, self.blocks = src, tgt, blocks
        self.M = len(src)
        self.homs = {(x, y): ([x] if x == y else []) + blocks[(x, y)] for x in range(n) for y in range(n)}

    def relabellings(self) -> np.ndarray:
        """All morphism permutations induced by automorphisms of the hom-size matrix."""
        n, H = self.n, self.H
        rows = []
        for sigma in permutations(range(n)):
            if any(H[sigma[x]][sigma[y]] != H[x][y] for x in range(n) for y in range(n)):
                continue
            keys = [(x, y) for x in range(n) for y in range(n) if self.blocks[(x, y)]]
            choices = [list(permutations(self.blocks[(sigma[x], sigma[y])])) for x, y in keys]
            for combo in iproduct(*choices):
                pi = list(sigma) + [0] * (self.M - n)
                for (x, y), img in zip(keys, combo):
                    for a, b in zip(self.blocks[(x, y)], img):
                        pi[a] = b
                rows.append(pi)
        return np.array(rows, dtype=np.int64).reshape(len(rows), self.M)


@njit(cache=True)
def _relabel_cmp(T, p, inv, M):
    """Compare the relabelling of ``T`` by ``p`` against ``T``: -1, 0 or 1."""
    for a in range(M):
        for b in range(M):
            v = T[inv[a], inv[b]]
            w = M if v == M else p[v]
            if w != T[a, b]:
                return -1 if w < T[a, b] else 1
    return 0


@njit(cache=True)
def _is_canonical(T, perms, invs, M):
    for r in range(perms.shape[0]):
        if _relabel_cmp(T, perms[r], invs[r], M) < 0:
            return False
    return True


@njit(cache=True)
def _canonical_tables(M, src, tgt, var_g, var_f, dom_ptr, dom, out_ptr, out_idx, inc_ptr, inc_idx,
                      comp0, perms, invs):
    """Backtracking over associative composition tables.

    ``comp0`` holds the composites forced by identities, ``M`` marks an
    undefined entry.  Only tables that are lexicographically least among
    their relabellings are kept, so each isomorphism class appears once.
    """
    comp = comp0.copy()
    nv = var_g.shape[0]
    revg = np.empty((M + 1, nv + 1), dtype=np.int64)
    revf = np.empty((M + 1, nv + 1), dtype=np.int64)
    revn = np.zeros(M + 1, dtype=np.int64)
    pos = np.full(nv + 1, -1, dtype=np.int64)
    cap = 64
    found = np.empty((cap, M, M), dtype=np.int8)
    nfound = 0
    i = 0
    while i >= 0:
        if i == nv:
            if _is_canonical(comp, perms, invs, M):
                if nfound == cap:
                    bigger = np.empty((cap * 2, M, M), dtype=np.int8)
                    bigger[:cap] = found
                    found = bigger
                    cap *= 2
                for a in range(M):
                    for b in range(M):
                        found[nfound, a, b] = comp[a, b]
                nfound += 1
            i -= 1
            continue
        g = var_g[i]
        f = var_f[i]
        if pos[i] >= 0:
            revn[comp[g, f]] -= 1
            comp[g, f] = M
        pos[i] += 1
        ok = False
        while dom_ptr[i] + pos[i] < dom_ptr[i + 1]:
            v = dom[dom_ptr[i] + pos[i]]
            comp[g, f] = v
            ok = True
            # (h g) f = h (g f)
            for k in range(out_ptr[tgt[g]], out_ptr[tgt[g] + 1]):
                h = out_idx[k]
                b = comp[h, g]
                if b == M:
                    continue
                l = comp[h, v]
                r = comp[b, f]
                if l != M and r != M and l != r:
                    ok = False
                    break
            if ok:
                # g (f y) = (g f) y
                for k in range(inc_ptr[src[f]], inc_ptr[src[f] + 1]):
                    y = inc_idx[k]
                    a = comp[f, y]
                    if a == M:
                        continue
                    l = comp[g, a]
                    r = comp[v, y]
                    if l != M and r != M and l != r:
                        ok = False
                        break
            if ok:
                # f = g2 f2 known: (g g2) f2 must equal v
                for k in range(revn[f]):
                    b = comp[g, revg[f, k]]
                    if b == M:
                        continue
                    r = comp[b, revf[f, k]]
                    if r != M and r != v:
                        ok = False
                        break
            if ok:
                # g = h2 g2 known: h2 (g2 f) must equal v
                for k in range(revn[g]):
                    a = comp[revf[g, k], f]
                    if a == M:
                        continue
                    l = comp[revg[g, k], a]
                    if l != M and l != v:
                        ok = False
                        break
            if ok:
                revg[v, revn[v]] = g
                revf[v, revn[v]] = f
                revn[v] += 1
                break
            comp[g, f] = M
            pos[i] += 1
        if ok:
            i += 1
            pos[i] = -1
        else:
            pos[i] = -1
            i -= 1
    return found[:nfound]


@njit(cache=True)
def _least_relabelling(T, perms, invs, M):
    best = T.copy()
    cur = np.empty_like(T)
    for r in range(perms.shape[0]):
        p = perms[r]
        inv = invs[r]
        for a in range(M):
            for b in range(M):
                v = T[inv[a], inv[b]]
                cur[a, b] = M if v == M else p[v]
        smaller = False
        for a in range(M * M):
            x = cur[a // M, a % M]
            y = best[a // M, a % M]
            if x != y:
                smaller = x < y
                break
        if smaller:
            best[:, :] = cur
    return best


def _csr(lists):
    ptr = np.zeros(len(lists) + 1, dtype=np.int64)
    for i, l in enumerate(lists):
        ptr[i + 1] = ptr[i] + len(l)
    idx = np.array([m for l in lists for m in l], dtype=np.int64)
    return ptr, idx


def _inverse_perms(perms: np.ndarray) -> np.ndarray:
    R, M = perms.shape
    inv = np.empty_like(perms)
    inv[np.arange(R)[:, None], perms] = np.arange(M)[None, :]
    return inv


def _layout_tables(layout: _Layout) -> list[np.ndarray]:
    """One composition table per isomorphism class with this hom-size matrix."""
    n, M = layout.n, layout.M
    if M == 0:
        return [np.zeros((0, 0), dtype=np.int8)]
    src, tgt = layout.src, layout.tgt
    out = [[m for m in range(n, M) if src[m] == x] for x in range(n)]
    inc = [[m for m in range(n, M) if tgt[m] == x] for x in range(n)]
    comp0 = np.full((M, M), M, dtype=np.int64)
    for f in range(M):
        comp0[tgt[f], f] = f
        comp0[f, src[f]] = f
    variables = [(g, f) for f in range(n, M) for g in out[tgt[f]]]
    dom_ptr, dom = _csr([layout.homs[(src[f], tgt[g])] for g, f in variables])
    out_ptr, out_idx = _csr(out)
    inc_ptr, inc_idx = _csr(inc)
    perms = layout.relabellings()
    found = _canonical_tables(
        M, np.array(src, dtype=np.int64), np.array(tgt, dtype=np.int64),
        np.array([g for g, _ in variables], dtype=np.int64),
        np.array([f for _, f in variables], dtype=np.int64),
        dom_ptr, dom, out_ptr, out_idx, inc_ptr, inc_idx, comp0, perms, _inverse_perms(perms))
    return sorted(found, key=lambda T: T.tobytes())


def _category_from_table(layout: _Layout, T: np.ndarray) -> FinCat:
    n, M = layout.n, layout.M
    objects = [str(x) for x in range(n)]
    mors = [(f"f{m - n + 1}", layout.src[m], layout.tgt[m]) for m in range(n, M)]
    Tl = T.tolist()
    return assemble(objects, [identity_name(x) for x in objects], mors, lambda g, f: Tl[g][f])


def enumerate_categories(max_objects: int, max_morphisms: int, limit: int | None = None) -> Iterator[FinCat]:
    """Every finite category within the bounds, once per isomorphism class.

    Morphism counts include identities.  Order: by object count, morphism
    count, hom-size matrix, then canonical code.
    """
    produced = 0
    for n in range(max_objects + 1):
        for total in range(n, max_morphisms + 1):
            if n == 0 and total > 0:
                break
            for cat in _categories_with(n, total):
                produced += 1
                if limit is not None and produced > limit:
                    raise BudgetExceeded(f"more than {limit} categories")
                yield cat


@lru_cache(maxsize=None)
def _categories_with(n: int, total: int) -> tuple[FinCat, ...]:
    out = []
    for H in hom_size_matrices(n, total):
        if sum(map(sum, H)) != total:
            continue
        layout = _Layout(H)
        out.extend(_category_from_table(layout, T) for T in _layout_tables(layout))
    return tuple(out)


def canonical_code(C: FinCat) -> tuple:
    """An isomorphism-complete invariant: equal codes iff isomorphic."""
    n = C.n_objects
    H0 = tuple(tuple(len(C.homs.get((x, y), ())) for y in range(n)) for x in range(n))
    best = None
    for sigma in permutations(range(n)):
        H = tuple(tuple(H0[sigma[x]][sigma[y]] for y in range(n)) for x in range(n))
        if best is None or H < best[0]:
            best = (H, [sigma])
        elif H == best[0]:
            best[1].append(sigma)
    if n == 0:
        return ((), b"")
    H, sigmas = best
    layout = _Layout(H)
    codes = []
    for sigma in sigmas:
        # sigma[x] is the original object placed at position x
        pi = [0] * C.n_morphisms
        for x in range(n):
            pi[C.ident[sigma[x]]] = x
        for x in range(n):
            for y in range(n):
                orig = [m for m in C.homs.get((sigma[x], sigma[y]), ()) if not C.is_id[m]]
                for m, slot in zip(orig, layout.blocks[(x, y)]):
                    pi[m] = slot
        M = layout.M
        T = np.full((M, M), M, dtype=np.int64)
        for g, f in C.composable_pairs():
            T[pi[g], pi[f]] = pi[C.cm[g][f]]
        perms = layout.relabellings()
        codes.append(_least_relabelling(T, perms, _inverse_perms(perms), M).astype(np.int8).tobytes())
    return (H, min(codes))
