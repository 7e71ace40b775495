"""Canonical labeling of polymatroids and the flat-graph encoding.

The canonical representative is the lexicographically minimal rank-value
sequence (increasing-bitmask order) over all n! relabelings.  For n <= 8
all relabeled tables are materialized at once with precomputed bitmask
permutation matrices; larger n falls back to a pruned prefix search.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import RankTable, bits_of, flats

_FAST_N = 8


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical representative, the relabeling reaching it, and the
    automorphism group order.

    perm[i-1] is the new (1-based) label of old element i.
    """

    table: RankTable
    perm: tuple
    aut_order: int


@dataclass(frozen=True)
class FlatGraph:
    """Colored bipartite graph of ground elements vs flats.

    Ground vertices carry color -1; each flat vertex is a (mask, color)
    pair with color = flat rank.  Placeholder vertices (mask 0, rank r)
    stand in for every rank r < rho(S) with no flat of that rank.
    """

    n: int
    flat_vertices: tuple  # of (mask, color)


def apply_mask_perm(mask: int, perm) -> int:
    """Relabel a bitmask through a 0-based element permutation."""
    out = 0
    for b in bits_of(mask):
        out |= 1 << perm[b]
    return out


def relabel(table: RankTable, perm) -> RankTable:
    """Relabel a table by a 0-based permutation (old index -> new index)."""
    inv = [0] * table.n
    for i, p in enumerate(perm):
        inv[p] = i
    rho = tuple(
        table.rho[apply_mask_perm(m, inv)] for m in range(1 << table.n)
    )
    return RankTable(table.n, table.k, rho)


@lru_cache(maxsize=16)
def _perm_tables(n: int):
    """All n! permutations, their induced bitmask index maps as one
    (n!, 2^n) gather matrix, and the singleton index vector."""
    perms = list(itertools.permutations(range(n)))
    size = 1 << n
    idx = np.empty((len(perms), size), dtype=np.int32)
    for p, perm in enumerate(perms):
        row = idx[p]
        row[0] = 0
        for m in range(1, size):
            low = m & -m
            row[m] = row[m ^ low] | (1 << perm[low.bit_length() - 1])
    perm_arr = np.array(perms, dtype=np.int64).reshape(len(perms), n)
    singles = np.array([1 << j for j in range(n)], dtype=np.int64)
    return perms, idx, perm_arr, singles


def canonical_bytes(rho_bytes: bytes, n: int):
    """(canonical rank sequence as bytes, winning permutation, aut order)
    for a table whose entries all fit in one byte."""
    perms, idx, perm_arr, singles = _perm_tables(n)
    rho = np.frombuffer(rho_bytes, dtype=np.uint8)
    if n >= 2:
        # the lex-min table has non-decreasing singleton ranks (swapping
        # two adjacent labels would otherwise lower the first changed
        # entry), so only permutations sorting the singletons can win;
        # every automorphism of the winner is among them too
        seq = rho[singles][perm_arr]
        keep = np.all(seq[:, :-1] <= seq[:, 1:], axis=1)
        live = np.flatnonzero(keep)
        arr = rho[idx[live]]
    else:
        live = np.arange(len(perms))
        arr = rho[idx]
    buf = arr.tobytes()
    size = 1 << n
    views = [buf[i * size:(i + 1) * size] for i in range(len(live))]
    best = min(views)
    aut = views.count(best)
    win = perms[live[views.index(best)]]
    # gathering through win corresponds to relabeling by its inverse
    sigma = [0] * n
    for j, o in enumerate(win):
        sigma[o] = j
    return best, tuple(sigma), aut


def _canonical_generic(table: RankTable):
    """Prefix-pruned search over relabelings for n beyond the fast path."""
    rho = table.rho
    n = table.n
    best = {"prefix": None, "perm": None, "aut": 0}

    def descend(sel, oldmasks):
        depth = len(sel)
        if depth == n:
            cand = tuple(rho[m] for m in oldmasks)
            if best["prefix"] is None or cand < best["prefix"]:
                best["prefix"] = cand
                best["perm"] = tuple(sel)
                best["aut"] = 1
            elif cand == best["prefix"]:
                best["aut"] += 1
            return
        for e in range(n):
            if e in sel:
                continue
            bit = 1 << e
            new = oldmasks + [m | bit for m in oldmasks]
            if best["prefix"] is not None:
                pref = tuple(rho[m] for m in new)
                if pref > best["prefix"][: len(new)]:
                    continue
            descend(sel + [e], new)

    descend([], [0])
    canon = RankTable(n, table.k, tuple(rho[m] for m in
                                        _masks_for(best["perm"], n)))
    # best["perm"][j] = old element given new label j; invert to old->new
    sigma = [0] * n
    for j, o in enumerate(best["perm"]):
        sigma[o] = j
    return canon, tuple(sigma), best["aut"]


def _masks_for(sel, n):
    masks = [0]
    for e in sel:
        bit = 1 << e
        masks = masks + [m | bit for m in masks]
    return masks


def canonical_form(table: RankTable) -> CanonicalForm:
    """Lex-minimal relabeled table, the relabeling, and aut group order."""
    n = table.n
    if n <= _FAST_N:
        cb, sigma, aut = canonical_bytes(bytes(table.rho), n)
        canon = RankTable(n, table.k, tuple(cb))
    else:
        canon, sigma, aut = _canonical_generic(table)
    return CanonicalForm(canon, tuple(s + 1 for s in sigma), aut)


def isomorphic(a: RankTable, b: RankTable) -> bool:
    if a.n != b.n or a.k != b.k:
        return False
    return canonical_form(a).table.rho == canonical_form(b).table.rho


def labeled_count(n: int, aut_order: int) -> int:
    """Size of the isomorphism class: n!/aut (orbit-stabilizer)."""
    fact = math.factorial(n)
    if fact % aut_order:
        raise ValueError(f"aut order {aut_order} does not divide {n}!")
    return fact // aut_order


def flat_graph(table: RankTable) -> FlatGraph:
    lattice = flats(table)
    verts = list(zip(lattice.flats, lattice.rank_of))
    present = set(lattice.rank_of)
    for r in range(table.rank):
        if r not in present:
            verts.append((0, r))
    verts.sort(key=lambda v: (v[1], v[0]))
    return FlatGraph(table.n, tuple(verts))


def graph_invariant(g: FlatGraph) -> bytes:
    """Relabeling-invariant signature by iterated color refinement.

    Vertices start at their intrinsic colors (-1 for ground, rank for
    flats); each round recolors by (color, sorted neighbor colors) until
    the partition stops refining.  The signature is the sorted key
    multiset of every round: because each round's integer colors are
    ranks within that comparable key list, equal signatures mean the
    whole refinement ran identically on both graphs.
    """
    nv = g.n + len(g.flat_vertices)
    neigh = [[] for _ in range(nv)]
    for fi, (mask, _color) in enumerate(g.flat_vertices):
        v = g.n + fi
        for b in bits_of(mask):
            neigh[b].append(v)
            neigh[v].append(b)
    colors = [-1] * g.n + [c for _, c in g.flat_vertices]
    nclasses = len(set(colors))
    rounds = []
    while True:
        keys = [
            (colors[v], tuple(sorted(colors[u] for u in neigh[v])))
            for v in range(nv)
        ]
        rounds.append(sorted(keys))
        mapping = {key: i for i, key in enumerate(sorted(set(keys)))}
        refined = [mapping[key] for key in keys]
        if len(mapping) == nclasses:
            break
        colors = refined
        nclasses = len(mapping)
    return repr(rounds).encode()
