"""Single-element extensions via extensible partitions of the flats.

A partition assigns every flat F a class mu(F) in {0, ..., k} (empty
classes allowed); the extension is rho_ext(X|e) = rho(X) + mu(cl(X)).
Valid assignments are characterized by three conditions on flat pairs;
for k=2 an equivalent list of seven conditions is reported by
check_partition for diagnostics.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (
    FlatLattice,
    RankTable,
    closure,
    closure_table,
    flats,
    modular_defect,
)


@dataclass(frozen=True)
class ExtensiblePartition:
    """Class index per flat, aligned with the sorted flat list of the
    parent's lattice."""

    mu: tuple

    def serialize(self) -> str:
        return "".join(map(str, self.mu))


@dataclass(frozen=True)
class ConditionViolation:
    condition: str  # "1".."7" for k=2, "I"/"II"/"III" otherwise
    flats: tuple


def mu_of_set(parent: RankTable, lattice: FlatLattice,
              partition: ExtensiblePartition, x: int) -> int:
    """Class of an arbitrary subset: mu read at its closure."""
    return partition.mu[lattice.index(closure(parent, x))]


def _check_general(parent: RankTable, lattice: FlatLattice, mu):
    """Conditions (I)-(III) for any k."""
    fl = lattice.flats
    m = len(fl)
    idx = {f: i for i, f in enumerate(fl)}
    rho = parent.rho
    for i in range(m):
        for j in range(m):
            f, g = fl[i], fl[j]
            if f & g == f and f != g:  # f subset of g
                if mu[j] > mu[i]:
                    return ConditionViolation("III", (f, g))
                if rho[f] + mu[i] > rho[g] + mu[j]:
                    return ConditionViolation("II", (f, g))
    for i in range(m):
        for j in range(i + 1, m):
            f, g = fl[i], fl[j]
            meet = idx[f & g]
            join = idx[closure(parent, f | g)]
            d = modular_defect(parent, f, g)
            if mu[meet] + mu[join] - d > mu[i] + mu[j]:
                return ConditionViolation("I", (f, g))
    return None


def _check_seven(parent: RankTable, lattice: FlatLattice, mu):
    """The seven-condition specialization for k=2, with per-condition
    diagnostics."""
    fl = lattice.flats
    m = len(fl)
    idx = {f: i for i, f in enumerate(fl)}
    rho = parent.rho
    # (6), (7): M_2 down-closed, M_0 up-closed; (1): no rank+1 flat above
    # an M_2 member may sit in M_0.
    for i in range(m):
        for j in range(m):
            f, g = fl[i], fl[j]
            if not (f & g == f and f != g):
                continue
            if mu[i] == 0 and mu[j] != 0:
                return ConditionViolation("7", (f, g))
            if mu[j] == 2 and mu[i] != 2:
                return ConditionViolation("6", (f, g))
            if mu[i] == 2 and mu[j] == 0 and rho[g] - rho[f] == 1:
                return ConditionViolation("1", (f, g))
    for i in range(m):
        for j in range(i + 1, m):
            f, g = fl[i], fl[j]
            d = modular_defect(parent, f, g)
            meet = mu[idx[f & g]]
            join = mu[idx[closure(parent, f | g)]]
            a, b = mu[i], mu[j]
            if a == 0 and b == 0:
                if d == 0 and meet != 0:
                    return ConditionViolation("2", (f, g))
                if d == 1 and meet == 2:
                    return ConditionViolation("3", (f, g))
            elif a == 1 and b == 1:
                if d == 0 and not (meet == 1 or (meet == 2 and join == 0)):
                    return ConditionViolation("4", (f, g))
            elif {a, b} == {0, 1}:
                if d == 0 and meet == 2:
                    return ConditionViolation("5", (f, g))
    return None


def check_partition(parent: RankTable, mu, lattice: FlatLattice | None = None):
    """Validate a candidate class assignment; None means extensible.

    mu may be an ExtensiblePartition or a plain sequence aligned with the
    sorted flats.
    """
    if lattice is None:
        lattice = flats(parent)
    if isinstance(mu, ExtensiblePartition):
        mu = mu.mu
    if len(mu) != len(lattice):
        raise ValueError("assignment length does not match flat count")
    if any(not 0 <= v <= parent.k for v in mu):
        raise ValueError(f"class indices must lie in 0..{parent.k}")
    if parent.k == 2:
        return _check_seven(parent, lattice, mu)
    return _check_general(parent, lattice, mu)


def _search_order(lattice: FlatLattice):
    """Flat indices, supersets before subsets (popcount descending)."""
    return sorted(range(len(lattice)),
                  key=lambda i: -lattice.flats[i].bit_count())


def _pair_tables(parent: RankTable, lattice: FlatLattice, order):
    """Per flat a, the incomparable pairs (f, g) whose meet is a, with the
    join's closure and modular defect precomputed.  Condition (I) for a
    pair becomes checkable the moment its meet is assigned."""
    fl = lattice.flats
    idx = {f: i for i, f in enumerate(fl)}
    by_meet = [[] for _ in fl]
    for i in range(len(fl)):
        for j in range(i + 1, len(fl)):
            f, g = fl[i], fl[j]
            if f & g == f or f & g == g:
                continue
            by_meet[idx[f & g]].append(
                (i, j, idx[closure(parent, f | g)],
                 modular_defect(parent, f, g))
            )
    supersets = [
        [j for j in range(len(fl)) if fl[i] & fl[j] == fl[i] and i != j]
        for i in range(len(fl))
    ]
    return by_meet, supersets


def enumerate_extensible_partitions(parent: RankTable,
                                    lattice: FlatLattice | None = None,
                                    method: str = "backtrack"):
    """All extensible partitions, sorted by mu-vector.

    method="backtrack" prunes with conditions (I)-(III) as flats are
    assigned supersets-first; method="filter" is the reference path that
    screens every (k+1)^|flats| assignment through check_partition.
    """
    if lattice is None:
        lattice = flats(parent)
    if method == "filter":
        out = [
            ExtensiblePartition(mu)
            for mu in itertools.product(range(parent.k + 1),
                                        repeat=len(lattice))
            if check_partition(parent, mu, lattice) is None
        ]
        out.sort(key=lambda p: p.mu)
        return out
    if method != "backtrack":
        raise ValueError(f"unknown method {method!r}")

    order = _search_order(lattice)
    by_meet, supersets = _pair_tables(parent, lattice, order)
    rho = parent.rho
    fl = lattice.flats
    k = parent.k
    mu = [0] * len(fl)
    out = []

    def assign(pos):
        if pos == len(order):
            out.append(ExtensiblePartition(tuple(mu)))
            return
        a = order[pos]
        lo, hi = 0, k
        ra = rho[fl[a]]
        for b in supersets[a]:
            # supersets are assigned earlier in this order
            if mu[b] > lo:
                lo = mu[b]
            cap = mu[b] + rho[fl[b]] - ra
            if cap < hi:
                hi = cap
        pairs = by_meet[a]
        for v in range(lo, hi + 1):
            ok = True
            for i, j, join, d in pairs:
                if v + mu[join] - d > mu[i] + mu[j]:
                    ok = False
                    break
            if ok:
                mu[a] = v
                assign(pos + 1)
        mu[a] = 0

    assign(0)
    out.sort(key=lambda p: p.mu)
    return out


def extension_builder(parent: RankTable, lattice: FlatLattice):
    """Closure-sharing fast path: a function mapping a mu-vector to the
    extension's rank tuple, for repeated use on one parent."""
    cl = closure_table(parent)
    idx = {f: i for i, f in enumerate(lattice.flats)}
    cl_idx = [idx[c] for c in cl]
    rho = parent.rho
    pairs = list(zip(rho, cl_idx))

    def build(mu):
        return rho + tuple(r + mu[i] for r, i in pairs)

    return build


def extend(parent: RankTable, partition: ExtensiblePartition,
           lattice: FlatLattice | None = None,
           checked: bool = True) -> RankTable:
    """The single-element extension defined by a partition; the new
    element is numbered n+1 (the highest bit)."""
    if lattice is None:
        lattice = flats(parent)
    if checked:
        bad = check_partition(parent, partition, lattice)
        if bad is not None:
            raise ValueError(f"partition is not extensible: "
                             f"condition ({bad.condition}) fails at "
                             f"flats {bad.flats}")
    ext = extension_builder(parent, lattice)(partition.mu)
    return RankTable(parent.n + 1, parent.k, ext)


def extension_flats(parent: RankTable, partition: ExtensiblePartition,
                    lattice: FlatLattice | None = None):
    """Flats of the extension, read off the partition directly:
    F for F outside M_0; F|e for F in M_0; F|e for F in M_i (i>0) with
    no cover G satisfying rho(F)+mu(F) = rho(G)+mu(G)."""
    if lattice is None:
        lattice = flats(parent)
    bad = check_partition(parent, partition, lattice)
    if bad is not None:
        raise ValueError(f"partition is not extensible: "
                         f"condition ({bad.condition}) fails at "
                         f"flats {bad.flats}")
    mu = partition.mu
    rho = parent.rho
    e_bit = 1 << parent.n
    idx = {f: i for i, f in enumerate(lattice.flats)}
    out = []
    for i, f in enumerate(lattice.flats):
        if mu[i] > 0:
            out.append(f)
            tight = any(
                rho[f] + mu[i] == rho[g] + mu[idx[g]]
                for g in lattice.covers[i]
            )
            if not tight:
                out.append(f | e_bit)
        else:
            out.append(f | e_bit)
    out.sort()
    return tuple(out)
