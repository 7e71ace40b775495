"""Independent brute-force verification of the catalogs.

Labeled polymatroids are counted by direct depth-first assignment of the
rank-table entries in increasing-bitmask order, pruning with the local
submodular inequalities, the monotone step bounds, and the cardinality
cap.  Nothing here shares logic with the canonical-deletion generator
beyond the core table type.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import RankTable, popcount


class NodeBudgetExceeded(RuntimeError):
    pass


def _bounds(rho, m, n, k):
    """Feasible [lo, hi] for rho[m] once every proper subset is fixed:
    monotone steps from below, step cap and local submodularity from
    above, and the k|m| cardinality cap."""
    lo, hi = 0, k * popcount(m)
    sub = m
    singles = []
    while sub:
        b = sub & -sub
        singles.append(b)
        sub ^= b
    for f in singles:
        v = rho[m ^ f]
        if v > lo:
            lo = v
        cap = v + k
        if cap < hi:
            hi = cap
    for i, f in enumerate(singles):
        for g in singles[i + 1:]:
            cap = rho[m ^ f] + rho[m ^ g] - rho[m ^ f ^ g]
            if cap < hi:
                hi = cap
    return lo, hi


def brute_labeled_count(n: int, k: int, order: str = "forward",
                        node_budget: int | None = None):
    """(total, per-rank counts) of all valid labeled k-polymatroid tables
    on {1, ..., n}.

    order="reversed" assigns table entries largest-bitmask-first within
    each cardinality-compatible schedule; the counts must not change.
    """
    size = 1 << n
    if order == "forward":
        masks = list(range(1, size))
    elif order == "reversed":
        # any order with subsets before supersets is admissible
        masks = sorted(range(1, size), key=lambda m: (popcount(m), -m))
    else:
        raise ValueError(f"unknown order {order!r}")
    rho = [0] * size
    per_rank = [0] * (k * n + 1)
    nodes = 0
    full = size - 1

    def assign(i):
        nonlocal nodes
        if i == len(masks):
            per_rank[rho[full]] += 1
            return
        m = masks[i]
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise NodeBudgetExceeded(f"exceeded {node_budget} search nodes")
        lo, hi = _bounds(rho, m, n, k)
        if popcount(m) == 1 and hi > k:
            hi = k
        for v in range(lo, hi + 1):
            rho[m] = v
            assign(i + 1)

    assign(0)
    return sum(per_rank), per_rank


def brute_extensions(parent: RankTable):
    """All valid single-element extension tables of a labeled parent, by
    the same depth-first constraint search with the parent half fixed."""
    n, k = parent.n, parent.k
    size = 1 << (n + 1)
    e_bit = 1 << n
    rho = list(parent.rho) + [0] * (size // 2)
    masks = sorted(
        (m | e_bit for m in range(size // 2)), key=popcount
    )
    out = []

    def assign(i):
        if i == len(masks):
            out.append(RankTable(n + 1, k, tuple(rho)))
            return
        m = masks[i]
        lo, hi = _bounds(rho, m, n + 1, k)
        if popcount(m) == 1 and hi > k:
            hi = k
        for v in range(lo, hi + 1):
            rho[m] = v
            assign(i + 1)

    assign(0)
    return out


@dataclass
class CrossCheckReport:
    rows: list  # (n, brute_total, catalog_labeled, brute_classes, catalog_size)
    extension_rows: list  # (n, parents_checked, mismatches)
    ok: bool
    first_witness: str | None

    def as_text(self):
        lines = ["n brute_labeled catalog_labeled brute_classes catalog_size"]
        for r in self.rows:
            lines.append(" ".join(map(str, r)))
        lines.append("n parents_checked extension_mismatches")
        for r in self.extension_rows:
            lines.append(" ".join(map(str, r)))
        lines.append("ok" if self.ok else f"FAIL: {self.first_witness}")
        return "\n".join(lines) + "\n"

    def as_csv(self):
        lines = ["n,brute_labeled,catalog_labeled,brute_classes,catalog_size"]
        for r in self.rows:
            lines.append(",".join(map(str, r)))
        return "\n".join(lines) + "\n"


def cross_check(catalogs, n_max: int | None = None,
                extension_n_max: int = 3) -> CrossCheckReport:
    """Compare the catalogs against brute force, per n:
    labeled totals, isomorphism-class counts, and (up to extension_n_max)
    per-parent extension sets versus the partition-generated ones."""
    from .extensions import enumerate_extensible_partitions
    from .extensions import extend as build_extension

    cats = {c.n: c for c in catalogs}
    if n_max is None:
        n_max = max(cats) if cats else -1
    rows = []
    ext_rows = []
    ok = True
    witness = None
    for n in range(n_max + 1):
        cat = cats.get(n)
        if cat is None:
            ok = False
            witness = witness or f"missing catalog for n={n}"
            continue
        total, _per_rank = brute_labeled_count(n, cat.k)
        cat_labeled = cat.labeled_total()
        classes = _brute_class_count(n, cat.k)
        rows.append((n, total, cat_labeled, classes, len(cat.entries)))
        if ok and (total != cat_labeled or classes != len(cat.entries)):
            ok = False
            witness = f"count mismatch at n={n}"
    for n in range(min(n_max, extension_n_max) + 1):
        cat = cats.get(n)
        if cat is None:
            continue
        mism = 0
        for entry in cat.entries:
            brute = {t.rho for t in brute_extensions(entry.table)}
            parts = enumerate_extensible_partitions(entry.table)
            built = {
                build_extension(entry.table, p, checked=False).rho
                for p in parts
            }
            if brute != built:
                mism += 1
                if ok:
                    ok = False
                    witness = (f"extension mismatch at n={n}, "
                               f"parent {entry.table.rho}")
        ext_rows.append((n, len(cat.entries), mism))
    return CrossCheckReport(rows, ext_rows, ok, witness)


def _brute_class_count(n: int, k: int) -> int:
    """Isomorphism classes by grouping the brute enumeration under
    canonical labeling (no canonical-deletion logic involved)."""
    from . import canon

    if n == 0:
        return 1
    seen = set()
    size = 1 << n
    masks = sorted(range(1, size), key=popcount)
    rho = [0] * size

    def assign(i):
        if i == len(masks):
            cb, _s, _a = canon.canonical_bytes(bytes(rho), n)
            seen.add(cb)
            return
        m = masks[i]
        lo, hi = _bounds(rho, m, n, k)
        if popcount(m) == 1 and hi > k:
            hi = k
        for v in range(lo, hi + 1):
            rho[m] = v
            assign(i + 1)

    assign(0)
    return len(seen)
