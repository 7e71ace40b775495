"""Acceptance gate: one test per criterion, each printing a single
pass/fail line (run with -s to see the lines for passing tests).

Criterion 3 builds the n=6 catalog once (a few minutes, single core).
Criterion 10 reproduces the n=7 totals only when POLYCAT_LONG_RUN is
set; that run takes days and is skipped otherwise.
"""

import itertools
import math
import os

import pytest

from polycat import k_dual
from polycat.canon import apply_mask_perm, flat_graph, relabel
from polycat.core import closure, flats
from polycat.extensions import enumerate_extensible_partitions, extend
from polycat.gen import (
    duality_check,
    filter_count,
    generate_next,
    generate_next_stream,
)
from polycat.oracle import brute_extensions, brute_labeled_count

UNLABELED_BY_RANK = {
    0: [1],
    1: [1, 1, 1],
    2: [1, 2, 4, 2, 1],
    3: [1, 3, 10, 12, 10, 3, 1],
    4: [1, 4, 21, 49, 78, 49, 21, 4, 1],
    5: [1, 5, 39, 172, 584, 778, 584, 172, 39, 5, 1],
    6: [1, 6, 68, 573, 5236, 18033, 46661, 18033, 5236, 573, 68, 6, 1],
}
LABELED_TOTALS = {2: 14, 3: 115, 4: 2040, 5: 109707, 6: 39445994}
FILTER_COUNTS = {1: 1, 2: 2, 3: 8, 4: 51, 5: 696, 6: 49121}


def _report(num, ok, detail=""):
    suffix = f" ({detail})" if detail and not ok else ""
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'}{suffix}")
    assert ok, f"criterion {num} failed {suffix}"


@pytest.fixture(scope="module")
def cats6(cats5):
    import time

    start = time.monotonic()
    nxt, _stats = generate_next(cats5[5])
    elapsed = time.monotonic() - start
    return list(cats5) + [nxt], elapsed


def test_criterion_01_unlabeled_totals(cats5):
    totals = [len(c) for c in cats5]
    _report(1, totals == [1, 3, 10, 40, 228, 2380], f"got {totals}")


def test_criterion_02_per_rank_histograms(cats5):
    ok = all(
        cats5[n].rank_counts() == UNLABELED_BY_RANK[n] for n in range(6)
    )
    _report(2, ok)


def test_criterion_03_n6_catalog(cats6):
    cats, elapsed = cats6
    ok = (len(cats[6]) == 94495
          and cats[6].rank_counts() == UNLABELED_BY_RANK[6]
          and elapsed < 3600)
    _report(3, ok, f"count={len(cats[6])} time={elapsed:.0f}s")


def test_criterion_04_labeled_totals(cats6):
    cats, _ = cats6
    got = {n: cats[n].labeled_total() for n in LABELED_TOTALS}
    _report(4, got == LABELED_TOTALS, f"got {got}")


def test_criterion_05_oracle_equivalence(cats5):
    n_top = 5 if os.environ.get("POLYCAT_SKIP_N5") is None else 4
    ok = all(
        brute_labeled_count(n, 2)[0] == cats5[n].labeled_total()
        for n in range(n_top + 1)
    )
    _report(5, ok)


def test_criterion_06_extension_bijection(cats5):
    ok = True
    for n in range(4):
        for e in cats5[n].entries:
            brute = {t.rho for t in brute_extensions(e.table)}
            built = {
                extend(e.table, p, checked=False).rho
                for p in enumerate_extensible_partitions(e.table)
            }
            ok = ok and brute == built
    _report(6, ok)


def test_criterion_07_duality(cats6):
    cats, _ = cats6
    ok = True
    for cat in cats:
        for e in cat.entries:
            ok = ok and k_dual(k_dual(e.table)).rho == e.table.rho
        ok = ok and duality_check(cat) is None
    _report(7, ok)


def test_criterion_08_filter_counts(cats6):
    cats, _ = cats6
    got = {n: filter_count(cats[n]) for n in FILTER_COUNTS}
    _report(8, got == FILTER_COUNTS, f"got {got}")


def _colored_iso_count(ga, gb):
    """Ground permutations carrying one flat graph onto the other; any
    colored-graph isomorphism restricts to one because a flat vertex's
    neighborhood is exactly its mask."""
    target = set(gb.flat_vertices)
    return sum(
        {(apply_mask_perm(m, p), c) for m, c in ga.flat_vertices} == target
        for p in itertools.permutations(range(ga.n))
    )


def test_criterion_09_property_suites(cats5):
    ok = True
    # closure idempotence/monotonicity and flat intersection-closure
    for cat in cats5[:5]:
        for e in cat.entries:
            t = e.table
            for x in range(1 << t.n):
                cx = closure(t, x)
                ok = ok and x & cx == x and closure(t, cx) == cx
            fs = set(flats(t).flats)
            ok = ok and all(f & g in fs for f in fs for g in fs)
    # canonical-form relabel invariance, exhaustive at n <= 4
    from polycat.canon import canonical_form

    for cat in cats5[:5]:
        for e in cat.entries:
            for p in itertools.permutations(range(cat.n)):
                cf = canonical_form(relabel(e.table, p))
                ok = (ok and cf.table.rho == e.table.rho
                      and cf.aut_order == e.aut_order)
    # flat-graph isomorphism agreement and automorphism correspondence
    for cat in cats5[:4]:
        graphs = [flat_graph(e.table) for e in cat.entries]
        for i, gi in enumerate(graphs):
            ok = ok and _colored_iso_count(gi, gi) == cat.entries[i].aut_order
            for gj in graphs[i + 1:]:
                ok = ok and _colored_iso_count(gi, gj) == 0
            for p in itertools.permutations(range(cat.n)):
                gp = flat_graph(relabel(cat.entries[i].table, p))
                ok = ok and _colored_iso_count(gi, gp) > 0
    _report(9, ok)


@pytest.mark.skipif(
    not os.environ.get("POLYCAT_LONG_RUN"),
    reason="n=7 catalog takes days; set POLYCAT_LONG_RUN=1 to attempt",
)
def test_criterion_10_n7_long_run(cats6, tmp_path):
    cats, _ = cats6
    out = tmp_path / "polycat-k2-n7.txt"
    generate_next_stream(cats[6], out, jobs=os.cpu_count() or 1)
    per_rank = [0] * 15
    labeled = 0
    fact = math.factorial(7)
    with open(out) as fh:
        fh.readline()
        for line in fh:
            parts = line.split()
            rank = int(parts[-2])
            per_rank[rank] += 1
            labeled += fact // int(parts[-1][4:])
    ok = (sum(per_rank) == 320863387
          and labeled == 1560089623047
          and per_rank[6] == 149636721
          and per_rank[7] == 19498369
          and per_rank[6] > per_rank[7])
    _report(10, ok)
