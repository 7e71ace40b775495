import itertools

import pytest

from polycat import RankTable, flats, validate
from polycat.extensions import (
    ExtensiblePartition,
    _check_general,
    _check_seven,
    check_partition,
    enumerate_extensible_partitions,
    extend,
    extension_flats,
    mu_of_set,
)
from polycat.oracle import brute_extensions

# partitions below are mu-vectors over sorted flats; for two free lines
# the flat order is (empty, {a}, {b}, {a,b})
THREE_LINES_PARTITION = ExtensiblePartition((2, 1, 1, 0))


class TestMuOfSet:
    def test_pair_reads_top_flat(self, two_lines):
        lat = flats(two_lines)
        assert mu_of_set(two_lines, lat, THREE_LINES_PARTITION, 0b11) == 0

    def test_empty_set(self, two_lines):
        lat = flats(two_lines)
        assert mu_of_set(two_lines, lat, THREE_LINES_PARTITION, 0) == 2

    def test_flat_reads_directly(self, cats3):
        for e in cats3[2].entries:
            t = e.table
            lat = flats(t)
            for p in enumerate_extensible_partitions(t, lat):
                for i, f in enumerate(lat.flats):
                    assert mu_of_set(t, lat, p, f) == p.mu[i]

    def test_monotone_under_inclusion(self, cats3):
        for e in cats3[3].entries:
            t = e.table
            lat = flats(t)
            for p in enumerate_extensible_partitions(t, lat):
                for x in range(8):
                    for y in range(8):
                        if x & y == x:
                            assert (mu_of_set(t, lat, p, x)
                                    >= mu_of_set(t, lat, p, y))


class TestCheckPartition:
    def test_three_lines_partition_ok(self, two_lines):
        assert check_partition(two_lines, THREE_LINES_PARTITION) is None

    def test_all_zero_is_modular_cut_extension(self, cats3):
        for cat in cats3:
            for e in cat.entries:
                lat = flats(e.table)
                zero = ExtensiblePartition((0,) * len(lat))
                assert check_partition(e.table, zero, lat) is None

    def test_verdicts_match_extension_validity(self, two_lines):
        # every assignment either passes and induces a valid extension,
        # or fails and induces an invalid table (oracle = validate)
        lat = flats(two_lines)
        for mu in itertools.product(range(3), repeat=4):
            p = ExtensiblePartition(mu)
            verdict = check_partition(two_lines, p, lat)
            ext = extend(two_lines, p, lat, checked=False)
            assert (verdict is None) == (validate(ext) is None), mu

    def test_down_closure_violation_reported(self, two_lines):
        # empty flat in M_1 under a flat in M_2 breaks down-closure
        bad = ExtensiblePartition((1, 2, 1, 0))
        v = check_partition(two_lines, bad)
        assert v is not None and v.condition == "6"

    def test_up_closure_violation_reported(self, two_lines):
        bad = ExtensiblePartition((0, 1, 1, 1))
        v = check_partition(two_lines, bad)
        assert v is not None and v.condition == "7"

    def test_seven_conditions_match_general_three(self, cats3):
        for cat in cats3[:3]:
            for e in cat.entries:
                lat = flats(e.table)
                for mu in itertools.product(range(3), repeat=len(lat)):
                    seven = _check_seven(e.table, lat, mu)
                    general = _check_general(e.table, lat, mu)
                    assert (seven is None) == (general is None), (
                        e.table.rho, mu, seven, general)

    def test_rejects_bad_class_index(self, two_lines):
        with pytest.raises(ValueError):
            check_partition(two_lines, (0, 0, 0, 3))
        with pytest.raises(ValueError):
            check_partition(two_lines, (0, 0))


class TestEnumerate:
    def test_empty_polymatroid(self):
        parts = enumerate_extensible_partitions(RankTable(0, 2, (0,)))
        assert [p.mu for p in parts] == [(0,), (1,), (2,)]

    def test_single_line(self):
        parts = enumerate_extensible_partitions(RankTable(1, 2, (0, 2)))
        assert [p.mu for p in parts] == [
            (0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2)]

    def test_matches_filter_reference_path(self, cats3):
        for cat in cats3:
            for e in cat.entries:
                lat = flats(e.table)
                if len(lat) > 12:
                    continue
                fast = enumerate_extensible_partitions(e.table, lat)
                slow = enumerate_extensible_partitions(
                    e.table, lat, method="filter")
                assert fast == slow, e.table.rho

    def test_sorted_and_unique(self, cats3):
        for e in cats3[3].entries:
            mus = [p.mu for p in enumerate_extensible_partitions(e.table)]
            assert mus == sorted(set(mus))

    def test_unknown_method(self, two_lines):
        with pytest.raises(ValueError):
            enumerate_extensible_partitions(two_lines, method="guess")


class TestExtend:
    def test_three_free_lines(self, two_lines, three_lines):
        ext = extend(two_lines, THREE_LINES_PARTITION)
        assert ext.rho == three_lines.rho

    def test_loop_extension(self, cats3):
        for e in cats3[3].entries:
            lat = flats(e.table)
            zero = ExtensiblePartition((0,) * len(lat))
            ext = extend(e.table, zero, lat)
            assert ext.rho[8:] == e.table.rho
            assert ext.rank == e.table.rank

    def test_single_line_top_class(self):
        line = RankTable(1, 2, (0, 2))
        ext = extend(line, ExtensiblePartition((2, 2)))
        assert ext.rho == (0, 2, 2, 4)
        assert validate(ext) is None

    def test_restriction_and_validity(self, cats3):
        for cat in cats3:
            for e in cat.entries:
                lat = flats(e.table)
                half = 1 << cat.n
                for p in enumerate_extensible_partitions(e.table, lat):
                    ext = extend(e.table, p, lat)
                    assert ext.rho[:half] == e.table.rho
                    assert validate(ext) is None

    def test_rejects_non_extensible(self, two_lines):
        with pytest.raises(ValueError):
            extend(two_lines, ExtensiblePartition((0, 1, 1, 1)))


class TestExtensionFlats:
    def test_three_free_lines(self, two_lines):
        got = extension_flats(two_lines, THREE_LINES_PARTITION)
        assert got == (0b000, 0b001, 0b010, 0b100, 0b111)

    def test_loop_extension_augments_every_flat(self, cats3):
        for e in cats3[2].entries:
            lat = flats(e.table)
            zero = ExtensiblePartition((0,) * len(lat))
            got = extension_flats(e.table, zero, lat)
            assert got == tuple(sorted(f | 0b100 for f in lat.flats))

    def test_empty_parent(self):
        empty = RankTable(0, 2, (0,))
        assert extension_flats(empty, ExtensiblePartition((2,))) == (0, 1)

    def test_agrees_with_flats_of_extension(self, cats3):
        for cat in cats3:
            for e in cat.entries:
                lat = flats(e.table)
                for p in enumerate_extensible_partitions(e.table, lat):
                    direct = extension_flats(e.table, p, lat)
                    recomputed = flats(extend(e.table, p, lat)).flats
                    assert direct == recomputed, (e.table.rho, p.mu)


class TestBijection:
    def test_extensions_equal_brute_force(self, cats3):
        # Every valid table on n+1 elements restricting to the parent is
        # produced by exactly one extensible partition, and vice versa.
        for cat in cats3:
            for e in cat.entries:
                lat = flats(e.table)
                parts = enumerate_extensible_partitions(e.table, lat)
                built = [extend(e.table, p, lat).rho for p in parts]
                assert len(set(built)) == len(built)
                brute = {t.rho for t in brute_extensions(e.table)}
                assert set(built) == brute, e.table.rho

    def test_matroid_case_reduces_to_modular_cuts(self):
        # k=1: partitions are exactly (M_0, M_1) with M_0 a modular cut,
        # and they biject with brute-force matroid extensions
        from polycat import enumerate_all

        for cat in enumerate_all(3, 1):
            for e in cat.entries:
                t = e.table
                lat = flats(t)
                parts = enumerate_extensible_partitions(t, lat)
                built = {extend(t, p, lat).rho for p in parts}
                assert built == {x.rho for x in brute_extensions(t)}
                for p in parts:
                    m0 = [lat.flats[i] for i, v in enumerate(p.mu) if v == 0]
                    for f in m0:
                        for g in lat.flats:
                            if f & g == f:
                                assert g in m0  # up-closed
                    for f in m0:
                        for g in m0:
                            if (t.rho[f] + t.rho[g]
                                    == t.rho[f | g] + t.rho[f & g]):
                                assert f & g in m0  # modular pairs meet


class TestSerialization:
    def test_mu_digit_string(self):
        assert THREE_LINES_PARTITION.serialize() == "2110"
