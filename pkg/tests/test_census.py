import math
from collections import Counter

import pytest

from square_tiled import canonical_key, is_connected, origami_from_key
from square_tiled.census import (
    CensusTooLarge,
    census,
    census_keys,
    census_stratum,
    classify_keys,
    cycle_type_representative,
    partitions,
    shards,
    stratum_keys,
    summarize,
)
from square_tiled.core import Permutation
from square_tiled.reference import CENSUS_COUNTS, FAKE_TORUS_COUNTS
from square_tiled.topology import Stratum


def _brute_force_classes(n):
    """Relabelling classes of all connected pairs, by orbit counting under conjugation."""
    from itertools import permutations

    keys = set()
    for s in permutations(range(1, n + 1)):
        for t in permutations(range(1, n + 1)):
            a, b = Permutation(s), Permutation(t)
            if is_connected(a, b):
                from square_tiled import Origami

                keys.add(canonical_key(Origami(a, b)))
    return keys


class TestEnumeration:
    def test_partitions(self):
        # partition numbers p(1..8)
        assert [sum(1 for _ in partitions(n)) for n in range(1, 9)] == [1, 2, 3, 5, 7, 11, 15, 22]
        assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]

    def test_cycle_type_representative(self):
        assert cycle_type_representative((3, 2)) == (1, 2, 0, 4, 3)

    def test_shards_cover_tau_first_image(self):
        assert len(shards(4)) == 5 * 4

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_matches_full_brute_force(self, n):
        assert set(census_keys(n)) == _brute_force_classes(n)

    @pytest.mark.parametrize("n", range(1, 8))
    def test_counts(self, n):
        assert len(census_keys(n)) == CENSUS_COUNTS[n][0]

    def test_keys_sorted_and_canonical(self):
        keys = census_keys(5)
        assert keys == sorted(set(keys))
        for k in keys[::5]:
            assert canonical_key(origami_from_key(k)) == k

    def test_burnside_weighted_count(self):
        # sum over classes of n!/|Aut| is the number of connected labelled pairs
        from square_tiled.topology import _automorphism_count0

        n = 4
        total = 0
        for k in census_keys(n):
            o = origami_from_key(k)
            total += math.factorial(n) // _automorphism_count0(o._r, o._u)
        from itertools import permutations

        labelled = sum(
            1
            for s in permutations(range(1, n + 1))
            for t in permutations(range(1, n + 1))
            if is_connected(Permutation(s), Permutation(t))
        )
        assert total == labelled

    def test_cap(self):
        with pytest.raises(CensusTooLarge):
            census_keys(10)
        with pytest.raises(CensusTooLarge):
            census_keys(11, allow_large=True)
        with pytest.raises(ValueError):
            census_keys(0)

    def test_unknown_engine(self):
        with pytest.raises(ValueError):
            census_keys(3, engine="fortran")

    @pytest.mark.parametrize("workers", [4, 8])
    def test_worker_count_does_not_change_output(self, workers):
        assert census_keys(6, workers=workers) == census_keys(6, workers=1)

    @pytest.mark.parametrize("n", [5, 6, 7])
    def test_compiled_engine_matches(self, n):
        assert census_keys(n, engine="numba") == census_keys(n)


class TestClassification:
    @pytest.mark.parametrize("n", range(1, 8))
    def test_summary_tables(self, n):
        s = summarize(n, census(n))
        assert (s.total, s.reduced, s.primitive) == CENSUS_COUNTS[n]
        if n in FAKE_TORUS_COUNTS:
            assert (s.symmetry, s.holonomy, s.non_visibility) == FAKE_TORUS_COUNTS[n]

    def test_orbit_sizes_partition_the_census(self):
        recs = census(6)
        sizes = Counter(r.orbit_size for r in recs)
        for size, count in sizes.items():
            assert count % size == 0

    def test_filter(self):
        recs = census(6, filter=lambda r: r.flags.reduced and not r.flags.visibility)
        assert len(recs) == 36
        assert all(r.stratum.genus >= 2 for r in recs)

    def test_record_accessors(self):
        rec = census(3)[0]
        assert rec.n == 3 and len(rec.sigma) == 3 and len(rec.tau) == 3
        assert canonical_key(rec.origami) == rec.key

    def test_implications_over_census(self):
        for rec in census(7):
            f = rec.flags
            assert not f.violations()

    def test_non_visibility_lives_in_genus_two_at_n6(self):
        recs = census(6, filter=lambda r: r.flags.reduced and not r.flags.visibility)
        assert {r.stratum for r in recs} <= {Stratum((2,)), Stratum((1, 1))}

    def test_stratum_slice(self):
        keys = stratum_keys(5, (2,))
        assert len(keys) == 27
        assert stratum_keys(2, (2,)) == []
        recs = census_stratum(7, (2,))
        assert len(recs) == 90 and not any(r.flags.visibility for r in recs)

    def test_classify_keys_rejects_open_sets(self):
        keys = stratum_keys(5, (2,))[:3]
        with pytest.raises(ValueError):
            classify_keys(keys)
