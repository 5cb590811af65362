"""
Unit tests for the subgroup census

Tests cover:
1. Counts for the Basilica group up to index 3
2. Row and census serialization
3. The full census up to index 6, where weak leaf-invariance is read on the leadsto subtree
"""

import unittest

from lpres.analysis.census import CensusRow, SubgroupCensus, subgroup_census
from lpres.analysis.classify import classify_subgroup
from lpres.cosets.low_index import low_index_tables
from lpres.library import load_example

BASILICA_COUNTS = {
    1: (1, 1, 1, 1, 1, 1),
    2: (3, 3, 3, 0, 3, 3),
    3: (7, 4, 7, 4, 4, 4),
    4: (19, 7, 0, 0, 19, 7),
    5: (11, 6, 11, 6, 6, 6),
    6: (39, 13, 0, 0, 14, 12),
}


class BaseCensusTest(unittest.TestCase):
    """Base test class with the Basilica group."""

    def setUp(self):
        self.lp = load_example("basilica").presentation


class TestSmallCensus(BaseCensusTest):
    """Index at most 3."""

    def setUp(self):
        super().setUp()
        self.census = subgroup_census(self.lp, 3)

    def test_counts(self):
        self.assertEqual([row.index for row in self.census.rows], [1, 2, 3])
        for row in self.census.rows:
            with self.subTest(index=row.index):
                self.assertEqual(row.counts(), BASILICA_COUNTS[row.index])

    def test_timings(self):
        self.assertGreaterEqual(self.census.search_seconds, 0.0)
        self.assertTrue(all(row.seconds >= 0.0 for row in self.census.rows))

    def test_serialize(self):
        data = self.census.serialize()
        self.assertEqual(len(data["rows"]), 3)
        self.assertEqual(data["rows"][1]["subgroups"], 3)
        self.assertEqual(data["rows"][1]["leaf_invariant"], 0)
        self.assertIn("search_seconds", data)


class TestCensusRow(unittest.TestCase):
    """Row helpers."""

    def test_counts_order(self):
        row = CensusRow(4, 19, 7, 0, 0, 19, 7, seconds=1.5)
        self.assertEqual(row.counts(), (19, 7, 0, 0, 19, 7))
        self.assertEqual(row.serialize()["normal_weakly_leaf_invariant"], 7)
        self.assertEqual(SubgroupCensus((row,), 2.0).serialize()["rows"][0]["seconds"], 1.5)


class TestFullCensus(BaseCensusTest):
    """All subgroups of index at most 6."""

    def test_counts(self):
        census = subgroup_census(self.lp, 6)
        for row in census.rows:
            with self.subTest(index=row.index):
                self.assertEqual(row.counts(), BASILICA_COUNTS[row.index])

    def test_weak_column_reads_the_leadsto_subtree(self):
        reports = [classify_subgroup(self.lp, t) for t in low_index_tables(self.lp, 6) if t.index == 6]
        self.assertEqual(sum(r.weakly_leaf_invariant_vtilde for r in reports), 14)
        self.assertEqual(sum(r.weakly_leaf_invariant_v for r in reports), 8)
        self.assertEqual(sum(r.normal and r.weakly_leaf_invariant_vtilde for r in reports), 12)


if __name__ == "__main__":
    unittest.main()
