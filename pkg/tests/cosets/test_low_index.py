"""
Unit tests for the low-index subgroup search

Tests cover:
1. Complete subgroup lists of a finite group
2. Subgroups of index at most 3 of the Basilica group
3. Each subgroup is produced once, standardized and verified
4. Schreier ranks of the enumerated subgroups
5. Argument validation and the coset cap
"""

import unittest
from collections import Counter

from lpres.config import EnumerationLimits
from lpres.core.words import (
    FreeEndomorphism, LPresentation, commutator, conjugate, generator, make_alphabet, multiply, power,
)
from lpres.cosets.enumeration import EnumerationError, verify_table
from lpres.cosets.low_index import low_index_tables
from lpres.cosets.schreier import schreier_data
from lpres.cosets.tables import contains, standardize

A = generator(0)
B = generator(1)


class BaseLowIndexTest(unittest.TestCase):
    """Base test class with A4 and the Basilica group as L-presentations."""

    def setUp(self):
        alphabet = make_alphabet(["a", "b"])
        self.a4 = LPresentation(
            alphabet, iterated=(power(A, 2), power(B, 3), power(multiply(A, B), 3)), invariant=True
        )
        self.basilica = LPresentation(
            alphabet,
            substitutions=(FreeEndomorphism((power(B, 2), A)),),
            iterated=(commutator(A, conjugate(A, B)),),
            invariant=True,
            substitution_names=("sigma",),
        )


class TestFiniteGroup(BaseLowIndexTest):
    """A4 has one subgroup each of index 1 and 3, four of index 4, none of index 2."""

    def test_counts(self):
        tables = low_index_tables(self.a4, 4)
        self.assertEqual(Counter(t.index for t in tables), Counter({1: 1, 3: 1, 4: 4}))

    def test_index_twelve_includes_trivial_subgroup(self):
        tables = low_index_tables(self.a4, 12)
        self.assertEqual(tables[-1].index, 12)
        self.assertEqual(sum(1 for t in tables if t.index == 6), 3)


class TestBasilica(BaseLowIndexTest):
    """Index 1, 2 and 3 subgroups of the Basilica group."""

    def setUp(self):
        super().setUp()
        self.tables = low_index_tables(self.basilica, 3)

    def test_counts(self):
        self.assertEqual(Counter(t.index for t in self.tables), Counter({1: 1, 2: 3, 3: 7}))

    def test_tables_are_distinct_sorted_and_verified(self):
        self.assertEqual(len(set(self.tables)), len(self.tables))
        keys = [t.sort_key() for t in self.tables]
        self.assertEqual(keys, sorted(keys))
        for table in self.tables:
            with self.subTest(index=table.index):
                self.assertEqual(standardize(table), table)
                self.assertTrue(verify_table(self.basilica, table))

    def test_generators_are_attached(self):
        for table in self.tables:
            for word in table.subgroup_gens:
                self.assertTrue(contains(table, word))

    def test_schreier_rank(self):
        for table in self.tables:
            with self.subTest(index=table.index, key=table.sort_key()):
                self.assertEqual(schreier_data(table).rank, table.index * (self.basilica.rank - 1) + 1)


class TestArguments(BaseLowIndexTest):
    """Validation and the coset cap."""

    def test_non_positive_index(self):
        with self.assertRaises(ValueError):
            low_index_tables(self.a4, 0)

    def test_cap_keeps_partial_results(self):
        limits = EnumerationLimits(max_cosets=2)
        with self.assertRaises(EnumerationError) as context:
            low_index_tables(self.basilica, 3, limits)
        self.assertEqual(Counter(t.index for t in context.exception.partial), Counter({1: 1, 2: 3}))


if __name__ == "__main__":
    unittest.main()
