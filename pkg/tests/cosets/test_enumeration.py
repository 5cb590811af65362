"""
Unit tests for coset enumeration

Tests cover:
1. Enumeration over finite presentations, including the coset cap
2. Verification of tables against every node action of the substitution tree
3. Truncate-and-verify enumeration for the Basilica group
4. Inconclusive enumeration for a subgroup of infinite index
"""

import unittest

from lpres.config import EnumerationLimits
from lpres.core.perms import ResourceLimitError, action_from_cycles
from lpres.core.words import (
    FinitePresentation, FreeEndomorphism, LPresentation, WordError, commutator, conjugate,
    generator, inverse, make_alphabet, multiply, power,
)
from lpres.cosets.enumeration import (
    EnumerationError, coset_enumeration, enumerate_cosets, verify_table, word_columns,
)
from lpres.cosets.tables import contains, table_from_action

A = generator(0)
B = generator(1)


class BaseEnumerationTest(unittest.TestCase):
    """Base test class with the alternating group A4 and the Basilica group."""

    def setUp(self):
        self.alphabet = make_alphabet(["a", "b"])
        self.a4 = FinitePresentation(self.alphabet, (power(A, 2), power(B, 3), power(multiply(A, B), 3)))
        self.basilica = LPresentation(
            self.alphabet,
            substitutions=(FreeEndomorphism((power(B, 2), A)),),
            iterated=(commutator(A, conjugate(A, B)),),
            invariant=True,
            substitution_names=("sigma",),
        )

    def get_valid_limits(self, **overrides) -> EnumerationLimits:
        """
        Return enumeration limits for tests, with optional overrides.

        Args:
            **overrides: Fields to override

        Returns:
            EnumerationLimits
        """
        base = {"max_cosets": 20000, "depth_schedule": [2, 4, 6, 8], "closure_cap": 10000,
                "max_saturation_rounds": 100}
        base.update(overrides)
        return EnumerationLimits(**base)


class TestFiniteEnumeration(BaseEnumerationTest):
    """HLT enumeration over finite presentations."""

    def test_word_columns(self):
        self.assertEqual(word_columns(multiply(A, inverse(B))), [0, 3])

    def test_indices_in_a4(self):
        self.assertEqual(coset_enumeration(self.a4, []).index, 12)
        self.assertEqual(coset_enumeration(self.a4, [B]).index, 4)
        self.assertEqual(coset_enumeration(self.a4, [A]).index, 6)
        self.assertEqual(coset_enumeration(self.a4, [A, B]).index, 1)

    def test_generators_are_members(self):
        gens = [A, multiply(B, A, inverse(B))]
        table = coset_enumeration(self.a4, gens)
        self.assertEqual(table.index, 3)
        self.assertEqual(table.subgroup_gens, tuple(gens))
        for w in gens:
            self.assertTrue(contains(table, w))

    def test_coset_cap(self):
        with self.assertRaises(ResourceLimitError) as context:
            coset_enumeration(self.a4, [], max_cosets=5)
        self.assertEqual(context.exception.limit, 5)

    def test_foreign_generator(self):
        with self.assertRaises(WordError):
            coset_enumeration(self.a4, [generator(2)])


class TestVerification(BaseEnumerationTest):
    """Tables are accepted only if every relator under every node acts trivially."""

    def test_valid_table(self):
        table = table_from_action(action_from_cycles(["()", "(1,2,3)"], 3))
        self.assertTrue(verify_table(self.basilica, table))

    def test_symmetric_action_is_rejected(self):
        table = table_from_action(action_from_cycles(["(1,2)", "(1,2,3)"], 3))
        self.assertFalse(verify_table(self.basilica, table))

    def test_fixed_relators_are_checked(self):
        lp = LPresentation(self.alphabet, fixed=(B,), iterated=(), invariant=False)
        table = table_from_action(action_from_cycles(["()", "(1,2,3)"], 3))
        self.assertFalse(verify_table(lp, table))


class TestTruncateAndVerify(BaseEnumerationTest):
    """Enumeration over the Basilica group."""

    def test_index_three_subgroup(self):
        gens = [A, multiply(B, A, inverse(B)), power(B, 3)]
        table = enumerate_cosets(self.basilica, gens, self.get_valid_limits())
        self.assertEqual(table.index, 3)
        self.assertEqual(table, table_from_action(action_from_cycles(["()", "(1,2,3)"], 3)))

    def test_index_two_subgroup(self):
        gens = [A, power(B, 2), multiply(B, A, inverse(B))]
        table = enumerate_cosets(self.basilica, gens, self.get_valid_limits())
        self.assertEqual(table.index, 2)
        self.assertTrue(table.action.images[0].is_identity())

    def test_infinite_index_is_inconclusive(self):
        limits = self.get_valid_limits(max_cosets=200, depth_schedule=[1, 2])
        with self.assertRaises(EnumerationError) as context:
            enumerate_cosets(self.basilica, [A], limits)
        self.assertEqual(context.exception.partial, [])
        self.assertIn("inconclusive", str(context.exception))

    def test_foreign_generator(self):
        with self.assertRaises(WordError):
            enumerate_cosets(self.basilica, [generator(3)], self.get_valid_limits())


if __name__ == "__main__":
    unittest.main()
