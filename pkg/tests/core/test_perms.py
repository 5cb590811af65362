"""
Unit tests for permutations, generator actions and the factoring test

Tests cover:
1. Permutation products, inverses, cycles and cycle notation
2. Generator actions, word images and composition with endomorphisms
3. Group closure and its element cap
4. factors_through witnesses, including the leadsto preorder laws
5. Blocks, primitivity and group descriptions
"""

import random
import unittest

from lpres.core.perms import (
    GeneratorAction, Permutation, PermutationError, ResourceLimitError, UnionFind,
    act_word, action_from_cycles, actions_equal, closure, compose_action, describe_group,
    direct_sum, factors_through, format_cycles, is_primitive, minimal_block, parse_cycles,
)
from lpres.core.words import FreeEndomorphism, WordError, commutator, generator, multiply, power

A = generator(0)
B = generator(1)


class BasePermsTest(unittest.TestCase):
    """Base test class providing small actions of the free group on {a, b}."""

    def get_valid_action(self, a: str = "()", b: str = "(1,2,3)", degree: int = 3) -> GeneratorAction:
        """
        Build a two-generator action from cycle notation.

        Args:
            a: Cycles for generator a
            b: Cycles for generator b
            degree: Number of points

        Returns:
            GeneratorAction
        """
        return action_from_cycles([a, b], degree)


class TestPermutations(BasePermsTest):
    """Permutation arithmetic and notation."""

    def test_product_applies_left_factor_first(self):
        p = parse_cycles("(1,2)", 3)
        q = parse_cycles("(2,3)", 3)
        self.assertEqual((p * q).images, (2, 0, 1))
        self.assertEqual((p * q)[0], q[p[0]])

    def test_inverse_and_identity(self):
        p = parse_cycles("(1,3,2)(4,5)", 5)
        self.assertTrue((p * p.inverse()).is_identity())
        self.assertTrue(Permutation.identity(4).is_identity())

    def test_cycles_and_order(self):
        p = parse_cycles("(1,2)(3,4,5)", 5)
        self.assertEqual(p.cycles(), [(0, 1), (2, 3, 4)])
        self.assertEqual(p.order(), 6)
        self.assertEqual(format_cycles(p), "(1,2)(3,4,5)")
        self.assertEqual(format_cycles(Permutation.identity(3)), "()")

    def test_rejects_non_bijections(self):
        with self.assertRaises(PermutationError):
            Permutation((0, 0, 1))

    def test_parse_errors(self):
        for text in ("(1,2", "(1,4)", "(1,2)(2,3)", "(1,x)", "1,2"):
            with self.subTest(text=text):
                with self.assertRaises(PermutationError):
                    parse_cycles(text, 3)

    def test_degree_mismatch(self):
        with self.assertRaises(PermutationError):
            Permutation.identity(2) * Permutation.identity(3)


class TestActions(BasePermsTest):
    """Generator actions and their composition with endomorphisms."""

    def test_act_word_matches_trace(self):
        action = self.get_valid_action(a="(1,2)", b="(1,2,3)")
        w = multiply(A, power(B, -1), A, B)
        image = act_word(action, w)
        for point in range(3):
            self.assertEqual(action.trace(point, w), image[point])

    def test_commutator_of_commuting_images_is_trivial(self):
        action = self.get_valid_action(a="(1,2,3)", b="(1,3,2)")
        self.assertTrue(act_word(action, commutator(A, B)).is_identity())

    def test_act_word_rejects_foreign_generators(self):
        with self.assertRaises(WordError):
            act_word(self.get_valid_action(), generator(2))

    def test_compose_action(self):
        action = self.get_valid_action()
        sigma = FreeEndomorphism((power(B, 2), A))
        composed = compose_action(action, sigma)
        self.assertEqual(composed.images[0], parse_cycles("(1,3,2)", 3))
        self.assertTrue(composed.images[1].is_identity())
        twice = compose_action(composed, sigma)
        self.assertTrue(twice.images[0].is_identity())
        self.assertEqual(twice.images[1], parse_cycles("(1,3,2)", 3))

    def test_direct_sum(self):
        total = direct_sum([self.get_valid_action(), self.get_valid_action(a="(1,2)", b="()", degree=2)])
        self.assertEqual(total.degree, 5)
        self.assertEqual(total.images[0].images, (0, 1, 2, 4, 3))
        self.assertEqual(total.images[1].images, (1, 2, 0, 3, 4))

    def test_actions_equal(self):
        self.assertTrue(actions_equal(self.get_valid_action(), self.get_valid_action()))
        self.assertFalse(actions_equal(self.get_valid_action(), self.get_valid_action(b="(1,3,2)")))


class TestClosure(BasePermsTest):
    """Enumerating the image group."""

    def test_symmetric_group(self):
        elements = closure(self.get_valid_action(a="(1,2)"))
        self.assertEqual(len(elements), 6)
        self.assertTrue(elements[0].is_identity())

    def test_cap(self):
        with self.assertRaises(ResourceLimitError) as context:
            closure(self.get_valid_action(a="(1,2)"), cap=5)
        self.assertEqual(context.exception.limit, 5)


class TestFactorsThrough(BasePermsTest):
    """The factoring test and its witness."""

    def test_inverse_rotation_factors_bijectively(self):
        through = self.get_valid_action(a="()", b="(1,2,3)")
        target = self.get_valid_action(a="()", b="(1,3,2)")
        witness = factors_through(target, through)
        self.assertIsNotNone(witness)
        self.assertTrue(witness.is_bijective())
        self.assertEqual(witness(parse_cycles("(1,2,3)", 3)), parse_cycles("(1,3,2)", 3))

    def test_trivial_target_always_factors(self):
        through = self.get_valid_action(a="(1,2)")
        target = self.get_valid_action(a="()", b="()")
        witness = factors_through(target, through)
        self.assertIsNotNone(witness)
        self.assertFalse(witness.is_bijective())

    def test_order_obstruction(self):
        # b has order 2 on the left and order 3 on the right.
        through = self.get_valid_action(a="()", b="(1,2)")
        target = self.get_valid_action(a="()", b="(1,2,3)")
        self.assertIsNone(factors_through(target, through))

    def test_nonabelian_source_cannot_reach_a_three_cycle(self):
        through = self.get_valid_action(a="(1,2)", b="(1,2,3)")
        target = self.get_valid_action(a="()", b="(1,2,3)")
        self.assertIsNone(factors_through(target, through))

    def test_preorder_laws(self):
        texts = ["()", "(1,2)", "(1,2,3)", "(1,3,2)", "(2,3)"]
        actions = [self.get_valid_action(a=a, b=b) for a in texts for b in texts]
        leads = [[factors_through(x, y) is not None for y in actions] for x in actions]
        for i in range(len(actions)):
            self.assertTrue(leads[i][i])
        rng = random.Random(7)
        for case in range(1000):
            i, j, k = (rng.randrange(len(actions)) for _ in range(3))
            if leads[i][j] and leads[j][k]:
                with self.subTest(case=case, x=i, y=j, z=k):
                    self.assertTrue(leads[i][k])
        triples = sum(1 for i in range(len(actions)) for j in range(len(actions)) for k in range(len(actions))
                      if leads[i][j] and leads[j][k] and not leads[i][k])
        self.assertEqual(triples, 0)


class TestStructure(BasePermsTest):
    """Blocks, primitivity and descriptions of image groups."""

    def test_cyclic_action_of_degree_four_is_imprimitive(self):
        action = action_from_cycles(["(1,2,3,4)", "()"], 4)
        self.assertEqual(minimal_block(action, 2), [0, 2])
        self.assertEqual(minimal_block(action, 1), [0, 1, 2, 3])
        self.assertFalse(is_primitive(action))

    def test_prime_degree_is_primitive(self):
        self.assertTrue(is_primitive(self.get_valid_action()))
        self.assertTrue(is_primitive(action_from_cycles(["()"], 1)))

    def test_describe_group(self):
        s3 = describe_group(closure(self.get_valid_action(a="(1,2)")))
        self.assertEqual((s3.order, s3.abelian, s3.dihedral), (6, False, True))
        c4 = describe_group(closure(action_from_cycles(["(1,2,3,4)", "()"], 4)))
        self.assertEqual((c4.order, c4.abelian, c4.dihedral), (4, True, False))
        self.assertEqual(s3.serialize(), {"order": 6, "abelian": False, "dihedral": True})

    def test_union_find(self):
        uf = UnionFind(range(4))
        self.assertTrue(uf.union(0, 1))
        self.assertFalse(uf.union(1, 0))
        uf.union(2, 3)
        self.assertEqual(uf.find(0), uf.find(1))
        self.assertNotEqual(uf.find(1), uf.find(2))


if __name__ == "__main__":
    unittest.main()
