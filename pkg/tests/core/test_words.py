"""
Unit tests for free-group words, endomorphisms and L-presentations

Tests cover:
1. Free reduction and the group operations on words
2. Word formatting and exponent sums
3. Endomorphisms, composition order and monoid elements
4. L-presentation validation, instantiation and ascending forms
5. Free products, finite extensions and quotients
6. Randomized free-reduction laws
"""

import random
import unittest

from lpres.core.words import (
    FinitePresentation, FreeEndomorphism, InvarianceRequiredError, LPresentation, MonoidElement,
    Word, WordError, abelian_exponents, apply_endo, as_ascending, commutator, compose, conjugate,
    factor_lpres, finite_extension, format_word, free_product, generator, identity_endomorphism,
    instantiate, inverse, make_alphabet, monoid_endomorphism, monoid_levels, multiply, power,
    reduce, substitute, syllables,
)

A = generator(0)
B = generator(1)


def random_word(rng: random.Random, rank: int, length: int) -> Word:
    return reduce((rng.randrange(rank), rng.choice((1, -1))) for _ in range(length))


class BaseWordsTest(unittest.TestCase):
    """Base test class with the Basilica presentation as a shared fixture."""

    def setUp(self):
        self.alphabet = make_alphabet(["a", "b"])
        self.sigma = FreeEndomorphism((power(B, 2), A))
        self.relator = commutator(A, conjugate(A, B))

    def get_valid_lpres(self, **overrides) -> LPresentation:
        """
        Return the Basilica L-presentation, with optional field overrides.

        Args:
            **overrides: Fields to override

        Returns:
            LPresentation over {a, b}
        """
        base = {
            "alphabet": self.alphabet,
            "fixed": (),
            "substitutions": (self.sigma,),
            "iterated": (self.relator,),
            "invariant": True,
            "substitution_names": ("sigma",),
        }
        base.update(overrides)
        return LPresentation(**base)


class TestReduction(BaseWordsTest):
    """Free reduction and word constructors."""

    def test_cancelling_pairs_vanish(self):
        self.assertTrue(reduce([(0, 1), (0, -1)]).is_identity())
        w = reduce([(0, 1), (1, 1), (1, -1), (0, 1)])
        self.assertEqual(w.letters, ((0, 1), (0, 1)))

    def test_reduce_rejects_unknown_generators(self):
        with self.assertRaises(WordError):
            reduce([(2, 1)], rank=2)
        with self.assertRaises(WordError):
            reduce([(0, 2)])

    def test_constructor_refuses_unreduced_letters(self):
        with self.assertRaises(WordError):
            Word(((0, 1), (0, -1)))

    def test_group_operations(self):
        self.assertEqual(inverse(multiply(A, B)), multiply(inverse(B), inverse(A)))
        self.assertEqual(power(A, -2).letters, ((0, -1), (0, -1)))
        self.assertTrue(power(A, 0).is_identity())
        self.assertEqual(commutator(A, B), multiply(inverse(A), inverse(B), A, B))
        self.assertEqual(conjugate(A, B), multiply(inverse(B), A, B))

    def test_syllables_and_format(self):
        w = multiply(power(A, 2), power(B, -2), A)
        self.assertEqual(syllables(w), [(0, 2), (1, -2), (0, 1)])
        self.assertEqual(format_word(w, self.alphabet), "a^2 b^-2 a")
        self.assertEqual(format_word(Word(), self.alphabet), "1")

    def test_abelian_exponents(self):
        self.assertEqual(abelian_exponents(self.relator, 2), [0, 0])
        self.assertEqual(abelian_exponents(multiply(power(A, 3), inverse(B)), 2), [3, -1])

    def test_alphabet_rejects_duplicates(self):
        with self.assertRaises(WordError):
            make_alphabet(["a", "a"])
        with self.assertRaises(WordError):
            make_alphabet(["a", ""])


class TestEndomorphisms(BaseWordsTest):
    """Substitution, composition and monoid elements."""

    def test_apply_sigma(self):
        self.assertEqual(apply_endo(self.sigma, A), power(B, 2))
        self.assertEqual(apply_endo(self.sigma, B), A)

    def test_image_outside_alphabet_is_rejected(self):
        with self.assertRaises(WordError):
            FreeEndomorphism((generator(2), A))

    def test_compose_applies_first_argument_first(self):
        swap = FreeEndomorphism((B, A))
        w = multiply(A, power(B, 3))
        self.assertEqual(
            apply_endo(compose(self.sigma, swap), w),
            apply_endo(swap, apply_endo(self.sigma, w)),
        )

    def test_identity_endomorphism(self):
        self.assertTrue(identity_endomorphism(3).is_identity())
        self.assertFalse(self.sigma.is_identity())

    def test_substitute_across_alphabets(self):
        images = [generator(2), multiply(generator(0), generator(1))]
        self.assertEqual(substitute(multiply(A, inverse(B)), images),
                         multiply(generator(2), generator(1, -1), generator(0, -1)))

    def test_monoid_element_order_and_format(self):
        elements = [MonoidElement((0, 1)), MonoidElement(), MonoidElement((1,)), MonoidElement((1, 0))]
        ordered = sorted(elements)
        self.assertEqual([e.factors for e in ordered], [(), (1,), (1, 0), (0, 1)])
        self.assertEqual(MonoidElement((0, 0, 0)).format(["sigma"]), "sigma^3")
        self.assertEqual(MonoidElement((1, 0)).format(["phi", "psi"]), "psi*phi")
        self.assertEqual(MonoidElement().format(), "id")

    def test_monoid_endomorphism(self):
        sigma2 = monoid_endomorphism([self.sigma], MonoidElement((0, 0)))
        self.assertEqual(sigma2, compose(self.sigma, self.sigma))
        self.assertEqual(apply_endo(sigma2, A), power(A, 2))
        with self.assertRaises(WordError):
            monoid_endomorphism([self.sigma], MonoidElement((1,)))

    def test_monoid_levels(self):
        levels = monoid_levels(2, 2)
        self.assertEqual([[e.factors for e in level] for level in levels],
                         [[()], [(0,), (1,)], [(0, 0), (1, 0), (0, 1), (1, 1)]])


class TestLPresentations(BaseWordsTest):
    """Validation, truncation and ascending forms."""

    def test_default_substitution_names(self):
        lp = self.get_valid_lpres(substitution_names=())
        self.assertEqual(lp.substitution_names, ("phi1",))

    def test_invalid_presentations(self):
        with self.assertRaises(WordError):
            self.get_valid_lpres(substitution_names=("sigma", "tau"))
        with self.assertRaises(WordError):
            self.get_valid_lpres(iterated=(generator(5),))
        with self.assertRaises(WordError):
            self.get_valid_lpres(substitutions=(FreeEndomorphism((A,)),))

    def test_instantiate_depths(self):
        lp = self.get_valid_lpres()
        self.assertEqual(instantiate(lp, 0).relators, (self.relator,))
        depth_two = instantiate(lp, 2).relators
        self.assertEqual(len(depth_two), 3)
        self.assertEqual(depth_two[1], apply_endo(self.sigma, self.relator))
        with self.assertRaises(WordError):
            instantiate(lp, -1)

    def test_as_ascending(self):
        fixed = (power(A, 2),)
        with self.assertRaises(InvarianceRequiredError):
            as_ascending(self.get_valid_lpres(fixed=fixed, invariant=False))
        asc = as_ascending(self.get_valid_lpres(fixed=fixed))
        self.assertEqual(asc.fixed, ())
        self.assertEqual(asc.iterated, (power(A, 2), self.relator))


class TestConstructions(BaseWordsTest):
    """Free products, finite extensions and quotients."""

    def test_free_product_renames_collisions(self):
        h = LPresentation(make_alphabet(["a"]), iterated=(power(A, 2),), invariant=True)
        product = free_product(self.get_valid_lpres(), h)
        self.assertEqual(product.names, ["a", "b", "a1"])
        self.assertIn(power(generator(2), 2), product.iterated)
        self.assertEqual(apply_endo(product.substitutions[0], generator(2)), generator(2))

    def test_finite_extension_of_trivial_quotient_is_unchanged(self):
        g = self.get_valid_lpres()
        self.assertIs(finite_extension(g, FinitePresentation(()), {}, {}), g)

    def test_finite_extension_relators(self):
        g = LPresentation(make_alphabet(["x"]), invariant=True)
        h = FinitePresentation(make_alphabet(["t"]), (power(A, 2),))
        extension = finite_extension(g, h, {power(A, 2): A}, {(0, 0): inverse(A)})
        self.assertEqual(extension.names, ["x", "t"])
        self.assertEqual(extension.fixed, (
            multiply(power(B, 2), inverse(A)),
            multiply(conjugate(A, B), A),
        ))
        self.assertFalse(extension.invariant)
        with self.assertRaises(WordError):
            finite_extension(g, h, {}, {(0, 0): A})

    def test_factor_lpres(self):
        g = self.get_valid_lpres()
        self.assertIs(factor_lpres(g, [Word()]), g)
        quotient = factor_lpres(g, [power(A, 2)])
        self.assertEqual(quotient.fixed, (power(A, 2),))
        self.assertFalse(quotient.invariant)
        ascending = factor_lpres(g, [power(A, 2)], phi_invariant=True)
        self.assertEqual(ascending.iterated, (self.relator, power(A, 2)))


class TestReductionLaws(unittest.TestCase):
    """Randomized laws of free reduction."""

    def test_laws(self):
        rng = random.Random(20240611)
        for case in range(1000):
            u = random_word(rng, 3, rng.randrange(0, 12))
            v = random_word(rng, 3, rng.randrange(0, 12))
            w = random_word(rng, 3, rng.randrange(0, 12))
            with self.subTest(case=case):
                self.assertEqual(inverse(inverse(u)), u)
                self.assertTrue(multiply(u, inverse(u)).is_identity())
                self.assertEqual(multiply(multiply(u, v), w), multiply(u, multiply(v, w)))
                self.assertEqual(inverse(multiply(u, v)), multiply(inverse(v), inverse(u)))
                self.assertEqual(reduce(u.letters + v.letters), multiply(u, v))


if __name__ == "__main__":
    unittest.main()
