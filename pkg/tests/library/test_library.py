"""
Unit tests for the packaged example groups

Tests cover:
1. Listing and locating the examples
2. Every example parses, with its documented subgroups
"""

import os
import unittest

from lpres.library import DATA_DIR, available_examples, example_path, load_example


class TestLibrary(unittest.TestCase):
    """The shipped .lp files."""

    def test_available(self):
        self.assertEqual(available_examples(), ["basilica", "baumslag", "grigorchuk", "grigorchuk_d"])

    def test_example_path(self):
        path = example_path("grigorchuk")
        self.assertEqual(path, os.path.join(DATA_DIR, "grigorchuk.lp"))
        self.assertTrue(os.path.isfile(path))

    def test_unknown_example(self):
        with self.assertRaises(KeyError) as context:
            example_path("lamplighter")
        self.assertIn("basilica", str(context.exception))

    def test_every_example_parses(self):
        expected = {
            "basilica": (["a", "b"], ["U1", "U2", "U3", "U4", "U5", "W"], True),
            "baumslag": (["a", "b", "t", "u"], ["U"], False),
            "grigorchuk": (["a", "b", "c", "d"], ["D"], True),
            "grigorchuk_d": ([f"d{i}" for i in range(8)], [], True),
        }
        for name, (names, subgroups, invariant) in expected.items():
            with self.subTest(example=name):
                pfile = load_example(name)
                self.assertEqual(pfile.presentation.names, names)
                self.assertEqual(list(pfile.subgroups), subgroups)
                self.assertEqual(pfile.presentation.invariant, invariant)

    def test_substitutions(self):
        self.assertEqual(load_example("grigorchuk_d").presentation.substitution_names,
                         ("sigma", "delta_a", "delta_b"))
        self.assertEqual(load_example("baumslag").presentation.substitution_names, ("sigma", "delta"))


if __name__ == "__main__":
    unittest.main()
