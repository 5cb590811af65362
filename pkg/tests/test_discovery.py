"""
Unit tests for the layout of the test suite

Tests cover:
1. Discovery from the tests folder reaches every area
"""

import os
import unittest

TESTS_DIR = os.path.dirname(os.path.abspath(__file__))
ROOT_DIR = os.path.dirname(TESTS_DIR)
AREAS = ["abelian", "analysis", "config", "core", "cosets", "frontend", "library", "presentations"]


def iter_cases(suite: unittest.TestSuite):
    for item in suite:
        if isinstance(item, unittest.TestSuite):
            yield from iter_cases(item)
        else:
            yield item


class TestDiscovery(unittest.TestCase):
    """The documented discover command finds the nested suites."""

    def test_every_area_is_discovered(self):
        suite = unittest.TestLoader().discover(TESTS_DIR, pattern="test_*.py", top_level_dir=ROOT_DIR)
        modules = {type(case).__module__ for case in iter_cases(suite)}
        for area in AREAS:
            with self.subTest(area=area):
                self.assertTrue(any(name.startswith(f"tests.{area}.") for name in modules))


if __name__ == "__main__":
    unittest.main()
