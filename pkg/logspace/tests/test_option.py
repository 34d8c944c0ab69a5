from doctest import DocTestSuite
from unittest import TestCase

from logspace.types import Null, Some, option


def load_tests(loader, tests, ignore):
    tests.addTests(DocTestSuite(option))
    return tests


class TestOption(TestCase):

    def test_some_wraps_falsy_values(self):
        self.assertTrue(Some(0))
        self.assertTrue(Some(None))
        self.assertFalse(Null)

    def test_unwrap(self):
        self.assertEqual(Some(3).unwrap(), 3)
        self.assertEqual(Some(()).unwrap(default=(1,)), ())
        self.assertRaises(TypeError, Null.unwrap)
        self.assertEqual(Null.unwrap(default=[]), [])

    def test_equality(self):
        self.assertEqual(Some((1, 2)), Some((1, 2)))
        self.assertNotEqual(Some(None), Null)
        self.assertEqual(len({Some(1), Some(1), Null}), 2)
